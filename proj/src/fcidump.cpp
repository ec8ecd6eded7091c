#include "qdav/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdav {

void FermionHamiltonian::set_eri(int p, int q, int r, int s, double value) {
  const auto n = static_cast<std::size_t>(n_spatial);
  auto at = [&](int a, int b, int c, int d) -> double& {
    return two_body[((static_cast<std::size_t>(a) * n +
                      static_cast<std::size_t>(b)) *
                         n +
                     static_cast<std::size_t>(c)) *
                        n +
                    static_cast<std::size_t>(d)];
  };
  // chemist-notation 8-fold symmetry
  at(p, q, r, s) = value;
  at(q, p, r, s) = value;
  at(p, q, s, r) = value;
  at(q, p, s, r) = value;
  at(r, s, p, q) = value;
  at(s, r, p, q) = value;
  at(r, s, q, p) = value;
  at(s, r, q, p) = value;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("FCIDUMP line " + std::to_string(line_no) + ": " +
                           what);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

// extracts integer values for KEY= entries in the namelist body
bool find_int(const std::string& body, const std::string& key, int& out) {
  std::size_t pos = 0;
  while ((pos = body.find(key, pos)) != std::string::npos) {
    // must be a standalone key followed by '='
    const bool start_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(
                                          body[pos - 1]));
    std::size_t after = pos + key.size();
    while (after < body.size() && std::isspace(static_cast<unsigned char>(
                                      body[after]))) {
      ++after;
    }
    if (!start_ok || after >= body.size() || body[after] != '=') {
      pos += key.size();
      continue;
    }
    ++after;
    try {
      out = std::stoi(body.substr(after));
      return true;
    } catch (const std::exception&) {
      throw std::runtime_error("FCIDUMP header: non-numeric value for " + key);
    }
  }
  return false;
}

}  // namespace

FermionHamiltonian parse_fcidump(std::istream& in) {
  std::ostringstream all;
  all << in.rdbuf();
  return parse_fcidump(all.str());
}

FermionHamiltonian parse_fcidump(const std::string& text) {
  // split the namelist header from the data section
  const std::string upper_text = upper(text);
  const std::size_t start = upper_text.find("&FCI");
  if (start == std::string::npos) {
    throw std::runtime_error("FCIDUMP header: missing &FCI namelist");
  }
  std::size_t body_end = upper_text.find("&END", start + 4);
  std::size_t data_begin;
  if (body_end != std::string::npos) {
    data_begin = body_end + 4;
  } else {
    body_end = upper_text.find('/', start + 4);
    if (body_end == std::string::npos) {
      throw std::runtime_error(
          "FCIDUMP header: namelist not terminated by &END or /");
    }
    data_begin = body_end + 1;
  }
  const std::string header = upper_text.substr(start + 4, body_end - start - 4);

  FermionHamiltonian f;
  if (!find_int(header, "NORB", f.n_spatial)) {
    throw std::runtime_error("FCIDUMP header: missing NORB");
  }
  if (!find_int(header, "NELEC", f.n_electrons)) {
    throw std::runtime_error("FCIDUMP header: missing NELEC");
  }
  find_int(header, "MS2", f.ms2);
  if (f.n_spatial < 1 || f.n_spatial > 32) {
    throw std::runtime_error("FCIDUMP header: NORB out of range");
  }
  if (f.n_electrons < 0 || f.n_electrons > 2 * f.n_spatial) {
    throw std::runtime_error("FCIDUMP header: NELEC out of range");
  }
  f.one_body = Eigen::MatrixXd::Zero(f.n_spatial, f.n_spatial);
  f.two_body.assign(static_cast<std::size_t>(f.n_spatial) * f.n_spatial *
                        f.n_spatial * f.n_spatial,
                    0.0);

  const int lines_before_data = static_cast<int>(
      std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(data_begin), '\n'));

  std::istringstream data(text.substr(data_begin));
  std::string line;
  int line_no = lines_before_data;
  while (std::getline(data, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    // Fortran D exponents
    for (auto& c : line) {
      if (c == 'D' || c == 'd') c = 'E';
    }
    std::istringstream row(line);
    double value = 0.0;
    int i = 0, j = 0, k = 0, l = 0;
    if (!(row >> value >> i >> j >> k >> l)) {
      fail(line_no, "expected `value i j k l`");
    }
    auto in_range = [&](int idx) { return idx >= 0 && idx <= f.n_spatial; };
    if (!in_range(i) || !in_range(j) || !in_range(k) || !in_range(l)) {
      fail(line_no, "orbital index out of range [0, NORB]");
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      f.core_energy = value;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) fail(line_no, "one-body row with a zero index");
      f.one_body(i - 1, j - 1) = value;
      f.one_body(j - 1, i - 1) = value;
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) {
        fail(line_no, "two-body row with a zero index");
      }
      f.set_eri(i - 1, j - 1, k - 1, l - 1, value);
    }
  }
  return f;
}

FermionHamiltonian parse_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

}  // namespace qdav
