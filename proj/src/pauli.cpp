#include "qdav/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdav {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 64) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " +
                                std::to_string(n_qubits));
  }
}

int popcount(std::uint64_t v) { return std::popcount(v); }

Complex i_power(int exp) {
  switch (((exp % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliWord::PauliWord(int n_qubits)
    : n_qubits_(n_qubits), x_mask_(0), z_mask_(0), phase_(0) {
  check_qubit_count(n_qubits);
}

PauliWord::PauliWord(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                     int phase_exp)
    : n_qubits_(n_qubits),
      x_mask_(x_mask),
      z_mask_(z_mask),
      phase_(((phase_exp % 4) + 4) % 4) {
  check_qubit_count(n_qubits);
  const std::uint64_t valid =
      n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
    throw std::invalid_argument("Pauli mask exceeds qubit count");
  }
}

PauliWord PauliWord::from_string(std::string_view word) {
  const int n = static_cast<int>(word.size());
  check_qubit_count(n);
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    // rightmost character is qubit 0
    const char c = static_cast<char>(std::toupper(word[n - 1 - q]));
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (c) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli character '") +
                                    word[n - 1 - q] + "'");
    }
  }
  return {n, x, z, 0};
}

PauliWord PauliWord::single(int n_qubits, int qubit, char axis) {
  check_qubit_count(n_qubits);
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("qubit index out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (std::toupper(axis)) {
    case 'I': return PauliWord(n_qubits);
    case 'X': return {n_qubits, bit, 0, 0};
    case 'Y': return {n_qubits, bit, bit, 0};
    case 'Z': return {n_qubits, 0, bit, 0};
    default: throw std::invalid_argument("axis must be one of I,X,Y,Z");
  }
}

Complex PauliWord::phase() const { return i_power(phase_); }

int PauliWord::weight() const { return popcount(x_mask_ | z_mask_); }

int PauliWord::y_count() const { return popcount(x_mask_ & z_mask_); }

bool PauliWord::commutes_with(const PauliWord& other) const {
  const int overlap =
      popcount(x_mask_ & other.z_mask_) + popcount(z_mask_ & other.x_mask_);
  return (overlap & 1) == 0;
}

std::string PauliWord::to_string() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) {
    const bool x = (x_mask_ >> q) & 1;
    const bool z = (z_mask_ >> q) & 1;
    const char c = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    s[static_cast<std::size_t>(n_qubits_ - 1 - q)] = c;
  }
  return s;
}

PauliWord operator*(const PauliWord& a, const PauliWord& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw std::invalid_argument("Pauli word qubit counts differ");
  }
  // Writing each word as i^c X^x Z^z with c = |x & z|, the product picks up
  // (-1)^{|z_a & x_b|} from commuting Z^{z_a} past X^{x_b}.
  const std::uint64_t x = a.x_mask_ ^ b.x_mask_;
  const std::uint64_t z = a.z_mask_ ^ b.z_mask_;
  const int c_a = popcount(a.x_mask_ & a.z_mask_);
  const int c_b = popcount(b.x_mask_ & b.z_mask_);
  const int c_ab = popcount(x & z);
  const int swap = popcount(a.z_mask_ & b.x_mask_);
  const int phase = a.phase_ + b.phase_ + c_a + c_b + 2 * swap - c_ab;
  return {a.n_qubits_, x, z, phase};
}

Eigen::MatrixXcd to_dense(const PauliWord& word, int oracle_ceiling) {
  if (word.n_qubits() > oracle_ceiling) {
    throw std::invalid_argument("qubit count exceeds dense oracle ceiling");
  }
  const std::int64_t dim = std::int64_t{1} << word.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const Complex base = i_power(word.phase_exp() + word.y_count());
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto s = static_cast<std::uint64_t>(col);
    const double sign = (popcount(s & word.z_mask()) & 1) ? -1.0 : 1.0;
    m(static_cast<std::int64_t>(s ^ word.x_mask()), col) = base * sign;
  }
  return m;
}

PauliSum::PauliSum(int n_qubits, double drop_tolerance)
    : n_qubits_(n_qubits), drop_tolerance_(drop_tolerance) {
  check_qubit_count(n_qubits);
}

void PauliSum::add(const PauliWord& word, Complex coeff) {
  if (word.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Pauli word qubit count differs from sum");
  }
  const Key key{word.x_mask(), word.z_mask()};
  auto [it, inserted] = terms_.try_emplace(key, 0.0);
  it->second += coeff * word.phase();
  if (std::abs(it->second) < drop_tolerance_) {
    terms_.erase(it);
  }
}

void PauliSum::add(const PauliSum& other, Complex scale) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("Pauli sum qubit counts differ");
  }
  for (const auto& [key, coeff] : other.terms_) {
    const Key k = key;
    auto [it, inserted] = terms_.try_emplace(k, 0.0);
    it->second += coeff * scale;
    if (std::abs(it->second) < drop_tolerance_) {
      terms_.erase(it);
    }
  }
}

Complex PauliSum::coefficient(const PauliWord& word) const {
  auto it = terms_.find({word.x_mask(), word.z_mask()});
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [key, coeff] : terms_) {
    if (std::abs(coeff.imag()) > tol) return false;
  }
  return true;
}

double PauliSum::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [key, coeff] : terms_) m = std::max(m, std::abs(coeff));
  return m;
}

PauliSum PauliSum::multiplied_by(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("Pauli sum qubit counts differ");
  }
  PauliSum out(n_qubits_, drop_tolerance_);
  for (const auto& [ka, ca] : terms_) {
    const PauliWord wa(n_qubits_, ka.first, ka.second);
    for (const auto& [kb, cb] : other.terms_) {
      const PauliWord wb(n_qubits_, kb.first, kb.second);
      out.add(wa * wb, ca * cb);
    }
  }
  return out;
}

PauliSum PauliSum::scaled(Complex factor) const {
  PauliSum out(n_qubits_, drop_tolerance_);
  for (const auto& [key, coeff] : terms_) {
    out.terms_[key] = coeff * factor;
  }
  return out;
}

std::vector<PauliSum::Term> PauliSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [key, coeff] : terms_) {
    out.push_back({PauliWord(n_qubits_, key.first, key.second), coeff});
  }
  return out;
}

std::string PauliSum::to_text() const {
  std::ostringstream os;
  char buf[64];
  for (const auto& [key, coeff] : terms_) {
    const PauliWord w(n_qubits_, key.first, key.second);
    std::snprintf(buf, sizeof(buf), "%.17g %.17g ", coeff.real(),
                  coeff.imag());
    os << buf << w.to_string() << '\n';
  }
  return os.str();
}

PauliSum PauliSum::from_text(std::string_view text, double drop_tol) {
  std::istringstream is{std::string(text)};
  std::string line;
  int n_qubits = -1;
  std::vector<std::tuple<double, double, std::string>> rows;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string word;
    if (!(ls >> re >> im >> word)) {
      throw std::runtime_error("malformed Pauli sum line " +
                               std::to_string(line_no));
    }
    if (n_qubits < 0) {
      n_qubits = static_cast<int>(word.size());
    } else if (static_cast<int>(word.size()) != n_qubits) {
      throw std::runtime_error("inconsistent word length at line " +
                               std::to_string(line_no));
    }
    rows.emplace_back(re, im, word);
  }
  if (n_qubits < 0) {
    throw std::runtime_error("empty Pauli sum text");
  }
  PauliSum out(n_qubits, drop_tol);
  for (const auto& [re, im, word] : rows) {
    out.add(PauliWord::from_string(word), {re, im});
  }
  return out;
}

Eigen::MatrixXcd to_dense(const PauliSum& sum, int oracle_ceiling) {
  if (sum.n_qubits() > oracle_ceiling) {
    throw std::invalid_argument("qubit count exceeds dense oracle ceiling");
  }
  const std::int64_t dim = std::int64_t{1} << sum.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : sum.terms()) {
    const Complex base =
        term.coeff * i_power(term.word.phase_exp() + term.word.y_count());
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    for (std::int64_t col = 0; col < dim; ++col) {
      const auto s = static_cast<std::uint64_t>(col);
      const double sign = (popcount(s & z) & 1) ? -1.0 : 1.0;
      m(static_cast<std::int64_t>(s ^ x), col) += base * sign;
    }
  }
  return m;
}

}  // namespace qdav
