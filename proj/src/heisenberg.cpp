#include "qdav/heisenberg.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qdav {

PauliSum build_heisenberg(const HeisenbergSpec& spec) {
  const int n = spec.n_spins;
  if (n < 2) throw std::invalid_argument("Heisenberg chain needs >= 2 spins");

  const double conv =
      spec.convention == HeisenbergSpec::Convention::kSpinHalf ? 0.25 : 1.0;

  std::vector<std::tuple<int, int, double>> bonds;
  if (spec.range == HeisenbergSpec::Range::kShort) {
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      bonds.emplace_back(std::min(i, j), std::max(i, j), 1.0);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int d = std::abs(j - i);
        const double dij = std::min(1 + d, 1 + n - d);
        bonds.emplace_back(i, j, 1.0 / dij);
      }
    }
  }

  PauliSum h(n);
  for (const auto& [i, j, c_default] : bonds) {
    double c = c_default;
    if (auto it = spec.coupling_overrides.find({i, j});
        it != spec.coupling_overrides.end()) {
      c = it->second;
    }
    for (const char axis : {'X', 'Y', 'Z'}) {
      h.add(PauliWord::single(n, i, axis) * PauliWord::single(n, j, axis),
            -c * conv);
    }
  }
  return h;
}

std::string neel_bitstring(int n_spins) {
  std::string s(static_cast<std::size_t>(n_spins), '0');
  for (int k = 1; k < n_spins; k += 2) {
    s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

}  // namespace qdav
