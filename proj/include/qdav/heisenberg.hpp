#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qdav/pauli.hpp"

namespace qdav {

/// 1D Heisenberg chain description. Short range couples cyclic nearest
/// neighbors with unit strength; long range couples every pair (i, j), j > i,
/// with strength 1 / D_ij, D_ij = min(1 + |j - i|, 1 + N - |j - i|).
struct HeisenbergSpec {
  enum class Range { kShort, kLong };
  /// pauli: S = sigma. spin_half: S = sigma / 2 (coefficients get a 1/4).
  enum class Convention { kPauli, kSpinHalf };

  int n_spins = 4;
  Range range = Range::kShort;
  Convention convention = Convention::kPauli;
  /// Optional per-bond coupling override, keyed by the ordered pair (i, j),
  /// i < j. Overrides replace the default C_ij for that bond.
  std::map<std::pair<int, int>, double> coupling_overrides;
};

/// H = -sum_bonds C_ij (X_i X_j + Y_i Y_j + Z_i Z_j). For N = 2 the wrapped
/// short-range bond coincides with the open bond and the terms merge.
PauliSum build_heisenberg(const HeisenbergSpec& spec);

/// Alternating "0101..." bitstring of length n (the anti-ferromagnetic
/// product state used to seed the Heisenberg runs).
std::string neel_bitstring(int n_spins);

}  // namespace qdav
