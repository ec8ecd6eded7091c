#pragma once

#include <span>
#include <vector>

#include "qdav/estimator.hpp"
#include "qdav/pauli.hpp"
#include "qdav/statevector.hpp"

namespace qdav {

/// Serialized single-Trotter-step cost of exponentiating one word: a CNOT
/// ladder of 2(w-1) entangling gates, one rotation, and two basis-change
/// gates per X/Y axis. Identity words cost 0. No gate parallelism credited.
int entangler_depth(const PauliWord& word);

/// Additive over the list.
int depth_of(std::span<const PauliWord> words);

/// All Pauli words on n_qubits with an odd number of Y factors, optionally
/// restricted to weight <= weight_cap (0 = no cap). Ordered by (weight,
/// x_mask, z_mask). The pool used for spin-model runs.
std::vector<PauliWord> full_odd_y_pool(int n_qubits, int weight_cap = 0);

struct MappingOptions {
  /// Tikhonov strength relative to trace(Re S)/dim; escalated by 10 up to
  /// the max on solve failure.
  double tikhonov = 1e-8;
  double tikhonov_max = 1e-2;
  /// Cap on the applied rotation angle |a_alpha * dtau|.
  double angle_cap = 3.141592653589793;
  /// Words with applied angle above this count toward the circuit depth.
  double angle_threshold = 1e-12;
  /// When set, enables the exact normalization factor and the fidelity
  /// report against the dense imaginary-time step.
  const EigenDecomposition* oracle = nullptr;
};

/// Result of mapping exp(-dtau (H - energy)) |state> onto exp(-i A) with
/// A = sum_alpha a_alpha P_alpha. angles holds the applied rotation angles
/// a_alpha * dtau, one per pool word, in pool order.
struct MappingResult {
  std::vector<PauliWord> pool_used;
  std::vector<double> angles;
  double normalization_c = 1.0;
  double fidelity = -1.0;  // |<exact step|mapped>|, -1 when no oracle
  int depth_increment = 0;
};

/// Solves the regularized real-field system Re(S) a = b with
/// S_ab = <state|P_a P_b|state> and b_a = Im<state|P_a H|state> / sqrt(c)
/// (energy shifts drop from the imaginary part). With an exact estimator the
/// system is solved in the range of the stacked amplitude matrix; noisy
/// estimators measure S and b element by element.
MappingResult map_correction(const StateVector& state, const PauliSum& h,
                             double energy, double dtau,
                             std::span<const PauliWord> pool,
                             MatrixElementEstimator& estimator,
                             const MappingOptions& options = {});

/// Applies the entangler: sequential exp(-i angle_k P_k) in pool order.
StateVector apply_mapping(const StateVector& state,
                          const MappingResult& result);

}  // namespace qdav
