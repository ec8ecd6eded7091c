#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdav/estimator.hpp"
#include "qdav/qite_mapping.hpp"
#include "qdav/subspace.hpp"

namespace qdav {

/// Reference state: a computational-basis bitstring, or a normalized linear
/// combination of bitstrings (CIS-style coefficients).
struct InitialState {
  std::string bitstring;
  std::vector<std::pair<std::string, Complex>> coefficients;  // overrides

  static InitialState from_bits(std::string bits) {
    return {std::move(bits), {}};
  }
};

StateVector build_initial_state(int n_qubits, const InitialState& init);

struct AlgorithmConfig {
  double dtau = 0.1;
  double epsilon_resid = 1e-4;
  double epsilon_lindep = 1e-3;
  int n_roots = 4;
  int max_iterations = 50;
  std::vector<InitialState> initial_states;
  std::vector<PauliWord> pool;
  /// Overlap-mode drop threshold; 0 selects max(1e-8, 10 * noise scale).
  double sigma_drop = 0.0;
  MappingOptions mapping;
};

/// Per-iteration telemetry. Ritz values and residue norms cover the tracked
/// roots (the lowest min(n_roots, retained rank)).
struct IterationRecord {
  int iteration = 0;
  std::vector<double> ritz_values;
  std::vector<double> residue_norms;
  std::size_t basis_size = 0;
  int max_depth = 0;
  int added_vectors = 0;
  int lin_dep_rejections = 0;
};

enum class RunStatus {
  kConverged,        // all tracked residues below epsilon_resid
  kIterationCap,     // iteration/step budget exhausted
  kLinearDependence, // next vector failed the independence screen
  kStalled,          // no progress possible (all corrections rejected)
};

std::string to_string(RunStatus status);

struct RunResult {
  SubspaceProblem problem;
  KrylovBasis basis;
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::kIterationCap;
  int iterations = 0;  // expansion rounds (QDavidson) or QITE steps taken
  int n_tracked = 0;
};

/// Iterative subspace expansion driven by per-root correction vectors:
/// solve, measure residues, map unconverged corrections to entanglers,
/// screen, append. Stops when all tracked roots have residue norm below
/// epsilon_resid or the iteration cap is hit.
RunResult run_qdavidson(const PauliSum& h, const AlgorithmConfig& config,
                        MatrixElementEstimator& estimator);

/// Baseline: one imaginary-time trajectory whose snapshots form the basis.
/// Runs until max_iterations steps or until a snapshot fails the
/// linear-dependence screen. Requires a single initial state.
RunResult run_qlanczos(const PauliSum& h, const AlgorithmConfig& config,
                       MatrixElementEstimator& estimator);

struct DavidsonOptions {
  double epsilon_resid = 1e-8;
  double lindep_ratio = 1e-3;
  int max_iterations = 200;
  /// Preconditioner denominators are clamped to at least this magnitude.
  double preconditioner_floor = 1e-6;
};

struct DavidsonResult {
  Eigen::VectorXd values;    // tracked roots, ascending
  Eigen::MatrixXcd vectors;  // full-space Ritz vectors, one column per root
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::kIterationCap;
  int iterations = 0;
};

/// Standard dense Davidson with diagonal preconditioning: subspace
/// eigensolve, residues, (diag(H) - E_I)^{-1} corrections, Gram-Schmidt
/// against the trial space, ratio screen.
DavidsonResult run_classical_davidson(const Eigen::MatrixXcd& h_dense,
                                      int n_roots,
                                      const Eigen::MatrixXcd& guesses,
                                      const DavidsonOptions& options = {});

}  // namespace qdav
