#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdav/algorithms.hpp"

namespace qdav {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kIterationCap: return "iteration_cap";
    case RunStatus::kLinearDependence: return "linear_dependence";
    case RunStatus::kStalled: return "stalled";
  }
  return "unknown";
}

StateVector build_initial_state(int n_qubits, const InitialState& init) {
  if (init.coefficients.empty()) {
    if (static_cast<int>(init.bitstring.size()) != n_qubits) {
      throw std::invalid_argument("initial bitstring length != qubit count");
    }
    return StateVector::from_bitstring(init.bitstring);
  }
  StateVector out(n_qubits, std::vector<Complex>(std::size_t{1} << n_qubits,
                                                 Complex{0.0, 0.0}));
  for (const auto& [bits, coeff] : init.coefficients) {
    if (static_cast<int>(bits.size()) != n_qubits) {
      throw std::invalid_argument("initial bitstring length != qubit count");
    }
    const StateVector basis_state = StateVector::from_bitstring(bits);
    auto dst = out.amplitudes();
    auto src = basis_state.amplitudes();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += coeff * src[i];
  }
  out.normalize();
  return out;
}

namespace detail {

double effective_sigma_drop(const AlgorithmConfig& config,
                            const MatrixElementEstimator& estimator) {
  if (config.sigma_drop > 0) return config.sigma_drop;
  return std::max(1e-8, 10.0 * estimator.element_noise_scale());
}

void validate_config(const AlgorithmConfig& config) {
  if (config.dtau <= 0) throw std::invalid_argument("dtau must be positive");
  if (config.epsilon_resid <= 0 || config.epsilon_resid >= 1 ||
      config.epsilon_lindep <= 0 || config.epsilon_lindep >= 1) {
    throw std::invalid_argument("thresholds must lie in (0, 1)");
  }
  if (config.n_roots < 1) throw std::invalid_argument("n_roots must be >= 1");
  if (config.initial_states.empty()) {
    throw std::invalid_argument("at least one initial state required");
  }
  if (config.pool.empty()) {
    throw std::invalid_argument("correction pool must not be empty");
  }
}

// overlap matrix kept in step with the basis; new entries are measured
void extend_overlaps(Eigen::MatrixXcd& s, const KrylovBasis& basis,
                     MatrixElementEstimator& estimator) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd grown(n, n);
  grown.topLeftCorner(n - 1, n - 1) = s;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex el = estimator.overlap(
        basis.vector(static_cast<std::size_t>(k)),
        basis.vector(static_cast<std::size_t>(n - 1)), k == n - 1);
    grown(k, n - 1) = el;
    grown(n - 1, k) = std::conj(el);
  }
  grown(n - 1, n - 1) = Complex{grown(n - 1, n - 1).real(), 0.0};
  s = grown;
}

}  // namespace detail

RunResult run_qdavidson(const PauliSum& h, const AlgorithmConfig& config,
                        MatrixElementEstimator& estimator) {
  detail::validate_config(config);
  if (!h.is_hermitian(1e-10)) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  const int n_qubits = h.n_qubits();
  const double sigma_drop = detail::effective_sigma_drop(config, estimator);

  RunResult result;
  Eigen::MatrixXcd s_live(0, 0);
  for (const auto& init : config.initial_states) {
    result.basis.append(build_initial_state(n_qubits, init).normalized(),
                        KrylovLineage{});
    detail::extend_overlaps(s_live, result.basis, estimator);
  }

  for (int iteration = 0;; ++iteration) {
    result.problem = assemble(result.basis, h, estimator);
    // keep the screening matrix consistent with the solved problem
    s_live = result.problem.s;
    solve(result.problem, sigma_drop);

    const int tracked = static_cast<int>(
        std::min<Eigen::Index>(config.n_roots, result.problem.retained_rank));
    result.n_tracked = tracked;

    IterationRecord rec;
    rec.iteration = iteration;
    rec.basis_size = result.basis.size();
    rec.max_depth = result.basis.max_depth();
    for (int i = 0; i < tracked; ++i) {
      rec.ritz_values.push_back(result.problem.ritz_values(i));
      rec.residue_norms.push_back(std::sqrt(residue_norm_sq(result.problem, i)));
    }

    std::vector<int> unconverged;
    for (int i = 0; i < tracked; ++i) {
      if (rec.residue_norms[static_cast<std::size_t>(i)] >
          config.epsilon_resid) {
        unconverged.push_back(i);  // ritz values ascend, so this is energy order
      }
    }

    if (unconverged.empty()) {
      result.records.push_back(std::move(rec));
      result.status = RunStatus::kConverged;
      result.iterations = iteration;
      return result;
    }
    if (iteration >= config.max_iterations) {
      result.records.push_back(std::move(rec));
      result.status = RunStatus::kIterationCap;
      result.iterations = iteration;
      return result;
    }

    for (const int root : unconverged) {
      // Ritz state of the root
      std::vector<Complex> coeffs(result.basis.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        coeffs[k] = result.problem.ritz_vectors(static_cast<Eigen::Index>(k),
                                                root);
      }
      StateVector ritz_state =
          linear_combination(result.basis.vectors(), coeffs);
      ritz_state.normalize();

      const double energy = result.problem.ritz_values(root);
      const MappingResult mapping =
          map_correction(ritz_state, h, energy, config.dtau, config.pool,
                         estimator, config.mapping);
      const StateVector delta = apply_mapping(ritz_state, mapping);

      const ScreenResult screen = lin_dep_screen(
          result.basis, s_live, delta, estimator, std::max(1e-10, sigma_drop));
      if (screen.ratio <= config.epsilon_lindep) {
        ++rec.lin_dep_rejections;
        continue;
      }

      KrylovLineage lineage;
      int parent_depth = 0;
      for (std::size_t k = 0; k < result.basis.size(); ++k) {
        if (std::abs(coeffs[k]) > 1e-12) {
          lineage.parents.push_back(k);
          parent_depth = std::max(parent_depth, result.basis.depth(k));
        }
      }
      lineage.depth = parent_depth + mapping.depth_increment;
      for (std::size_t k = 0; k < mapping.pool_used.size(); ++k) {
        if (std::abs(mapping.angles[k]) > config.mapping.angle_threshold) {
          lineage.entangler_words.push_back(mapping.pool_used[k]);
          lineage.entangler_angles.push_back(mapping.angles[k]);
        }
      }

      result.basis.append(screen.projected.normalized(), std::move(lineage));
      detail::extend_overlaps(s_live, result.basis, estimator);
      ++rec.added_vectors;
    }

    const bool stalled = rec.added_vectors == 0;
    result.records.push_back(std::move(rec));
    if (stalled) {
      result.status = RunStatus::kStalled;
      result.iterations = iteration;
      return result;
    }
  }
}

}  // namespace qdav
