#include <cmath>
#include <stdexcept>

#include "qdav/algorithms.hpp"

namespace qdav {

namespace detail {
double effective_sigma_drop(const AlgorithmConfig& config,
                            const MatrixElementEstimator& estimator);
void validate_config(const AlgorithmConfig& config);
void extend_overlaps(Eigen::MatrixXcd& s, const KrylovBasis& basis,
                     MatrixElementEstimator& estimator);
}  // namespace detail

RunResult run_qlanczos(const PauliSum& h, const AlgorithmConfig& config,
                       MatrixElementEstimator& estimator) {
  detail::validate_config(config);
  if (config.initial_states.size() != 1) {
    throw std::invalid_argument("QLanczos takes exactly one initial state");
  }
  if (!h.is_hermitian(1e-10)) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  const double sigma_drop = detail::effective_sigma_drop(config, estimator);

  RunResult result;
  StateVector snapshot =
      build_initial_state(h.n_qubits(), config.initial_states[0]).normalized();
  Eigen::MatrixXcd s_live(0, 0);
  result.basis.append(snapshot, KrylovLineage{});
  detail::extend_overlaps(s_live, result.basis, estimator);

  auto solve_and_record = [&](int step) {
    result.problem = assemble(result.basis, h, estimator);
    s_live = result.problem.s;
    solve(result.problem, sigma_drop);
    const int tracked = static_cast<int>(
        std::min<Eigen::Index>(config.n_roots, result.problem.retained_rank));
    result.n_tracked = tracked;
    IterationRecord rec;
    rec.iteration = step;
    rec.basis_size = result.basis.size();
    rec.max_depth = result.basis.max_depth();
    for (int i = 0; i < tracked; ++i) {
      rec.ritz_values.push_back(result.problem.ritz_values(i));
      rec.residue_norms.push_back(
          std::sqrt(residue_norm_sq(result.problem, i)));
    }
    result.records.push_back(std::move(rec));
  };

  solve_and_record(0);

  for (int step = 1; step <= config.max_iterations; ++step) {
    // QITE step from the previous snapshot, shifted by its own energy
    const double energy = estimator.sum_element(snapshot, h, snapshot).real();
    const MappingResult mapping = map_correction(
        snapshot, h, energy, config.dtau, config.pool, estimator,
        config.mapping);
    StateVector next = apply_mapping(snapshot, mapping);
    next.normalize();  // clears float drift from long entangler products

    const ScreenResult screen = lin_dep_screen(
        result.basis, s_live, next, estimator, std::max(1e-10, sigma_drop));
    if (screen.ratio <= config.epsilon_lindep) {
      result.status = RunStatus::kLinearDependence;
      result.iterations = step - 1;
      if (!result.records.empty()) {
        result.records.back().lin_dep_rejections += 1;
      }
      return result;
    }

    KrylovLineage lineage;
    lineage.parents = {result.basis.size() - 1};
    lineage.depth =
        result.basis.depth(result.basis.size() - 1) + mapping.depth_increment;
    for (std::size_t k = 0; k < mapping.pool_used.size(); ++k) {
      if (std::abs(mapping.angles[k]) > config.mapping.angle_threshold) {
        lineage.entangler_words.push_back(mapping.pool_used[k]);
        lineage.entangler_angles.push_back(mapping.angles[k]);
      }
    }
    snapshot = next;
    result.basis.append(snapshot, std::move(lineage));
    detail::extend_overlaps(s_live, result.basis, estimator);

    solve_and_record(step);
    result.records.back().added_vectors = 1;
    result.iterations = step;
  }
  result.status = RunStatus::kIterationCap;
  return result;
}

}  // namespace qdav
