#include "qdav/qite_mapping.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace qdav {

int entangler_depth(const PauliWord& word) {
  const int w = word.weight();
  if (w == 0) return 0;
  const int basis_changes = 2 * std::popcount(word.x_mask());
  return 2 * (w - 1) + 1 + basis_changes;
}

int depth_of(std::span<const PauliWord> words) {
  int total = 0;
  for (const auto& w : words) total += entangler_depth(w);
  return total;
}

std::vector<PauliWord> full_odd_y_pool(int n_qubits, int weight_cap) {
  if (n_qubits > 12) {
    throw std::invalid_argument(
        "full odd-Y pool enumeration is limited to 12 qubits");
  }
  std::vector<PauliWord> pool;
  const std::uint64_t lim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t x = 0; x < lim; ++x) {
    for (std::uint64_t z = 0; z < lim; ++z) {
      if ((std::popcount(x & z) & 1) == 0) continue;  // even Y count
      if (weight_cap > 0 && std::popcount(x | z) > weight_cap) continue;
      pool.emplace_back(n_qubits, x, z);
    }
  }
  std::sort(pool.begin(), pool.end(),
            [](const PauliWord& a, const PauliWord& b) {
              const int wa = a.weight(), wb = b.weight();
              if (wa != wb) return wa < wb;
              if (a.x_mask() != b.x_mask()) return a.x_mask() < b.x_mask();
              return a.z_mask() < b.z_mask();
            });
  return pool;
}

namespace {

// Regularized real solution restricted to the range of B (columns of B span
// the reachable directions; exact-mode b always lies in that range).
Eigen::VectorXd solve_range_tikhonov(const Eigen::MatrixXd& b_matrix,
                                     const Eigen::VectorXd& rhs,
                                     double lambda) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      b_matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::VectorXd projected = svd.matrixV().adjoint() * rhs;
  for (Eigen::Index i = 0; i < projected.size(); ++i) {
    projected(i) /= sv(i) * sv(i) + lambda;
  }
  return svd.matrixV() * projected;
}

}  // namespace

MappingResult map_correction(const StateVector& state, const PauliSum& h,
                             double energy, double dtau,
                             std::span<const PauliWord> pool,
                             MatrixElementEstimator& estimator,
                             const MappingOptions& options) {
  if (dtau <= 0) throw std::invalid_argument("dtau must be positive");
  if (pool.empty()) throw std::invalid_argument("mapping pool is empty");
  if (std::abs(state.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("map_correction requires a normalized state");
  }
  const auto n_pool = static_cast<Eigen::Index>(pool.size());

  // normalization c = |exp(-dtau (H - energy)) state|^2
  double c = 1.0;
  if (options.oracle != nullptr) {
    c = imaginary_step_norm_sq(state, *options.oracle, dtau, energy);
  } else {
    const double e_meas =
        estimator.sum_element(state, h, state).real();
    c = std::max(0.25, 1.0 - 2.0 * dtau * (e_meas - energy));
  }
  const double inv_sqrt_c = 1.0 / std::sqrt(c);

  Eigen::VectorXd a(n_pool);

  if (estimator.is_exact()) {
    // Stack Re/Im of the columns P_alpha|state>; Re(S) is the Gram matrix
    // of this real matrix and is never materialized.
    const auto dim = static_cast<Eigen::Index>(state.dim());
    const StateVector applied = apply_pauli_sum(state, h);
    Eigen::MatrixXd b_matrix(2 * dim, n_pool);
    Eigen::VectorXd rhs(n_pool);
    for (Eigen::Index alpha = 0; alpha < n_pool; ++alpha) {
      const StateVector w = apply_pauli(state, pool[alpha]);
      for (Eigen::Index t = 0; t < dim; ++t) {
        b_matrix(t, alpha) = w[static_cast<std::size_t>(t)].real();
        b_matrix(dim + t, alpha) = w[static_cast<std::size_t>(t)].imag();
      }
      rhs(alpha) = inv_sqrt_c * inner(w, applied).imag();
    }
    if (n_pool <= 2 * dim) {
      Eigen::MatrixXd gram = b_matrix.transpose() * b_matrix;
      gram.diagonal().array() += options.tikhonov;
      a = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(rhs);
    } else {
      // wide pools: solve in the range of B, O(dim^2 * pool)
      a = solve_range_tikhonov(b_matrix, rhs, options.tikhonov);
    }
  } else {
    // measure Re(S) and b element by element
    Eigen::MatrixXd s_re(n_pool, n_pool);
    for (Eigen::Index alpha = 0; alpha < n_pool; ++alpha) {
      for (Eigen::Index beta = alpha; beta < n_pool; ++beta) {
        const PauliWord prod = pool[alpha] * pool[beta];
        const Complex el = estimator.pauli_element(state, prod, state);
        s_re(alpha, beta) = el.real();
        s_re(beta, alpha) = el.real();
      }
    }
    PauliSum h_prime = h;
    h_prime.add(PauliWord(h.n_qubits()), Complex{1.0 / dtau - energy, 0.0});
    Eigen::VectorXd rhs(n_pool);
    for (Eigen::Index alpha = 0; alpha < n_pool; ++alpha) {
      PauliSum word_sum(h.n_qubits(), h.drop_tolerance());
      word_sum.add(pool[alpha], 1.0);
      const PauliSum prod = word_sum.multiplied_by(h_prime);
      rhs(alpha) = inv_sqrt_c *
                   estimator.sum_element(state, prod, state).imag();
    }

    double lambda = options.tikhonov;
    bool ok = false;
    while (true) {
      Eigen::MatrixXd lhs = s_re;
      lhs.diagonal().array() += lambda;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
      if (ldlt.info() == Eigen::Success) {
        a = ldlt.solve(rhs);
        ok = a.allFinite();
      }
      if (ok || lambda >= options.tikhonov_max) break;
      lambda *= 10.0;
    }
    if (!ok) {
      throw std::runtime_error(
          "mapping system singular beyond maximum regularization");
    }
  }

  MappingResult result;
  result.pool_used.assign(pool.begin(), pool.end());
  result.angles.resize(pool.size());
  for (Eigen::Index alpha = 0; alpha < n_pool; ++alpha) {
    const double theta = std::clamp(a(alpha) * dtau, -options.angle_cap,
                                    options.angle_cap);
    result.angles[static_cast<std::size_t>(alpha)] = theta;
  }
  result.normalization_c = c;

  std::vector<PauliWord> active;
  for (std::size_t k = 0; k < result.pool_used.size(); ++k) {
    if (std::abs(result.angles[k]) > options.angle_threshold) {
      active.push_back(result.pool_used[k]);
    }
  }
  result.depth_increment = depth_of(active);

  if (options.oracle != nullptr) {
    const StateVector target =
        exact_imaginary_step(state, *options.oracle, dtau, energy);
    const StateVector mapped = apply_mapping(state, result);
    result.fidelity =
        std::clamp(std::abs(inner(target, mapped)), 0.0, 1.0);
  }
  return result;
}

StateVector apply_mapping(const StateVector& state,
                          const MappingResult& result) {
  StateVector out = state;
  for (std::size_t k = 0; k < result.pool_used.size(); ++k) {
    if (result.angles[k] == 0.0) continue;
    apply_exp_pauli_inplace(out, result.pool_used[k], result.angles[k]);
  }
  return out;
}

}  // namespace qdav
