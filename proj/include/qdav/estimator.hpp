#pragma once

#include <cstdint>
#include <random>

#include "qdav/pauli.hpp"
#include "qdav/statevector.hpp"

namespace qdav {

/// Shot-count estimates for one full matrix-assembly round, from the
/// asymptotic cost formulas with unit prefactors. Counts are reported as
/// doubles; they are order-of-magnitude quantities.
struct ShotBudget {
  double h_elements = 0.0;
  double s_elements = 0.0;
  double mapping_elements = 0.0;
  double total_shots = 0.0;
};

/// h cost = |h_max|^2 M p^-2 N_K^2, s cost = p^-2 N_K^2, mapping cost =
/// max(|h_max|^2 M p^-2 N_K^2 P, p^-2 N_K^2 P^2). m_terms and h_max should
/// describe the measured part of the Hamiltonian (identity excluded).
ShotBudget estimate_shot_budget(double m_terms, double h_max,
                                double precision_p, double n_k, double pool_p);

/// Matrix-element estimation layer. Exact mode returns statevector inner
/// products unchanged. Gaussian mode adds one N(0, sigma^2) perturbation per
/// reported element (independently to real and imaginary parts). Hadamard
/// mode simulates the ancilla test by Bernoulli-sampling each quadrature from
/// its analytic outcome probabilities, n_shots per quadrature; this shortcut
/// has statistics identical to simulating the ancilla-extended register.
///
/// The estimator never alters states, only reported values. Calls draw from
/// a single seeded stream, so identical seeds and call sequences reproduce
/// identical estimates.
class MatrixElementEstimator {
 public:
  enum class Mode { kExact, kGaussian, kHadamardShots };

  static MatrixElementEstimator exact();
  static MatrixElementEstimator gaussian(double sigma, std::uint64_t seed);
  static MatrixElementEstimator hadamard_shots(std::int64_t n_shots,
                                               std::uint64_t seed);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::kExact; }
  /// Rough standard error of one reported element (0 for exact mode); used
  /// by the solver to scale its linear-dependence threshold.
  double element_noise_scale() const;

  /// <bra|word|ket> (the Fig.-1 style single-word element).
  Complex pauli_element(const StateVector& bra, const PauliWord& word,
                        const StateVector& ket);

  /// <bra|sum|ket>. Gaussian mode perturbs the total once; Hadamard mode
  /// samples each non-identity term separately and sums classically
  /// (identity terms contribute exactly).
  Complex sum_element(const StateVector& bra, const PauliSum& sum,
                      const StateVector& ket);

  /// <bra|ket>. noiseless suppresses perturbation/sampling (used for the
  /// unit diagonal of overlap matrices, which is fixed by normalization).
  Complex overlap(const StateVector& bra, const StateVector& ket,
                  bool noiseless = false);

  std::int64_t shot_tally() const { return tally_; }

 private:
  MatrixElementEstimator(Mode mode, double sigma, std::int64_t n_shots,
                         std::uint64_t seed);

  Complex perturb(Complex value);
  double sample_quadrature(double expectation);
  Complex sample_element(Complex exact_value);

  Mode mode_;
  double sigma_ = 0.0;
  std::int64_t n_shots_ = 0;
  std::mt19937_64 rng_;
  std::int64_t tally_ = 0;
};

}  // namespace qdav
