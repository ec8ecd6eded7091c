#include "qdav/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdav {

ShotBudget estimate_shot_budget(double m_terms, double h_max,
                                double precision_p, double n_k,
                                double pool_p) {
  if (m_terms <= 0 || h_max <= 0 || precision_p <= 0 || n_k <= 0 ||
      pool_p <= 0) {
    throw std::invalid_argument("shot budget inputs must be positive");
  }
  const double p2 = 1.0 / (precision_p * precision_p);
  ShotBudget b;
  b.h_elements = h_max * h_max * m_terms * p2 * n_k * n_k;
  b.s_elements = p2 * n_k * n_k;
  b.mapping_elements = std::max(b.h_elements * pool_p, b.s_elements * pool_p * pool_p);
  b.total_shots = b.h_elements + b.s_elements + b.mapping_elements;
  return b;
}

MatrixElementEstimator::MatrixElementEstimator(Mode mode, double sigma,
                                               std::int64_t n_shots,
                                               std::uint64_t seed)
    : mode_(mode), sigma_(sigma), n_shots_(n_shots), rng_(seed) {}

MatrixElementEstimator MatrixElementEstimator::exact() {
  return {Mode::kExact, 0.0, 0, 0};
}

MatrixElementEstimator MatrixElementEstimator::gaussian(double sigma,
                                                        std::uint64_t seed) {
  if (sigma <= 0) throw std::invalid_argument("gaussian sigma must be > 0");
  return {Mode::kGaussian, sigma, 0, seed};
}

MatrixElementEstimator MatrixElementEstimator::hadamard_shots(
    std::int64_t n_shots, std::uint64_t seed) {
  if (n_shots <= 0) throw std::invalid_argument("n_shots must be > 0");
  return {Mode::kHadamardShots, 0.0, n_shots, seed};
}

double MatrixElementEstimator::element_noise_scale() const {
  switch (mode_) {
    case Mode::kExact: return 0.0;
    case Mode::kGaussian: return sigma_;
    case Mode::kHadamardShots:
      return 1.0 / std::sqrt(static_cast<double>(n_shots_));
  }
  return 0.0;
}

Complex MatrixElementEstimator::perturb(Complex value) {
  std::normal_distribution<double> noise(0.0, sigma_);
  const double re = noise(rng_);
  const double im = noise(rng_);
  return value + Complex{re, im};
}

double MatrixElementEstimator::sample_quadrature(double expectation) {
  // ancilla outcome probabilities (1 +/- r)/2; r can exceed [-1,1] by
  // rounding only
  const double r = std::clamp(expectation, -1.0, 1.0);
  std::binomial_distribution<std::int64_t> dist(n_shots_, 0.5 * (1.0 + r));
  const std::int64_t ones = dist(rng_);
  tally_ += n_shots_;
  return 2.0 * static_cast<double>(ones) / static_cast<double>(n_shots_) - 1.0;
}

Complex MatrixElementEstimator::sample_element(Complex exact_value) {
  const double re = sample_quadrature(exact_value.real());
  const double im = sample_quadrature(exact_value.imag());
  return {re, im};
}

Complex MatrixElementEstimator::pauli_element(const StateVector& bra,
                                              const PauliWord& word,
                                              const StateVector& ket) {
  const Complex exact_value = inner(bra, apply_pauli(ket, word));
  switch (mode_) {
    case Mode::kExact: return exact_value;
    case Mode::kGaussian: return perturb(exact_value);
    case Mode::kHadamardShots: return sample_element(exact_value);
  }
  return exact_value;
}

Complex MatrixElementEstimator::sum_element(const StateVector& bra,
                                            const PauliSum& sum,
                                            const StateVector& ket) {
  if (mode_ == Mode::kHadamardShots) {
    Complex total{0.0, 0.0};
    for (const auto& term : sum.terms()) {
      if (term.word.is_identity()) {
        total += term.coeff * inner(bra, ket);
      } else {
        total += term.coeff * sample_element(inner(bra, apply_pauli(ket, term.word)));
      }
    }
    return total;
  }
  const Complex exact_value = inner(bra, apply_pauli_sum(ket, sum));
  if (mode_ == Mode::kGaussian) return perturb(exact_value);
  return exact_value;
}

Complex MatrixElementEstimator::overlap(const StateVector& bra,
                                        const StateVector& ket,
                                        bool noiseless) {
  const Complex exact_value = inner(bra, ket);
  if (noiseless || mode_ == Mode::kExact) return exact_value;
  if (mode_ == Mode::kGaussian) return perturb(exact_value);
  return sample_element(exact_value);
}

}  // namespace qdav
