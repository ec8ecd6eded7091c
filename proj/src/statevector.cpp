#include "qdav/statevector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdav/kernels.hpp"

namespace qdav {

namespace {

Complex i_power(int exp) {
  switch (((exp % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// base factor of the word action, i^{phase + |x & z|}
Complex word_base(const PauliWord& w) {
  return i_power(w.phase_exp() + w.y_count());
}

void check_match(int a, int b) {
  if (a != b) throw std::invalid_argument("qubit counts differ");
}

}  // namespace

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits),
      amps_(std::size_t{1} << n_qubits, Complex{0.0, 0.0}) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("statevector qubit count out of range");
  }
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count is not 2^n_qubits");
  }
}

StateVector StateVector::from_bitstring(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  std::uint64_t index = 0;
  for (int q = 0; q < n; ++q) {
    const char c = bits[static_cast<std::size_t>(n - 1 - q)];
    if (c == '1') {
      index |= std::uint64_t{1} << q;
    } else if (c != '0') {
      throw std::invalid_argument("bitstring must contain only 0 and 1");
    }
  }
  StateVector out(n);
  out.amps_[0] = 0.0;
  out.amps_[index] = 1.0;
  return out;
}

double StateVector::norm() const {
  return std::sqrt(kernels::inner(amps_, amps_).real());
}

void StateVector::normalize() {
  const double n = norm();
  if (n < 1e-300) throw std::runtime_error("cannot normalize zero vector");
  const double inv = 1.0 / n;
  for (auto& a : amps_) a *= inv;
}

StateVector StateVector::normalized() const {
  StateVector out = *this;
  out.normalize();
  return out;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  check_match(n_qubits_, other.n_qubits_);
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex scale) {
  for (auto& a : amps_) a *= scale;
  return *this;
}

StateVector apply_pauli(const StateVector& state, const PauliWord& word) {
  check_match(state.n_qubits(), word.n_qubits());
  StateVector out(state.n_qubits(),
                  std::vector<Complex>(state.dim(), Complex{0.0, 0.0}));
  kernels::apply_word(state.amplitudes(), out.amplitudes(), word.x_mask(),
                      word.z_mask(), word_base(word));
  return out;
}

StateVector apply_pauli_sum(const StateVector& state, const PauliSum& sum) {
  check_match(state.n_qubits(), sum.n_qubits());
  StateVector out(state.n_qubits(),
                  std::vector<Complex>(state.dim(), Complex{0.0, 0.0}));
  for (const auto& term : sum.terms()) {
    kernels::accumulate_word(state.amplitudes(), out.amplitudes(),
                             term.word.x_mask(), term.word.z_mask(),
                             word_base(term.word), term.coeff);
  }
  return out;
}

StateVector apply_exp_pauli(const StateVector& state, const PauliWord& word,
                            double theta) {
  check_match(state.n_qubits(), word.n_qubits());
  StateVector out(state.n_qubits(),
                  std::vector<Complex>(state.dim(), Complex{0.0, 0.0}));
  kernels::apply_exp_word(state.amplitudes(), out.amplitudes(), word.x_mask(),
                          word.z_mask(), word_base(word), std::cos(theta),
                          Complex{0.0, -std::sin(theta)});
  return out;
}

void apply_exp_pauli_inplace(StateVector& state, const PauliWord& word,
                             double theta) {
  check_match(state.n_qubits(), word.n_qubits());
  kernels::apply_exp_word_inplace(state.amplitudes(), word.x_mask(),
                                  word.z_mask(), word_base(word),
                                  std::cos(theta),
                                  Complex{0.0, -std::sin(theta)});
}

Complex inner(const StateVector& a, const StateVector& b) {
  check_match(a.n_qubits(), b.n_qubits());
  return kernels::inner(a.amplitudes(), b.amplitudes());
}

Complex expectation(const StateVector& a, const PauliSum& sum,
                    const StateVector& b) {
  return inner(a, apply_pauli_sum(b, sum));
}

Complex expectation(const StateVector& state, const PauliSum& sum) {
  return expectation(state, sum, state);
}

double EigenDecomposition::nearest_distance(double e) const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    best = std::min(best, std::abs(values(i) - e));
  }
  return best;
}

EigenDecomposition exact_diagonalize(const PauliSum& h, int oracle_ceiling) {
  if (!h.is_hermitian(1e-10)) {
    throw std::invalid_argument("exact_diagonalize requires a Hermitian sum");
  }
  const Eigen::MatrixXcd m = to_dense(h, oracle_ceiling);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector exact_imaginary_step(const StateVector& state, const PauliSum& h,
                                 double dtau, double shift,
                                 int oracle_ceiling) {
  return exact_imaginary_step(state, exact_diagonalize(h, oracle_ceiling),
                              dtau, shift);
}

StateVector exact_imaginary_step(const StateVector& state,
                                 const EigenDecomposition& ed, double dtau,
                                 double shift) {
  (void)shift;  // a constant shift is a scalar factor, removed by normalizing
  if (dtau == 0.0) return state;
  const auto dim = static_cast<Eigen::Index>(state.dim());
  if (ed.vectors.rows() != dim) {
    throw std::invalid_argument("eigendecomposition dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), dim);
  Eigen::VectorXcd coeffs = ed.vectors.adjoint() * psi;
  // weights relative to the smallest eigenvalue; the normalization removes
  // any constant shift, including the caller's
  const double ref = ed.values(0);
  for (Eigen::Index k = 0; k < dim; ++k) {
    coeffs(k) *= std::exp(-dtau * (ed.values(k) - ref));
  }
  Eigen::VectorXcd evolved = ed.vectors * coeffs;
  std::vector<Complex> amps(evolved.data(), evolved.data() + dim);
  StateVector out(state.n_qubits(), std::move(amps));
  out.normalize();
  return out;
}

double imaginary_step_norm_sq(const StateVector& state,
                              const EigenDecomposition& ed, double dtau,
                              double shift) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), dim);
  Eigen::VectorXcd coeffs = ed.vectors.adjoint() * psi;
  double c = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    c += std::norm(coeffs(k)) * std::exp(-2.0 * dtau * (ed.values(k) - shift));
  }
  return c;
}

StateVector linear_combination(std::span<const StateVector> states,
                               std::span<const Complex> coeffs) {
  if (states.empty() || states.size() != coeffs.size()) {
    throw std::invalid_argument("linear_combination size mismatch");
  }
  StateVector out(states[0].n_qubits(),
                  std::vector<Complex>(states[0].dim(), Complex{0.0, 0.0}));
  for (std::size_t k = 0; k < states.size(); ++k) {
    check_match(out.n_qubits(), states[k].n_qubits());
    auto dst = out.amplitudes();
    auto src = states[k].amplitudes();
    const Complex c = coeffs[k];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
  }
  return out;
}

}  // namespace qdav
