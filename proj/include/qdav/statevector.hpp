#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdav/pauli.hpp"

namespace qdav {

/// Dense complex amplitude vector over n qubits. Qubit 0 is the least
/// significant bit of the basis index; bitstrings are read the same way
/// ("0011" sets qubits 0 and 1, basis index 3). Value type: operations
/// return new vectors.
class StateVector {
 public:
  /// |00...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  /// Computational basis state from a bitstring (rightmost char = qubit 0).
  static StateVector from_bitstring(std::string_view bits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  /// Scales to unit norm; throws on a zero vector.
  void normalize();
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(Complex scale);

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

/// word * state without forming the dense matrix. O(2^n).
StateVector apply_pauli(const StateVector& state, const PauliWord& word);

/// sum_i h_i P_i |state>, generally unnormalized. Deterministic term order.
StateVector apply_pauli_sum(const StateVector& state, const PauliSum& sum);

/// exp(-i theta W)|state> = cos(theta)|state> - i sin(theta) W|state>.
/// Unitary for Hermitian words (real +/-1 phase).
StateVector apply_exp_pauli(const StateVector& state, const PauliWord& word,
                            double theta);
void apply_exp_pauli_inplace(StateVector& state, const PauliWord& word,
                             double theta);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// <a| sum |b>
Complex expectation(const StateVector& a, const PauliSum& sum,
                    const StateVector& b);
Complex expectation(const StateVector& state, const PauliSum& sum);

/// Full spectrum with orthonormal eigenvectors, values ascending.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;

  double ground_energy() const { return values(0); }
  /// Distance from e to the nearest eigenvalue.
  double nearest_distance(double e) const;
};

/// Dense Hermitian eigendecomposition of the sum (the exact-energy oracle).
EigenDecomposition exact_diagonalize(const PauliSum& h,
                                     int oracle_ceiling = kDefaultOracleCeiling);

/// Normalized exp(-dtau (H - shift)) |state>, computed in the eigenbasis.
/// Reference implementation for validating the unitary mapping.
StateVector exact_imaginary_step(const StateVector& state, const PauliSum& h,
                                 double dtau, double shift,
                                 int oracle_ceiling = kDefaultOracleCeiling);
StateVector exact_imaginary_step(const StateVector& state,
                                 const EigenDecomposition& ed, double dtau,
                                 double shift);

/// Squared norm of exp(-dtau (H - shift)) |state> (the mapping's c factor).
double imaginary_step_norm_sq(const StateVector& state,
                              const EigenDecomposition& ed, double dtau,
                              double shift);

/// sum_k coeffs[k] * states[k]
StateVector linear_combination(std::span<const StateVector> states,
                               std::span<const Complex> coeffs);

}  // namespace qdav
