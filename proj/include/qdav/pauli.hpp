#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qdav {

using Complex = std::complex<double>;

/// Default dimension guard for dense-matrix realizations (2^14 ~ 16k).
inline constexpr int kDefaultOracleCeiling = 14;

/// A Pauli string on n qubits in symplectic form.
///
/// The operator value is i^phase * W(x,z), where W(x,z) is the literal
/// tensor product with qubit q carrying I, X, Z or Y for the bit pair
/// (x_q, z_q) = (0,0), (1,0), (0,1), (1,1). The phase exponent is kept
/// as an integer mod 4, so products are exact.
///
/// String form: characters over {I,X,Y,Z}, rightmost character = qubit 0
/// (same convention as basis-state bitstrings).
class PauliWord {
 public:
  explicit PauliWord(int n_qubits);
  PauliWord(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
            int phase_exp = 0);

  /// Parses e.g. "XXIZ" (Z acts on qubit 0). Length fixes n_qubits.
  static PauliWord from_string(std::string_view word);
  /// Single-axis word, axis in {'I','X','Y','Z'}.
  static PauliWord single(int n_qubits, int qubit, char axis);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  int phase_exp() const { return phase_; }
  Complex phase() const;

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  /// Number of non-identity tensor factors.
  int weight() const;
  /// Number of Y factors (x and z bit both set).
  int y_count() const;
  /// True when the operator equals its adjoint (phase exponent even).
  bool is_hermitian() const { return (phase_ & 1) == 0; }

  /// Same masks, phase reset to +1.
  PauliWord phase_free() const { return {n_qubits_, x_mask_, z_mask_, 0}; }

  bool commutes_with(const PauliWord& other) const;

  std::string to_string() const;

  friend PauliWord operator*(const PauliWord& a, const PauliWord& b);
  friend bool operator==(const PauliWord& a, const PauliWord& b) = default;

 private:
  int n_qubits_;
  std::uint64_t x_mask_;
  std::uint64_t z_mask_;
  int phase_;  // exponent of i, in [0,4)
};

/// Dense 2^n x 2^n realization of a single word.
Eigen::MatrixXcd to_dense(const PauliWord& word,
                          int oracle_ceiling = kDefaultOracleCeiling);

/// A weighted sum of Pauli words with phase-normalized term keys.
///
/// Term keys are phase-free words; any word phase is folded into the stored
/// coefficient. Terms whose magnitude drops below the drop tolerance are
/// removed on the fly. Iteration order over terms is canonical (sorted by
/// mask pair), so consumers are deterministic.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits, double drop_tolerance = 1e-12);

  int n_qubits() const { return n_qubits_; }
  double drop_tolerance() const { return drop_tolerance_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Accumulates coeff * word into the sum.
  void add(const PauliWord& word, Complex coeff);
  void add(const PauliSum& other, Complex scale = 1.0);

  /// Coefficient of the phase-free word key (0 if absent).
  Complex coefficient(const PauliWord& word) const;

  /// True when all coefficients are real within tol.
  bool is_hermitian(double tol = 1e-12) const;

  /// Largest coefficient magnitude (|h_max| of the decomposition).
  double max_abs_coefficient() const;

  PauliSum multiplied_by(const PauliSum& other) const;
  PauliSum scaled(Complex factor) const;

  /// Canonically ordered (word, coefficient) view.
  struct Term {
    PauliWord word;
    Complex coeff;
  };
  std::vector<Term> terms() const;

  std::string to_text() const;
  static PauliSum from_text(std::string_view text, double drop_tol = 1e-12);

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;  // (x_mask, z_mask)
  int n_qubits_;
  double drop_tolerance_;
  std::map<Key, Complex> terms_;
};

/// Dense realization, Hermitian iff the sum is. O(terms * 2^n).
Eigen::MatrixXcd to_dense(const PauliSum& sum,
                          int oracle_ceiling = kDefaultOracleCeiling);

}  // namespace qdav
