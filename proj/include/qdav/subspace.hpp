#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qdav/estimator.hpp"
#include "qdav/pauli.hpp"
#include "qdav/statevector.hpp"

namespace qdav {

/// Provenance of one Krylov vector: which basis vectors it was built from
/// and the entangler that produced it. Depth is the serialized circuit cost
/// accumulated along the lineage.
struct KrylovLineage {
  std::vector<std::size_t> parents;
  std::vector<PauliWord> entangler_words;
  std::vector<double> entangler_angles;
  int depth = 0;
};

/// Ordered set of simulated Krylov vectors with depth metadata. Vectors are
/// required to be normalized within 1e-10 and depths may not decrease along
/// a lineage chain.
class KrylovBasis {
 public:
  void append(StateVector vector, KrylovLineage lineage);

  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  int n_qubits() const;
  const StateVector& vector(std::size_t k) const { return vectors_[k]; }
  const std::vector<StateVector>& vectors() const { return vectors_; }
  const KrylovLineage& lineage(std::size_t k) const { return lineages_[k]; }
  int depth(std::size_t k) const { return lineages_[k].depth; }
  int max_depth() const;

 private:
  std::vector<StateVector> vectors_;
  std::vector<KrylovLineage> lineages_;
};

/// Measured subspace matrices and the Ritz solutions of H V = E S V.
/// h2 carries <psi_K|H^2|psi_L>, which residue_norm_sq combines with h and s
/// into <Psi_I|(H - E_I)^2|Psi_I> without further measurement.
struct SubspaceProblem {
  Eigen::MatrixXcd h;
  Eigen::MatrixXcd s;
  Eigen::MatrixXcd h2;
  Eigen::VectorXd ritz_values;    // ascending, retained_rank entries
  Eigen::MatrixXcd ritz_vectors;  // N_K x retained_rank
  Eigen::Index retained_rank = 0;
  double sigma_drop_used = 0.0;

  bool solved() const { return retained_rank > 0; }
};

/// Measures H, S (and H^2) over the basis through the estimator. Only the
/// upper triangle is measured; the lower is filled by conjugation and the
/// diagonal of S is exact (fixed at 1 by normalization).
SubspaceProblem assemble(const KrylovBasis& basis, const PauliSum& h,
                         MatrixElementEstimator& estimator);

/// Canonical orthogonalization: drops overlap modes below sigma_drop,
/// whitens, solves the ordinary Hermitian problem and back-transforms.
/// Throws if S has an eigenvalue below -max(1e-10, sigma_drop).
void solve(SubspaceProblem& problem, double sigma_drop = 1e-8);

/// <Psi_root|(H - E_root)^2|Psi_root>, clamped at zero from below.
double residue_norm_sq(const SubspaceProblem& problem, Eigen::Index root);

/// Projection screen for a candidate vector against the current basis:
/// delta' = delta - sum_KJ psi_K (S^+)_KJ <psi_J|delta>, with the overlaps
/// d_J measured through the estimator and S^+ the pseudo-inverse of the
/// measured overlap matrix.
struct ScreenResult {
  double ratio = 0.0;       // |delta'| / |delta| from measured quantities
  StateVector projected;    // explicit delta' statevector (unnormalized)
};
ScreenResult lin_dep_screen(const KrylovBasis& basis,
                            const Eigen::MatrixXcd& s_measured,
                            const StateVector& delta,
                            MatrixElementEstimator& estimator,
                            double pinv_cutoff = 1e-10);

/// Exact Gram matrix of the basis vectors (test support).
Eigen::MatrixXcd gram_matrix(const KrylovBasis& basis);

}  // namespace qdav
