#include "qdav/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdav {

void KrylovBasis::append(StateVector vector, KrylovLineage lineage) {
  if (!vectors_.empty() && vector.n_qubits() != vectors_[0].n_qubits()) {
    throw std::invalid_argument("Krylov vector qubit count differs");
  }
  if (std::abs(vector.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("Krylov vectors must be normalized");
  }
  for (const std::size_t p : lineage.parents) {
    if (p >= vectors_.size()) {
      throw std::invalid_argument("lineage parent index out of range");
    }
    if (lineage.depth < lineages_[p].depth) {
      throw std::invalid_argument("depth decreases along lineage");
    }
  }
  vectors_.push_back(std::move(vector));
  lineages_.push_back(std::move(lineage));
}

int KrylovBasis::n_qubits() const {
  if (vectors_.empty()) throw std::logic_error("empty Krylov basis");
  return vectors_[0].n_qubits();
}

int KrylovBasis::max_depth() const {
  int d = 0;
  for (const auto& l : lineages_) d = std::max(d, l.depth);
  return d;
}

SubspaceProblem assemble(const KrylovBasis& basis, const PauliSum& h,
                         MatrixElementEstimator& estimator) {
  if (basis.empty()) throw std::invalid_argument("cannot assemble empty basis");
  if (!h.is_hermitian(1e-10)) {
    throw std::invalid_argument("assemble requires a Hermitian Hamiltonian");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  SubspaceProblem p;
  p.h.resize(n, n);
  p.s.resize(n, n);
  p.h2.resize(n, n);

  const bool shots =
      estimator.mode() == MatrixElementEstimator::Mode::kHadamardShots;

  if (shots) {
    // per-term sampling needs the explicit operators
    const PauliSum h_sq = h.multiplied_by(h);
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index k = 0; k <= l; ++k) {
        p.h(k, l) = estimator.sum_element(basis.vector(k), h, basis.vector(l));
        p.h2(k, l) =
            estimator.sum_element(basis.vector(k), h_sq, basis.vector(l));
        p.s(k, l) =
            estimator.overlap(basis.vector(k), basis.vector(l), k == l);
      }
    }
  } else {
    // exact and gaussian modes reuse H|psi_L>; H^2 elements become plain
    // overlaps of the applied vectors, with the same one-draw-per-element
    // noise policy as H
    std::vector<StateVector> applied;
    applied.reserve(basis.size());
    for (std::size_t l = 0; l < basis.size(); ++l) {
      applied.push_back(apply_pauli_sum(basis.vector(l), h));
    }
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index k = 0; k <= l; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const auto lu = static_cast<std::size_t>(l);
        p.h(k, l) = estimator.overlap(basis.vector(ku), applied[lu]);
        p.h2(k, l) = estimator.overlap(applied[ku], applied[lu]);
        p.s(k, l) = estimator.overlap(basis.vector(ku), basis.vector(lu), k == l);
      }
    }
  }

  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index k = 0; k < l; ++k) {
      p.h(l, k) = std::conj(p.h(k, l));
      p.h2(l, k) = std::conj(p.h2(k, l));
      p.s(l, k) = std::conj(p.s(k, l));
    }
    p.h(l, l) = Complex{p.h(l, l).real(), 0.0};
    p.h2(l, l) = Complex{p.h2(l, l).real(), 0.0};
    p.s(l, l) = Complex{p.s(l, l).real(), 0.0};
  }
  return p;
}

void solve(SubspaceProblem& problem, double sigma_drop) {
  const Eigen::Index n = problem.s.rows();
  if (n == 0) throw std::invalid_argument("solve needs assembled matrices");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s_solver(problem.s);
  if (s_solver.info() != Eigen::Success) {
    throw std::runtime_error("overlap eigendecomposition failed");
  }
  const Eigen::VectorXd& w = s_solver.eigenvalues();
  const double neg_tol = std::max(1e-10, sigma_drop);
  if (w(0) < -neg_tol) {
    throw std::runtime_error(
        "overlap matrix negative beyond tolerance (estimator noise too "
        "large): min eigenvalue " +
        std::to_string(w(0)));
  }

  Eigen::Index first_kept = 0;
  while (first_kept < n && w(first_kept) < sigma_drop) ++first_kept;
  const Eigen::Index rank = n - first_kept;
  if (rank == 0) {
    throw std::runtime_error("overlap matrix has no modes above sigma_drop");
  }

  Eigen::MatrixXcd x(n, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    x.col(j) = s_solver.eigenvectors().col(first_kept + j) /
               std::sqrt(w(first_kept + j));
  }

  Eigen::MatrixXcd h_white = x.adjoint() * problem.h * x;
  h_white = 0.5 * (h_white + h_white.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_solver(h_white);
  if (h_solver.info() != Eigen::Success) {
    throw std::runtime_error("whitened eigendecomposition failed");
  }

  problem.ritz_values = h_solver.eigenvalues();
  problem.ritz_vectors = x * h_solver.eigenvectors();
  problem.retained_rank = rank;
  problem.sigma_drop_used = sigma_drop;
}

double residue_norm_sq(const SubspaceProblem& problem, Eigen::Index root) {
  if (!problem.solved() || root < 0 || root >= problem.retained_rank) {
    throw std::invalid_argument("invalid root index");
  }
  const Eigen::VectorXcd v = problem.ritz_vectors.col(root);
  const double e = problem.ritz_values(root);
  const Complex quad = v.adjoint() * ((problem.h2 - 2.0 * e * problem.h +
                                       e * e * problem.s) *
                                      v);
  return std::max(0.0, quad.real());
}

ScreenResult lin_dep_screen(const KrylovBasis& basis,
                            const Eigen::MatrixXcd& s_measured,
                            const StateVector& delta,
                            MatrixElementEstimator& estimator,
                            double pinv_cutoff) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (s_measured.rows() != n) {
    throw std::invalid_argument("overlap matrix size differs from basis");
  }

  Eigen::VectorXcd d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j) = estimator.overlap(basis.vector(static_cast<std::size_t>(j)), delta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s_solver(s_measured);
  if (s_solver.info() != Eigen::Success) {
    throw std::runtime_error("overlap eigendecomposition failed");
  }
  const Eigen::VectorXd& w = s_solver.eigenvalues();
  const double cutoff = std::max(pinv_cutoff, pinv_cutoff * w(n - 1));
  Eigen::VectorXcd gamma = Eigen::VectorXcd::Zero(n);
  double removed_sq = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    if (w(m) <= cutoff) continue;
    const Eigen::VectorXcd u = s_solver.eigenvectors().col(m);
    const Complex proj = u.dot(d);  // u^dagger d
    gamma += u * (proj / w(m));
    removed_sq += std::norm(proj) / w(m);
  }

  const double delta_sq = inner(delta, delta).real();
  const double resid_sq = std::max(0.0, delta_sq - removed_sq);

  ScreenResult out{std::sqrt(resid_sq / std::max(delta_sq, 1e-300)),
                   delta};
  for (Eigen::Index k = 0; k < n; ++k) {
    auto dst = out.projected.amplitudes();
    auto src = basis.vector(static_cast<std::size_t>(k)).amplitudes();
    const Complex g = gamma(k);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= g * src[i];
  }
  return out;
}

Eigen::MatrixXcd gram_matrix(const KrylovBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index k = 0; k < n; ++k) {
      g(k, l) = inner(basis.vector(static_cast<std::size_t>(k)),
                      basis.vector(static_cast<std::size_t>(l)));
    }
  }
  return g;
}

}  // namespace qdav
