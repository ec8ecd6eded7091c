#include <cmath>
#include <stdexcept>

#include "qdav/algorithms.hpp"

namespace qdav {

namespace {

// two-pass modified Gram-Schmidt against the columns of basis
Eigen::VectorXcd orthogonalize(const Eigen::MatrixXcd& basis,
                               Eigen::VectorXcd v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      v -= basis.col(j) * (basis.col(j).dot(v));
    }
  }
  return v;
}

}  // namespace

DavidsonResult run_classical_davidson(const Eigen::MatrixXcd& h_dense,
                                      int n_roots,
                                      const Eigen::MatrixXcd& guesses,
                                      const DavidsonOptions& options) {
  const Eigen::Index dim = h_dense.rows();
  if (h_dense.cols() != dim) throw std::invalid_argument("H must be square");
  if ((h_dense - h_dense.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("H must be Hermitian");
  }
  if (n_roots < 1 || guesses.cols() < 1 || guesses.rows() != dim) {
    throw std::invalid_argument("invalid guesses");
  }

  // trial space columns, orthonormalized defensively
  Eigen::MatrixXcd b(dim, 0);
  for (Eigen::Index j = 0; j < guesses.cols(); ++j) {
    Eigen::VectorXcd v = orthogonalize(b, guesses.col(j));
    const double n = v.norm();
    if (n < 1e-10) continue;
    b.conservativeResize(Eigen::NoChange, b.cols() + 1);
    b.col(b.cols() - 1) = v / n;
  }
  if (b.cols() == 0) throw std::invalid_argument("guesses are degenerate");

  const Eigen::VectorXd h_diag = h_dense.diagonal().real();
  DavidsonResult result;

  for (int iteration = 0;; ++iteration) {
    const Eigen::MatrixXcd hb = h_dense * b;
    Eigen::MatrixXcd h_bar = b.adjoint() * hb;
    h_bar = 0.5 * (h_bar + h_bar.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_bar);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("subspace eigensolve failed");
    }

    const int tracked =
        static_cast<int>(std::min<Eigen::Index>(n_roots, b.cols()));
    Eigen::MatrixXcd ritz(dim, tracked);
    Eigen::MatrixXcd residues(dim, tracked);
    IterationRecord rec;
    rec.iteration = iteration;
    rec.basis_size = static_cast<std::size_t>(b.cols());
    for (int i = 0; i < tracked; ++i) {
      ritz.col(i) = b * solver.eigenvectors().col(i);
      residues.col(i) =
          hb * solver.eigenvectors().col(i) -
          solver.eigenvalues()(i) * ritz.col(i);
      rec.ritz_values.push_back(solver.eigenvalues()(i));
      rec.residue_norms.push_back(residues.col(i).norm());
    }

    std::vector<int> unconverged;
    for (int i = 0; i < tracked; ++i) {
      if (rec.residue_norms[static_cast<std::size_t>(i)] >
          options.epsilon_resid) {
        unconverged.push_back(i);
      }
    }

    const bool done = unconverged.empty() && tracked == n_roots;
    const bool partial = unconverged.empty() && tracked < n_roots;
    if (done || partial || iteration >= options.max_iterations ||
        b.cols() == dim) {
      result.records.push_back(std::move(rec));
      result.values.resize(tracked);
      result.vectors.resize(dim, tracked);
      for (int i = 0; i < tracked; ++i) {
        result.values(i) = solver.eigenvalues()(i);
        result.vectors.col(i) = ritz.col(i);
      }
      result.iterations = iteration;
      result.status = unconverged.empty() ? RunStatus::kConverged
                                          : RunStatus::kIterationCap;
      return result;
    }

    for (const int root : unconverged) {
      const double e = solver.eigenvalues()(root);
      Eigen::VectorXcd delta(dim);
      for (Eigen::Index t = 0; t < dim; ++t) {
        double denom = h_diag(t) - e;
        if (std::abs(denom) < options.preconditioner_floor) {
          denom = denom < 0 ? -options.preconditioner_floor
                            : options.preconditioner_floor;
        }
        delta(t) = -residues.col(root)(t) / denom;
      }
      delta.normalize();
      Eigen::VectorXcd projected = orthogonalize(b, delta);
      if (projected.norm() > options.lindep_ratio) {
        b.conservativeResize(Eigen::NoChange, b.cols() + 1);
        b.col(b.cols() - 1) = projected / projected.norm();
        ++rec.added_vectors;
      } else {
        ++rec.lin_dep_rejections;
      }
    }

    const bool stalled = rec.added_vectors == 0;
    result.records.push_back(std::move(rec));
    if (stalled) {
      result.values.resize(tracked);
      result.vectors.resize(dim, tracked);
      for (int i = 0; i < tracked; ++i) {
        result.values(i) = solver.eigenvalues()(i);
        result.vectors.col(i) = ritz.col(i);
      }
      result.iterations = iteration;
      result.status = RunStatus::kStalled;
      return result;
    }
  }
}

}  // namespace qdav
