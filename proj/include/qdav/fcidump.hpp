#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdav {

/// Second-quantized active-space Hamiltonian: core energy, one-body h_pq and
/// chemist-notation two-body (pq|rs), spatial-orbital indexed with the full
/// 8-fold permutation symmetry filled in.
struct FermionHamiltonian {
  int n_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd one_body;
  std::vector<double> two_body;  // dense n^4, chemist (pq|rs)

  int n_spin_orbitals() const { return 2 * n_spatial; }

  double eri(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return two_body[((static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * n +
                     static_cast<std::size_t>(r)) * n +
                    static_cast<std::size_t>(s)];
  }
  void set_eri(int p, int q, int r, int s, double value);
};

/// Parses the FCIDUMP convention: an `&FCI NORB=...,NELEC=...,MS2=...`
/// namelist terminated by `&END` or `/`, then `value i j k l` rows
/// (1-indexed; all-zero indices carry the core energy, k=l=0 rows carry
/// h_ij). Whitespace- and case-tolerant; ORBSYM/ISYM are accepted and
/// ignored. Errors are reported with line numbers.
FermionHamiltonian parse_fcidump(std::istream& in);
FermionHamiltonian parse_fcidump(const std::string& text);
FermionHamiltonian parse_fcidump_file(const std::string& path);

}  // namespace qdav
