#ifndef WAVESPLIT_EIGEN_HPP
#define WAVESPLIT_EIGEN_HPP

// Finite-difference Hamiltonians on a Grid and their low-lying eigenpairs.
// The production path is Sturm-sequence bisection + inverse iteration on
// the symmetric tridiagonal matrix; for reflection-symmetric potentials the
// matrix is first split exactly into even/odd parity sectors, which removes
// the near-degenerate doublet ambiguity at the source. A dense QL solver
// (see dense_*) serves as the independent small-n oracle.

#include <vector>

#include "wavesplit/core.hpp"

namespace wavesplit {

struct DiscreteHamiltonian {
    std::vector<double> diag;  // 1/dz^2 + V_j
    double offdiag;            // -1/(2 dz^2)
    const Grid* grid = nullptr;
};

enum class Parity { Even, Odd, Mixed };

struct EigenLevel {
    std::size_t index = 0;
    double energy = 0.0;
    Parity parity = Parity::Mixed;
    Wavefunction state;  // real-valued, normalized under the dz inner product
};

struct SpectrumTable {
    std::vector<double> d_values;
    std::vector<std::vector<EigenLevel>> levels;  // per d, ascending energy
    bool continuity_sign_fixed = false;
};

DiscreteHamiltonian build_hamiltonian(const Grid& grid, const PotentialSamples& v);

// k lowest eigenpairs, ascending. `symmetric` engages the exact parity-sector
// split (valid only when the potential samples are reflection-symmetric).
std::vector<EigenLevel> lowest_eigenpairs(const DiscreteHamiltonian& h, std::size_t k,
                                          bool symmetric = false);

Parity classify_parity(const EigenLevel& level, double tol = 1e-8);

std::vector<EigenLevel> single_trap_levels(const TrapParams& p, std::size_t k,
                                           const Grid& grid, double center = 0.0);

SpectrumTable adiabatic_spectrum(const TrapParams& p, const std::vector<double>& d_values,
                                 std::size_t k, const Grid& grid);

// Ground-doublet gap E0^(o) - E0^(e) at separation d.
double tunnel_splitting(const TrapParams& p, double d, const Grid& grid);

// --- low-level tridiagonal machinery (exposed for tests/oracles) ---

// Eigenvalues of a symmetric tridiagonal matrix (diag, offdiag constant or
// per-entry) by Sturm-sequence bisection; indices [i0, i1) in ascending order.
std::vector<double> tridiag_eigenvalues_bisect(const std::vector<double>& diag,
                                               const std::vector<double>& offdiag,
                                               std::size_t i0, std::size_t i1);

// Eigenvector for a given eigenvalue by inverse iteration (unit 2-norm).
std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag,
                                        double eigenvalue);

// Dense QL-with-implicit-shifts oracle. Eigenvalues only (O(n^2)) or with
// vectors (O(n^3); `vectors[i]` is the eigenvector of the i-th ascending
// eigenvalue). Independent of the bisection path.
std::vector<double> dense_tridiag_eigenvalues(std::vector<double> diag,
                                              std::vector<double> offdiag);
void dense_tridiag_eigensystem(std::vector<double>& diag, std::vector<double>& offdiag,
                               std::vector<std::vector<double>>& vectors);

}  // namespace wavesplit

#endif
