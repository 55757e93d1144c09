#ifndef WAVESPLIT_DIAGNOSTICS_HPP
#define WAVESPLIT_DIAGNOSTICS_HPP

// Adiabaticity diagnostics: the dH/dt transition-rate criterion, the parity
// selection rule (opposite-parity couplings vanish identically), and parity
// leakage along a trajectory.

#include <utility>
#include <vector>

#include "wavesplit/core.hpp"
#include "wavesplit/eigen.hpp"
#include "wavesplit/propagate.hpp"

namespace wavesplit {

struct AdiabaticityReport {
    double worst_ratio = 0.0;
    double worst_d = 0.0;
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
    std::vector<std::pair<double, double>> per_d_curve;  // (d, max same-parity ratio)
};

// dV2/dd = [V'(z + d/2) - V'(z - d/2)] / 2 with the analytic Gaussian
// derivative; an even function of z.
std::vector<double> dpotential_dd(const Grid& grid, const TrapParams& p, double d);

// |<psi_i| v dV2/dd |psi_j>| / (E_i - E_j)^2, hbar = 1. Returns 0 without
// computing for opposite-parity pairs (selection rule) and for i == j
// (real eigenfunctions). Throws DegenerateGap for same-parity gaps < 1e-12.
double adiabaticity_ratio(const EigenLevel& i, const EigenLevel& j, double d, double v,
                          const TrapParams& p, const Grid& grid);

AdiabaticityReport scan_adiabaticity(const TrapParams& p, double v,
                                     const std::vector<double>& d_values, std::size_t k,
                                     const Grid& grid);

struct ParityLeakage {
    double max_leak = 0.0;
    std::vector<std::pair<double, double>> leak_curve;  // (t, leak)
};

// Deviation of the even-parity weight from its initial value over time.
ParityLeakage parity_leakage(const std::vector<TrajectoryRecord>& trajectory);

}  // namespace wavesplit

#endif
