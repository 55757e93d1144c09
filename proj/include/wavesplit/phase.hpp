#ifndef WAVESPLIT_PHASE_HPP
#define WAVESPLIT_PHASE_HPP

// Two-level adiabatic prediction: the loop area between the ground-doublet
// curves, the accumulated relative phase theta_C = area / (2 v), and the
// predicted splitting populations.
//
// Convention: the loop integral equals 2 theta_C; we store theta_C itself.

#include <utility>

#include "wavesplit/core.hpp"

namespace wavesplit {

struct PhaseResult {
    double theta_c = 0.0;  // radians
    double area = 0.0;     // energy * length, the loop integral
    double v = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
};

// Integral of the tunnel splitting dE0(d) over [d_min, d_max] by composite
// Simpson quadrature with n_quad intervals (rounded up to even). Both tails
// must lie in the degenerate regime (dE0 below tail_tol at the endpoints).
double area_loop(const TrapParams& p, double d_min, double d_max, const Grid& grid,
                 std::size_t n_quad, double tail_tol = 1e-4);

PhaseResult splitting_phase(const TrapParams& p, double v, double d_min, double d_max,
                            const Grid& grid, std::size_t n_quad);

struct PredictedPopulations {
    double transfer;  // cos^2 theta_C, trap opposite the initial one
    double stay;      // sin^2 theta_C, the initially occupied trap
};

PredictedPopulations predicted_populations(double theta_c);

// Velocity producing a target phase: v = area / (2 theta_target).
double velocity_for_phase(const TrapParams& p, double theta_target, double d_min,
                          double d_max, const Grid& grid, std::size_t n_quad);

}  // namespace wavesplit

#endif
