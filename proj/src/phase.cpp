#include "wavesplit/phase.hpp"

#include <cmath>

#include "wavesplit/eigen.hpp"

namespace wavesplit {

double area_loop(const TrapParams& p, double d_min, double d_max, const Grid& grid,
                 std::size_t n_quad, double tail_tol) {
    if (!(d_min < -10.0 * p.sigma && d_max > 10.0 * p.sigma))
        throw ValidationError("area_loop: need d_min < -10 sigma and d_max > 10 sigma");
    if (n_quad < 64) throw ValidationError("area_loop: n_quad must be >= 64");
    if (n_quad % 2 != 0) ++n_quad;

    const double gap_lo = tunnel_splitting(p, d_min, grid);
    const double gap_hi = tunnel_splitting(p, d_max, grid);
    if (gap_lo > tail_tol || gap_hi > tail_tol)
        throw TailsNotDegenerate("area_loop: tunnel splitting above tolerance at an endpoint");

    // composite Simpson over n_quad intervals
    const double h = (d_max - d_min) / static_cast<double>(n_quad);
    double sum = gap_lo + gap_hi;
    for (std::size_t i = 1; i < n_quad; ++i) {
        const double d = d_min + h * static_cast<double>(i);
        sum += (i % 2 == 1 ? 4.0 : 2.0) * tunnel_splitting(p, d, grid);
    }
    return sum * h / 3.0;
}

PhaseResult splitting_phase(const TrapParams& p, double v, double d_min, double d_max,
                            const Grid& grid, std::size_t n_quad) {
    if (!(v > 0.0)) throw ValidationError("splitting_phase: v must be > 0");
    const double area = area_loop(p, d_min, d_max, grid, n_quad);
    return PhaseResult{area / (2.0 * v), area, v, d_min, d_max};
}

PredictedPopulations predicted_populations(double theta_c) {
    const double c = std::cos(theta_c);
    const double transfer = c * c;
    return PredictedPopulations{transfer, 1.0 - transfer};  // sums to 1 exactly
}

double velocity_for_phase(const TrapParams& p, double theta_target, double d_min,
                          double d_max, const Grid& grid, std::size_t n_quad) {
    if (!(theta_target > 0.0))
        throw ValidationError("velocity_for_phase: theta_target must be > 0");
    return area_loop(p, d_min, d_max, grid, n_quad) / (2.0 * theta_target);
}

}  // namespace wavesplit
