#ifndef WAVESPLIT_PROTOCOL_HPP
#define WAVESPLIT_PROTOCOL_HPP

// Full splitting experiments: initial-state preparation, trap-motion
// schedules in the lab and midpoint frames, population measurement,
// velocity sweeps and center-of-mass trajectories.
//
// Geometry (lab frame): the occupied trap sits at the origin; the empty
// trap starts at -d_start (> 10 sigma to the right for d_start < 0) and
// translates at -v, so the relative separation d(t) = d_start + v t sweeps
// d_start -> d_end.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavesplit/core.hpp"
#include "wavesplit/propagate.hpp"

namespace wavesplit {

enum class Frame { LabStationaryTrap, MidpointConstantV, MidpointWithRamp };

using RampSchedule = std::function<double(double)>;  // a(t)

struct SplitProtocol {
    TrapParams trap;
    Grid grid;
    double d_start = -12.0;  // < -10 sigma
    double d_end = 12.0;     // > 10 sigma
    double v = 0.15;         // > 0
    Frame frame = Frame::LabStationaryTrap;
    RampSchedule ramp;  // MidpointWithRamp only
    PropagationConfig cfg;
    std::size_t n_quad = 256;       // quadrature intervals for theta_predicted
    bool compute_adiabaticity = true;
    bool mirrored = false;  // reflect the whole geometry z -> -z
};

struct SplitResult {
    double p_stay = 0.0;      // population of the initially occupied trap
    double p_transfer = 0.0;  // population of the other trap
    double p_lost = 0.0;
    double p_stay_halfspace = 0.0;  // diagnostic half-space measurement
    double theta_tdse = 0.0;        // unwrapped with theta_predicted as branch hint
    double theta_tdse_raw = 0.0;    // arcsin(sqrt(p_stay)) in [0, pi/2]
    double theta_predicted = 0.0;
    double max_adiabaticity_ratio = 0.0;
    bool adiabaticity_warning = false;  // max ratio > 0.1
    std::vector<TrajectoryRecord> trajectory;
};

Wavefunction prepare_initial_state(const TrapParams& p, double center, const Grid& grid);

SplitResult run_split(const SplitProtocol& sp);

struct Populations {
    double p1;
    double p2;
    double p_lost;
    double p1_halfspace;
    double p2_halfspace;
};

// Overlap with Galilean-boosted single-trap ground states at centers
// (c1, c2) moving at (v1, v2); half-space masses reported alongside.
Populations measure_populations(const Wavefunction& psi, const TrapParams& p, double c1,
                                double c2, double v1, double v2);

struct ComSample {
    double t;
    double mean_z;
    double d;         // separation d(t)
    double midpoint;  // midpoint of the two trap centers
    double c1;
    double c2;
};

std::vector<ComSample> com_trajectory(const SplitProtocol& sp);

struct SweepRow {
    double v = 0.0;
    double inv_v = 0.0;
    double p_stay = 0.0;
    double theta_tdse = 0.0;
    double theta_predicted = 0.0;
    double max_adiabaticity_ratio = 0.0;
    std::optional<std::string> error;
};

std::vector<SweepRow> sweep_velocity(const SplitProtocol& templ, const std::vector<double>& v_list);

// Midpoint-frame run with the non-inertial term M a(t) z added to the
// potential; sp.frame must be MidpointWithRamp.
SplitResult run_noninertial(const SplitProtocol& sp);

// Trap centers at separation d for a protocol (after mirroring).
struct TrapCenters {
    double c1;  // initially occupied trap
    double c2;
    double v1;  // trap velocities in the propagation frame
    double v2;
};
TrapCenters trap_centers(const SplitProtocol& sp, double d);

}  // namespace wavesplit

#endif
