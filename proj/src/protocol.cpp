#include "wavesplit/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "wavesplit/diagnostics.hpp"
#include "wavesplit/eigen.hpp"
#include "wavesplit/phase.hpp"

namespace wavesplit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double protocol_duration(const SplitProtocol& sp) { return (sp.d_end - sp.d_start) / sp.v; }

double separation_at(const SplitProtocol& sp, double t) { return sp.d_start + sp.v * t; }

// Multiply by the Galilean plane-wave factor e^{i M u z} (M = 1).
void apply_boost(Wavefunction& psi, double u) {
    if (u == 0.0) return;
    const Grid& g = psi.grid();
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double phi = u * g.z(j);
        psi.amplitudes()[j] *= cplx{std::cos(phi), std::sin(phi)};
    }
}

PotentialSamples potential_for(const SplitProtocol& sp, double t) {
    const double d = separation_at(sp, t);
    if (sp.frame == Frame::LabStationaryTrap) {
        const double sign = sp.mirrored ? -1.0 : 1.0;
        PotentialSamples s = sample_single_trap(sp.grid, sp.trap, 0.0);
        const PotentialSamples other = sample_single_trap(sp.grid, sp.trap, sign * (-d));
        for (std::size_t j = 0; j < s.values.size(); ++j) s.values[j] += other.values[j];
        s.separation = d;
        return s;
    }
    PotentialSamples s = sample_double_trap(sp.grid, sp.trap, d);
    if (sp.frame == Frame::MidpointWithRamp && sp.ramp) {
        const double a = sp.ramp(t);
        if (a != 0.0)
            for (std::size_t j = 0; j < s.values.size(); ++j)
                s.values[j] += a * sp.grid.z(j);
    }
    return s;
}

void validate(const SplitProtocol& sp) {
    if (!(sp.v > 0.0)) throw ValidationError("protocol: v must be > 0");
    if (!(sp.d_start < -10.0 * sp.trap.sigma))
        throw ValidationError("protocol: d_start must be < -10 sigma");
    if (!(sp.d_end > 10.0 * sp.trap.sigma))
        throw ValidationError("protocol: d_end must be > 10 sigma");
    const double reach =
        (sp.frame == Frame::LabStationaryTrap)
            ? std::max(std::abs(sp.d_start), std::abs(sp.d_end)) + 4.0 * sp.trap.sigma
            : std::max(std::abs(sp.d_start), std::abs(sp.d_end)) / 2.0 + 4.0 * sp.trap.sigma;
    if (reach > sp.grid.z_max())
        throw GridTooNarrow("protocol: grid too narrow for the trap excursion");
}

double unwrap_theta(double raw, double hint) {
    // raw = arcsin(sqrt(p_stay)) in [0, pi/2]; candidates k*pi +- raw
    double best = raw;
    double best_err = std::abs(raw - hint);
    const int kmax = static_cast<int>(std::ceil(hint / kPi)) + 2;
    for (int k = 0; k <= kmax; ++k) {
        for (double cand : {k * kPi + raw, k * kPi - raw}) {
            if (cand < 0.0) continue;
            const double err = std::abs(cand - hint);
            if (err < best_err) {
                best_err = err;
                best = cand;
            }
        }
    }
    return best;
}

}  // namespace

TrapCenters trap_centers(const SplitProtocol& sp, double d) {
    TrapCenters c;
    if (sp.frame == Frame::LabStationaryTrap) {
        c = TrapCenters{0.0, -d, 0.0, -sp.v};
    } else {
        c = TrapCenters{d / 2.0, -d / 2.0, sp.v / 2.0, -sp.v / 2.0};
    }
    if (sp.mirrored) {
        c.c1 = -c.c1;
        c.c2 = -c.c2;
        c.v1 = -c.v1;
        c.v2 = -c.v2;
    }
    return c;
}

Wavefunction prepare_initial_state(const TrapParams& p, double center, const Grid& grid) {
    if (std::abs(center) + 4.0 * p.sigma > grid.z_max())
        throw GridTooNarrow("prepare_initial_state: trap does not fit in grid");
    auto levels = single_trap_levels(p, 1, grid, center);
    Wavefunction psi = std::move(levels[0].state);
    psi.normalize();
    return psi;
}

Populations measure_populations(const Wavefunction& psi, const TrapParams& p, double c1,
                                double c2, double v1, double v2) {
    if (std::abs(c1 - c2) <= 10.0 * p.sigma)
        throw TrapsUnresolved("measure_populations: |c1 - c2| must exceed 10 sigma");
    const Grid& g = psi.grid();
    Wavefunction phi1 = prepare_initial_state(p, c1, g);
    Wavefunction phi2 = prepare_initial_state(p, c2, g);
    apply_boost(phi1, v1);
    apply_boost(phi2, v2);
    const double p1 = std::norm(inner_product(phi1, psi));
    const double p2 = std::norm(inner_product(phi2, psi));

    const double mid = 0.5 * (c1 + c2);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double w = std::norm(psi.amplitudes()[j]);
        if ((g.z(j) - mid) * (c1 - mid) > 0.0)
            m1 += w;
        else
            m2 += w;
    }
    return Populations{p1, p2, 1.0 - p1 - p2, g.dz() * m1, g.dz() * m2};
}

SplitResult run_split(const SplitProtocol& sp) {
    validate(sp);
    const double sigma = sp.trap.sigma;

    // endpoint degeneracy (midpoint-frame grid geometry suffices for both frames)
    for (double d : {sp.d_start, sp.d_end}) {
        if (tunnel_splitting(sp.trap, d, sp.grid) > 1e-4)
            throw ValidationError("protocol: endpoints not in the degenerate regime");
    }

    const PhaseResult phase =
        splitting_phase(sp.trap, sp.v, sp.d_start, sp.d_end, sp.grid, sp.n_quad);

    const TrapCenters c0 = trap_centers(sp, sp.d_start);
    Wavefunction psi = prepare_initial_state(sp.trap, c0.c1, sp.grid);
    apply_boost(psi, c0.v1);

    const double T = protocol_duration(sp);
    PropagationResult prop =
        propagate(psi, [&](double t) { return potential_for(sp, t); }, 0.0, T, sp.cfg);

    const TrapCenters c1 = trap_centers(sp, sp.d_end);
    const Populations pops =
        measure_populations(prop.psi, sp.trap, c1.c1, c1.c2, c1.v1, c1.v2);

    SplitResult res;
    res.p_stay = pops.p1;
    res.p_transfer = pops.p2;
    res.p_lost = pops.p_lost;
    res.p_stay_halfspace = pops.p1_halfspace;
    res.theta_predicted = phase.theta_c;
    res.theta_tdse_raw = std::asin(std::sqrt(std::clamp(res.p_stay, 0.0, 1.0)));
    res.theta_tdse = unwrap_theta(res.theta_tdse_raw, res.theta_predicted);
    res.trajectory = std::move(prop.trajectory);

    if (sp.compute_adiabaticity) {
        std::vector<double> d_scan;
        const double lim = std::min(3.0 * sigma, sp.d_end);
        for (int i = 0; i <= 60; ++i)
            d_scan.push_back(-lim + (2.0 * lim) * static_cast<double>(i) / 60.0);
        const AdiabaticityReport rep = scan_adiabaticity(sp.trap, sp.v, d_scan, 6, sp.grid);
        res.max_adiabaticity_ratio = rep.worst_ratio;
        res.adiabaticity_warning = rep.worst_ratio > 0.1;
    }
    return res;
}

std::vector<ComSample> com_trajectory(const SplitProtocol& sp) {
    SplitProtocol dense = sp;
    if (dense.cfg.observe_every == 0 || dense.cfg.observe_every > 50)
        dense.cfg.observe_every = 50;
    const SplitResult res = run_split(dense);
    std::vector<ComSample> out;
    out.reserve(res.trajectory.size());
    for (const auto& rec : res.trajectory) {
        const double d = separation_at(dense, rec.t);
        const TrapCenters c = trap_centers(dense, d);
        out.push_back(ComSample{rec.t, rec.mean_z, d, 0.5 * (c.c1 + c.c2), c.c1, c.c2});
    }
    return out;
}

std::vector<SweepRow> sweep_velocity(const SplitProtocol& templ,
                                     const std::vector<double>& v_list) {
    std::vector<SweepRow> rows;
    rows.reserve(v_list.size());
    for (double v : v_list) {
        SweepRow row;
        row.v = v;
        row.inv_v = (v != 0.0) ? 1.0 / v : 0.0;
        try {
            SplitProtocol sp = templ;
            sp.v = v;
            const SplitResult r = run_split(sp);
            row.p_stay = r.p_stay;
            row.theta_tdse = r.theta_tdse;
            row.theta_predicted = r.theta_predicted;
            row.max_adiabaticity_ratio = r.max_adiabaticity_ratio;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SplitResult run_noninertial(const SplitProtocol& sp) {
    if (sp.frame != Frame::MidpointWithRamp)
        throw ValidationError("run_noninertial: frame must be MidpointWithRamp");
    return run_split(sp);
}

}  // namespace wavesplit
