#include "wavesplit/diagnostics.hpp"

#include <cmath>

namespace wavesplit {

std::vector<double> dpotential_dd(const Grid& grid, const TrapParams& p, double d) {
    std::vector<double> out(grid.n());
    const double inv_s2 = 1.0 / (p.sigma * p.sigma);
    const double inv2s2 = 0.5 * inv_s2;
    auto vprime = [&](double z) {
        return p.depth * z * inv_s2 * std::exp(-z * z * inv2s2);
    };
    for (std::size_t j = 0; j < grid.n(); ++j) {
        const double z = grid.z(j);
        out[j] = 0.5 * (vprime(z + 0.5 * d) - vprime(z - 0.5 * d));
    }
    return out;
}

double adiabaticity_ratio(const EigenLevel& i, const EigenLevel& j, double d, double v,
                          const TrapParams& p, const Grid& grid) {
    if (&i == &j || i.index == j.index) return 0.0;  // real eigenfunctions: null diagonal
    if (i.parity != Parity::Mixed && j.parity != Parity::Mixed && i.parity != j.parity)
        return 0.0;  // parity selection rule, no matrix element computed
    const double gap = i.energy - j.energy;
    if (std::abs(gap) < 1e-12)
        throw DegenerateGap("adiabaticity_ratio: same-parity gap below 1e-12");
    const std::vector<double> dv = dpotential_dd(grid, p, d);
    const auto& ai = i.state.amplitudes();
    const auto& aj = j.state.amplitudes();
    double elem = 0.0;
    for (std::size_t t = 0; t < grid.n(); ++t)
        elem += ai[t].real() * dv[t] * aj[t].real();
    elem *= grid.dz();
    return std::abs(v * elem) / (gap * gap);
}

AdiabaticityReport scan_adiabaticity(const TrapParams& p, double v,
                                     const std::vector<double>& d_values, std::size_t k,
                                     const Grid& grid) {
    if (k < 4) throw ValidationError("scan_adiabaticity: k must be >= 4");
    AdiabaticityReport rep;
    for (double d : d_values) {
        const auto samples = sample_double_trap(grid, p, d);
        const auto h = build_hamiltonian(grid, samples);
        const auto levels = lowest_eigenpairs(h, k, true);
        double worst = 0.0;
        std::pair<std::size_t, std::size_t> worst_pair{0, 0};
        for (std::size_t a = 0; a < levels.size(); ++a) {
            for (std::size_t b = a + 1; b < levels.size(); ++b) {
                if (levels[a].parity != levels[b].parity) continue;
                const double r = adiabaticity_ratio(levels[a], levels[b], d, v, p, grid);
                if (r > worst) {
                    worst = r;
                    worst_pair = {a, b};
                }
            }
        }
        rep.per_d_curve.emplace_back(d, worst);
        if (worst > rep.worst_ratio) {
            rep.worst_ratio = worst;
            rep.worst_d = d;
            rep.worst_pair = worst_pair;
        }
    }
    return rep;
}

ParityLeakage parity_leakage(const std::vector<TrajectoryRecord>& trajectory) {
    ParityLeakage out;
    if (trajectory.empty()) return out;
    const double w0 = trajectory.front().parity_even_weight;
    for (const auto& rec : trajectory) {
        const double leak = std::abs(rec.parity_even_weight - w0);
        out.leak_curve.emplace_back(rec.t, leak);
        out.max_leak = std::max(out.max_leak, leak);
    }
    return out;
}

}  // namespace wavesplit
