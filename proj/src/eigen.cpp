#include "wavesplit/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavesplit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                        double x, double pivmin) {
    const std::size_t n = d.size();
    std::size_t count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(q) < pivmin) q = (q < 0.0) ? -pivmin : pivmin;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

void gershgorin(const std::vector<double>& d, const std::vector<double>& e, double& lo,
                double& hi) {
    const std::size_t n = d.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i + 1 < n) r += std::abs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) + 2.0 * kEps;
    lo -= pad;
    hi += pad;
}

// Deterministic start vector for inverse iteration.
struct XorShift {
    std::uint64_t s;
    double next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
};

}  // namespace

std::vector<double> tridiag_eigenvalues_bisect(const std::vector<double>& diag,
                                               const std::vector<double>& offdiag,
                                               std::size_t i0, std::size_t i1) {
    const std::size_t n = diag.size();
    if (offdiag.size() + 1 != n) throw Error("bisect: offdiag size must be n-1");
    if (i1 > n || i0 >= i1) throw Error("bisect: bad index range");
    double glo, ghi;
    gershgorin(diag, offdiag, glo, ghi);
    double emax = 0.0;
    for (double x : offdiag) emax = std::max(emax, std::abs(x));
    const double pivmin = std::max(emax * emax * kEps, std::numeric_limits<double>::min());

    std::vector<double> out;
    out.reserve(i1 - i0);
    for (std::size_t idx = i0; idx < i1; ++idx) {
        double lo = glo, hi = ghi;
        // invariant: count(lo) <= idx < count(hi)
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count(diag, offdiag, mid, pivmin) > idx)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag,
                                        double eigenvalue) {
    const std::size_t n = diag.size();
    if (n < 2) return {1.0};
    // LU with partial pivoting of (T - lambda I); pivoting introduces a
    // second superdiagonal (LAPACK dgttrf layout).
    std::vector<double> d(n), dl(offdiag), du(offdiag), du2(n - 2, 0.0);
    std::vector<char> pivoted(n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - eigenvalue;

    double emax = 0.0;
    for (double e : offdiag) emax = std::max(emax, std::abs(e));
    const double pivmin = std::max(emax * kEps, std::numeric_limits<double>::min());

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (std::abs(d[i]) < pivmin) d[i] = (d[i] < 0.0) ? -pivmin : pivmin;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            pivoted[i] = 1;
        }
    }
    if (std::abs(d[n - 1]) < pivmin) d[n - 1] = (d[n - 1] < 0.0) ? -pivmin : pivmin;

    std::vector<double> x(n), v(n);
    XorShift rng{0x9e3779b97f4a7c15ull ^ (n * 0x2545F4914F6CDD1Dull)};
    for (auto& t : x) t = rng.next();

    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> b(x);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (pivoted[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl[i] * b[i];
        }
        v[n - 1] = b[n - 1] / d[n - 1];
        v[n - 2] = (b[n - 2] - du[n - 2] * v[n - 1]) / d[n - 2];
        for (std::size_t ii = n; ii >= 3; --ii) {
            const std::size_t i = ii - 3;
            v[i] = (b[i] - du[i] * v[i + 1] - du2[i] * v[i + 2]) / d[i];
        }
        double nrm = 0.0;
        for (double t : v) nrm += t * t;
        nrm = std::sqrt(nrm);
        for (auto& t : v) t /= nrm;
        x = v;
    }
    return v;
}

// --- dense QL with implicit shifts (EISPACK tql1/tql2 lineage) ---

namespace {
double hypot2(double a, double b) { return std::hypot(a, b); }

void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 std::vector<std::vector<double>>* z) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.push_back(0.0);  // e[n-1] sentinel
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw ConvergenceFailure("dense QL: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    const std::size_t i = ii;
                    double f = s * e[i];
                    const double bb = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * bb;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - bb;
                    if (z) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = (*z)[i + 1][k];
                            (*z)[i + 1][k] = s * (*z)[i][k] + c * f;
                            (*z)[i][k] = c * (*z)[i][k] - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}
}  // namespace

std::vector<double> dense_tridiag_eigenvalues(std::vector<double> diag,
                                              std::vector<double> offdiag) {
    if (offdiag.size() + 1 != diag.size()) throw Error("dense: offdiag size must be n-1");
    ql_implicit(diag, offdiag, nullptr);
    std::sort(diag.begin(), diag.end());
    return diag;
}

void dense_tridiag_eigensystem(std::vector<double>& diag, std::vector<double>& offdiag,
                               std::vector<std::vector<double>>& vectors) {
    const std::size_t n = diag.size();
    if (offdiag.size() + 1 != n) throw Error("dense: offdiag size must be n-1");
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;
    ql_implicit(diag, offdiag, &vectors);
    // sort ascending, permuting vectors alongside
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
    std::vector<double> d2(n);
    std::vector<std::vector<double>> v2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d2[i] = diag[order[i]];
        v2[i] = std::move(vectors[order[i]]);
    }
    diag = std::move(d2);
    vectors = std::move(v2);
}

// --- Hamiltonian assembly and eigenpair extraction ---

DiscreteHamiltonian build_hamiltonian(const Grid& grid, const PotentialSamples& v) {
    if (v.grid == nullptr || !(*v.grid == grid))
        throw GridMismatch("build_hamiltonian: samples grid differs");
    DiscreteHamiltonian h;
    h.grid = &grid;
    const double inv_dz2 = 1.0 / (grid.dz() * grid.dz());
    h.offdiag = -0.5 * inv_dz2;
    h.diag.resize(grid.n());
    for (std::size_t j = 0; j < grid.n(); ++j) h.diag[j] = inv_dz2 + v.values[j];
    return h;
}

namespace {

// Even/odd parity sector tridiagonals for a reflection-symmetric H on a
// cell-centered grid (n even, no point at z = 0). Sector size m = n/2 in
// the left-half basis u_j = (e_j +- e_{n-1-j})/sqrt(2); the only change is
// diag[m-1] +- offdiag.
struct SectorMatrices {
    std::vector<double> even_diag, odd_diag, offdiag;
};

SectorMatrices parity_sectors(const DiscreteHamiltonian& h) {
    const std::size_t n = h.diag.size();
    const std::size_t m = n / 2;
    SectorMatrices s;
    s.even_diag.assign(h.diag.begin(), h.diag.begin() + static_cast<long>(m));
    s.odd_diag = s.even_diag;
    s.even_diag[m - 1] += h.offdiag;
    s.odd_diag[m - 1] -= h.offdiag;
    s.offdiag.assign(m - 1, h.offdiag);
    return s;
}

Wavefunction sector_vector_to_state(const Grid& grid, const std::vector<double>& c,
                                    bool even) {
    const std::size_t n = grid.n();
    const std::size_t m = n / 2;
    std::vector<cplx> amp(n);
    const double inv_sqrt_dz = 1.0 / std::sqrt(grid.dz());
    const double s = inv_sqrt_dz / std::sqrt(2.0);
    for (std::size_t j = 0; j < m; ++j) {
        amp[j] = c[j] * s;
        amp[n - 1 - j] = (even ? c[j] : -c[j]) * s;
    }
    return Wavefunction(grid, std::move(amp));
}

double residual_norm(const DiscreteHamiltonian& h, const Wavefunction& psi, double energy) {
    const auto& a = psi.amplitudes();
    const std::size_t n = a.size();
    double r2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx hx = h.diag[j] * a[j];
        if (j > 0) hx += h.offdiag * a[j - 1];
        if (j + 1 < n) hx += h.offdiag * a[j + 1];
        r2 += std::norm(hx - energy * a[j]);
    }
    return std::sqrt(h.grid->dz() * r2) / psi.norm();
}

double rayleigh_quotient(const std::vector<double>& diag, const std::vector<double>& offdiag,
                         const std::vector<double>& v) {
    const std::size_t n = v.size();
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double hx = diag[j] * v[j];
        if (j > 0) hx += offdiag[j - 1] * v[j - 1];
        if (j + 1 < n) hx += offdiag[j] * v[j + 1];
        num += v[j] * hx;
    }
    return num;  // v has unit 2-norm
}

bool potential_is_symmetric(const DiscreteHamiltonian& h) {
    const std::size_t n = h.diag.size();
    for (std::size_t j = 0; j < n / 2; ++j)
        if (h.diag[j] != h.diag[n - 1 - j]) return false;
    return true;
}

}  // namespace

std::vector<EigenLevel> lowest_eigenpairs(const DiscreteHamiltonian& h, std::size_t k,
                                          bool symmetric) {
    const std::size_t n = h.diag.size();
    if (k < 1 || k > n / 4) throw Error("lowest_eigenpairs: need 1 <= k <= n/4");
    const Grid& grid = *h.grid;
    std::vector<EigenLevel> out;
    out.reserve(k);

    if (symmetric) {
        if (!potential_is_symmetric(h))
            throw Error("lowest_eigenpairs: symmetric path on asymmetric potential");
        const SectorMatrices s = parity_sectors(h);
        const std::size_t per = k;  // either sector alone could hold all k lowest
        const auto ev_e = tridiag_eigenvalues_bisect(s.even_diag, s.offdiag, 0, per);
        const auto ev_o = tridiag_eigenvalues_bisect(s.odd_diag, s.offdiag, 0, per);
        std::size_t ie = 0, io = 0;
        while (out.size() < k) {
            const bool take_even = (io >= ev_o.size()) ||
                                   (ie < ev_e.size() && ev_e[ie] <= ev_o[io]);
            const double lambda = take_even ? ev_e[ie] : ev_o[io];
            const auto& diag = take_even ? s.even_diag : s.odd_diag;
            auto c = tridiag_eigenvector(diag, s.offdiag, lambda);
            const double refined = rayleigh_quotient(diag, s.offdiag, c);
            EigenLevel lvl{out.size(), refined, take_even ? Parity::Even : Parity::Odd,
                           sector_vector_to_state(grid, c, take_even)};
            if (residual_norm(h, lvl.state, lvl.energy) >= 1e-9)
                throw ConvergenceFailure("lowest_eigenpairs: residual above 1e-9");
            out.push_back(std::move(lvl));
            if (take_even) ++ie; else ++io;
        }
        return out;
    }

    std::vector<double> offdiag(n - 1, h.offdiag);
    const auto ev = tridiag_eigenvalues_bisect(h.diag, offdiag, 0, k);
    std::vector<std::vector<double>> found;
    double emax = 0.0;
    for (double x : h.diag) emax = std::max(emax, std::abs(x));
    const double cluster_tol = 1e-8 * std::max(1.0, emax);
    for (std::size_t i = 0; i < k; ++i) {
        auto c = tridiag_eigenvector(h.diag, offdiag, ev[i]);
        // within a near-degenerate cluster, orthogonalize against the
        // vectors already found
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(ev[i] - ev[j]) < cluster_tol) {
                double dot = 0.0;
                for (std::size_t t = 0; t < n; ++t) dot += found[j][t] * c[t];
                for (std::size_t t = 0; t < n; ++t) c[t] -= dot * found[j][t];
            }
        }
        double nrm = 0.0;
        for (double t : c) nrm += t * t;
        nrm = std::sqrt(nrm);
        for (auto& t : c) t /= nrm;
        const double refined = rayleigh_quotient(h.diag, offdiag, c);
        found.push_back(c);
        std::vector<cplx> amp(n);
        const double inv_sqrt_dz = 1.0 / std::sqrt(grid.dz());
        for (std::size_t j = 0; j < n; ++j) amp[j] = c[j] * inv_sqrt_dz;
        EigenLevel lvl{i, refined, Parity::Mixed, Wavefunction(grid, std::move(amp))};
        if (residual_norm(h, lvl.state, lvl.energy) >= 1e-9)
            throw ConvergenceFailure("lowest_eigenpairs: residual above 1e-9");
        lvl.parity = classify_parity(lvl);
        out.push_back(std::move(lvl));
    }
    return out;
}

Parity classify_parity(const EigenLevel& level, double tol) {
    const Wavefunction r = reflect(level.state);
    const double s = inner_product(r, level.state).real();
    if (s > 1.0 - tol) return Parity::Even;
    if (s < -(1.0 - tol)) return Parity::Odd;
    return Parity::Mixed;
}

std::vector<EigenLevel> single_trap_levels(const TrapParams& p, std::size_t k,
                                           const Grid& grid, double center) {
    const PotentialSamples v = sample_single_trap(grid, p, center);
    const DiscreteHamiltonian h = build_hamiltonian(grid, v);
    return lowest_eigenpairs(h, k, center == 0.0);
}

SpectrumTable adiabatic_spectrum(const TrapParams& p, const std::vector<double>& d_values,
                                 std::size_t k, const Grid& grid) {
    double dmax = 0.0;
    for (double d : d_values) dmax = std::max(dmax, std::abs(d));
    if (dmax / 2.0 + 4.0 * p.sigma > grid.z_max())
        throw GridTooNarrow("adiabatic_spectrum: need max|d|/2 + 4 sigma <= z_max");
    SpectrumTable table;
    table.d_values = d_values;
    table.levels.reserve(d_values.size());
    for (double d : d_values) {
        const auto v = sample_double_trap(grid, p, d);
        const auto h = build_hamiltonian(grid, v);
        table.levels.push_back(lowest_eigenpairs(h, k, true));
    }
    // fix signs so successive overlaps along the scan are positive
    for (std::size_t s = 1; s < table.levels.size(); ++s) {
        for (std::size_t l = 0; l < k; ++l) {
            const double ov =
                inner_product(table.levels[s - 1][l].state, table.levels[s][l].state).real();
            if (ov < 0.0)
                for (auto& a : table.levels[s][l].state.amplitudes()) a = -a;
        }
    }
    table.continuity_sign_fixed = true;
    return table;
}

double tunnel_splitting(const TrapParams& p, double d, const Grid& grid) {
    if (std::abs(d) / 2.0 + 4.0 * p.sigma > grid.z_max())
        throw GridTooNarrow("tunnel_splitting: need |d|/2 + 4 sigma <= z_max");
    const auto v = sample_double_trap(grid, p, d);
    const auto h = build_hamiltonian(grid, v);
    const SectorMatrices s = parity_sectors(h);
    const double e0 = tridiag_eigenvalues_bisect(s.even_diag, s.offdiag, 0, 1)[0];
    const double o0 = tridiag_eigenvalues_bisect(s.odd_diag, s.offdiag, 0, 1)[0];
    return std::max(0.0, o0 - e0);
}

}  // namespace wavesplit
