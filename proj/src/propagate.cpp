#include "wavesplit/propagate.hpp"

#include <fftw3.h>

#include <cmath>

#include "wavesplit/kernels.hpp"

namespace wavesplit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

struct SplitOperatorStepper::Impl {
    const Grid* grid;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<cplx> buf;
    std::vector<double> k2;        // k^2 per FFT bin
    std::vector<cplx> kin_phase;   // exp(-i k^2 dt / 2) / n, cached per dt
    std::vector<cplx> pot_phase;   // exp(-i V dt / 2), rebuilt per call
    double cached_dt = 0.0;

    explicit Impl(const Grid& g) : grid(&g), buf(g.n()), k2(g.n()), kin_phase(g.n()),
                                   pot_phase(g.n()) {
        const int n = static_cast<int>(g.n());
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
        const double dk = 2.0 * kPi / (static_cast<double>(n) * g.dz());
        for (int m = 0; m < n; ++m) {
            const int mm = (m <= n / 2) ? m : m - n;
            const double k = dk * static_cast<double>(mm);
            k2[static_cast<std::size_t>(m)] = k * k;
        }
    }

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }

    void refresh_kinetic(double dt) {
        if (dt == cached_dt) return;
        const double inv_n = 1.0 / static_cast<double>(grid->n());
        for (std::size_t m = 0; m < grid->n(); ++m) {
            const double phi = -0.5 * k2[m] * dt;
            kin_phase[m] = cplx{std::cos(phi) * inv_n, std::sin(phi) * inv_n};
        }
        cached_dt = dt;
    }
};

SplitOperatorStepper::SplitOperatorStepper(const Grid& grid) : impl_(new Impl(grid)) {}
SplitOperatorStepper::~SplitOperatorStepper() = default;
SplitOperatorStepper::SplitOperatorStepper(SplitOperatorStepper&&) noexcept = default;
SplitOperatorStepper& SplitOperatorStepper::operator=(SplitOperatorStepper&&) noexcept = default;

void SplitOperatorStepper::step(Wavefunction& psi, const PotentialSamples& v_mid, double dt) {
    Impl& im = *impl_;
    if (!(psi.grid() == *im.grid)) throw GridMismatch("split-operator: grid differs");
    const std::size_t n = im.grid->n();
    im.refresh_kinetic(dt);
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = -0.5 * v_mid.values[j] * dt;
        im.pot_phase[j] = cplx{std::cos(phi), std::sin(phi)};
    }
    auto* a = psi.amplitudes().data();
    kernels::cmul_inplace(a, im.pot_phase.data(), n);
    std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), im.buf.begin());
    fftw_execute(im.fwd);
    kernels::cmul_inplace(im.buf.data(), im.kin_phase.data(), n);
    fftw_execute(im.bwd);
    std::copy(im.buf.begin(), im.buf.end(), psi.amplitudes().begin());
    kernels::cmul_inplace(a, im.pot_phase.data(), n);
}

CrankNicolsonStepper::CrankNicolsonStepper(const Grid& grid)
    : grid_(&grid), rhs_(grid.n()), work_a_(grid.n()), work_b_(grid.n()), work_c_(grid.n()) {}

void CrankNicolsonStepper::step(Wavefunction& psi, const PotentialSamples& v_mid, double dt) {
    if (!(psi.grid() == *grid_)) throw GridMismatch("crank-nicolson: grid differs");
    const std::size_t n = grid_->n();
    const double inv_dz2 = 1.0 / (grid_->dz() * grid_->dz());
    const cplx ihalf{0.0, 0.5 * dt};
    const cplx off = ihalf * (-0.5 * inv_dz2);  // A+ off-diagonal
    auto& a = psi.amplitudes();

    // rhs = (1 - i H dt/2) psi  (Dirichlet walls)
    for (std::size_t j = 0; j < n; ++j) {
        const double hd = inv_dz2 + v_mid.values[j];
        cplx hx = hd * a[j];
        if (j > 0) hx += -0.5 * inv_dz2 * a[j - 1];
        if (j + 1 < n) hx += -0.5 * inv_dz2 * a[j + 1];
        rhs_[j] = a[j] - ihalf * hx;
    }
    // Thomas solve of (1 + i H dt/2) x = rhs
    auto& c = work_a_;  // modified upper diagonal
    auto& g = work_b_;  // modified rhs
    cplx beta = 1.0 + ihalf * (inv_dz2 + v_mid.values[0]);
    if (beta == cplx{0.0, 0.0}) throw SolveFailure("crank-nicolson: zero pivot");
    c[0] = off / beta;
    g[0] = rhs_[0] / beta;
    for (std::size_t j = 1; j < n; ++j) {
        beta = 1.0 + ihalf * (inv_dz2 + v_mid.values[j]) - off * c[j - 1];
        if (beta == cplx{0.0, 0.0}) throw SolveFailure("crank-nicolson: zero pivot");
        c[j] = off / beta;
        g[j] = (rhs_[j] - off * g[j - 1]) / beta;
    }
    a[n - 1] = g[n - 1];
    for (std::size_t jj = n - 1; jj-- > 0;) a[jj] = g[jj] - c[jj] * a[jj + 1];
}

Wavefunction step_split_operator(const Wavefunction& psi, const PotentialSamples& v_mid,
                                 double dt) {
    SplitOperatorStepper s(psi.grid());
    Wavefunction out = psi;
    s.step(out, v_mid, dt);
    return out;
}

Wavefunction step_crank_nicolson(const Wavefunction& psi, const PotentialSamples& v_mid,
                                 double dt) {
    CrankNicolsonStepper s(psi.grid());
    Wavefunction out = psi;
    s.step(out, v_mid, dt);
    return out;
}

PropagationResult propagate(const Wavefunction& psi0, const PotentialPath& potential_at,
                            double t0, double t1, const PropagationConfig& cfg) {
    if (!(t1 > t0)) throw ValidationError("propagate: t1 must be > t0");
    if (!(cfg.dt > 0.0)) throw ValidationError("propagate: dt must be > 0");
    const Grid& grid = psi0.grid();
    if (cfg.dt > grid.dz())
        throw ValidationError("propagate: dt must be <= dz");
    {
        const PotentialSamples v0 = potential_at(t0);
        double vmax = 0.0;
        for (double v : v0.values) vmax = std::max(vmax, std::abs(v));
        if (vmax > 0.0 && cfg.dt > 0.1 / vmax)
            throw ValidationError("propagate: dt must be <= 0.1/max|V|");
    }

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil((t1 - t0) / cfg.dt - 1e-9));
    const double dt = (t1 - t0) / static_cast<double>(n_steps);

    PropagationResult res{psi0, {}};
    SplitOperatorStepper so(grid);
    CrankNicolsonStepper cn(grid);

    auto observe = [&](double t) {
        TrajectoryRecord rec;
        rec.t = t;
        rec.norm = res.psi.norm();
        rec.mean_z = expectation_z(res.psi);
        rec.parity_even_weight = parity_weights(res.psi).even;
        if (cfg.record_density) {
            std::vector<double> dens(grid.n());
            for (std::size_t j = 0; j < grid.n(); ++j)
                dens[j] = std::norm(res.psi.amplitudes()[j]);
            rec.density_snapshot = std::move(dens);
        }
        if (edge_amplitude(res.psi) > cfg.edge_tolerance)
            throw EdgeLeakage("propagate: boundary amplitude above tolerance");
        res.trajectory.push_back(std::move(rec));
    };

    observe(t0);
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t_mid = t0 + (static_cast<double>(s) + 0.5) * dt;
        const PotentialSamples v_mid = potential_at(t_mid);
        if (cfg.method == PropagationMethod::SplitOperator)
            so.step(res.psi, v_mid, dt);
        else
            cn.step(res.psi, v_mid, dt);
        const bool last = (s + 1 == n_steps);
        if (last || (cfg.observe_every > 0 && (s + 1) % cfg.observe_every == 0))
            observe(t0 + static_cast<double>(s + 1) * dt);
    }
    return res;
}

}  // namespace wavesplit
