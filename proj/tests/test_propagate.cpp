#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wavesplit/eigen.hpp"
#include "wavesplit/errors.hpp"
#include "wavesplit/propagate.hpp"

using namespace wavesplit;

namespace {

Wavefunction gauss_packet(const Grid& g, double c, double w, double k = 0.0) {
    std::vector<cplx> a(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double z = g.z(j);
        a[j] = std::exp(-(z - c) * (z - c) / (4.0 * w * w)) *
               cplx{std::cos(k * z), std::sin(k * z)};
    }
    Wavefunction psi(g, std::move(a));
    psi.normalize();
    return psi;
}

PotentialSamples zero_potential(const Grid& g) {
    PotentialSamples s;
    s.grid = &g;
    s.values.assign(g.n(), 0.0);
    return s;
}

PotentialSamples harmonic(const Grid& g) {
    PotentialSamples s;
    s.grid = &g;
    s.values.resize(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) s.values[j] = 0.5 * g.z(j) * g.z(j);
    return s;
}

double width_sq(const Wavefunction& psi) {
    const Grid& g = psi.grid();
    double z1 = 0.0, z2 = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double w = g.dz() * std::norm(psi.amplitudes()[j]);
        z1 += w * g.z(j);
        z2 += w * g.z(j) * g.z(j);
    }
    return z2 - z1 * z1;
}

double fidelity(const Wavefunction& a, const Wavefunction& b) {
    return std::abs(inner_product(a, b));
}

}  // namespace

TEST_CASE("free packet: group velocity and analytic spreading") {
    Grid g(40.0, 2048);
    const double w0 = 1.0, k0 = 2.0, T = 5.0;
    Wavefunction psi = gauss_packet(g, -10.0, w0, k0);

    PropagationConfig cfg;
    cfg.dt = 1e-2;
    cfg.observe_every = 0;
    auto res = propagate(psi, [&](double) { return zero_potential(g); }, 0.0, T, cfg);

    CHECK(expectation_z(res.psi) == doctest::Approx(-10.0 + k0 * T).epsilon(1e-8));
    // minimum-uncertainty packet: sigma_t^2 = sigma_0^2 + t^2 / (4 sigma_0^2)
    const double expect = w0 * w0 + T * T / (4.0 * w0 * w0);
    CHECK(width_sq(res.psi) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("frozen double well: eigenstate picks up only its energy phase") {
    TrapParams p{1.0, 1.0};
    Grid g(10.0, 2048);
    auto pot = sample_double_trap(g, p, 3.0);
    auto h = build_hamiltonian(g, pot);
    auto lv = lowest_eigenpairs(h, 1, true);
    const double T = 10.0;

    for (auto method : {PropagationMethod::CrankNicolson, PropagationMethod::SplitOperator}) {
        PropagationConfig cfg;
        cfg.dt = 1e-3;
        cfg.method = method;
        cfg.observe_every = 0;
        auto res = propagate(lv[0].state, [&](double) { return pot; }, 0.0, T, cfg);

        // reference: e^{-i E0 T} psi0
        const cplx phase{std::cos(lv[0].energy * T), -std::sin(lv[0].energy * T)};
        const cplx ov = inner_product(lv[0].state, res.psi) * std::conj(phase);
        CHECK(std::abs(1.0 - std::abs(ov)) < 1e-8);
        // Crank-Nicolson shares the eigensolver's stencil, so even the phase
        // agrees tightly there
        if (method == PropagationMethod::CrankNicolson) CHECK(std::abs(1.0 - ov) < 1e-6);
    }
}

TEST_CASE("norm conservation") {
    Grid g(8.0, 512);
    auto pot = harmonic(g);
    Wavefunction psi = gauss_packet(g, 1.0, 1.0 / std::sqrt(2.0));

    // split-operator: 1e5 steps, norm drift below 1e-9
    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.observe_every = 0;
    auto res = propagate(psi, [&](double) { return pot; }, 0.0, 100.0, cfg);
    CHECK(std::abs(res.psi.norm() - 1.0) < 1e-9);

    // Crank-Nicolson: per-step norm change below 1e-12
    Wavefunction one = psi;
    CrankNicolsonStepper cn(g);
    for (int s = 0; s < 100; ++s) {
        const double before = one.norm();
        cn.step(one, pot, 1e-3);
        CHECK(std::abs(one.norm() - before) < 1e-12);
    }
}

TEST_CASE("harmonic coherent state follows the classical trajectory") {
    Grid g(10.0, 2048);
    auto pot = harmonic(g);
    const double z0 = 1.0;
    Wavefunction psi = gauss_packet(g, z0, 1.0 / std::sqrt(2.0));

    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.method = PropagationMethod::CrankNicolson;
    cfg.observe_every = 500;
    const double T = 2.0 * 3.14159265358979323846;
    auto res = propagate(psi, [&](double) { return pot; }, 0.0, T, cfg);
    for (const auto& rec : res.trajectory)
        CHECK(std::abs(rec.mean_z - z0 * std::cos(rec.t)) < 1e-4);
}

TEST_CASE("both methods are second order in dt (self convergence)") {
    TrapParams p{1.0, 1.0};
    Grid g(10.0, 512);
    auto pot = sample_double_trap(g, p, 2.0);
    Wavefunction psi = gauss_packet(g, -1.0, 0.8);
    const double T = 1.0;

    for (auto method : {PropagationMethod::SplitOperator, PropagationMethod::CrankNicolson}) {
        auto run = [&](double dt) {
            PropagationConfig cfg;
            cfg.dt = dt;
            cfg.method = method;
            cfg.observe_every = 0;
            return propagate(psi, [&](double) { return pot; }, 0.0, T, cfg).psi;
        };
        auto fine = run(2.5e-3);
        auto err = [&](double dt) {
            auto r = run(dt);
            double acc = 0.0;
            for (std::size_t j = 0; j < g.n(); ++j)
                acc += std::norm(r.amplitudes()[j] - fine.amplitudes()[j]);
            return std::sqrt(g.dz() * acc);
        };
        const double e1 = err(2e-2);
        const double e2 = err(1e-2);
        CHECK(e1 / e2 > 3.4);
        CHECK(e1 / e2 < 4.6);
    }
}

TEST_CASE("time reversal by conjugation") {
    TrapParams p{1.0, 1.0};
    Grid g(10.0, 1024);
    auto pot = sample_double_trap(g, p, 2.0);
    // bound superposition: a free-ish packet would shed unbound amplitude
    // into the walls and trip the leakage guard
    auto lv = lowest_eigenpairs(build_hamiltonian(g, pot), 2, true);
    std::vector<cplx> amp(g.n());
    for (std::size_t j = 0; j < g.n(); ++j)
        amp[j] = (lv[0].state.amplitudes()[j] + lv[1].state.amplitudes()[j]) / std::sqrt(2.0);
    Wavefunction psi0(g, std::move(amp));

    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.observe_every = 0;
    auto fwd = propagate(psi0, [&](double) { return pot; }, 0.0, 3.0, cfg).psi;
    for (auto& a : fwd.amplitudes()) a = std::conj(a);
    auto back = propagate(fwd, [&](double) { return pot; }, 0.0, 3.0, cfg).psi;
    for (auto& a : back.amplitudes()) a = std::conj(a);
    CHECK(fidelity(back, psi0) > 1.0 - 1e-6);
}

TEST_CASE("parity conservation under a symmetric time-dependent potential") {
    TrapParams p{1.0, 1.0};
    Grid g(12.0, 1024);
    auto h = build_hamiltonian(g, sample_double_trap(g, p, 12.0));
    auto even0 = lowest_eigenpairs(h, 1, true)[0].state;

    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.observe_every = 200;
    cfg.edge_tolerance = 1e-3;  // the fast sweep sheds a little free amplitude
    auto path = [&](double t) { return sample_double_trap(g, p, 12.0 - 0.5 * t); };
    auto res = propagate(even0, path, 0.0, 4.0, cfg);
    for (const auto& rec : res.trajectory) CHECK(rec.parity_even_weight > 1.0 - 1e-8);
}

TEST_CASE("methods agree on a shared run") {
    TrapParams p{1.0, 1.0};
    Grid g(10.0, 1024);
    auto lv = lowest_eigenpairs(build_hamiltonian(g, sample_double_trap(g, p, 3.0)), 2, true);
    std::vector<cplx> amp(g.n());
    for (std::size_t j = 0; j < g.n(); ++j)
        amp[j] = (lv[0].state.amplitudes()[j] + lv[1].state.amplitudes()[j]) / std::sqrt(2.0);
    Wavefunction psi(g, std::move(amp));
    auto path = [&](double t) { return sample_double_trap(g, p, 3.0 - 0.2 * t); };

    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.observe_every = 0;
    cfg.edge_tolerance = 1e-4;
    auto so = propagate(psi, path, 0.0, 5.0, cfg);
    cfg.method = PropagationMethod::CrankNicolson;
    auto cn = propagate(psi, path, 0.0, 5.0, cfg);
    CHECK(fidelity(so.psi, cn.psi) > 0.999);
    CHECK(std::abs(expectation_z(so.psi) - expectation_z(cn.psi)) < 1e-3);
}

TEST_CASE("one-shot steps match the steppers") {
    TrapParams p{1.0, 1.0};
    Grid g(8.0, 256);
    auto pot = sample_double_trap(g, p, 2.0);
    Wavefunction psi = gauss_packet(g, 0.5, 0.7);

    auto a = step_split_operator(psi, pot, 1e-3);
    SplitOperatorStepper so(g);
    Wavefunction b = psi;
    so.step(b, pot, 1e-3);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(std::abs(a.amplitudes()[j] - b.amplitudes()[j]) < 1e-15);

    auto c = step_crank_nicolson(psi, pot, 1e-3);
    CrankNicolsonStepper cn(g);
    Wavefunction d = psi;
    cn.step(d, pot, 1e-3);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(std::abs(c.amplitudes()[j] - d.amplitudes()[j]) < 1e-15);
}

TEST_CASE("validation guards and edge leakage") {
    Grid g(8.0, 256);  // dz = 0.0625
    Wavefunction psi = gauss_packet(g, 0.0, 1.0);
    PropagationConfig cfg;

    cfg.dt = 0.1;  // > dz
    CHECK_THROWS_AS(propagate(psi, [&](double) { return zero_potential(g); }, 0.0, 1.0, cfg),
                    ValidationError);

    cfg.dt = 0.05;  // > 0.1/max|V| for a deep well
    auto deep = sample_single_trap(g, TrapParams{1.0, 10.0}, 0.0);
    CHECK_THROWS_AS(propagate(psi, [&](double) { return deep; }, 0.0, 1.0, cfg),
                    ValidationError);

    CHECK_THROWS_AS(propagate(psi, [&](double) { return deep; }, 1.0, 1.0, cfg),
                    ValidationError);

    // a fast packet slams into the wall
    Grid small(6.0, 256);
    Wavefunction fast = gauss_packet(small, -2.0, 0.8, 3.0);
    PropagationConfig cfg2;
    cfg2.dt = 1e-2;
    cfg2.observe_every = 10;
    CHECK_THROWS_AS(
        propagate(fast, [&](double) { return zero_potential(small); }, 0.0, 5.0, cfg2),
        EdgeLeakage);
}

TEST_CASE("trajectory records and density snapshots") {
    Grid g(8.0, 256);
    auto pot = harmonic(g);
    Wavefunction psi = gauss_packet(g, 0.5, 1.0 / std::sqrt(2.0));

    PropagationConfig cfg;
    cfg.dt = 1e-3;
    cfg.observe_every = 100;
    cfg.record_density = true;
    auto res = propagate(psi, [&](double) { return pot; }, 0.0, 1.0, cfg);

    REQUIRE(res.trajectory.size() == 11);  // t=0, 10 interior/final observations
    CHECK(res.trajectory.front().t == doctest::Approx(0.0));
    CHECK(res.trajectory.back().t == doctest::Approx(1.0));
    for (const auto& rec : res.trajectory) {
        CHECK(std::abs(rec.norm - 1.0) < 1e-6);
        REQUIRE(rec.density_snapshot.has_value());
        double mass = 0.0;
        for (double x : *rec.density_snapshot) mass += x;
        CHECK(g.dz() * mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}
