#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wavesplit/core.hpp"
#include "wavesplit/errors.hpp"

using namespace wavesplit;

namespace {

// normalized Gaussian packet exp(-(z-c)^2/(4 w^2) + i k z)
Wavefunction gauss_packet(const Grid& g, double c, double w, double k = 0.0) {
    std::vector<cplx> a(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double z = g.z(j);
        const double envelope = std::exp(-(z - c) * (z - c) / (4.0 * w * w));
        a[j] = envelope * cplx{std::cos(k * z), std::sin(k * z)};
    }
    Wavefunction psi(g, std::move(a));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(0.0, 128), ValidationError);
    CHECK_THROWS_AS(Grid(-1.0, 128), ValidationError);
    CHECK_THROWS_AS(Grid(5.0, 63), ValidationError);
    CHECK_THROWS_AS(Grid(5.0, 62), ValidationError);   // < 64
    CHECK_THROWS_AS(Grid(5.0, 129), ValidationError);  // odd
    CHECK_NOTHROW(Grid(5.0, 64));
}

TEST_CASE("grid reflection is an exact index permutation") {
    // z_max/n combinations with non-representable dz included on purpose
    for (auto [zm, n] : {std::pair{10.0, 128ul}, {12.0, 1000ul}, {20.0, 1112ul},
                         {7.3, 666ul}, {18.0, 4096ul}}) {
        Grid g(zm, n);
        CHECK(g.dz() == doctest::Approx(2.0 * zm / static_cast<double>(n)));
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(g.z(n - 1 - j) == -g.z(j));  // bit-exact
            CHECK(std::abs(g.z(j)) < zm);
        }
        CHECK(g.points().size() == n);
        CHECK(g.points()[3] == g.z(3));
    }
}

TEST_CASE("single trap samples") {
    Grid g(8.0, 512);
    TrapParams p{1.0, 1.0};
    auto s = sample_single_trap(g, p, 0.0);
    // peak: nearest grid point to z=0 is dz/2 away
    const std::size_t mid = g.n() / 2;
    const double expect_peak = -std::exp(-g.z(mid) * g.z(mid) / 2.0);
    CHECK(s.values[mid] == doctest::Approx(expect_peak).epsilon(1e-14));
    // analytic value at z = sigma (interpolate by direct formula at a grid point)
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double z = g.z(j);
        CHECK(s.values[j] == doctest::Approx(-std::exp(-z * z / 2.0)).epsilon(1e-14));
    }
    // translation invariance: center=3 sampled at z is center=0 sampled at z-3
    auto sc = sample_single_trap(g, p, 3.0);
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double u = g.z(j) - 3.0;
        CHECK(sc.values[j] == doctest::Approx(-std::exp(-u * u / 2.0)).epsilon(1e-14));
    }
}

TEST_CASE("double trap samples") {
    Grid g(10.0, 1024);
    TrapParams p{1.0, 1.0};

    // d = 0 reduces to 2 V(z)
    auto s0 = sample_double_trap(g, p, 0.0);
    auto s1 = sample_single_trap(g, p, 0.0);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(s0.values[j] == doctest::Approx(2.0 * s1.values[j]).epsilon(1e-14));

    // analytic value at the midpoint for d = 2
    auto s2 = sample_double_trap(g, p, 2.0);
    const std::size_t mid = g.n() / 2;
    const double z = g.z(mid);
    const double expect = -(std::exp(-(z - 1) * (z - 1) / 2.0) + std::exp(-(z + 1) * (z + 1) / 2.0));
    CHECK(s2.values[mid] == doctest::Approx(expect).epsilon(1e-14));

    // exchange symmetry d -> -d and bit-exact reflection
    auto s2m = sample_double_trap(g, p, -2.0);
    for (std::size_t j = 0; j < g.n(); ++j) {
        CHECK(s2.values[j] == s2m.values[j]);
        CHECK(s2.values[j] == s2.values[g.n() - 1 - j]);
    }
}

TEST_CASE("critical separation") {
    CHECK(critical_separation(TrapParams{1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(critical_separation(TrapParams{0.5, 0.25}) == doctest::Approx(1.0));
    // independent of depth
    CHECK(critical_separation(TrapParams{1.0, 7.3}) == critical_separation(TrapParams{1.0, 0.1}));
}

TEST_CASE("count_minima and the merge point") {
    Grid g(6.0, 1200);  // dz = 0.01
    TrapParams p{1.0, 1.0};
    CHECK(count_minima(sample_double_trap(g, p, 3.0), p.sigma) == 2);
    CHECK(count_minima(sample_double_trap(g, p, 0.0), p.sigma) == 1);

    // transition from 2 to 1 at d = 2 within one dz
    double d_hi = 3.0, d_lo = 0.0;
    for (double d = 3.0; d >= 0.0; d -= 0.005) {
        if (count_minima(sample_double_trap(g, p, d), p.sigma) == 1) {
            d_hi = d;
            break;
        }
        d_lo = d;
    }
    CHECK(std::abs(d_hi - 2.0) <= g.dz() + 0.005);
    CHECK(d_lo > d_hi);

    // monotone: once merged, stays merged as d decreases
    bool merged = false;
    for (double d = 3.0; d >= 0.0; d -= 0.05) {
        const bool one = count_minima(sample_double_trap(g, p, d), p.sigma) == 1;
        if (merged) CHECK(one);
        merged = merged || one;
    }

    Grid coarse(6.0, 64);  // dz ~ 0.19 >= sigma/10
    CHECK_THROWS_AS(count_minima(sample_double_trap(coarse, p, 3.0), p.sigma), GridTooCoarse);
}

TEST_CASE("inner product and norms") {
    Grid g(8.0, 512);
    auto a = gauss_packet(g, -1.0, 0.7, 0.3);
    auto b = gauss_packet(g, 1.2, 1.1, -0.4);

    const cplx aa = inner_product(a, a);
    CHECK(aa.imag() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(aa.real() == doctest::Approx(a.norm_sq()).epsilon(1e-13));
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-13));

    const cplx ab = inner_product(a, b);
    const cplx ba = inner_product(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14);

    Grid g2(8.0, 256);
    auto c = gauss_packet(g2, 0.0, 1.0);
    CHECK_THROWS_AS(inner_product(a, c), GridMismatch);
}

TEST_CASE("reflect and parity weights") {
    Grid g(8.0, 512);
    auto even = gauss_packet(g, 0.0, 1.0);       // even about 0
    auto shifted = gauss_packet(g, 2.0, 0.8);    // neither

    // reflect is an involution
    auto rr = reflect(reflect(shifted));
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(rr.amplitudes()[j] == shifted.amplitudes()[j]);

    // even function maps to itself
    auto re = reflect(even);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(std::abs(re.amplitudes()[j] - even.amplitudes()[j]) < 1e-15);

    auto [we, wo] = parity_weights(even);
    CHECK(we == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wo == doctest::Approx(0.0).epsilon(1e-12));

    // odd function: z * gaussian
    std::vector<cplx> amp(g.n());
    for (std::size_t j = 0; j < g.n(); ++j)
        amp[j] = g.z(j) * std::exp(-g.z(j) * g.z(j) / 2.0);
    Wavefunction odd(g, std::move(amp));
    odd.normalize();
    auto ro = reflect(odd);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(ro.amplitudes()[j] == -odd.amplitudes()[j]);
    auto [we2, wo2] = parity_weights(odd);
    CHECK(we2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wo2 == doctest::Approx(1.0).epsilon(1e-12));

    // well-separated packet: equal superposition of parities
    auto far = gauss_packet(g, 5.0, 0.6);
    auto [we3, wo3] = parity_weights(far);
    CHECK(we3 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(we3 + wo3 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expectation_z") {
    Grid g(10.0, 1024);
    auto even = gauss_packet(g, 0.0, 1.0);
    CHECK(std::abs(expectation_z(even)) < 1e-10);

    auto at2 = gauss_packet(g, 2.0, 0.9);
    CHECK(expectation_z(at2) == doctest::Approx(2.0).epsilon(1e-8));

    // translation covariance: shift the same envelope by one grid cell
    auto a = gauss_packet(g, 1.0, 0.9);
    std::vector<cplx> sh(g.n(), cplx{0.0, 0.0});
    for (std::size_t j = 1; j < g.n(); ++j) sh[j] = a.amplitudes()[j - 1];
    Wavefunction b(g, std::move(sh));
    b.normalize();
    CHECK(expectation_z(b) == doctest::Approx(expectation_z(a) + g.dz()).epsilon(1e-6));
}

TEST_CASE("edge mass") {
    Grid g(10.0, 1024);
    auto centered = gauss_packet(g, 0.0, 1.0);
    CHECK(edge_amplitude(centered) < 1e-15);

    auto near_wall = gauss_packet(g, 9.8, 0.5);
    CHECK(edge_amplitude(near_wall) > 1e-3);
    CHECK(edge_amplitude(near_wall, 10) > edge_amplitude(near_wall, 3));
}

TEST_CASE("SI conversions") {
    UnitsConvention u;
    CHECK_THROWS_AS(to_si(1.0, SiKind::Length, u), MissingSiParams);

    u.si_mass = 1.443e-25;                       // Rb-87, kg
    u.si_omega = 2.0 * std::numbers::pi * 1.0e4;  // rad/s

    const double len_um = to_si(1.0, SiKind::Length, u) * 1e6;
    CHECK(std::abs(len_um - 0.108) / 0.108 < 0.02);

    const double t_ms = to_si(1.0, SiKind::Time, u) * 1e3;
    CHECK(std::abs(t_ms - 0.016) / 0.016 < 0.02);

    const double v_mm_s = to_si(0.15, SiKind::Velocity, u) * 1e3;
    CHECK(std::abs(v_mm_s - 1.0) < 0.03);

    // round trip: convert and divide back out
    const double unit_v = to_si(1.0, SiKind::Velocity, u);
    CHECK(to_si(0.15, SiKind::Velocity, u) / unit_v == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("wavefunction construction") {
    Grid g(8.0, 128);
    CHECK_THROWS_AS(Wavefunction(g, std::vector<cplx>(64)), GridMismatch);
    Wavefunction zero(g, std::vector<cplx>(128, cplx{0.0, 0.0}));
    CHECK_THROWS(zero.normalize());
}
