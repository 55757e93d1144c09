#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavesplit/eigen.hpp"
#include "wavesplit/errors.hpp"
#include "wavesplit/phase.hpp"

using namespace wavesplit;

namespace {
const TrapParams kTrap{1.0, 1.0};
}

TEST_CASE("frozen loop area and quadrature convergence") {
    Grid g(12.0, 2048);
    const double area = area_loop(kTrap, -12.0, 12.0, g, 512);
    // frozen Richardson-refined oracle value for this discretization
    CHECK(area == doctest::Approx(4.447121445994213).epsilon(1e-9));

    // doubling n_quad barely moves the result (smooth integrand)
    const double area2 = area_loop(kTrap, -12.0, 12.0, g, 1024);
    CHECK(std::abs(area2 - area) < 1e-8);
}

TEST_CASE("integrand is even: full loop equals twice the half integral") {
    Grid g(12.0, 1000);
    const std::size_t nq = 256;
    const double full = area_loop(kTrap, -12.0, 12.0, g, nq);

    // independent Simpson rule over [0, 12] assembled in the test
    const std::size_t m = nq;  // even
    const double h = 12.0 / static_cast<double>(m);
    double acc = tunnel_splitting(kTrap, 0.0, g) + tunnel_splitting(kTrap, 12.0, g);
    for (std::size_t i = 1; i < m; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * tunnel_splitting(kTrap, h * static_cast<double>(i), g);
    const double half = acc * h / 3.0;
    CHECK(full == doctest::Approx(2.0 * half).epsilon(1e-10));
}

TEST_CASE("tail guards") {
    Grid g(12.0, 1000);
    // default tolerance admits the d = +-12 endpoints (gap ~1.4e-5 there)
    CHECK_NOTHROW(area_loop(kTrap, -12.0, 12.0, g, 128));
    // a tighter tail tolerance rejects them: the loop is not closed yet
    CHECK_THROWS_AS(area_loop(kTrap, -12.0, 12.0, g, 128, 1e-6), TailsNotDegenerate);
    // precondition on the range itself
    CHECK_THROWS_AS(area_loop(kTrap, -8.0, 12.0, g, 128), ValidationError);
    CHECK_THROWS_AS(area_loop(kTrap, -12.0, 12.0, g, 32), ValidationError);
}

TEST_CASE("splitting phase and the exact 1/v law") {
    Grid g(12.0, 1000);
    const PhaseResult ref = splitting_phase(kTrap, 0.05, -12.0, 12.0, g, 256);
    CHECK(ref.theta_c == doctest::Approx(ref.area / (2.0 * 0.05)).epsilon(1e-15));
    CHECK(ref.theta_c > 0.0);
    CHECK(ref.d_min == -12.0);
    CHECK(ref.d_max == 12.0);

    const double invariant = ref.theta_c * ref.v;
    for (double v : {0.1, 0.2, 0.4, 0.8}) {
        const PhaseResult r = splitting_phase(kTrap, v, -12.0, 12.0, g, 256);
        CHECK(std::abs(r.theta_c * v - invariant) / invariant < 1e-12);
    }

    // v -> large: theta -> 0
    CHECK(splitting_phase(kTrap, 1e6, -12.0, 12.0, g, 256).theta_c < 1e-5);
}

TEST_CASE("predicted populations") {
    auto p0 = predicted_populations(0.0);
    CHECK(p0.transfer == doctest::Approx(1.0));
    CHECK(p0.stay == doctest::Approx(0.0));

    auto p45 = predicted_populations(std::numbers::pi / 4.0);
    CHECK(p45.transfer == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p45.stay == doctest::Approx(0.5).epsilon(1e-12));

    auto p90 = predicted_populations(std::numbers::pi / 2.0);
    CHECK(p90.transfer == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p90.stay == doctest::Approx(1.0).epsilon(1e-12));

    for (double t = 0.0; t < 20.0; t += 0.37) {
        auto p = predicted_populations(t);
        CHECK(p.transfer + p.stay == 1.0);  // exact by construction
        CHECK(p.transfer >= 0.0);
        CHECK(p.transfer <= 1.0);
        CHECK(p.stay >= 0.0);
        CHECK(p.stay <= 1.0);
    }
}

TEST_CASE("velocity_for_phase round trip") {
    Grid g(12.0, 1000);
    const PhaseResult r = splitting_phase(kTrap, 0.15, -12.0, 12.0, g, 256);
    const double v = velocity_for_phase(kTrap, r.theta_c, -12.0, 12.0, g, 256);
    CHECK(v == doctest::Approx(0.15).epsilon(1e-12));

    // theta ~ pi needs v of order 1 for this trap
    const double v_pi = velocity_for_phase(kTrap, std::numbers::pi, -12.0, 12.0, g, 256);
    CHECK(v_pi > 0.1);
    CHECK(v_pi < 5.0);
}

TEST_CASE("endpoint insensitivity deep in the degenerate tails") {
    // the gap decays ~e^{-1.09 d}; beyond d ~ 22 extending the loop changes
    // theta below 1e-8
    Grid g(17.0, 1400);
    const double v = 0.15;
    const double t22 = splitting_phase(kTrap, v, -22.0, 22.0, g, 256).theta_c;
    const double t24 = splitting_phase(kTrap, v, -24.0, 24.0, g, 256).theta_c;
    CHECK(std::abs(t24 - t22) < 1e-8);
}
