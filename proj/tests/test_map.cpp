#include "mpcop/map.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

using namespace mpcop;

namespace {

// Independent root finder for a + a^{1+s} = 1: plain interval halving on
// [0,1], no shared code with solve_a.
double bisect_a_oracle(double s) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid + std::pow(mid, 1.0 + s) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("apply_map matches hand values") {
    // 0.25^{1.5} = 0.125 exactly in binary
    CHECK(apply_map(MapModel::from_s(0.5), 0.25) == doctest::Approx(0.375).epsilon(1e-15));
    // 0 is a fixed point
    CHECK(apply_map(MapModel::from_s(0.7), 0.0) == 0.0);
    // s = 1, x = 0.8 wraps: 0.8 + 0.64 - 1
    CHECK(apply_map(MapModel::from_s(1.0), 0.8) ==
          doctest::Approx(0.8 + 0.8 * 0.8 - 1.0).epsilon(1e-14));
}

TEST_CASE("apply_map rejects arguments outside [0,1)") {
    const MapModel m = MapModel::from_s(0.5);
    CHECK_THROWS_AS(apply_map(m, -0.1), std::domain_error);
    CHECK_THROWS_AS(apply_map(m, 1.0), std::domain_error);
    CHECK_THROWS_AS(apply_map(m, 1.5), std::domain_error);
}

TEST_CASE("branch behaviour: no wrap below a, wrap and decrease above a") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double s : {0.2, 0.5, 0.8}) {
        const MapModel m = MapModel::from_s(s);
        for (int i = 0; i < 200; ++i) {
            const double below = unif(rng) * (m.a - 1e-12);
            CHECK(apply_map(m, below) == below + std::pow(below, 1.0 + s));
            const double above = m.a + 1e-9 + unif(rng) * (1.0 - m.a - 2e-9);
            const double mapped = apply_map(m, above);
            CHECK(mapped == doctest::Approx(above + std::pow(above, 1.0 + s) - 1.0));
            CHECK(mapped < above);
        }
    }
}

TEST_CASE("orbit reproduces short hand-checked trajectories") {
    const MapModel m = MapModel::from_s(0.5);
    const Orbit o2 = orbit(m, 0.25, 2);
    REQUIRE(o2.points.size() == 2);
    CHECK(o2.points[0] == 0.25);
    CHECK(o2.points[1] == doctest::Approx(0.375).epsilon(1e-15));

    // Third point from a long-double oracle: 0.375 + 0.375^{1.5}.
    const long double third = 0.375L + std::pow(0.375L, 1.5L);
    const Orbit o3 = orbit(m, 0.25, 3);
    CHECK(o3.points[2] == doctest::Approx(static_cast<double>(third)).epsilon(1e-12));
    CHECK(o3.points[2] == doctest::Approx(0.6046396633859229).epsilon(1e-12));
}

TEST_CASE("orbit range invariant and prefix property") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(1e-6, 1.0 - 1e-6);
    for (int trial = 0; trial < 20; ++trial) {
        const double s = 0.05 + 0.9 * (trial / 20.0);
        const MapModel m = MapModel::from_s(s);
        const double x0 = unif(rng);
        const Orbit longer = orbit(m, x0, 300);
        const Orbit shorter = orbit(m, x0, 200);
        for (std::size_t k = 0; k < longer.points.size(); ++k) {
            CHECK(longer.points[k] >= 0.0);
            CHECK(longer.points[k] < 1.0);
        }
        for (std::size_t k = 0; k < shorter.points.size(); ++k) {
            CHECK(longer.points[k] == shorter.points[k]);  // bit-identical prefix
        }
    }
}

TEST_CASE("orbit rejects degenerate initial points") {
    const MapModel m = MapModel::from_s(0.5);
    CHECK_THROWS_AS(orbit(m, 0.0, 10), std::domain_error);
    CHECK_THROWS_AS(orbit(m, 1.0, 10), std::domain_error);
    CHECK_THROWS_AS(orbit(m, 0.5, 0), std::domain_error);
}

TEST_CASE("solve_a closed-form anchors") {
    // s = 1 gives the golden-ratio equation a + a^2 = 1
    CHECK(solve_a(1.0) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
    // s -> 0 gives a + a = 1
    CHECK(solve_a(1e-12) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("solve_a agrees with the independent bisection oracle") {
    CHECK(solve_a(0.5) == doctest::Approx(bisect_a_oracle(0.5)).epsilon(1e-12));
    CHECK(solve_a(0.5) == doctest::Approx(0.56984).epsilon(1e-5));
    for (double s = 0.05; s < 1.0; s += 0.05) {
        const double a = solve_a(s);
        CHECK(std::abs(a + std::pow(a, 1.0 + s) - 1.0) < 1e-12);
        CHECK(a > 0.5);
        CHECK(a <= (std::sqrt(5.0) - 1.0) / 2.0 + 1e-12);
    }
    CHECK_THROWS_AS(solve_a(0.0), std::domain_error);
    CHECK_THROWS_AS(solve_a(-1.0), std::domain_error);
    CHECK_THROWS_AS(solve_a(2.0), std::domain_error);
}

TEST_CASE("a_to_s inverts solve_a") {
    CHECK(a_to_s((std::sqrt(5.0) - 1.0) / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a_to_s(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    for (double s = 0.1; s < 0.95; s += 0.1) {
        CHECK(a_to_s(solve_a(s)) == doctest::Approx(s).epsilon(1e-10));
    }
    CHECK_THROWS_AS(a_to_s(0.0), std::domain_error);
    CHECK_THROWS_AS(a_to_s(1.0), std::domain_error);
    CHECK_THROWS_AS(a_to_s(-0.2), std::domain_error);
}
