#include "mpcop/copula.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mpcop/errors.hpp"
#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"
#include "oracles.hpp"

using namespace mpcop;

namespace {

const double kPiFrac = 3.14159265358979323846 - 3.0;

CopulaModel make_model(double s, std::vector<int> lags, std::int64_t n, std::size_t m,
                       Direction dir = Direction::increasing) {
    const MapModel map = MapModel::from_s(s);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
    return CopulaModel::assemble(map, std::move(mu), std::move(lags), m, dir);
}

}  // namespace

TEST_CASE("copula is grounded exactly") {
    const CopulaModel cm = make_model(0.4, {1}, 50000, 2000);
    for (double w : {0.0, 0.1, 0.37, 0.62, 0.99, 1.0}) {
        CHECK(copula_eval(cm, w, 0.0) == 0.0);
        CHECK(copula_eval(cm, 0.0, w) == 0.0);
    }
    CHECK(copula_eval(cm, 1.0, 1.0) == 1.0);
}

TEST_CASE("copula margins are uniform within tolerance") {
    for (double s : {0.1, 0.4}) {
        for (int h : {1, 2}) {
            const CopulaModel cm = make_model(s, {h}, 200000, 4000);
            for (int i = 0; i <= 50; ++i) {
                const double w = i / 50.0;
                CHECK(std::abs(copula_eval(cm, w, 1.0) - w) <= 0.01);
                CHECK(std::abs(copula_eval(cm, 1.0, w) - w) <= 0.01);
            }
        }
    }
}

TEST_CASE("copula rejects arguments outside the unit square") {
    const CopulaModel cm = make_model(0.4, {1}, 20000, 1000);
    CHECK_THROWS_AS(copula_eval(cm, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(copula_eval(cm, 0.5, 1.1), std::domain_error);
    CHECK_THROWS_AS(copula_eval_decreasing(cm, 2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(cm.lag(3), std::invalid_argument);
}

TEST_CASE("copula is monotone in each argument") {
    const CopulaModel cm = make_model(0.3, {2}, 100000, 2000);
    for (double fixed : {0.15, 0.5, 0.85}) {
        double prev_u = -1.0, prev_v = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double w = i / 100.0;
            const double cu = copula_eval(cm, w, fixed);
            const double cv = copula_eval(cm, fixed, w);
            CHECK(cu >= prev_u - 1e-12);
            CHECK(cv >= prev_v - 1e-12);
            prev_u = cu;
            prev_v = cv;
        }
    }
}

TEST_CASE("Frechet bounds and 2-increasing rectangles") {
    const CopulaModel cm = make_model(0.4, {1}, 200000, 4000);
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 40; ++j) {
            const double u = i / 40.0, v = j / 40.0;
            const double c = copula_eval(cm, u, v);
            CHECK(c >= std::max(u + v - 1.0, 0.0) - 0.01);
            CHECK(c <= std::min(u, v) + 0.01);
        }
    }
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int r = 0; r < 2000; ++r) {
        double u1 = unif(rng), u2 = unif(rng), v1 = unif(rng), v2 = unif(rng);
        if (u1 > u2) std::swap(u1, u2);
        if (v1 > v2) std::swap(v1, v2);
        const double vol = copula_eval(cm, u2, v2) - copula_eval(cm, u1, v2) -
                           copula_eval(cm, u2, v1) + copula_eval(cm, u1, v1);
        CHECK(vol >= -1e-9);
    }
}

TEST_CASE("copula matches the empirical copula of orbit pairs") {
    const MapModel map = MapModel::from_s(0.3);
    const std::int64_t n = 200000;
    const Orbit o = orbit(map, kPiFrac, n);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
    const CopulaModel cm = CopulaModel::assemble(map, mu, {1}, 4000);
    const auto oracle = oracles::empirical_copula2(*mu, o.points, 1, 50);
    double sup = 0.0;
    for (int i = 0; i <= 50; ++i) {
        for (int j = 0; j <= 50; ++j) {
            sup = std::max(sup, std::abs(copula_eval(cm, i / 50.0, j / 50.0) - oracle[i][j]));
        }
    }
    CHECK(sup <= 0.02);
}

TEST_CASE("decreasing copula: margins, groundedness, reflected-pair oracle") {
    const MapModel map = MapModel::from_s(0.3);
    const std::int64_t n = 1000000;
    const Orbit o = orbit(map, kPiFrac, n);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
    const CopulaModel cm = CopulaModel::assemble(map, mu, {1}, 10000, Direction::decreasing);
    for (int i = 0; i <= 20; ++i) {
        const double w = i / 20.0;
        CHECK(std::abs(copula_eval_decreasing(cm, w, 1.0) - w) <= 0.01);
        CHECK(std::abs(copula_eval_decreasing(cm, 0.0, w)) <= 0.01);
    }
    const auto oracle = oracles::empirical_copula2(*mu, o.points, 1, 50, /*reflect=*/true);
    double sup = 0.0;
    for (int i = 0; i <= 50; ++i) {
        for (int j = 0; j <= 50; ++j) {
            sup = std::max(
                sup, std::abs(copula_eval_decreasing(cm, i / 50.0, j / 50.0) - oracle[i][j]));
        }
    }
    CHECK(sup <= 0.01);
}

TEST_CASE("bivariate consistency of the multivariate evaluation") {
    const CopulaModel cm = make_model(0.35, {1, 2}, 100000, 2000);
    for (int h : {1, 2}) {
        const std::array<int, 2> times{0, h};
        CopulaModel biv = cm;
        biv.h = h;
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const std::array<double, 2> u{i / 20.0, j / 20.0};
                CHECK(mcopula_eval(cm, u, times) ==
                      doctest::Approx(copula_eval(biv, u[0], u[1])).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("multivariate copula is grounded and bounded") {
    const CopulaModel cm = make_model(0.3, lag_closure(std::array<int, 3>{0, 1, 2}), 100000, 2000);
    const std::array<int, 3> times{0, 1, 2};
    CHECK(mcopula_eval(cm, std::array<double, 3>{0.0, 0.5, 0.7}, times) == 0.0);
    CHECK(mcopula_eval(cm, std::array<double, 3>{0.5, 0.0, 0.7}, times) <=
          2.0 / static_cast<double>(cm.mu->n));
    CHECK(mcopula_eval(cm, std::array<double, 3>{0.5, 0.7, 0.0}, times) <=
          2.0 / static_cast<double>(cm.mu->n));
    const double full = mcopula_eval(cm, std::array<double, 3>{1.0, 1.0, 1.0}, times);
    CHECK(full == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(mcopula_eval(cm, std::array<double, 3>{0.5, 0.5, 0.5},
                                 std::array<int, 3>{0, 2, 1}),
                    std::domain_error);
    CHECK_THROWS_AS(mcopula_eval(cm, std::array<double, 1>{0.5}, std::array<int, 1>{0}),
                    std::domain_error);
}

TEST_CASE("multivariate margins and monotonicity") {
    const std::array<int, 3> times{0, 1, 3};
    const CopulaModel cm = make_model(0.25, lag_closure(times), 150000, 3000);
    for (int i = 0; i <= 10; ++i) {
        const double w = i / 10.0;
        CHECK(std::abs(mcopula_eval(cm, std::array<double, 3>{w, 1.0, 1.0}, times) - w) <= 0.01);
        CHECK(std::abs(mcopula_eval(cm, std::array<double, 3>{1.0, w, 1.0}, times) - w) <= 0.01);
        CHECK(std::abs(mcopula_eval(cm, std::array<double, 3>{1.0, 1.0, w}, times) - w) <= 0.01);
    }
    for (std::size_t coord = 0; coord < 3; ++coord) {
        double prev = -1.0;
        for (int i = 0; i <= 40; ++i) {
            std::array<double, 3> u{0.6, 0.55, 0.7};
            u[coord] = i / 40.0;
            const double c = mcopula_eval(cm, u, times);
            CHECK(c >= prev - 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("trivariate copula tracks the orbit-triple oracle") {
    const MapModel map = MapModel::from_s(0.3);
    const std::int64_t n = 200000;
    const Orbit o = orbit(map, kPiFrac, n);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
    const std::array<int, 3> times{0, 1, 2};
    const CopulaModel cm = CopulaModel::assemble(map, mu, lag_closure(times), 4000);
    const auto oracle = oracles::empirical_copula3(*mu, o.points, 1, 2, 10);
    double sup = 0.0;
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            for (int k = 0; k <= 10; ++k) {
                const std::array<double, 3> u{i / 10.0, j / 10.0, k / 10.0};
                const double c = mcopula_eval(cm, u, times);
                sup = std::max(sup, std::abs(c - oracle[(i * 11 + j) * 11 + k]));
            }
        }
    }
    CHECK(sup <= 0.03);
}

TEST_CASE("decreasing multivariate reduces to the bivariate relation") {
    const CopulaModel cm = make_model(0.3, {1}, 100000, 2000, Direction::decreasing);
    const std::array<int, 2> times{0, 1};
    for (int i = 0; i <= 15; ++i) {
        for (int j = 0; j <= 15; ++j) {
            const std::array<double, 2> u{i / 15.0, j / 15.0};
            CHECK(mcopula_eval_decreasing(cm, u, times) ==
                  doctest::Approx(copula_eval_decreasing(cm, u[0], u[1])).epsilon(1e-12));
        }
    }
}

TEST_CASE("decreasing trivariate: normalization, oracle, dimension cap") {
    const MapModel map = MapModel::from_s(0.3);
    const std::int64_t n = 200000;
    const Orbit o = orbit(map, kPiFrac, n);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
    const std::array<int, 3> times{0, 1, 2};
    const CopulaModel cm =
        CopulaModel::assemble(map, mu, lag_closure(times), 4000, Direction::decreasing);
    CHECK(mcopula_eval_decreasing(cm, std::array<double, 3>{1.0, 1.0, 1.0}, times) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // A decreasing transform reflects every uniformized coordinate, so the
    // oracle is the empirical copula of (1-F(x_t), 1-F(x_{t+1}), 1-F(x_{t+2})).
    const int G = 10;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(G * G * G), 0);
    const std::size_t cnt = o.points.size() - 2;
    for (std::size_t t = 0; t < cnt; ++t) {
        const std::size_t i = oracles::bin_of(1.0 - mu->cdf(o.points[t]), G);
        const std::size_t j = oracles::bin_of(1.0 - mu->cdf(o.points[t + 1]), G);
        const std::size_t k = oracles::bin_of(1.0 - mu->cdf(o.points[t + 2]), G);
        hist[(i * G + j) * G + k] += 1;
    }
    double sup = 0.0;
    for (int i = 1; i <= G; ++i) {
        for (int j = 1; j <= G; ++j) {
            for (int k = 1; k <= G; ++k) {
                std::int64_t c = 0;
                for (int a = 0; a < i; ++a)
                    for (int b = 0; b < j; ++b)
                        for (int d = 0; d < k; ++d) c += hist[(a * G + b) * G + d];
                const std::array<double, 3> u{i / double(G), j / double(G), k / double(G)};
                const double approx = mcopula_eval_decreasing(cm, u, times);
                sup = std::max(sup,
                               std::abs(approx - static_cast<double>(c) / double(cnt)));
            }
        }
    }
    CHECK(sup <= 0.03);
    CHECK_THROWS_AS(mcopula_eval_decreasing(cm, std::vector<double>(7, 0.5),
                                            std::vector<int>{0, 1, 2, 3, 4, 5, 6}),
                    dimension_cap_error);
}

TEST_CASE("support polyline matches breakpoints and directions") {
    const MapModel map = MapModel::from_s(0.4);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, 100000));
    const CopulaModel cm = CopulaModel::assemble(map, mu, {1}, 4000);
    const SupportPolyline sp = support_polyline(cm);
    REQUIRE(sp.breakpoints.size() == 3);
    CHECK(sp.breakpoints.front() == 0.0);
    CHECK(sp.breakpoints.back() == 1.0);
    CHECK(sp.breakpoints[1] == doctest::Approx(mu->cdf(map.a)).epsilon(1e-9));
    const auto segs = sp.segments();
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].y0 == 0.0);
    CHECK(segs[0].y1 == 1.0);
    CHECK(sp.line_at(sp.breakpoints[1] / 2.0) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const NodeTable t2 = node_endpoints(map, 2, 4000);
    const SupportPolyline sp2 = support_polyline(map, t2, *mu, Direction::decreasing);
    CHECK(sp2.segments().size() == 4);
    CHECK(sp2.segments()[0].y0 == 1.0);
    CHECK(sp2.segments()[0].y1 == 0.0);
    CHECK(sp2.line_at(sp2.breakpoints[1] + 1e-12) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("refinement shrinks the gap to the doubled configuration") {
    for (double s : {0.1, 0.4}) {
        const MapModel map = MapModel::from_s(s);
        std::map<std::int64_t, std::shared_ptr<const EmpiricalMeasure>> mus;
        for (std::int64_t n : {100000, 400000, 1000000, 4000000}) {
            mus[n] = std::make_shared<const EmpiricalMeasure>(build_measure(map, kPiFrac, n));
        }
        for (int h : {1, 2}) {
            const auto dist = [&](std::size_t m, std::int64_t n) {
                const CopulaModel c1 = CopulaModel::assemble(map, mus[n], {h}, m);
                const CopulaModel c2 = CopulaModel::assemble(map, mus[4 * n], {h}, 2 * m);
                double sup = 0.0;
                for (int i = 0; i <= 30; ++i) {
                    for (int j = 0; j <= 30; ++j) {
                        sup = std::max(sup, std::abs(copula_eval(c1, i / 30.0, j / 30.0) -
                                                     copula_eval(c2, i / 30.0, j / 30.0)));
                    }
                }
                return sup;
            };
            CHECK(dist(1000, 100000) > dist(10000, 1000000));
        }
    }
}
