#include "mpcop/map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpcop {

namespace {

// Upper end of the admissible range for a: the golden-ratio conjugate
// (sqrt(5)-1)/2, reached in the limit s = 1.
constexpr double kAMax = 0.61803398874989490;

}  // namespace

double solve_a(double s) {
    if (!(s > 0.0) || s > 1.0) {
        throw std::domain_error("solve_a: s must lie in (0,1], got " + std::to_string(s));
    }
    double lo = 0.5;
    double hi = kAMax + 1e-4;
    auto f = [s](double a) { return a + std::pow(a, 1.0 + s) - 1.0; };
    if (f(lo) > 0.0 || f(hi) < 0.0) {
        throw std::runtime_error("solve_a: bisection bracket failed");
    }
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double a_to_s(double a) {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw std::domain_error("a_to_s: a must lie in (0,1), got " + std::to_string(a));
    }
    return std::log1p(-a) / std::log(a) - 1.0;
}

MapModel MapModel::from_s(double s) {
    return MapModel{s, solve_a(s)};
}

double apply_map(const MapModel& model, double x) {
    if (!(x >= 0.0) || !(x < 1.0)) {
        throw std::domain_error("apply_map: x must lie in [0,1), got " + std::to_string(x));
    }
    double y = x + std::pow(x, 1.0 + model.s);
    if (y >= 1.0) {
        y -= 1.0;
    }
    return y;
}

Orbit orbit(const MapModel& model, double x0, std::size_t n) {
    if (!(x0 > 0.0) || !(x0 < 1.0)) {
        throw std::domain_error("orbit: x0 must lie strictly inside (0,1), got " +
                                std::to_string(x0));
    }
    if (n < 1) {
        throw std::domain_error("orbit: n must be at least 1");
    }
    Orbit out;
    out.s = model.s;
    out.x0 = x0;
    out.points.resize(n);
    double x = x0;
    const double e = 1.0 + model.s;
    for (std::size_t k = 0; k < n; ++k) {
        out.points[k] = x;
        double y = x + std::pow(x, e);
        if (y >= 1.0) {
            y -= 1.0;
        }
        x = y;
    }
    return out;
}

}  // namespace mpcop
