#ifndef MPCOP_MAP_HPP
#define MPCOP_MAP_HPP

#include <cstddef>
#include <vector>

namespace mpcop {

// The interval map T_s(x) = x + x^{1+s} mod 1 on [0,1).  It is increasing
// on [0, a) and on [a, 1), where the discontinuity point a solves
// a + a^{1+s} = 1; the fixed point at 0 is neutral, which produces the
// intermittent (laminar/burst) dynamics.
struct MapModel {
    double s;  // intermittency parameter, in (0,1] (s = 1 accepted for testing)
    double a;  // discontinuity point, root of a + a^{1+s} = 1

    static MapModel from_s(double s);
};

// Root a of a + a^{1+s} = 1, located by bisection on [1/2, 0.6181].
// The objective is strictly increasing in a, so bracketing cannot fail
// for s in (0,1]; the residual |a + a^{1+s} - 1| ends below 1e-12.
double solve_a(double s);

// Inverse relation s = log(1-a)/log(a) - 1, defined for a in (0,1).
double a_to_s(double a);

// One application of T_s.  x must lie in [0,1).  The mod-1 reduction is a
// single subtraction performed exactly when x + x^{1+s} >= 1, which keeps
// the result in [0,1) without the rounding hazards of a generic floor.
double apply_map(const MapModel& model, double x);

struct Orbit {
    std::vector<double> points;  // points[k] = T_s^k(x0)
    double s = 0.0;
    double x0 = 0.0;
};

// (x0, T_s(x0), ..., T_s^{n-1}(x0)).  x0 must lie strictly inside (0,1):
// both endpoints are fixed/absorbing and would poison any orbit statistic.
Orbit orbit(const MapModel& model, double x0, std::size_t n);

}  // namespace mpcop

#endif  // MPCOP_MAP_HPP
