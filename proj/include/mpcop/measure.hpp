#ifndef MPCOP_MEASURE_HPP
#define MPCOP_MEASURE_HPP

#include <cstdint>
#include <vector>

#include "mpcop/map.hpp"

namespace mpcop {

// Orbit-average approximation of the invariant measure: the mass of a set is
// the fraction of (x0, T_s(x0), ..., T_s^{n-1}(x0)) falling inside it.  The
// distribution function is the piecewise-linear interpolation of the
// empirical CDF through the jump grid {0, x_(1), ..., x_(n), 1}, so that both
// the CDF and its inverse are continuous and cheap to query.
struct EmpiricalMeasure {
    std::vector<double> points;     // distinct orbit values, ascending, in (0,1)
    std::vector<std::int64_t> cum;  // cum[i] = # orbit values <= points[i];
                                    // empty when all values are distinct
    std::int64_t n = 0;             // orbit length (with multiplicities)
    double s = 0.0;
    double x0 = 0.0;
    bool small_sample = false;      // built from fewer than 1000 points

    std::int64_t count_le(double x) const;  // # orbit values <= x
    std::int64_t count_lt(double x) const;  // # orbit values <  x

    // Interpolated CDF F_n; F_n(0) = 0, F_n(1) = 1, and at the k-th sorted
    // orbit value F_n equals k/n exactly.
    double cdf(double x) const;

    // Inverse of the interpolated CDF; quantile(1) = 1 by convention.
    double quantile(double u) const;

    // Mass of the closed interval [lo, hi].
    double interval_mass(double lo, double hi) const;

    // Mass of the half-open interval (lo, hi]; zero whenever hi <= lo.
    // This is the convention the copula evaluation uses so that empty
    // branch intervals contribute exactly nothing.
    double interval_mass_left_open(double lo, double hi) const;

    std::int64_t cum_at(std::size_t i) const {
        return cum.empty() ? static_cast<std::int64_t>(i) + 1 : cum[i];
    }
};

// Builds the measure from a fresh length-n orbit started at x0.  Duplicate
// floating-point orbit values are merged with count weights.  Fails with
// degenerate_orbit_error when the orbit collapses to fewer than 10 distinct
// values or is absorbed at 0.
EmpiricalMeasure build_measure(const MapModel& model, double x0, std::int64_t n,
                               std::int64_t burnin = 0);

// Same construction from caller-supplied values in (0,1); provenance fields
// are recorded as given.  No minimum-distinct check.
EmpiricalMeasure measure_from_samples(std::vector<double> values, double s, double x0);

}  // namespace mpcop

#endif  // MPCOP_MEASURE_HPP
