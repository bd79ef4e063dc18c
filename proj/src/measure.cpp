#include "mpcop/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpcop/errors.hpp"

namespace mpcop {

namespace {

void check_unit(double x, const char* what) {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error(std::string(what) + " must lie in [0,1], got " +
                                std::to_string(x));
    }
}

EmpiricalMeasure finish(std::vector<double> values, double s, double x0, bool enforce_distinct) {
    std::sort(values.begin(), values.end());
    EmpiricalMeasure mu;
    mu.s = s;
    mu.x0 = x0;
    mu.n = static_cast<std::int64_t>(values.size());
    mu.small_sample = mu.n < 1000;

    bool has_dups = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] == values[i - 1]) {
            has_dups = true;
            break;
        }
    }
    if (!has_dups) {
        mu.points = std::move(values);
    } else {
        mu.points.reserve(values.size());
        mu.cum.reserve(values.size());
        std::int64_t seen = 0;
        for (std::size_t i = 0; i < values.size();) {
            std::size_t j = i;
            while (j < values.size() && values[j] == values[i]) ++j;
            seen += static_cast<std::int64_t>(j - i);
            mu.points.push_back(values[i]);
            mu.cum.push_back(seen);
            i = j;
        }
    }
    if (enforce_distinct && mu.points.size() < 10) {
        throw degenerate_orbit_error("orbit collapsed to " + std::to_string(mu.points.size()) +
                                     " distinct values; choose a different initial point");
    }
    return mu;
}

}  // namespace

std::int64_t EmpiricalMeasure::count_le(double x) const {
    const auto it = std::upper_bound(points.begin(), points.end(), x);
    const auto idx = static_cast<std::size_t>(it - points.begin());
    return idx == 0 ? 0 : cum_at(idx - 1);
}

std::int64_t EmpiricalMeasure::count_lt(double x) const {
    const auto it = std::lower_bound(points.begin(), points.end(), x);
    const auto idx = static_cast<std::size_t>(it - points.begin());
    return idx == 0 ? 0 : cum_at(idx - 1);
}

double EmpiricalMeasure::cdf(double x) const {
    check_unit(x, "cdf: x");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double dn = static_cast<double>(n);
    const auto it = std::upper_bound(points.begin(), points.end(), x);
    const auto idx = static_cast<std::size_t>(it - points.begin());
    if (idx > 0 && points[idx - 1] == x) {
        return static_cast<double>(cum_at(idx - 1)) / dn;  // exact jump-grid value
    }
    const double xl = idx == 0 ? 0.0 : points[idx - 1];
    const double vl = idx == 0 ? 0.0 : static_cast<double>(cum_at(idx - 1)) / dn;
    const double xr = idx == points.size() ? 1.0 : points[idx];
    const double vr = idx == points.size() ? 1.0 : static_cast<double>(cum_at(idx)) / dn;
    return vl + (x - xl) * (vr - vl) / (xr - xl);
}

double EmpiricalMeasure::quantile(double u) const {
    check_unit(u, "quantile: u");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;
    const double dn = static_cast<double>(n);
    const double target = u * dn;
    // first knot whose CDF value is >= u
    std::size_t lo = 0, hi = points.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (static_cast<double>(cum_at(mid)) < target) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    const double xl = lo == 0 ? 0.0 : points[lo - 1];
    const double vl = lo == 0 ? 0.0 : static_cast<double>(cum_at(lo - 1)) / dn;
    const double xr = lo == points.size() ? 1.0 : points[lo];
    const double vr = lo == points.size() ? 1.0 : static_cast<double>(cum_at(lo)) / dn;
    if (vr == vl) return xr;
    return xl + (u - vl) * (xr - xl) / (vr - vl);
}

double EmpiricalMeasure::interval_mass(double lo, double hi) const {
    check_unit(lo, "interval_mass: lo");
    check_unit(hi, "interval_mass: hi");
    if (lo > hi) {
        throw std::domain_error("interval_mass: lo > hi");
    }
    return static_cast<double>(count_le(hi) - count_lt(lo)) / static_cast<double>(n);
}

double EmpiricalMeasure::interval_mass_left_open(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    return static_cast<double>(count_le(hi) - count_le(lo)) / static_cast<double>(n);
}

EmpiricalMeasure build_measure(const MapModel& model, double x0, std::int64_t n,
                               std::int64_t burnin) {
    if (!(x0 > 0.0) || !(x0 < 1.0)) {
        throw std::domain_error("build_measure: x0 must lie strictly inside (0,1)");
    }
    if (n < 1) {
        throw std::domain_error("build_measure: n must be at least 1");
    }
    if (burnin < 0) {
        throw std::domain_error("build_measure: burnin must be nonnegative");
    }
    const double e = 1.0 + model.s;
    double x = x0;
    for (std::int64_t k = 0; k < burnin; ++k) {
        double y = x + std::pow(x, e);
        if (y >= 1.0) y -= 1.0;
        x = y;
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        if (x == 0.0) {
            throw degenerate_orbit_error("orbit absorbed at 0 after " + std::to_string(k) +
                                         " recorded steps");
        }
        values[static_cast<std::size_t>(k)] = x;
        double y = x + std::pow(x, e);
        if (y >= 1.0) y -= 1.0;
        x = y;
    }
    return finish(std::move(values), model.s, x0, /*enforce_distinct=*/true);
}

EmpiricalMeasure measure_from_samples(std::vector<double> values, double s, double x0) {
    if (values.empty()) {
        throw std::domain_error("measure_from_samples: no values");
    }
    for (double v : values) {
        if (!(v > 0.0) || !(v < 1.0)) {
            throw std::domain_error("measure_from_samples: values must lie strictly in (0,1)");
        }
    }
    return finish(std::move(values), s, x0, /*enforce_distinct=*/false);
}

}  // namespace mpcop
