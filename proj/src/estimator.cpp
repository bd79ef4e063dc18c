#include "mpcop/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpcop/errors.hpp"
#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"

namespace mpcop {

namespace {

constexpr double kAMin = 0.5;
constexpr double kAMax = 0.61803398874989490;

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS
    BranchUsed branch_used = BranchUsed::second;
    int count = 0;
};

void validate_path(std::span<const double> path) {
    if (path.size() < 3) {
        throw std::domain_error("estimator: path must hold at least 3 values");
    }
    for (double x : path) {
        if (!(x > 0.0) || !(x < 1.0)) {
            throw std::domain_error("estimator: path values must lie strictly in (0,1)");
        }
    }
}

double rms_residual(std::span<const double> path, const std::vector<std::size_t>& idx, double A,
                    double B) {
    double ss = 0.0;
    for (std::size_t i : idx) {
        const double r = path[i + 1] - (A * path[i] + B);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(idx.size()));
}

// Line through the minimal- and maximal-abscissa pairs of the given branch.
LineFit minmax_fit(std::span<const double> path, const std::vector<std::size_t>& idx) {
    std::size_t m0 = idx[0], m1 = idx[0];
    for (std::size_t i : idx) {
        if (path[i] < path[m0]) m0 = i;
        if (path[i] > path[m1]) m1 = i;
    }
    if (path[m1] == path[m0]) {
        throw singular_fit_error("min-max fit: extreme abscissae coincide");
    }
    LineFit fit;
    fit.slope = (path[m1 + 1] - path[m0 + 1]) / (path[m1] - path[m0]);
    fit.intercept = path[m0 + 1] - fit.slope * path[m0];
    fit.count = static_cast<int>(idx.size());
    fit.residual = rms_residual(path, idx, fit.slope, fit.intercept);
    return fit;
}

LineFit ls_fit(std::span<const double> path, const std::vector<std::size_t>& idx) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t i : idx) {
        sx += path[i];
        sy += path[i + 1];
    }
    const double cnt = static_cast<double>(idx.size());
    const double mx = sx / cnt, my = sy / cnt;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i : idx) {
        sxx += (path[i] - mx) * (path[i] - mx);
        sxy += (path[i] - mx) * (path[i + 1] - my);
    }
    if (sxx == 0.0) {
        throw singular_fit_error("least squares: branch abscissae coincide");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.count = static_cast<int>(idx.size());
    fit.residual = rms_residual(path, idx, fit.slope, fit.intercept);
    return fit;
}

// Runs the given fitter on the second branch, falling back to the mirrored
// first-branch construction, and converts the fitted line into (a_hat, s_hat).
template <typename Fitter>
EstimateReport fit_and_convert(std::span<const double> path, EstimationMethod method,
                               Fitter fitter) {
    const BranchSplit split = classify_branches(path);
    LineFit fit;
    double a_hat;
    if (split.second.size() >= 2) {
        fit = fitter(path, split.second);
        fit.branch_used = BranchUsed::second;
        if (fit.slope == 0.0) {
            throw invalid_estimate_error("fitted second-branch line is horizontal");
        }
        a_hat = -fit.intercept / fit.slope;  // root of the line
    } else if (split.first.size() >= 2) {
        fit = fitter(path, split.first);
        fit.branch_used = BranchUsed::first_fallback;
        if (fit.slope == 0.0) {
            throw invalid_estimate_error("fitted first-branch line is horizontal");
        }
        a_hat = (1.0 - fit.intercept) / fit.slope;  // where the line reaches 1
    } else {
        throw insufficient_data_error("neither branch holds 2 pairs (path too short)");
    }
    if (!(a_hat > 0.0) || !(a_hat < 1.0)) {
        throw invalid_estimate_error("estimated discontinuity point " + std::to_string(a_hat) +
                                     " outside (0,1)");
    }
    EstimateReport rep;
    rep.a_hat = a_hat;
    rep.s_hat = a_to_s(a_hat);
    rep.method = method;
    rep.branch_used = fit.branch_used;
    rep.branch_count = fit.count;
    rep.residual = fit.residual;
    rep.a_in_range = a_hat > kAMin && a_hat < kAMax;
    return rep;
}

}  // namespace

BranchSplit classify_branches(std::span<const double> path) {
    validate_path(path);
    BranchSplit split;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i + 1] < path[i]) {
            split.second.push_back(i);
        } else {
            split.first.push_back(i);
        }
    }
    return split;
}

EstimateReport estimate_minmax(std::span<const double> path) {
    return fit_and_convert(path, EstimationMethod::minmax,
                           [](std::span<const double> p, const std::vector<std::size_t>& idx) {
                               return minmax_fit(p, idx);
                           });
}

EstimateReport estimate_ls(std::span<const double> path) {
    return fit_and_convert(path, EstimationMethod::ls,
                           [](std::span<const double> p, const std::vector<std::size_t>& idx) {
                               return ls_fit(p, idx);
                           });
}

namespace {

struct BreakpointFit {
    double breakpoint = 0.0;  // estimated support break in CDF coordinates
    LineFit line;
};

// Min-max on the CDF-transformed pairs; the root of the second-branch line
// estimates the breakpoint F_n(a).
BreakpointFit fit_breakpoint(const std::vector<double>& transformed) {
    const BranchSplit split = classify_branches(transformed);
    BreakpointFit out;
    if (split.second.size() >= 2) {
        out.line = minmax_fit(transformed, split.second);
        out.line.branch_used = BranchUsed::second;
        if (out.line.slope == 0.0) {
            throw invalid_estimate_error("transformed second-branch line is horizontal");
        }
        out.breakpoint = -out.line.intercept / out.line.slope;
    } else if (split.first.size() >= 2) {
        out.line = minmax_fit(transformed, split.first);
        out.line.branch_used = BranchUsed::first_fallback;
        if (out.line.slope == 0.0) {
            throw invalid_estimate_error("transformed first-branch line is horizontal");
        }
        out.breakpoint = (1.0 - out.line.intercept) / out.line.slope;
    } else {
        throw insufficient_data_error("neither branch holds 2 pairs (path too short)");
    }
    if (!(out.breakpoint > 0.0) || !(out.breakpoint < 1.0)) {
        throw invalid_estimate_error("estimated breakpoint " + std::to_string(out.breakpoint) +
                                     " outside (0,1)");
    }
    return out;
}

double clamp_s(double s) { return std::clamp(s, 0.02, 0.99); }

}  // namespace

EstimateReport estimate_refined(std::span<const double> path, const RefineOptions& opts) {
    validate_path(path);
    if (!(opts.eps > 0.0)) {
        throw std::domain_error("estimate_refined: eps must be positive");
    }
    double s0 = opts.initial_s > 0.0 ? opts.initial_s : estimate_minmax(path).s_hat;
    s0 = clamp_s(s0);

    struct RefineStep {
        double a_hat = 0.0;
        double s_hat = 0.0;
        LineFit line;
    };
    std::vector<double> transformed(path.size());
    const auto transform_and_fit = [&](double s_guess) {
        const MapModel model = MapModel::from_s(s_guess);
        const EmpiricalMeasure mu = build_measure(model, opts.reference_x0, opts.orbit_length);
        for (std::size_t i = 0; i < path.size(); ++i) {
            transformed[i] = mu.cdf(path[i]);
        }
        const BreakpointFit bp = fit_breakpoint(transformed);
        RefineStep res;
        res.a_hat = mu.quantile(bp.breakpoint);
        res.s_hat = a_to_s(res.a_hat);
        res.line = bp.line;
        return res;
    };

    EstimateReport rep;
    rep.method = EstimationMethod::refined;
    const auto fill = [&](const RefineStep& r, int iterations, bool converged) {
        rep.a_hat = r.a_hat;
        rep.s_hat = r.s_hat;
        rep.branch_used = r.line.branch_used;
        rep.branch_count = r.line.count;
        rep.residual = r.line.residual;
        rep.iterations = iterations;
        rep.converged = converged;
        rep.a_in_range = r.a_hat > kAMin && r.a_hat < kAMax;
    };

    if (opts.bisection) {
        // The fixed-point residual s_hat(guess) - guess changes sign at the
        // solution (it carries the sign of the breakpoint mismatch); bracket
        // it instead of iterating when requested.
        double lo = 0.05, hi = 0.98;
        int used = 0;
        RefineStep last;
        const auto mismatch = [&](double sg) {
            ++used;
            last = transform_and_fit(sg);
            return last.s_hat - sg;
        };
        if (mismatch(lo) <= 0.0) {
            hi = lo;
        } else if (mismatch(hi) >= 0.0) {
            lo = hi;
        } else {
            while (hi - lo > opts.eps && used < opts.max_iterations) {
                const double mid = 0.5 * (lo + hi);
                if (mismatch(mid) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        fill(last, used, hi - lo <= opts.eps);
        return rep;
    }

    for (int it = 1; it <= opts.max_iterations; ++it) {
        const RefineStep r = transform_and_fit(s0);
        fill(r, it, false);
        if (std::abs(r.s_hat - s0) < opts.eps) {
            rep.converged = true;
            return rep;
        }
        s0 = clamp_s(r.s_hat);
    }
    return rep;
}

}  // namespace mpcop
