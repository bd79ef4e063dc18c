#ifndef MPCOP_ESTIMATOR_HPP
#define MPCOP_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace mpcop {

enum class EstimationMethod { minmax, ls, refined };
enum class BranchUsed { second, first_fallback };

struct EstimateReport {
    double a_hat = 0.0;
    double s_hat = 0.0;
    EstimationMethod method = EstimationMethod::minmax;
    BranchUsed branch_used = BranchUsed::second;
    int branch_count = 0;    // pairs on the branch the fit used
    double residual = 0.0;   // RMS distance of those pairs to the fitted line
    bool a_in_range = true;  // a_hat inside (1/2, (sqrt(5)-1)/2); reported, never clipped
    bool converged = true;   // refined procedure only
    int iterations = 0;      // refined procedure only
};

// Consecutive-pair partition of a path: the pair (x_i, x_{i+1}) sits on the
// second branch of the lag-1 scatter exactly when the map wrapped, i.e. when
// x_{i+1} < x_i; otherwise it sits on the first branch.
struct BranchSplit {
    std::vector<std::size_t> first;   // pair indices with x_{i+1} >= x_i
    std::vector<std::size_t> second;  // pair indices with x_{i+1} < x_i
};
BranchSplit classify_branches(std::span<const double> path);

// Line through the two extreme second-branch pairs (minimal and maximal
// abscissa); the estimate of the discontinuity point is the line's root.
// With fewer than two second-branch pairs the mirrored construction runs on
// the first branch (root of line - 1) and the report is marked accordingly.
// Intended for paths of length 20 or more.
EstimateReport estimate_minmax(std::span<const double> path);

// Ordinary least squares through the second-branch pairs (same fallback).
EstimateReport estimate_ls(std::span<const double> path);

struct RefineOptions {
    double eps = 0.01;                    // stop when successive estimates differ less
    std::int64_t orbit_length = 1000000;  // fresh-orbit size used to build each CDF
    int max_iterations = 25;
    double initial_s = 0.0;               // <= 0 starts from the min-max estimate
    bool bisection = false;               // bracket the breakpoint mismatch instead
    double reference_x0 = 0.14159265358979;  // initial point of the fresh orbits
};

// Fixed-point refinement: transform the path through the CDF built at the
// current guess, re-estimate the support breakpoint there by min-max, pull it
// back through the quantile, and repeat to the requested accuracy.  On a
// correctly specified guess the transformed second branch is a straight line,
// which removes the curvature bias of the raw procedures.  Non-convergence
// after the iteration cap returns the last iterate with converged = false.
// Intended for paths of length 50 or more.
EstimateReport estimate_refined(std::span<const double> path, const RefineOptions& opts = {});

}  // namespace mpcop

#endif  // MPCOP_ESTIMATOR_HPP
