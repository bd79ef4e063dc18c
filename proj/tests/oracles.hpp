// Test-only oracles: empirical copulas of lagged orbit tuples and a KS
// statistic.  These deliberately bypass the library's copula evaluation so
// they can serve as independent references for it.
#ifndef MPCOP_TESTS_ORACLES_HPP
#define MPCOP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mpcop/measure.hpp"

namespace oracles {

inline std::size_t bin_of(double w, int grid) {
    auto b = static_cast<std::int64_t>(w * grid);
    if (b < 0) b = 0;
    if (b > grid - 1) b = grid - 1;
    return static_cast<std::size_t>(b);
}

// Empirical copula of the pairs (F(x_t), F(x_{t+h})) on a (grid+1)^2 lattice:
// out[i][j] = fraction of pairs with both coordinates <= i/grid, j/grid.
// With `reflect` both coordinates become 1 - F (the sample a decreasing
// transform of the process produces).
inline std::vector<std::vector<double>> empirical_copula2(const mpcop::EmpiricalMeasure& mu,
                                                          const std::vector<double>& path, int h,
                                                          int grid, bool reflect = false) {
    const std::size_t G = static_cast<std::size_t>(grid);
    std::vector<std::vector<std::int64_t>> hist(G, std::vector<std::int64_t>(G, 0));
    const std::size_t count = path.size() - static_cast<std::size_t>(h);
    for (std::size_t t = 0; t < count; ++t) {
        double a = mu.cdf(path[t]);
        double b = mu.cdf(path[t + static_cast<std::size_t>(h)]);
        if (reflect) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        hist[bin_of(a, grid)][bin_of(b, grid)] += 1;
    }
    std::vector<std::vector<double>> out(G + 1, std::vector<double>(G + 1, 0.0));
    std::vector<std::vector<std::int64_t>> cumulative(G + 1, std::vector<std::int64_t>(G + 1, 0));
    for (std::size_t i = 1; i <= G; ++i) {
        for (std::size_t j = 1; j <= G; ++j) {
            cumulative[i][j] = hist[i - 1][j - 1] + cumulative[i - 1][j] + cumulative[i][j - 1] -
                               cumulative[i - 1][j - 1];
            out[i][j] = static_cast<double>(cumulative[i][j]) / static_cast<double>(count);
        }
    }
    return out;
}

// Trivariate analogue for lags (0, h2, h3); flat index (i*(grid+1)+j)*(grid+1)+k.
inline std::vector<double> empirical_copula3(const mpcop::EmpiricalMeasure& mu,
                                             const std::vector<double>& path, int h2, int h3,
                                             int grid) {
    const std::size_t G = static_cast<std::size_t>(grid);
    std::vector<std::int64_t> hist(G * G * G, 0);
    const std::size_t count = path.size() - static_cast<std::size_t>(h3);
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t i = bin_of(mu.cdf(path[t]), grid);
        const std::size_t j = bin_of(mu.cdf(path[t + static_cast<std::size_t>(h2)]), grid);
        const std::size_t k = bin_of(mu.cdf(path[t + static_cast<std::size_t>(h3)]), grid);
        hist[(i * G + j) * G + k] += 1;
    }
    const std::size_t W = G + 1;
    std::vector<std::int64_t> cum(W * W * W, 0);
    const auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> std::int64_t& {
        return cum[(i * W + j) * W + k];
    };
    for (std::size_t i = 1; i <= G; ++i)
        for (std::size_t j = 1; j <= G; ++j)
            for (std::size_t k = 1; k <= G; ++k)
                at(i, j, k) = hist[((i - 1) * G + (j - 1)) * G + (k - 1)] + at(i - 1, j, k) +
                              at(i, j - 1, k) + at(i, j, k - 1) - at(i - 1, j - 1, k) -
                              at(i - 1, j, k - 1) - at(i, j - 1, k - 1) + at(i - 1, j - 1, k - 1);
    std::vector<double> out(W * W * W, 0.0);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx] = static_cast<double>(cum[idx]) / static_cast<double>(count);
    }
    return out;
}

// One-sample Kolmogorov-Smirnov statistic against Uniform(0,1).
inline double ks_uniform(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double u = values[i];
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - u,
                                 u - static_cast<double>(i) / n));
    }
    return d;
}

}  // namespace oracles

#endif  // MPCOP_TESTS_ORACLES_HPP
