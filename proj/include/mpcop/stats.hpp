#ifndef MPCOP_STATS_HPP
#define MPCOP_STATS_HPP

#include <cmath>
#include <span>

namespace mpcop {

// min/max/range/mean plus population standard deviation; when a true value
// is supplied, mse = mean((x - truth)^2), so mse = bias^2 + sd^2 holds as an
// identity.
struct SummaryStats {
    double min = 0.0;
    double max = 0.0;
    double range = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    double mse = 0.0;
    std::size_t count = 0;
};

inline SummaryStats summarize(std::span<const double> values, double truth = 0.0,
                              bool with_mse = false) {
    SummaryStats out;
    out.count = values.size();
    if (values.empty()) return out;
    out.min = values[0];
    out.max = values[0];
    double sum = 0.0;
    for (double v : values) {
        if (v < out.min) out.min = v;
        if (v > out.max) out.max = v;
        sum += v;
    }
    const double n = static_cast<double>(values.size());
    out.mean = sum / n;
    out.range = out.max - out.min;
    double ss = 0.0, se = 0.0;
    for (double v : values) {
        ss += (v - out.mean) * (v - out.mean);
        se += (v - truth) * (v - truth);
    }
    out.sd = std::sqrt(ss / n);
    out.mse = with_mse ? se / n : 0.0;
    return out;
}

}  // namespace mpcop

#endif  // MPCOP_STATS_HPP
