#include "mpcop/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpcop/errors.hpp"

namespace mpcop {

namespace {

constexpr int kMaxLag = 20;

// Map step extended to the closed interval: step(1) = 1, so grid evaluation
// at the right edge stays monotone within the last piece.
inline double step_closed(double s, double x) {
    double y = x + std::pow(x, 1.0 + s);
    if (y >= 1.0) y -= 1.0;
    return y;
}

inline double iterate_closed(double s, double x, int times) {
    for (int i = 0; i < times; ++i) x = step_closed(s, x);
    return x;
}

void validate_lag(int h) {
    if (h < 1) throw std::domain_error("lag h must be at least 1");
    if (h > kMaxLag) {
        throw dimension_cap_error("lag h = " + std::to_string(h) + " exceeds the cap " +
                                  std::to_string(kMaxLag));
    }
}

// Unwrapped final application: T^{h-1}(x) + (T^{h-1}(x))^{1+s}, which crosses
// height 1 exactly at each node of T^h that the last application creates, and
// jumps across 1 at nodes inherited from T^{h-1}.  Either way the level set
// {value = 1} inside a bracketing cell is the node.
inline double unwrapped(double s, double x, int h) {
    const double g = iterate_closed(s, x, h - 1);
    return g + std::pow(g, 1.0 + s);
}

// One node inside [lo, hi]: linear interpolation of the unwrapped iterate
// through height 1, then bisection on its sign, which handles both the
// continuous crossing and the inherited-jump orientation.
double locate_node(double s, int h, double lo, double hi, double ulo, double uhi) {
    double guess;
    if (uhi != ulo) {
        guess = lo + (hi - lo) * (1.0 - ulo) / (uhi - ulo);
    } else {
        guess = 0.5 * (lo + hi);
    }
    const double flo = ulo - 1.0;
    const double fhi = uhi - 1.0;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        return std::clamp(guess, lo, hi);  // borderline rounding; keep the interpolant
    }
    double a = lo, b = hi;
    bool lo_positive = flo > 0.0;
    for (int i = 0; i < 40 && b - a > 0.0; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = unwrapped(s, mid, h) - 1.0;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == lo_positive) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double BranchInverse::eval(double v) const {
    if (!(v >= 0.0) || !(v <= 1.0)) {
        throw std::domain_error("branch inverse: argument must lie in [0,1], got " +
                                std::to_string(v));
    }
    const auto it = std::upper_bound(y.begin(), y.end(), v);
    const auto idx = static_cast<std::size_t>(it - y.begin());
    if (idx == 0) return x.front();
    if (idx == y.size()) return x.back();
    const double y0 = y[idx - 1], y1 = y[idx];
    const double x0 = x[idx - 1], x1 = x[idx];
    return x0 + (v - y0) * (x1 - x0) / (y1 - y0);
}

std::vector<std::size_t> detect_discontinuities(const MapModel& model, int h,
                                                std::span<const double> grid) {
    validate_lag(h);
    if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0) {
        throw std::domain_error("detect_discontinuities: grid must cover [0,1]");
    }
    const std::size_t pieces = std::size_t{1} << h;
    if (grid.size() < pieces) {
        throw resolution_error("grid of " + std::to_string(grid.size()) +
                               " points cannot separate " + std::to_string(pieces) + " pieces");
    }
    std::vector<std::size_t> drops;
    double prev = iterate_closed(model.s, grid[0], h);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            throw std::domain_error("detect_discontinuities: grid must be strictly ascending");
        }
        const double cur = iterate_closed(model.s, grid[i], h);
        if (prev > cur) drops.push_back(i - 1);
        prev = cur;
    }
    if (drops.size() != pieces - 1) {
        throw resolution_error("found " + std::to_string(drops.size()) +
                               " discontinuities of T^" + std::to_string(h) + ", expected " +
                               std::to_string(pieces - 1) + "; refine the grid");
    }
    return drops;
}

NodeTable node_endpoints(const MapModel& model, int h, std::size_t m) {
    validate_lag(h);
    const std::size_t pieces = std::size_t{1} << h;
    if (m < pieces) {
        throw std::domain_error("node_endpoints: need m >= 2^h grid points");
    }
    if (m < 2) m = 2;
    const double s = model.s;

    // Base grid with the wrapped iterate evaluated in one pass.
    std::vector<double> grid(m), th(m);
    for (std::size_t i = 0; i < m; ++i) {
        grid[i] = static_cast<double>(i) / static_cast<double>(m - 1);
    }
    grid[m - 1] = 1.0;
    {
        std::vector<double> g(grid);
        for (int it = 0; it < h - 1; ++it) {
            for (std::size_t i = 0; i < m; ++i) g[i] = step_closed(s, g[i]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double u = g[i] + std::pow(g[i], 1.0 + s);
            th[i] = u >= 1.0 ? u - 1.0 : u;
        }
    }

    std::vector<std::size_t> drops;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (th[i] > th[i + 1]) drops.push_back(i);
    }
    if (drops.size() != pieces - 1) {
        throw resolution_error("node_endpoints: found " + std::to_string(drops.size()) +
                               " discontinuities of T^" + std::to_string(h) + ", expected " +
                               std::to_string(pieces - 1) + "; increase m");
    }

    NodeTable table;
    table.h = h;
    table.m = m;
    table.s = s;
    table.endpoints.resize(pieces + 1);
    table.endpoints[0] = 0.0;
    table.endpoints[pieces] = 1.0;

    // Refine each bracketing cell with m/2^h interior points, re-detect the
    // drop there, interpolate, then polish by bisection.
    const std::size_t local = std::max<std::size_t>(m >> h, 2);
    std::vector<double> px(local + 2), pu(local + 2), pt(local + 2);
    for (std::size_t j = 0; j < drops.size(); ++j) {
        const double lo = grid[drops[j]];
        const double hi = grid[drops[j] + 1];
        for (std::size_t i = 0; i < px.size(); ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(px.size() - 1);
            px[i] = lo + t * (hi - lo);
            pu[i] = unwrapped(s, px[i], h);
            pt[i] = pu[i] >= 1.0 ? pu[i] - 1.0 : pu[i];
        }
        std::size_t drop_at = px.size();
        for (std::size_t i = 0; i + 1 < px.size(); ++i) {
            if (pt[i] > pt[i + 1]) {
                if (drop_at != px.size()) {
                    throw resolution_error("node_endpoints: two discontinuities share a cell");
                }
                drop_at = i;
            }
        }
        double node;
        if (drop_at == px.size()) {
            node = locate_node(s, h, lo, hi, pu.front(), pu.back());
        } else {
            node = locate_node(s, h, px[drop_at], px[drop_at + 1], pu[drop_at], pu[drop_at + 1]);
        }
        table.endpoints[j + 1] = node;
    }
    for (std::size_t k = 0; k + 1 < table.endpoints.size(); ++k) {
        if (!(table.endpoints[k] < table.endpoints[k + 1])) {
            throw resolution_error("node_endpoints: endpoints not strictly increasing");
        }
    }

    // Branch knots: grid points strictly inside each piece, bracketed by the
    // refined endpoints as exact anchors at heights 0 and 1.
    table.branches.resize(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
        const std::size_t first = k == 0 ? 0 : drops[k - 1] + 1;
        const std::size_t last = k == pieces - 1 ? m - 1 : drops[k];
        BranchInverse& br = table.branches[k];
        br.x.reserve(last - first + 3);
        br.y.reserve(last - first + 3);
        br.x.push_back(table.endpoints[k]);
        br.y.push_back(0.0);
        for (std::size_t i = first; i <= last; ++i) {
            if (grid[i] > br.x.back() && th[i] > br.y.back() && grid[i] < table.endpoints[k + 1] &&
                th[i] < 1.0) {
                br.x.push_back(grid[i]);
                br.y.push_back(th[i]);
            }
        }
        br.x.push_back(table.endpoints[k + 1]);
        br.y.push_back(1.0);
    }
    return table;
}

std::vector<std::pair<double, double>> preimage_intervals(const NodeTable& table, double lo,
                                                          double hi) {
    if (!(lo >= 0.0) || !(hi <= 1.0) || lo > hi) {
        throw std::domain_error("preimage_intervals: need 0 <= lo <= hi <= 1");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(table.branches.size());
    for (const BranchInverse& br : table.branches) {
        out.emplace_back(br.eval(lo), br.eval(hi));
    }
    return out;
}

double preimage_mass(const EmpiricalMeasure& mu, const NodeTable& table, double lo, double hi) {
    double total = 0.0;
    for (const auto& [plo, phi] : preimage_intervals(table, lo, hi)) {
        total += mu.interval_mass(plo, phi);
    }
    return total;
}

}  // namespace mpcop
