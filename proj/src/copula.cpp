#include "mpcop/copula.hpp"

#include <algorithm>
#include <bit>
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

// Increasing-case evaluation shared by the bivariate and multivariate paths:
// sum of half-open interval masses (endpoint_k, upper_k] for k < k0, plus the
// final cell truncated at x_u.  upper(k) supplies the per-cell cutoff.
template <typename UpperFn>
double cell_sum(const EmpiricalMeasure& mu, const NodeTable& nodes, std::size_t k0, double x_u,
                UpperFn upper) {
    double total = 0.0;
    for (std::size_t k = 0; k < k0; ++k) {
        total += mu.interval_mass_left_open(nodes.endpoints[k], upper(k));
    }
    total += mu.interval_mass_left_open(nodes.endpoints[k0], std::min(x_u, upper(k0)));
    return total;
}

}  // namespace

const LagData& CopulaModel::lag(int lag_h) const {
    const auto it = lags.find(lag_h);
    if (it == lags.end()) {
        throw std::invalid_argument("CopulaModel: lag " + std::to_string(lag_h) +
                                    " was not assembled");
    }
    return it->second;
}

CopulaModel CopulaModel::assemble(const MapModel& map, std::shared_ptr<const EmpiricalMeasure> mu,
                                  std::vector<int> lag_set, std::size_t m, Direction direction) {
    if (!mu) {
        throw std::invalid_argument("CopulaModel: null measure");
    }
    if (lag_set.empty()) {
        throw std::invalid_argument("CopulaModel: need at least one lag");
    }
    CopulaModel cm;
    cm.map = map;
    cm.mu = std::move(mu);
    cm.direction = direction;
    cm.h = lag_set.front();
    cm.m = m;
    for (int lh : lag_set) {
        if (cm.lags.count(lh)) continue;
        LagData data;
        data.nodes = node_endpoints(map, lh, m);
        data.cell_bounds.reserve(data.nodes.endpoints.size());
        for (double a : data.nodes.endpoints) {
            data.cell_bounds.push_back(cm.mu->cdf(a));
        }
        cm.lags.emplace(lh, std::move(data));
    }
    return cm;
}

std::vector<int> lag_closure(std::span<const int> times) {
    std::vector<int> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = i + 1; j < times.size(); ++j) {
            const int d = times[j] - times[i];
            if (d >= 1) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t cell_index(const std::vector<double>& bounds, double u) {
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), u);
    auto k = static_cast<std::size_t>(it - bounds.begin());
    if (k == 0) return 0;  // u below bounds[0] = 0 cannot happen for valid u
    k -= 1;
    const std::size_t last = bounds.size() - 2;
    return k > last ? last : k;
}

double copula_eval(const CopulaModel& cm, double u, double v) {
    check_unit(u, "copula_eval: u");
    check_unit(v, "copula_eval: v");
    const LagData& L = cm.lag(cm.h);
    const EmpiricalMeasure& mu = *cm.mu;
    const std::size_t k0 = cell_index(L.cell_bounds, u);
    const double y = mu.quantile(v);
    const double x_u = mu.quantile(u);
    return cell_sum(mu, L.nodes, k0, x_u,
                    [&](std::size_t k) { return L.nodes.branches[k].eval(y); });
}

double copula_eval_decreasing(const CopulaModel& cm, double u, double v) {
    check_unit(u, "copula_eval_decreasing: u");
    check_unit(v, "copula_eval_decreasing: v");
    return u + v - 1.0 + copula_eval(cm, 1.0 - u, 1.0 - v);
}

double mcopula_eval(const CopulaModel& cm, std::span<const double> u,
                    std::span<const int> times) {
    const std::size_t dim = u.size();
    if (dim < 2) {
        throw std::domain_error("mcopula_eval: need at least two coordinates");
    }
    if (times.size() != dim) {
        throw std::domain_error("mcopula_eval: times/arguments size mismatch");
    }
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        if (times[i] >= times[i + 1]) {
            throw std::domain_error("mcopula_eval: times must be strictly ascending");
        }
    }
    for (double ui : u) check_unit(ui, "mcopula_eval: u");

    const EmpiricalMeasure& mu = *cm.mu;
    const int hn = times[dim - 1] - times[0];
    const LagData& Ln = cm.lag(hn);
    const std::size_t k0 = cell_index(Ln.cell_bounds, u[0]);

    std::vector<const LagData*> Li(dim);
    std::vector<double> xi(dim);
    for (std::size_t i = 1; i < dim; ++i) {
        Li[i] = &cm.lag(times[i] - times[0]);
        xi[i] = mu.quantile(u[i]);
    }

    // Cutoff of cell k: each coordinate reaches into the cell through exactly
    // one of its branches, because the pieces of the shorter iterate are
    // unions of pieces of the longest one.  That branch is located by the
    // cell midpoint, which keeps the lookup away from the endpoint values the
    // per-lag refinements approximate independently.  The branch contributes
    // its inverse when it lands past the cell's left endpoint; otherwise the
    // coordinate's constraint misses the cell and the cell contributes
    // nothing.
    const auto cutoff = [&](std::size_t k) {
        const double cell_lo = Ln.nodes.endpoints[k];
        const double cell_hi = Ln.nodes.endpoints[k + 1];
        const double mid = 0.5 * (cell_lo + cell_hi);
        double b = cell_hi;
        for (std::size_t i = 1; i < dim; ++i) {
            const NodeTable& nodes = Li[i]->nodes;
            const auto it = std::upper_bound(nodes.endpoints.begin(), nodes.endpoints.end(), mid);
            std::size_t j = static_cast<std::size_t>(it - nodes.endpoints.begin());
            if (j > 0) j -= 1;
            if (j >= nodes.branches.size()) j = nodes.branches.size() - 1;
            const double val = nodes.branches[j].eval(xi[i]);
            b = std::min(b, val > cell_lo ? val : cell_lo);
        }
        return b;
    };
    return cell_sum(mu, Ln.nodes, k0, mu.quantile(u[0]), cutoff);
}

double mcopula_eval_decreasing(const CopulaModel& cm, std::span<const double> u,
                               std::span<const int> times) {
    const std::size_t dim = u.size();
    if (dim < 2) {
        throw std::domain_error("mcopula_eval_decreasing: need at least two coordinates");
    }
    if (times.size() != dim) {
        throw std::domain_error("mcopula_eval_decreasing: times/arguments size mismatch");
    }
    if (dim > 6) {
        throw dimension_cap_error("mcopula_eval_decreasing: dimension " + std::to_string(dim) +
                                  " exceeds the inclusion-exclusion cap of 6");
    }
    for (double ui : u) check_unit(ui, "mcopula_eval_decreasing: u");

    double total = 1.0;
    for (double ui : u) total -= 1.0 - ui;

    std::vector<double> sub_u;
    std::vector<int> sub_t;
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        const int bits = std::popcount(mask);
        if (bits < 2) continue;
        sub_u.clear();
        sub_t.clear();
        for (std::size_t i = 0; i < dim; ++i) {
            if (mask & (1u << i)) {
                sub_u.push_back(1.0 - u[i]);
                sub_t.push_back(times[i]);
            }
        }
        const double term = mcopula_eval(cm, sub_u, sub_t);
        total += (bits % 2 == 0) ? term : -term;
    }
    return total;
}

std::vector<SupportSegment> SupportPolyline::segments() const {
    std::vector<SupportSegment> out;
    out.reserve(breakpoints.size() - 1);
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        if (direction == Direction::increasing) {
            out.push_back({breakpoints[k], 0.0, breakpoints[k + 1], 1.0});
        } else {
            out.push_back({breakpoints[k], 1.0, breakpoints[k + 1], 0.0});
        }
    }
    return out;
}

double SupportPolyline::line_at(double u) const {
    check_unit(u, "support line: u");
    const std::size_t k = cell_index(breakpoints, u);
    const double lo = breakpoints[k];
    const double hi = breakpoints[k + 1];
    const double t = (u - lo) / (hi - lo);
    return direction == Direction::increasing ? t : 1.0 - t;
}

SupportPolyline support_polyline(const MapModel& /*map*/, const NodeTable& nodes,
                                 const EmpiricalMeasure& mu, Direction direction) {
    SupportPolyline sp;
    sp.direction = direction;
    sp.breakpoints.reserve(nodes.endpoints.size());
    for (double a : nodes.endpoints) {
        sp.breakpoints.push_back(mu.cdf(a));
    }
    return sp;
}

SupportPolyline support_polyline(const CopulaModel& cm) {
    SupportPolyline sp;
    sp.direction = cm.direction;
    sp.breakpoints = cm.lag(cm.h).cell_bounds;
    return sp;
}

}  // namespace mpcop
