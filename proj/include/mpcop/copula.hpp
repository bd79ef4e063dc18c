#ifndef MPCOP_COPULA_HPP
#define MPCOP_COPULA_HPP

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"
#include "mpcop/nodes.hpp"

namespace mpcop {

enum class Direction { increasing, decreasing };

// Node table for one lag together with the CDF images of its endpoints,
// which partition [0,1] into the cells used for argument lookup.
struct LagData {
    NodeTable nodes;
    std::vector<double> cell_bounds;  // F_n(endpoint_k), ascending, first 0, last 1
};

// Everything needed to evaluate the lag-h copula of the process: the map,
// one shared orbit measure, and per-lag node tables built on a common grid.
// Immutable after assembly; evaluation functions are pure.
struct CopulaModel {
    MapModel map;
    std::shared_ptr<const EmpiricalMeasure> mu;
    Direction direction = Direction::increasing;
    int h = 1;           // primary (bivariate) lag
    std::size_t m = 0;   // node grid size
    std::map<int, LagData> lags;

    const LagData& lag(int lag_h) const;

    static CopulaModel assemble(const MapModel& map, std::shared_ptr<const EmpiricalMeasure> mu,
                                std::vector<int> lag_set, std::size_t m,
                                Direction direction = Direction::increasing);
};

// All pairwise differences t_j - t_i (i < j) of an ascending time vector:
// the lag set a multivariate evaluation (and its reflected expansion) needs.
std::vector<int> lag_closure(std::span<const int> times);

// Index k with bounds[k] <= u < bounds[k+1]; u = 1 maps to the last cell so
// the upper margin is attained.  Shared by the copula and the sampler.
std::size_t cell_index(const std::vector<double>& bounds, double u);

// Lag-h copula approximation at (u,v): masses of the per-branch preimage
// intervals up to u's cell, plus the truncated final cell.  Increasing
// direction.
double copula_eval(const CopulaModel& cm, double u, double v);

// Decreasing-direction copula: u + v - 1 + C(1-u, 1-v).  The raw value is
// returned (it may fall a hair outside [0,1]; clamping is left to output
// formatting).
double copula_eval_decreasing(const CopulaModel& cm, double u, double v);

// n-dimensional copula of (X_{t_1}, ..., X_{t_n}) for increasing direction;
// times must be strictly ascending and every difference t_i - t_1 assembled.
double mcopula_eval(const CopulaModel& cm, std::span<const double> u, std::span<const int> times);

// Decreasing direction in dimension d = u.size() <= 6: alternating
// inclusion-exclusion over all sub-vectors of increasing-case copulas at
// reflected arguments.
double mcopula_eval_decreasing(const CopulaModel& cm, std::span<const double> u,
                               std::span<const int> times);

struct SupportSegment {
    double x0, y0, x1, y1;
};

// Support of the lag-h copula: 2^h line segments, each crossing its cell
// [F_n(a_k), F_n(a_{k+1})] from height 0 to 1 (increasing) or 1 to 0
// (decreasing).
struct SupportPolyline {
    Direction direction = Direction::increasing;
    std::vector<double> breakpoints;  // F_n(endpoint_k), size 2^h + 1

    std::vector<SupportSegment> segments() const;
    // Height of the supporting line above u (cell located internally).
    double line_at(double u) const;
};

SupportPolyline support_polyline(const MapModel& map, const NodeTable& nodes,
                                 const EmpiricalMeasure& mu, Direction direction);
SupportPolyline support_polyline(const CopulaModel& cm);

}  // namespace mpcop

#endif  // MPCOP_COPULA_HPP
