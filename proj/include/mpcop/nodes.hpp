#ifndef MPCOP_NODES_HPP
#define MPCOP_NODES_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"

namespace mpcop {

// Inverse of T_s^h restricted to one of its 2^h monotone pieces, stored as
// paired knot sequences (x, T_s^h(x)) and evaluated by linear interpolation.
// Anchored so that eval(0) and eval(1) return the piece endpoints exactly.
struct BranchInverse {
    std::vector<double> x;  // knot abscissae, ascending, within the piece
    std::vector<double> y;  // T_s^h at the knots, ascending, y.front()=0, y.back()=1

    double eval(double v) const;
    double lo() const { return x.front(); }
    double hi() const { return x.back(); }
};

// Endpoints of the 2^h maximal intervals on which T_s^h is continuous and
// increasing, plus one interpolated inverse per interval.  Built on a
// uniform m-point grid with a local refinement pass around each detected
// discontinuity.
struct NodeTable {
    int h = 1;
    std::size_t m = 0;  // base grid size
    double s = 0.0;
    std::vector<double> endpoints;        // 2^h + 1 values, endpoints[0]=0, back()=1
    std::vector<BranchInverse> branches;  // 2^h entries, branches[k] on
                                          // [endpoints[k], endpoints[k+1]]
};

// Indices i for which T_s^h(grid[i]) > T_s^h(grid[i+1]), i.e. the grid cells
// holding a discontinuity of T_s^h.  The grid must be ascending and cover
// [0,1].  Throws resolution_error unless exactly 2^h - 1 cells are found.
std::vector<std::size_t> detect_discontinuities(const MapModel& model, int h,
                                                std::span<const double> grid);

// Full construction: detection on the uniform m-point grid, local
// re-gridding of each bracketing cell, linear interpolation of the
// unwrapped iterate through height 1, then bisection polish.  h is capped
// at 20 (2^h knot storage).
NodeTable node_endpoints(const MapModel& model, int h, std::size_t m);

// Preimage of [lo, hi] under T_s^h: one subinterval per branch,
// [T_{h,k}(lo), T_{h,k}(hi)] for k = 0..2^h-1.
std::vector<std::pair<double, double>> preimage_intervals(const NodeTable& table, double lo,
                                                          double hi);

// Orbit mass of the preimage of [lo, hi], summed over the branch
// subintervals (they are pairwise disjoint).
double preimage_mass(const EmpiricalMeasure& mu, const NodeTable& table, double lo, double hi);

}  // namespace mpcop

#endif  // MPCOP_NODES_HPP
