#ifndef MPCOP_SAMPLER_HPP
#define MPCOP_SAMPLER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mpcop/copula.hpp"

namespace mpcop {

struct SampleBatch {
    std::vector<std::pair<double, double>> pairs;  // on the support polyline
    int h = 1;
    double s = 0.0;
    Direction direction = Direction::increasing;
    std::uint64_t seed = 0;
};

// Draws from the lag-h copula by placing uniform variates on the support:
// u picks a cell of the breakpoint partition, v is the cell's line height.
// One mt19937_64 stream per batch, seeded with `seed` and consumed in draw
// order, so a batch is reproducible bit for bit; run parallel sub-batches
// with distinct seeds and concatenate.
SampleBatch sample_pairs(const CopulaModel& cm, std::size_t count, std::uint64_t seed);

}  // namespace mpcop

#endif  // MPCOP_SAMPLER_HPP
