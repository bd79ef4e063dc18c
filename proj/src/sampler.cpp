#include "mpcop/sampler.hpp"

#include <random>
#include <stdexcept>

namespace mpcop {

namespace {

// 53-bit uniform in [0,1); fully determined by the engine state, unlike
// std::uniform_real_distribution.
inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleBatch sample_pairs(const CopulaModel& cm, std::size_t count, std::uint64_t seed) {
    if (count < 1) {
        throw std::domain_error("sample_pairs: count must be at least 1");
    }
    const std::vector<double>& bounds = cm.lag(cm.h).cell_bounds;

    SampleBatch batch;
    batch.h = cm.h;
    batch.s = cm.map.s;
    batch.direction = cm.direction;
    batch.seed = seed;
    batch.pairs.reserve(count);

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = uniform53(rng);
        const std::size_t k = cell_index(bounds, u);
        const double t = (u - bounds[k]) / (bounds[k + 1] - bounds[k]);
        const double v = cm.direction == Direction::increasing ? t : 1.0 - t;
        batch.pairs.emplace_back(u, v);
    }
    return batch;
}

}  // namespace mpcop
