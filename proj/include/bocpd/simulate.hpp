#pragma once

#include <cstdint>
#include <vector>

#include "bocpd/config.hpp"
#include "bocpd/hazard.hpp"

namespace bocpd {

struct SimulationResult {
    std::vector<double> series;
    // 1-based steps at which a new partition begins (the first partition's
    // start at step 1 is not reported).
    std::vector<std::int64_t> changepoint_steps;
};

// Sample gap lengths from the gap distribution, per-partition parameters
// from the model's prior, and data i.i.d. from the likelihood.
// Deterministic for a fixed seed.
SimulationResult simulate_stream(const ModelSpec& model,
                                 const GapDistribution& gap,
                                 std::int64_t length, std::uint64_t seed);

}  // namespace bocpd
