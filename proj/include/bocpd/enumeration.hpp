#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bocpd/detector.hpp"

namespace bocpd {

inline constexpr std::int64_t kMaxEnumerationLength = 16;

// Exact run-length posterior after the full series, computed the slow way:
// every placement of changepoints is enumerated, each contributing the
// product of its segments' marginal likelihoods and gap/hazard factors.
// Deliberately independent of the recursive filter; exponential in the
// series length and guarded to kMaxEnumerationLength.
std::vector<std::pair<std::int64_t, double>> enumerate_run_length_posterior(
    std::span<const double> data, const ObservationModel& model,
    const GapDistribution& gap, const Boundary& boundary = Boundary::reset());

// Max relative error between two run-length distributions over the union of
// their supports (infinite on a support mismatch).
double max_relative_error(
    std::span<const std::pair<std::int64_t, double>> a,
    std::span<const std::pair<std::int64_t, double>> b);

}  // namespace bocpd
