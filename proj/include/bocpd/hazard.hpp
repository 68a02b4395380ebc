#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace bocpd {

// Prior over the interval between changepoints, supported on integer gaps
// g >= 1.  Either a closed-form geometric distribution with timescale
// lambda, or an explicit finite table.
class GapDistribution {
public:
    // P(g) = (1/lambda) * (1 - 1/lambda)^(g-1).  Requires lambda >= 1.
    static GapDistribution geometric(double lambda);

    // pmf[i] = P(g = i + 1).  Entries must be non-negative and sum to 1
    // within 1e-9; the table is rescaled to sum to 1 exactly.
    static GapDistribution table(std::vector<double> pmf);

    // Two-column text file: "g probability" (comma or whitespace
    // separated), one pair per line, '#' lines are comments.
    static GapDistribution table_from_file(const std::filesystem::path& path);

    double pmf(std::int64_t g) const;
    // S(tau) = P(g > tau), tau >= 0.  S(0) == 1.
    double survival(std::int64_t tau) const;
    // H(tau) = P(g = tau) / P(g >= tau); 1 once the tail is exhausted.
    double hazard(std::int64_t tau) const;

    bool is_geometric() const { return geometric_; }
    double timescale() const { return lambda_; }
    // Largest gap with positive mass (INT64_MAX for geometric).
    std::int64_t support_end() const;

private:
    GapDistribution() = default;

    bool geometric_ = true;
    double lambda_ = 1.0;
    double rate_ = 1.0;           // 1/lambda
    std::vector<double> pmf_;     // tabulated: index i <-> g = i + 1
    std::vector<double> suffix_;  // suffix_[i] = sum_{j >= i} pmf_[j]
};

// H(tau) for tau >= 1, with log H and log(1 - H) precomputed so the filter
// loop never recomputes them.
class HazardFunction {
public:
    static HazardFunction constant(double lambda);  // H == 1/lambda
    static HazardFunction from_gap(const GapDistribution& gap);

    double operator()(std::int64_t tau) const;
    double log_hazard(std::int64_t tau) const;
    double log_survive(std::int64_t tau) const;  // log(1 - H(tau))

private:
    HazardFunction() = default;

    bool constant_ = true;
    double h_ = 0.0;
    double log_h_ = 0.0;
    double log_1mh_ = 0.0;
    // Tabulated, index i <-> tau = i + 1; beyond the table H == 1.
    std::vector<double> h_table_;
    std::vector<double> log_h_table_;
    std::vector<double> log_1mh_table_;
};

}  // namespace bocpd
