#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "bocpd/detector.hpp"

namespace bocpd {

struct SeriesRecord {
    std::size_t index = 0;
    double value = 0.0;
};

// One value per line, or "index,value"; '#' lines are comments, blank lines
// are skipped.  Explicit indices must be contiguous from 0.
std::vector<SeriesRecord> load_series(const std::filesystem::path& path);

// R[t] = p[t] / p[t-1] - 1.  Requires at least two prices, all positive.
std::vector<double> returns_from_prices(std::span<const double> prices);

// Event counts per consecutive 7-day window [7k, 7k+7); a final partial
// week forms its own bin.  Days must be sorted and within [0, total_days).
std::vector<std::int64_t> bin_events_weekly(
    std::span<const std::int64_t> event_days, std::int64_t total_days);

// Formats with 12 significant digits; non-finite values become "nan".
std::string format_g12(double v);

// Sparse triplet text, header "t,r,prob", one retained hypothesis per line.
class PosteriorMatrixWriter {
public:
    explicit PosteriorMatrixWriter(const std::filesystem::path& path);
    void append(std::size_t step, const StepOutcome& outcome);

private:
    std::ofstream out_;
    std::string line_;
};

// Header "t,pred_mean,pred_std,log_evidence_increment,map_run_length".
class PredictiveSeriesWriter {
public:
    explicit PredictiveSeriesWriter(const std::filesystem::path& path);
    void append(std::size_t step, const StepOutcome& outcome);

private:
    std::ofstream out_;
    std::string line_;
};

void write_posterior_matrix(std::span<const StepOutcome> outcomes,
                            const std::filesystem::path& path);
void write_predictive_series(std::span<const StepOutcome> outcomes,
                             const std::filesystem::path& path);

struct PosteriorRow {
    std::size_t step = 0;
    std::int64_t run_length = 0;
    double probability = 0.0;
};

std::vector<PosteriorRow> read_posterior_matrix(
    const std::filesystem::path& path);

}  // namespace bocpd
