#include "bocpd/series_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "bocpd/errors.hpp"

namespace bocpd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view s, const std::filesystem::path& path,
                    std::size_t line_no) {
    const std::string_view t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw DataError(path.string() + " line " + std::to_string(line_no) +
                        ": cannot parse value '" + std::string(t) + "'");
    }
    return v;
}

std::size_t parse_index(std::string_view s, const std::filesystem::path& path,
                        std::size_t line_no) {
    const std::string_view t = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw DataError(path.string() + " line " + std::to_string(line_no) +
                        ": cannot parse index '" + std::string(t) + "'");
    }
    return v;
}

}  // namespace

std::vector<SeriesRecord> load_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open series file: " + path.string());
    }
    std::vector<SeriesRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;

        const std::size_t comma = body.find(',');
        SeriesRecord rec;
        rec.index = records.size();
        if (comma == std::string_view::npos) {
            rec.value = parse_double(body, path, line_no);
        } else {
            const std::size_t idx =
                parse_index(body.substr(0, comma), path, line_no);
            if (idx != records.size()) {
                throw DataError(path.string() + " line " +
                                std::to_string(line_no) + ": index " +
                                std::to_string(idx) +
                                " breaks contiguity (expected " +
                                std::to_string(records.size()) + ")");
            }
            rec.value = parse_double(body.substr(comma + 1), path, line_no);
        }
        records.push_back(rec);
    }
    if (records.empty()) {
        throw DataError("series file is empty: " + path.string());
    }
    return records;
}

std::vector<double> returns_from_prices(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw DataError("returns require at least two prices");
    }
    std::vector<double> returns(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0)) {
            throw DataError("price at position " + std::to_string(i) +
                            " is not positive");
        }
        if (i > 0) returns[i - 1] = prices[i] / prices[i - 1] - 1.0;
    }
    return returns;
}

std::vector<std::int64_t> bin_events_weekly(
    std::span<const std::int64_t> event_days, std::int64_t total_days) {
    if (total_days < 1) {
        throw DataError("total_days must be >= 1");
    }
    std::vector<std::int64_t> counts(
        static_cast<std::size_t>((total_days + 6) / 7), 0);
    std::int64_t prev = -1;
    for (const std::int64_t day : event_days) {
        if (day < 0 || day >= total_days) {
            throw DataError("event day " + std::to_string(day) +
                            " outside [0, " + std::to_string(total_days) + ")");
        }
        if (day < prev) {
            throw DataError("event days must be sorted");
        }
        prev = day;
        counts[static_cast<std::size_t>(day / 7)] += 1;
    }
    return counts;
}

std::string format_g12(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PosteriorMatrixWriter::PosteriorMatrixWriter(const std::filesystem::path& path)
    : out_(path) {
    if (!out_) {
        throw DataError("cannot open output file: " + path.string());
    }
    out_ << "t,r,prob\n";
}

void PosteriorMatrixWriter::append(std::size_t step,
                                   const StepOutcome& outcome) {
    line_.clear();
    for (const auto& [r, p] : outcome.posterior) {
        line_ += std::to_string(step);
        line_ += ',';
        line_ += std::to_string(r);
        line_ += ',';
        line_ += format_g12(p);
        line_ += '\n';
    }
    out_ << line_;
    if (!out_) {
        throw DataError("write failure on posterior matrix");
    }
}

PredictiveSeriesWriter::PredictiveSeriesWriter(
    const std::filesystem::path& path)
    : out_(path) {
    if (!out_) {
        throw DataError("cannot open output file: " + path.string());
    }
    out_ << "t,pred_mean,pred_std,log_evidence_increment,map_run_length\n";
}

void PredictiveSeriesWriter::append(std::size_t step,
                                    const StepOutcome& outcome) {
    line_.clear();
    line_ += std::to_string(step);
    line_ += ',';
    line_ += format_g12(outcome.predictive.mean);
    line_ += ',';
    line_ += format_g12(std::sqrt(outcome.predictive.variance));
    line_ += ',';
    line_ += format_g12(outcome.log_evidence_increment);
    line_ += ',';
    line_ += std::to_string(outcome.map_run_length);
    line_ += '\n';
    out_ << line_;
    if (!out_) {
        throw DataError("write failure on predictive series");
    }
}

void write_posterior_matrix(std::span<const StepOutcome> outcomes,
                            const std::filesystem::path& path) {
    if (outcomes.empty()) {
        throw DataError("no step outcomes to write");
    }
    PosteriorMatrixWriter writer(path);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        writer.append(i + 1, outcomes[i]);
    }
}

void write_predictive_series(std::span<const StepOutcome> outcomes,
                             const std::filesystem::path& path) {
    if (outcomes.empty()) {
        throw DataError("no step outcomes to write");
    }
    PredictiveSeriesWriter writer(path);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        writer.append(i + 1, outcomes[i]);
    }
}

std::vector<PosteriorRow> read_posterior_matrix(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open posterior matrix: " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || trim(line) != "t,r,prob") {
        throw DataError(path.string() + ": missing 't,r,prob' header");
    }
    ++line_no;
    std::vector<PosteriorRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const std::size_t c1 = body.find(',');
        const std::size_t c2 =
            c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
            throw DataError(path.string() + " line " + std::to_string(line_no) +
                            ": expected 't,r,prob'");
        }
        PosteriorRow row;
        row.step = parse_index(body.substr(0, c1), path, line_no);
        row.run_length = static_cast<std::int64_t>(
            parse_index(body.substr(c1 + 1, c2 - c1 - 1), path, line_no));
        row.probability = parse_double(body.substr(c2 + 1), path, line_no);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bocpd
