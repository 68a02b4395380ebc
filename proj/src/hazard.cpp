#include "bocpd/hazard.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "bocpd/errors.hpp"
#include "bocpd/math.hpp"

namespace bocpd {

GapDistribution GapDistribution::geometric(double lambda) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
        throw ConfigError("geometric gap timescale must satisfy lambda >= 1, got " +
                          std::to_string(lambda));
    }
    GapDistribution gap;
    gap.geometric_ = true;
    gap.lambda_ = lambda;
    gap.rate_ = 1.0 / lambda;
    return gap;
}

GapDistribution GapDistribution::table(std::vector<double> pmf) {
    long double sum = 0.0L;
    for (double p : pmf) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ConfigError("gap table probabilities must be finite and >= 0");
        }
        sum += p;
    }
    if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-9) {
        throw ConfigError("gap table probabilities must sum to 1 within 1e-9, got " +
                          std::to_string(static_cast<double>(sum)));
    }
    while (!pmf.empty() && pmf.back() == 0.0) pmf.pop_back();
    if (pmf.empty()) {
        throw ConfigError("gap table has no positive mass");
    }
    // Rescale so suffix sums (and the survival function) are exact.
    for (double& p : pmf) p /= static_cast<double>(sum);

    GapDistribution gap;
    gap.geometric_ = false;
    gap.pmf_ = std::move(pmf);
    gap.suffix_.resize(gap.pmf_.size());
    long double tail = 0.0L;
    for (std::size_t i = gap.pmf_.size(); i-- > 0;) {
        tail += gap.pmf_[i];
        gap.suffix_[i] = static_cast<double>(tail);
    }
    return gap;
}

GapDistribution GapDistribution::table_from_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open gap table file: " + path.string());
    }
    std::map<std::int64_t, double> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line;
        for (char& c : stripped) {
            if (c == ',') c = ' ';
        }
        std::istringstream row(stripped);
        std::string first;
        if (!(row >> first)) continue;  // blank
        if (first[0] == '#') continue;
        std::int64_t g = 0;
        double p = 0.0;
        try {
            std::size_t used = 0;
            g = std::stoll(first, &used);
            if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw ConfigError("gap table " + path.string() + " line " +
                              std::to_string(line_no) + ": bad gap value '" +
                              first + "'");
        }
        if (!(row >> p) || !(row >> std::ws).eof()) {
            throw ConfigError("gap table " + path.string() + " line " +
                              std::to_string(line_no) +
                              ": expected 'gap probability'");
        }
        if (g < 1) {
            throw ConfigError("gap table " + path.string() + " line " +
                              std::to_string(line_no) + ": gap must be >= 1");
        }
        if (!entries.emplace(g, p).second) {
            throw ConfigError("gap table " + path.string() + " line " +
                              std::to_string(line_no) + ": duplicate gap " +
                              std::to_string(g));
        }
    }
    if (entries.empty()) {
        throw ConfigError("gap table " + path.string() + " is empty");
    }
    std::vector<double> pmf(static_cast<std::size_t>(entries.rbegin()->first), 0.0);
    for (const auto& [g, p] : entries) {
        pmf[static_cast<std::size_t>(g - 1)] = p;
    }
    return table(std::move(pmf));
}

double GapDistribution::pmf(std::int64_t g) const {
    if (g < 1) return 0.0;
    if (geometric_) {
        const double q = 1.0 - rate_;
        if (q == 0.0) return g == 1 ? 1.0 : 0.0;
        return rate_ * std::pow(q, static_cast<double>(g - 1));
    }
    const auto i = static_cast<std::size_t>(g - 1);
    return i < pmf_.size() ? pmf_[i] : 0.0;
}

double GapDistribution::survival(std::int64_t tau) const {
    if (tau <= 0) return 1.0;
    if (geometric_) {
        const double q = 1.0 - rate_;
        if (q == 0.0) return 0.0;
        return std::pow(q, static_cast<double>(tau));
    }
    const auto i = static_cast<std::size_t>(tau);
    return i < suffix_.size() ? suffix_[i] : 0.0;
}

double GapDistribution::hazard(std::int64_t tau) const {
    if (tau < 1) return 0.0;
    if (geometric_) {
        // Memoryless: the pmf/tail ratio collapses to the constant rate.
        return rate_;
    }
    const auto i = static_cast<std::size_t>(tau - 1);
    if (i >= pmf_.size()) return 1.0;  // tail exhausted
    return pmf_[i] / suffix_[i];
}

std::int64_t GapDistribution::support_end() const {
    if (geometric_) {
        return rate_ == 1.0 ? 1 : std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(pmf_.size());
}

HazardFunction HazardFunction::constant(double lambda) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
        throw ConfigError("constant hazard timescale must satisfy lambda >= 1, got " +
                          std::to_string(lambda));
    }
    HazardFunction hf;
    hf.constant_ = true;
    hf.h_ = 1.0 / lambda;
    hf.log_h_ = -std::log(lambda);
    hf.log_1mh_ = std::log1p(-hf.h_);
    return hf;
}

HazardFunction HazardFunction::from_gap(const GapDistribution& gap) {
    if (gap.is_geometric()) {
        return constant(gap.timescale());
    }
    HazardFunction hf;
    hf.constant_ = false;
    const auto end = static_cast<std::size_t>(gap.support_end());
    hf.h_table_.resize(end);
    hf.log_h_table_.resize(end);
    hf.log_1mh_table_.resize(end);
    for (std::size_t i = 0; i < end; ++i) {
        const double h = gap.hazard(static_cast<std::int64_t>(i + 1));
        hf.h_table_[i] = h;
        hf.log_h_table_[i] = h > 0.0 ? std::log(h) : kNegInf;
        hf.log_1mh_table_[i] = std::log1p(-h);
    }
    return hf;
}

double HazardFunction::operator()(std::int64_t tau) const {
    if (constant_) return h_;
    const auto i = static_cast<std::size_t>(tau - 1);
    return tau >= 1 && i < h_table_.size() ? h_table_[i] : 1.0;
}

double HazardFunction::log_hazard(std::int64_t tau) const {
    if (constant_) return log_h_;
    const auto i = static_cast<std::size_t>(tau - 1);
    return tau >= 1 && i < log_h_table_.size() ? log_h_table_[i] : 0.0;
}

double HazardFunction::log_survive(std::int64_t tau) const {
    if (constant_) return log_1mh_;
    const auto i = static_cast<std::size_t>(tau - 1);
    return tau >= 1 && i < log_1mh_table_.size() ? log_1mh_table_[i] : kNegInf;
}

}  // namespace bocpd
