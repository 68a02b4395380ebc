#include "bocpd/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bocpd/errors.hpp"
#include "bocpd/math.hpp"

namespace bocpd {

namespace {

// Cumulative log survival factors: range_log_survive(a, b) =
// log prod_{tau=a}^{b} (1 - H(tau)), with the all-mass-exhausted case
// (-inf) tracked separately so prefix differences stay well defined.
class SurvivalLedger {
public:
    SurvivalLedger(const HazardFunction& hazard, std::int64_t max_tau)
        : cum_(static_cast<std::size_t>(max_tau) + 1, 0.0),
          first_end_(max_tau + 1) {
        for (std::int64_t tau = 1; tau <= max_tau; ++tau) {
            const double ls = hazard.log_survive(tau);
            if (ls == kNegInf && first_end_ > max_tau) first_end_ = tau;
            cum_[static_cast<std::size_t>(tau)] =
                cum_[static_cast<std::size_t>(tau - 1)] +
                (ls == kNegInf ? 0.0 : ls);
        }
    }

    double range(std::int64_t a, std::int64_t b) const {
        if (b < a) return 0.0;
        if (b >= first_end_) return kNegInf;
        return cum_[static_cast<std::size_t>(b)] -
               cum_[static_cast<std::size_t>(a - 1)];
    }

private:
    std::vector<double> cum_;
    std::int64_t first_end_;
};

}  // namespace

std::vector<std::pair<std::int64_t, double>> enumerate_run_length_posterior(
    std::span<const double> data, const ObservationModel& model,
    const GapDistribution& gap, const Boundary& boundary) {
    const auto t_len = static_cast<std::int64_t>(data.size());
    if (t_len < 1) {
        throw ConfigError("enumeration requires at least one observation");
    }
    if (t_len > kMaxEnumerationLength) {
        throw ConfigError("series length " + std::to_string(t_len) +
                          " exceeds the exhaustive-enumeration guard of " +
                          std::to_string(kMaxEnumerationLength));
    }
    const auto n = static_cast<std::size_t>(t_len);
    const HazardFunction hazard = HazardFunction::from_gap(gap);

    // Initial run-length prior.
    std::vector<std::pair<std::int64_t, double>> initial;  // (tau0, log weight)
    if (boundary.kind == Boundary::Kind::Reset) {
        initial.emplace_back(0, 0.0);
    } else {
        std::int64_t horizon =
            boundary.survival_horizon.value_or(default_survival_horizon(gap));
        if (horizon < 0) {
            throw ConfigError("survival horizon must be >= 0");
        }
        if (!gap.is_geometric()) horizon = std::min(horizon, gap.support_end());
        std::vector<double> logw(static_cast<std::size_t>(horizon) + 1);
        for (std::int64_t tau = 0; tau <= horizon; ++tau) {
            logw[static_cast<std::size_t>(tau)] = std::log(gap.survival(tau));
        }
        const double z = log_sum_exp(logw);
        for (std::int64_t tau = 0; tau <= horizon; ++tau) {
            const double lw = logw[static_cast<std::size_t>(tau)] - z;
            if (lw != kNegInf) initial.emplace_back(tau, lw);
        }
    }
    std::int64_t max_tau0 = 0;
    for (const auto& [tau0, lw] : initial) max_tau0 = std::max(max_tau0, tau0);

    // Marginal likelihood of every contiguous segment, via the chain of
    // one-step predictives starting from prior statistics.
    std::vector<std::vector<double>> seg_loglik(n, std::vector<double>(n));
    std::vector<double> stat(model.stat_dim());
    std::vector<double> u(model.stat_dim());
    for (std::size_t s = 0; s < n; ++s) {
        double count = model.prior_obs_count();
        const std::vector<double> prior = model.prior_stat();
        std::copy(prior.begin(), prior.end(), stat.begin());
        double acc = 0.0;
        for (std::size_t e = s; e < n; ++e) {
            acc += model.log_predictive(count, stat, data[e]);
            seg_loglik[s][e] = acc;
            model.stat(data[e], u);
            count += 1.0;
            for (std::size_t d = 0; d < stat.size(); ++d) stat[d] += u[d];
        }
    }

    const SurvivalLedger ledger(hazard, max_tau0 + t_len + 1);

    // Accumulate log mass per final run length.
    std::map<std::int64_t, std::vector<double>> mass;
    const std::uint64_t mask_count = 1ull << (n - 1);
    std::vector<std::int64_t> starts;
    for (std::uint64_t mask = 0; mask < mask_count; ++mask) {
        starts.clear();
        starts.push_back(0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (mask & (1ull << j)) starts.push_back(static_cast<std::int64_t>(j + 1));
        }
        const std::size_t m = starts.size();

        double loglik = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const std::int64_t s = starts[i];
            const std::int64_t e = (i + 1 < m ? starts[i + 1] : t_len) - 1;
            loglik += seg_loglik[static_cast<std::size_t>(s)]
                                [static_cast<std::size_t>(e)];
        }
        if (loglik == kNegInf) continue;

        // Hazard factors for fully interior segments (neither first nor last).
        double inner = 0.0;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const std::int64_t g = starts[i + 1] - starts[i];
            inner += ledger.range(1, g - 1) + hazard.log_hazard(g);
        }
        const std::int64_t g_first = (m > 1 ? starts[1] : t_len);
        const std::int64_t g_last = t_len - starts[m - 1];

        for (const auto& [tau0, lw] : initial) {
            double base = lw + loglik + inner;
            std::int64_t last_init = 0;
            if (m == 1) {
                last_init = tau0;
            } else {
                // first segment is completed: it survived to its final
                // length and ended there
                base += ledger.range(tau0 + 1, tau0 + g_first - 1) +
                        hazard.log_hazard(tau0 + g_first);
            }
            // the trailing segment survived every end decision up to its
            // current length...
            base += ledger.range(last_init + 1, last_init + g_last - 1);
            if (base == kNegInf) continue;
            const double open = base + hazard.log_survive(last_init + g_last);
            if (open != kNegInf) mass[last_init + g_last].push_back(open);
            // ...or ended exactly at the final observation
            const double closed = base + hazard.log_hazard(last_init + g_last);
            if (closed != kNegInf) mass[0].push_back(closed);
        }
    }

    std::vector<std::int64_t> support;
    std::vector<double> log_mass;
    for (auto& [r, terms] : mass) {
        const double lm = log_sum_exp(terms);
        if (lm != kNegInf) {
            support.push_back(r);
            log_mass.push_back(lm);
        }
    }
    const double total = log_sum_exp(log_mass);
    std::vector<std::pair<std::int64_t, double>> posterior;
    posterior.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        posterior.emplace_back(support[i], std::exp(log_mass[i] - total));
    }
    return posterior;
}

double max_relative_error(
    std::span<const std::pair<std::int64_t, double>> a,
    std::span<const std::pair<std::int64_t, double>> b) {
    std::map<std::int64_t, std::pair<double, double>> merged;
    for (const auto& [r, p] : a) merged[r].first = p;
    for (const auto& [r, p] : b) merged[r].second = p;
    double worst = 0.0;
    for (const auto& [r, pq] : merged) {
        const auto [p, q] = pq;
        if (p == 0.0 && q == 0.0) continue;
        const double denom = std::max(std::fabs(p), std::fabs(q));
        if (denom < 1e-300) continue;
        worst = std::max(worst, std::fabs(p - q) / denom);
    }
    return worst;
}

}  // namespace bocpd
