#include "bocpd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bocpd/errors.hpp"
#include "bocpd/math.hpp"

namespace bocpd {

std::int64_t default_survival_horizon(const GapDistribution& gap) {
    std::int64_t tau = 1;
    if (gap.is_geometric() && gap.timescale() > 1.0) {
        const double log_q = std::log1p(-1.0 / gap.timescale());
        tau = static_cast<std::int64_t>(
            std::ceil(std::log(1e-6) / log_q));
    }
    while (tau > 1 && gap.survival(tau - 1) < 1e-6) --tau;
    while (gap.survival(tau) >= 1e-6) ++tau;
    return tau;
}

PredictiveSummary mixture_moments(std::span<const WeightedMoments> parts) {
    double mean = 0.0;
    double second = 0.0;  // weighted E[X^2] via component mean/variance
    for (const WeightedMoments& p : parts) {
        if (p.weight == 0.0) continue;
        mean += p.weight * p.mean;
        second += p.weight * (p.variance + p.mean * p.mean);
    }
    double variance = second - mean * mean;
    if (std::isfinite(variance) && variance < 0.0) variance = 0.0;
    return {mean, variance};
}

void truncate_run_length_state(RunLengthState& state, HyperparameterBank& bank,
                               double threshold) {
    if (!(threshold >= 0.0) || threshold >= 1.0) {
        throw ConfigError("truncation threshold must lie in [0, 1), got " +
                          std::to_string(threshold));
    }
    const std::size_t k = state.log_mass.size();
    if (threshold == 0.0 || k <= 2) return;

    const double z = log_sum_exp(state.log_mass);
    // Strictly-below comparison, with a hair of relative slack so a suffix
    // whose exact mass equals the threshold is kept even when rounding
    // lands it a few ulps under.
    const long double cutoff =
        static_cast<long double>(threshold) * (1.0L - 1e-9L);
    long double tail = 0.0L;
    std::size_t keep = k;
    while (keep > 2) {
        const long double cand =
            tail + std::exp(static_cast<long double>(state.log_mass[keep - 1]) - z);
        if (cand < cutoff) {
            tail = cand;
            --keep;
        } else {
            break;
        }
    }
    if (keep < k) {
        state.run_lengths.resize(keep);
        state.log_mass.resize(keep);
        bank.keep_front(keep);
    }
}

Detector::Detector(std::shared_ptr<const ObservationModel> model,
                   GapDistribution gap, Boundary boundary,
                   double truncation_threshold)
    : model_(std::move(model)),
      gap_(std::move(gap)),
      hazard_(HazardFunction::from_gap(gap_)),
      truncation_threshold_(truncation_threshold),
      bank_(*model_) {
    if (!model_) throw ConfigError("detector requires an observation model");
    if (!(truncation_threshold >= 0.0) || truncation_threshold >= 1.0) {
        throw ConfigError("truncation threshold must lie in [0, 1), got " +
                          std::to_string(truncation_threshold));
    }
    switch (boundary.kind) {
        case Boundary::Kind::Reset:
            init_reset();
            break;
        case Boundary::Kind::Survival:
            init_survival(boundary);
            break;
    }
}

void Detector::init_reset() {
    state_.time_index = 0;
    state_.run_lengths = {0};
    state_.log_mass = {0.0};
    state_.log_evidence = 0.0;
    bank_ = HyperparameterBank(*model_, 1);
}

void Detector::init_survival(const Boundary& boundary) {
    std::int64_t horizon =
        boundary.survival_horizon.value_or(default_survival_horizon(gap_));
    if (horizon < 0) {
        throw ConfigError("survival horizon must be >= 0, got " +
                          std::to_string(horizon));
    }
    // Beyond the gap's support the survival function is identically zero.
    if (!gap_.is_geometric()) {
        horizon = std::min(horizon, gap_.support_end());
    }

    const auto n = static_cast<std::size_t>(horizon) + 1;
    state_.time_index = 0;
    state_.run_lengths.resize(n);
    state_.log_mass.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        state_.run_lengths[i] = static_cast<std::int64_t>(i);
        state_.log_mass[i] = std::log(gap_.survival(static_cast<std::int64_t>(i)));
    }
    const double z = log_sum_exp(state_.log_mass);
    for (double& lm : state_.log_mass) lm -= z;
    state_.log_evidence = 0.0;
    // No pre-window data exist, so every initial hypothesis carries prior
    // statistics; the boundary only shapes the prior over the run length.
    bank_ = HyperparameterBank(*model_, n);
    prune_zero_mass();
}

void Detector::prune_zero_mass() {
    bool any = false;
    for (double lm : state_.log_mass) {
        if (lm == kNegInf) {
            any = true;
            break;
        }
    }
    if (!any) return;
    keep_.resize(state_.log_mass.size());
    for (std::size_t i = 0; i < state_.log_mass.size(); ++i) {
        keep_[i] = state_.log_mass[i] != kNegInf;
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < state_.log_mass.size(); ++i) {
        if (!keep_[i]) continue;
        state_.log_mass[w] = state_.log_mass[i];
        state_.run_lengths[w] = state_.run_lengths[i];
        ++w;
    }
    state_.log_mass.resize(w);
    state_.run_lengths.resize(w);
    bank_.compact({keep_.data(), keep_.size()});
}

std::vector<double> Detector::posterior_probabilities() const {
    double max_lm = kNegInf;
    for (double lm : state_.log_mass) max_lm = std::max(max_lm, lm);
    std::vector<double> probs(state_.log_mass.size());
    long double total = 0.0L;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::exp(state_.log_mass[i] - max_lm);
        total += probs[i];
    }
    for (double& p : probs) {
        p = static_cast<double>(p / total);
    }
    return probs;
}

StepOutcome Detector::step(double x) {
    if (!model_->in_support(x)) {
        throw DataError("datum " + std::to_string(x) +
                        " outside the support of model " + model_->name());
    }
    const std::size_t k = state_.run_lengths.size();

    log_pred_.resize(k);
    double shift = kNegInf;  // max log mass*predictive, for stable exps
    for (std::size_t i = 0; i < k; ++i) {
        log_pred_[i] =
            model_->log_predictive(bank_.obs_count(i), bank_.stat_sum(i), x);
        shift = std::max(shift, state_.log_mass[i] + log_pred_[i]);
    }
    if (!std::isfinite(shift)) {
        throw NumericError(
            "no run-length hypothesis assigns positive probability to datum " +
            std::to_string(x) + " at step " +
            std::to_string(state_.time_index + 1));
    }

    // Mass either grows the run by one or collapses it to zero; the run that
    // would reach length r+1 ends there with probability H(r+1).  All
    // magnitudes are O(1) around `shift`, so the changepoint mass and the
    // evidence increment can accumulate linearly.
    next_run_lengths_.resize(k + 1);
    next_log_mass_.resize(k + 1);
    long double cp_mass = 0.0L;
    long double total = 0.0L;
    for (std::size_t i = 0; i < k; ++i) {
        const std::int64_t grown = state_.run_lengths[i] + 1;
        const double base = state_.log_mass[i] + log_pred_[i];
        const double scaled = std::exp(base - shift);
        cp_mass += scaled * hazard_(grown);
        total += scaled;
        next_run_lengths_[i + 1] = grown;
        next_log_mass_[i + 1] = base + hazard_.log_survive(grown);
    }
    next_run_lengths_[0] = 0;
    const auto cp_d = static_cast<double>(cp_mass);
    next_log_mass_[0] = cp_d > 0.0 ? shift + std::log(cp_d) : kNegInf;

    const double increment =
        shift + static_cast<double>(std::log(total));
    StepOutcome outcome;
    outcome.log_evidence_increment = increment;

    // Rebase so exp(log_mass) sums to one again.
    for (std::size_t j = 0; j <= k; ++j) {
        next_log_mass_[j] -= increment;
    }

    state_.run_lengths.swap(next_run_lengths_);
    state_.log_mass.swap(next_log_mass_);
    state_.log_evidence += increment;
    state_.time_index += 1;
    bank_.advance(*model_, x);

    prune_zero_mass();
    truncate(truncation_threshold_);

    // Posterior over survivors, renormalized.
    const std::vector<double> probs = posterior_probabilities();
    outcome.posterior.resize(probs.size());
    std::size_t map_idx = 0;
    double mean = 0.0;
    double second = 0.0;
    bool moments_ok = true;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        outcome.posterior[i] = {state_.run_lengths[i], probs[i]};
        if (probs[i] > probs[map_idx]) map_idx = i;  // ties keep the smaller r
        const PredictiveMoments m =
            model_->predictive_moments(bank_.obs_count(i), bank_.stat_sum(i));
        if (probs[i] != 0.0) {
            mean += probs[i] * m.mean;
            second += probs[i] * (m.variance + m.mean * m.mean);
            moments_ok = moments_ok && std::isfinite(m.mean) &&
                         std::isfinite(m.variance);
        }
    }
    outcome.map_run_length = state_.run_lengths[map_idx];
    double variance = second - mean * mean;
    if (moments_ok && variance < 0.0) variance = 0.0;
    outcome.predictive = {mean, variance};
    return outcome;
}

PredictiveMixture Detector::predictive() const {
    const std::vector<double> probs = posterior_probabilities();
    PredictiveMixture mix;
    mix.components.resize(probs.size());
    std::vector<WeightedMoments> parts(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        PredictiveMixture::Component& c = mix.components[i];
        c.run_length = state_.run_lengths[i];
        c.weight = probs[i];
        c.obs_count = bank_.obs_count(i);
        const auto stat = bank_.stat_sum(i);
        c.stat_sum.assign(stat.begin(), stat.end());
        c.moments = model_->predictive_moments(c.obs_count, stat);
        parts[i] = {c.weight, c.moments.mean, c.moments.variance};
    }
    const PredictiveSummary s = mixture_moments(parts);
    mix.mean = s.mean;
    mix.variance = s.variance;
    return mix;
}

void Detector::truncate(double threshold) {
    truncate_run_length_state(state_, bank_, threshold);
}

std::vector<std::size_t> map_changepoints(
    std::span<const std::int64_t> map_run_lengths) {
    std::vector<std::size_t> steps;
    for (std::size_t t = 1; t < map_run_lengths.size(); ++t) {
        if (map_run_lengths[t] < map_run_lengths[t - 1]) {
            steps.push_back(t + 1);  // 1-based step numbering
        }
    }
    return steps;
}

std::vector<std::size_t> map_changepoints(
    std::span<const StepOutcome> outcomes) {
    std::vector<std::int64_t> maps(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        maps[i] = outcomes[i].map_run_length;
    }
    return map_changepoints(std::span<const std::int64_t>(maps));
}

}  // namespace bocpd
