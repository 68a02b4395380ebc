#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bocpd/hazard.hpp"
#include "bocpd/observation_model.hpp"

namespace bocpd {

// Prior over the run length before the first datum.  Reset: a changepoint
// is known to have occurred just before observation began.  Survival: the
// stream was already running, so the initial run length follows the
// normalized survival function of the gap distribution over a finite
// horizon.
struct Boundary {
    enum class Kind { Reset, Survival };

    Kind kind = Kind::Reset;
    // Survival only.  When unset, the horizon defaults to the smallest tau
    // whose tail mass falls below 1e-6.
    std::optional<std::int64_t> survival_horizon;

    static Boundary reset() { return {}; }
    static Boundary survival(
        std::optional<std::int64_t> horizon = std::nullopt) {
        return {Kind::Survival, horizon};
    }
};

// Smallest tau with gap tail mass S(tau) < 1e-6; used when a survival
// boundary does not pin the horizon explicitly.
std::int64_t default_survival_horizon(const GapDistribution& gap);

// Retained run-length hypotheses and their log joint mass with the data.
// log_mass holds the joint offset by -log_evidence, so entries stay O(1) no
// matter how long the stream runs; the absolute log joint of hypothesis i
// is log_mass[i] + log_evidence.  exp(log_mass) sums to 1 over retained
// hypotheses (strictly below 1 once truncation has dropped tail mass).
struct RunLengthState {
    std::int64_t time_index = 0;  // observations absorbed so far
    std::vector<std::int64_t> run_lengths;  // strictly increasing
    std::vector<double> log_mass;
    double log_evidence = 0.0;  // log P(data so far), retained mass
};

struct PredictiveSummary {
    double mean = 0.0;
    double variance = 0.0;
};

// Result of absorbing one observation.
struct StepOutcome {
    // (run_length, probability), normalized over retained hypotheses.
    std::vector<std::pair<std::int64_t, double>> posterior;
    double log_evidence_increment = 0.0;
    std::int64_t map_run_length = 0;
    // Mixture moments for the next observation; non-finite entries when a
    // retained component lacks that moment.
    PredictiveSummary predictive{};
};

// Posterior-weighted mixture of per-run-length predictives.
struct PredictiveMixture {
    struct Component {
        std::int64_t run_length = 0;
        double weight = 0.0;
        double obs_count = 0.0;
        std::vector<double> stat_sum;
        PredictiveMoments moments;
    };

    double mean = 0.0;
    double variance = 0.0;
    std::vector<Component> components;
};

struct WeightedMoments {
    double weight = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

// Mixture mean and variance by the law of total mean/variance.  Zero-weight
// components are ignored; non-finite component moments propagate.
PredictiveSummary mixture_moments(std::span<const WeightedMoments> parts);

// Drop the largest-run-length hypotheses whose combined normalized mass is
// strictly below `threshold`.  Surviving log_mass values are left
// untouched (mass is dropped, not redistributed).  Always keeps at least
// two hypotheses, so run length 0 is never dropped.
void truncate_run_length_state(RunLengthState& state, HyperparameterBank& bank,
                               double threshold);

// Online run-length filter: maintains the joint over run length and data,
// one observation at a time, with optional tail truncation for constant
// average per-step cost.
class Detector {
public:
    Detector(std::shared_ptr<const ObservationModel> model, GapDistribution gap,
             Boundary boundary = Boundary::reset(),
             double truncation_threshold = 0.0);

    // Absorb one observation and return the updated posterior, the
    // predictive-probability increment, and next-step predictive moments.
    StepOutcome step(double x);

    // Mixture predictive for the next observation under the current state.
    PredictiveMixture predictive() const;

    // Apply tail truncation at the given threshold (in [0, 1)).
    void truncate(double threshold);

    const RunLengthState& state() const { return state_; }
    const HyperparameterBank& bank() const { return bank_; }
    const ObservationModel& model() const { return *model_; }
    const GapDistribution& gap() const { return gap_; }
    std::size_t hypothesis_count() const { return state_.run_lengths.size(); }

private:
    void init_reset();
    void init_survival(const Boundary& boundary);
    void prune_zero_mass();
    std::vector<double> posterior_probabilities() const;

    std::shared_ptr<const ObservationModel> model_;
    GapDistribution gap_;
    HazardFunction hazard_;
    double truncation_threshold_;
    RunLengthState state_;
    HyperparameterBank bank_;

    // step() scratch, reused across calls
    std::vector<double> log_pred_;
    std::vector<std::int64_t> next_run_lengths_;
    std::vector<double> next_log_mass_;
    std::vector<char> keep_;
};

// Steps (1-based) at which the MAP run length dropped relative to the
// previous step.
std::vector<std::size_t> map_changepoints(
    std::span<const std::int64_t> map_run_lengths);
std::vector<std::size_t> map_changepoints(std::span<const StepOutcome> outcomes);

}  // namespace bocpd
