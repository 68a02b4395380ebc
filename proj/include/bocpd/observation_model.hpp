#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace bocpd {

// First two moments of a per-run-length predictive.  Either entry may be
// non-finite when the distribution lacks that moment.
struct PredictiveMoments {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double variance = std::numeric_limits<double>::quiet_NaN();
};

// Conjugate-exponential observation model.  A run that has absorbed n
// observations is summarized by an observation count (prior count + n) and
// an accumulated statistic vector (prior statistic + sum of u(x) over the
// run); the model turns that summary into a closed-form predictive density
// for the next datum.
class ObservationModel {
public:
    virtual ~ObservationModel() = default;

    virtual const char* name() const = 0;

    // Dimension of the sufficient statistic u(x).
    virtual std::size_t stat_dim() const = 0;
    virtual double prior_obs_count() const = 0;
    virtual std::vector<double> prior_stat() const = 0;

    virtual bool in_support(double x) const = 0;
    // u(x); writes stat_dim() entries.
    virtual void stat(double x, std::span<double> out) const = 0;

    // log density (or log pmf) of x under the parameter-marginal predictive
    // for a run summarized by (obs_count, stat_sum).
    virtual double log_predictive(double obs_count,
                                  std::span<const double> stat_sum,
                                  double x) const = 0;
    virtual PredictiveMoments predictive_moments(
        double obs_count, std::span<const double> stat_sum) const = 0;
};

// Per-run-length summaries, kept in lockstep with the engine's retained run
// lengths: slot i belongs to hypothesis i.
class HyperparameterBank {
public:
    explicit HyperparameterBank(const ObservationModel& model,
                                std::size_t slots = 1);

    std::size_t size() const { return obs_count_.size(); }
    std::size_t stat_dim() const { return dim_; }

    double obs_count(std::size_t i) const { return obs_count_[i]; }
    std::span<const double> stat_sum(std::size_t i) const {
        return {stat_sum_.data() + i * dim_, dim_};
    }

    // Shift every slot to the next run length (count + 1, stat + u(x)) and
    // insert a fresh prior slot at the front.
    void advance(const ObservationModel& model, double x);

    // Keep only the slots selected by `keep` (same length as the bank),
    // preserving order.
    void compact(std::span<const char> keep);
    // Drop all slots at index >= n.
    void keep_front(std::size_t n);

private:
    std::size_t dim_ = 1;
    double prior_count_ = 0.0;
    std::vector<double> prior_stat_;
    std::vector<double> obs_count_;
    std::vector<double> stat_sum_;
    std::vector<double> scratch_count_;
    std::vector<double> scratch_stat_;
    std::vector<double> stat_buf_;
};

}  // namespace bocpd
