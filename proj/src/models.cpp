#include "bocpd/models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bocpd/errors.hpp"
#include "bocpd/math.hpp"

namespace bocpd {

GaussianMeanModel::GaussianMeanModel(double prior_mean, double prior_var,
                                     double obs_var)
    : prior_mean_(prior_mean), prior_var_(prior_var), obs_var_(obs_var) {
    if (!std::isfinite(prior_mean)) {
        throw ConfigError("gaussian_mean: prior mean must be finite");
    }
    if (!(prior_var >= 0.0) || !std::isfinite(prior_var)) {
        throw ConfigError("gaussian_mean: prior variance must be >= 0");
    }
    if (!(obs_var > 0.0) || !std::isfinite(obs_var)) {
        throw ConfigError("gaussian_mean: observation variance must be > 0");
    }
}

bool GaussianMeanModel::in_support(double x) const { return std::isfinite(x); }

void GaussianMeanModel::stat(double x, std::span<double> out) const {
    out[0] = x;
}

double GaussianMeanModel::log_predictive(double obs_count,
                                         std::span<const double> stat_sum,
                                         double x) const {
    const PredictiveMoments m = predictive_moments(obs_count, stat_sum);
    return log_normal_density(x, m.mean, m.variance);
}

PredictiveMoments GaussianMeanModel::predictive_moments(
    double obs_count, std::span<const double> stat_sum) const {
    // Posterior over the mean has precision 1/var0 + n/obs_var; written in
    // the variance form below it stays well defined at var0 == 0.
    const double denom = obs_var_ + obs_count * prior_var_;
    const double post_var = prior_var_ * obs_var_ / denom;
    const double post_mean =
        (prior_mean_ * obs_var_ + stat_sum[0] * prior_var_) / denom;
    return {post_mean, post_var + obs_var_};
}

GaussianScaleModel::GaussianScaleModel(double shape, double rate)
    : shape_(shape), rate_(rate) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw ConfigError("gaussian_scale: gamma shape must be > 0");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("gaussian_scale: gamma rate must be > 0");
    }
}

bool GaussianScaleModel::in_support(double x) const { return std::isfinite(x); }

void GaussianScaleModel::stat(double x, std::span<double> out) const {
    out[0] = x * x;
}

double GaussianScaleModel::log_predictive(double obs_count,
                                          std::span<const double> stat_sum,
                                          double x) const {
    const double a = shape_ + 0.5 * obs_count;
    const double b = rate_ + 0.5 * stat_sum[0];
    return std::lgamma(a + 0.5) - std::lgamma(a) + a * std::log(b) -
           (a + 0.5) * std::log(b + 0.5 * x * x) - 0.5 * std::log(2.0 * M_PI);
}

PredictiveMoments GaussianScaleModel::predictive_moments(
    double obs_count, std::span<const double> stat_sum) const {
    const double a = shape_ + 0.5 * obs_count;
    const double b = rate_ + 0.5 * stat_sum[0];
    PredictiveMoments m;
    if (2.0 * a > 1.0) m.mean = 0.0;  // mean exists for dof > 1
    if (a > 1.0) {
        m.variance = b / (a - 1.0);
    } else if (a > 0.5) {
        m.variance = std::numeric_limits<double>::infinity();
    }
    return m;
}

PoissonRateModel::PoissonRateModel(double shape, double rate)
    : shape_(shape), rate_(rate) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw ConfigError("poisson: gamma shape must be > 0");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("poisson: gamma rate must be > 0");
    }
}

bool PoissonRateModel::in_support(double x) const {
    return std::isfinite(x) && x >= 0.0 && std::floor(x) == x &&
           x <= 9007199254740992.0;  // 2^53: exactly representable counts
}

void PoissonRateModel::stat(double x, std::span<double> out) const {
    out[0] = x;
}

double PoissonRateModel::log_predictive(double obs_count,
                                        std::span<const double> stat_sum,
                                        double x) const {
    const double a = shape_ + stat_sum[0];
    const double b = rate_ + obs_count;
    const double k = x;
    // log of the gamma-marginal pmf: NB(k; a, b/(b+1)).
    return std::lgamma(a + k) - std::lgamma(a) - std::lgamma(k + 1.0) +
           a * (std::log(b) - std::log1p(b)) - k * std::log1p(b);
}

PredictiveMoments PoissonRateModel::predictive_moments(
    double obs_count, std::span<const double> stat_sum) const {
    const double a = shape_ + stat_sum[0];
    const double b = rate_ + obs_count;
    const double mean = a / b;
    return {mean, mean * (b + 1.0) / b};
}

HyperparameterBank::HyperparameterBank(const ObservationModel& model,
                                       std::size_t slots)
    : dim_(model.stat_dim()),
      prior_count_(model.prior_obs_count()),
      prior_stat_(model.prior_stat()),
      stat_buf_(dim_) {
    obs_count_.assign(slots, prior_count_);
    stat_sum_.resize(slots * dim_);
    for (std::size_t i = 0; i < slots; ++i) {
        for (std::size_t d = 0; d < dim_; ++d) {
            stat_sum_[i * dim_ + d] = prior_stat_[d];
        }
    }
}

void HyperparameterBank::advance(const ObservationModel& model, double x) {
    const std::size_t n = obs_count_.size();
    model.stat(x, stat_buf_);

    scratch_count_.resize(n + 1);
    scratch_stat_.resize((n + 1) * dim_);
    scratch_count_[0] = prior_count_;
    for (std::size_t d = 0; d < dim_; ++d) {
        scratch_stat_[d] = prior_stat_[d];
    }
    for (std::size_t i = 0; i < n; ++i) {
        scratch_count_[i + 1] = obs_count_[i] + 1.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            scratch_stat_[(i + 1) * dim_ + d] = stat_sum_[i * dim_ + d] + stat_buf_[d];
        }
    }
    obs_count_.swap(scratch_count_);
    stat_sum_.swap(scratch_stat_);
}

void HyperparameterBank::compact(std::span<const char> keep) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < obs_count_.size(); ++i) {
        if (!keep[i]) continue;
        if (w != i) {
            obs_count_[w] = obs_count_[i];
            for (std::size_t d = 0; d < dim_; ++d) {
                stat_sum_[w * dim_ + d] = stat_sum_[i * dim_ + d];
            }
        }
        ++w;
    }
    obs_count_.resize(w);
    stat_sum_.resize(w * dim_);
}

void HyperparameterBank::keep_front(std::size_t n) {
    if (n >= obs_count_.size()) return;
    obs_count_.resize(n);
    stat_sum_.resize(n * dim_);
}

}  // namespace bocpd
