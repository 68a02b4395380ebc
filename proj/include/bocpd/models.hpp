#pragma once

#include "bocpd/observation_model.hpp"

namespace bocpd {

// Gaussian observations with unknown mean and known variance; Gaussian
// prior on the mean.  u(x) = x.  The predictive is Gaussian with the
// posterior mean of mu and variance (posterior variance of mu) + obs_var.
class GaussianMeanModel final : public ObservationModel {
public:
    // prior_var may be zero (degenerate prior that pins the mean);
    // obs_var must be positive.
    GaussianMeanModel(double prior_mean, double prior_var, double obs_var);

    const char* name() const override { return "gaussian_mean"; }
    std::size_t stat_dim() const override { return 1; }
    double prior_obs_count() const override { return 0.0; }
    std::vector<double> prior_stat() const override { return {0.0}; }
    bool in_support(double x) const override;
    void stat(double x, std::span<double> out) const override;
    double log_predictive(double obs_count, std::span<const double> stat_sum,
                          double x) const override;
    PredictiveMoments predictive_moments(
        double obs_count, std::span<const double> stat_sum) const override;

    double prior_mean() const { return prior_mean_; }
    double prior_var() const { return prior_var_; }
    double obs_var() const { return obs_var_; }

private:
    double prior_mean_;
    double prior_var_;
    double obs_var_;
};

// Zero-mean Gaussian observations with unknown precision; gamma prior
// (shape, rate) on the precision.  u(x) = x^2.  The predictive is a
// zero-centred scaled Student-t.
class GaussianScaleModel final : public ObservationModel {
public:
    GaussianScaleModel(double shape, double rate);

    const char* name() const override { return "gaussian_scale"; }
    std::size_t stat_dim() const override { return 1; }
    double prior_obs_count() const override { return 0.0; }
    std::vector<double> prior_stat() const override { return {0.0}; }
    bool in_support(double x) const override;
    void stat(double x, std::span<double> out) const override;
    double log_predictive(double obs_count, std::span<const double> stat_sum,
                          double x) const override;
    PredictiveMoments predictive_moments(
        double obs_count, std::span<const double> stat_sum) const override;

    double shape() const { return shape_; }
    double rate() const { return rate_; }

private:
    double shape_;
    double rate_;
};

// Poisson counts with unknown rate; gamma prior (shape, rate) on the rate.
// u(x) = x.  The predictive is a negative-binomial-shaped pmf.
class PoissonRateModel final : public ObservationModel {
public:
    PoissonRateModel(double shape, double rate);

    const char* name() const override { return "poisson"; }
    std::size_t stat_dim() const override { return 1; }
    double prior_obs_count() const override { return 0.0; }
    std::vector<double> prior_stat() const override { return {0.0}; }
    bool in_support(double x) const override;
    void stat(double x, std::span<double> out) const override;
    double log_predictive(double obs_count, std::span<const double> stat_sum,
                          double x) const override;
    PredictiveMoments predictive_moments(
        double obs_count, std::span<const double> stat_sum) const override;

    double shape() const { return shape_; }
    double rate() const { return rate_; }

private:
    double shape_;
    double rate_;
};

}  // namespace bocpd
