#include "testkit/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace bocpd::testkit {

namespace {

constexpr double kLogFloor = 1400.0;  // exp(-1400) ~ 1e-608: deep tail cutoff

template <typename F>
std::pair<double, double> find_bounds(const F& logf, double mode, double peak,
                                      double step) {
    double lo = mode;
    for (int i = 0; i < 200000 && logf(lo) > peak - kLogFloor; ++i) lo -= step;
    double hi = mode;
    for (int i = 0; i < 200000 && logf(hi) > peak - kLogFloor; ++i) hi += step;
    return {lo, hi};
}

// log of integral exp(logf) over [lo, hi], scaled by the peak value so the
// quadrature works on O(1) numbers.
template <unsigned Points, typename F>
double log_integral(const F& logf, double mode, double step) {
    const double peak = logf(mode);
    if (!std::isfinite(peak)) {
        throw std::runtime_error("quadrature integrand peak is not finite");
    }
    const auto [lo, hi] = find_bounds(logf, mode, peak, step);
    const auto f = [&](double t) { return std::exp(logf(t) - peak); };
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, Points>::integrate(
            f, lo, hi, 15, 1e-11, &error);
    if (!(value > 0.0)) {
        throw std::runtime_error("quadrature integral is not positive");
    }
    return peak + std::log(value);
}

template <typename F>
double log_integral(const F& logf, double mode, double step,
                    QuadResolution res) {
    return res.coarse ? log_integral<31>(logf, mode, step)
                      : log_integral<61>(logf, mode, step);
}

// log of gamma_pdf(exp(u); shape, rate), written directly in u so the deep
// left tail never evaluates log(0).
double log_gamma_pdf_at_exp(double u, double shape, double rate) {
    return shape * std::log(rate) + (shape - 1.0) * u - rate * std::exp(u) -
           std::lgamma(shape);
}

}  // namespace

double quad_log_predictive_gaussian_mean(double mu0, double var0,
                                         double obs_var, double obs_count,
                                         double stat_sum, double x,
                                         QuadResolution res) {
    if (!(var0 > 0.0) || !(obs_var > 0.0)) {
        throw std::invalid_argument("quadrature requires positive variances");
    }
    // Un-normalized posterior over the mean: prior density times the
    // mean-dependent part of the run's likelihood.
    const auto log_w = [&](double mu) {
        const double d = mu - mu0;
        return -0.5 * (d * d / var0 + std::log(2.0 * M_PI * var0)) -
               (obs_count * mu * mu - 2.0 * mu * stat_sum) / (2.0 * obs_var);
    };
    const auto log_w1 = [&](double mu) {
        const double d = x - mu;
        return log_w(mu) -
               0.5 * (d * d / obs_var + std::log(2.0 * M_PI * obs_var));
    };

    const double prec_w = 1.0 / var0 + obs_count / obs_var;
    const double mode_w = (mu0 / var0 + stat_sum / obs_var) / prec_w;
    const double prec_1 = prec_w + 1.0 / obs_var;
    const double mode_1 = (mode_w * prec_w + x / obs_var) / prec_1;
    const double step =
        0.5 * std::max(std::sqrt(1.0 / prec_w), std::sqrt(obs_var));

    return log_integral(log_w1, mode_1, step, res) -
           log_integral(log_w, mode_w, step, res);
}

double quad_log_predictive_gaussian_scale(double shape, double rate,
                                          double obs_count, double stat_sum,
                                          double x, QuadResolution res) {
    // Integrate over u = log(precision); the substitution adds +u to the
    // log integrand and removes the power singularity at zero.
    const auto log_w = [&](double u) {
        return log_gamma_pdf_at_exp(u, shape, rate) + 0.5 * obs_count * u -
               0.5 * stat_sum * std::exp(u) + u;
    };
    const auto log_w1 = [&](double u) {
        return log_w(u) + 0.5 * u - 0.5 * std::exp(u) * x * x -
               0.5 * std::log(2.0 * M_PI);
    };

    const double alpha0 = shape + 0.5 * obs_count;
    const double beta0 = rate + 0.5 * stat_sum;
    const double alpha1 = alpha0 + 0.5;
    const double beta1 = beta0 + 0.5 * x * x;

    return log_integral(log_w1, std::log(alpha1 / beta1), 0.25, res) -
           log_integral(log_w, std::log(alpha0 / beta0), 0.25, res);
}

double quad_log_predictive_poisson(double shape, double rate, double obs_count,
                                   double stat_sum, std::int64_t k,
                                   QuadResolution res) {
    const auto dk = static_cast<double>(k);
    const auto log_w = [&](double u) {
        return log_gamma_pdf_at_exp(u, shape, rate) + stat_sum * u -
               obs_count * std::exp(u) + u;
    };
    const auto log_w1 = [&](double u) {
        return log_w(u) + dk * u - std::exp(u) - std::lgamma(dk + 1.0);
    };

    const double alpha0 = shape + stat_sum;
    const double beta0 = rate + obs_count;
    const double alpha1 = alpha0 + dk;
    const double beta1 = beta0 + 1.0;

    return log_integral(log_w1, std::log(alpha1 / beta1), 0.25, res) -
           log_integral(log_w, std::log(alpha0 / beta0), 0.25, res);
}

}  // namespace bocpd::testkit
