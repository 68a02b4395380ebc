#pragma once

#include <cstdint>

// Predictive log densities by direct numerical integration of
// prior x likelihood-kernel over the latent parameter.  Written straight
// from the definitions, so they share no code with the library's closed
// forms.  Adaptive Gauss-Kronrod, relative tolerance 1e-10; the domain is
// truncated where the integrand falls below ~1e-300 of its peak.
namespace bocpd::testkit {

struct QuadResolution {
    // Gauss-Kronrod panel size; halve to check grid-resolution stability.
    bool coarse = false;
};

double quad_log_predictive_gaussian_mean(double mu0, double var0,
                                         double obs_var, double obs_count,
                                         double stat_sum, double x,
                                         QuadResolution res = {});

double quad_log_predictive_gaussian_scale(double shape, double rate,
                                          double obs_count, double stat_sum,
                                          double x, QuadResolution res = {});

double quad_log_predictive_poisson(double shape, double rate, double obs_count,
                                   double stat_sum, std::int64_t k,
                                   QuadResolution res = {});

}  // namespace bocpd::testkit
