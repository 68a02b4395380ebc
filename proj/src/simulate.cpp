#include "bocpd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "bocpd/errors.hpp"

namespace bocpd {

namespace {

class GapSampler {
public:
    explicit GapSampler(const GapDistribution& gap) : gap_(gap) {
        if (gap.is_geometric()) {
            const double p = 1.0 / gap.timescale();
            if (p < 1.0) geom_.emplace(p);
        } else {
            std::vector<double> pmf;
            for (std::int64_t g = 1; g <= gap.support_end(); ++g) {
                pmf.push_back(gap.pmf(g));
            }
            table_.emplace(pmf.begin(), pmf.end());
        }
    }

    std::int64_t operator()(std::mt19937_64& rng) {
        if (gap_.is_geometric()) {
            if (!geom_) return 1;  // lambda == 1: a changepoint every step
            return (*geom_)(rng) + 1;
        }
        return (*table_)(rng) + 1;
    }

private:
    const GapDistribution& gap_;
    std::optional<std::geometric_distribution<std::int64_t>> geom_;
    std::optional<std::discrete_distribution<std::int64_t>> table_;
};

}  // namespace

SimulationResult simulate_stream(const ModelSpec& model,
                                 const GapDistribution& gap,
                                 std::int64_t length, std::uint64_t seed) {
    if (length < 1) {
        throw ConfigError("simulation length must be >= 1, got " +
                          std::to_string(length));
    }
    std::mt19937_64 rng(seed);
    GapSampler sample_gap(gap);

    SimulationResult result;
    result.series.reserve(static_cast<std::size_t>(length));

    std::int64_t pos = 0;
    while (pos < length) {
        if (pos > 0) result.changepoint_steps.push_back(pos + 1);
        const std::int64_t g = sample_gap(rng);
        const std::int64_t n = std::min(g, length - pos);

        switch (model.kind) {
            case ModelSpec::Kind::GaussianMean: {
                double mu = model.mean_mu0;
                if (model.mean_var0 > 0.0) {
                    std::normal_distribution<double> prior(
                        model.mean_mu0, std::sqrt(model.mean_var0));
                    mu = prior(rng);
                }
                std::normal_distribution<double> like(mu,
                                                      std::sqrt(model.obs_var));
                for (std::int64_t i = 0; i < n; ++i) {
                    result.series.push_back(like(rng));
                }
                break;
            }
            case ModelSpec::Kind::GaussianScale: {
                std::gamma_distribution<double> prior(model.gamma_a,
                                                      1.0 / model.gamma_b);
                const double precision = std::max(prior(rng), 1e-300);
                std::normal_distribution<double> like(
                    0.0, 1.0 / std::sqrt(precision));
                for (std::int64_t i = 0; i < n; ++i) {
                    result.series.push_back(like(rng));
                }
                break;
            }
            case ModelSpec::Kind::Poisson: {
                std::gamma_distribution<double> prior(model.gamma_a,
                                                      1.0 / model.gamma_b);
                const double rate = std::max(prior(rng), 1e-300);
                std::poisson_distribution<std::int64_t> like(rate);
                for (std::int64_t i = 0; i < n; ++i) {
                    result.series.push_back(static_cast<double>(like(rng)));
                }
                break;
            }
        }
        pos += n;
    }
    return result;
}

}  // namespace bocpd
