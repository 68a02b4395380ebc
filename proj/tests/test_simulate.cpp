#include <doctest.h>

#include <cmath>
#include <vector>

#include "bocpd/errors.hpp"
#include "bocpd/simulate.hpp"

using namespace bocpd;

namespace {

ModelSpec gaussian_mean_spec() {
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::GaussianMean;
    spec.mean_mu0 = 0.0;
    spec.mean_var0 = 4.0;
    spec.obs_var = 1.0;
    return spec;
}

ModelSpec poisson_spec() {
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::Poisson;
    spec.gamma_a = 1.0;
    spec.gamma_b = 1.0;
    return spec;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("deterministic gap places changepoints exactly") {
    std::vector<double> pmf(5, 0.0);
    pmf[4] = 1.0;  // every partition is exactly 5 long
    const GapDistribution gap = GapDistribution::table(pmf);

    const SimulationResult ten = simulate_stream(gaussian_mean_spec(), gap, 10, 1);
    CHECK(ten.series.size() == 10);
    CHECK(ten.changepoint_steps == std::vector<std::int64_t>{6});

    const SimulationResult eleven =
        simulate_stream(gaussian_mean_spec(), gap, 11, 1);
    CHECK(eleven.changepoint_steps == std::vector<std::int64_t>{6, 11});
}

TEST_CASE("identical seeds give identical streams") {
    const GapDistribution gap = GapDistribution::geometric(50.0);
    const SimulationResult a = simulate_stream(gaussian_mean_spec(), gap, 500, 42);
    const SimulationResult b = simulate_stream(gaussian_mean_spec(), gap, 500, 42);
    CHECK(a.series == b.series);
    CHECK(a.changepoint_steps == b.changepoint_steps);

    const SimulationResult c = simulate_stream(gaussian_mean_spec(), gap, 500, 43);
    CHECK(a.series != c.series);
}

TEST_CASE("empirical mean gap matches the geometric timescale") {
    const double lambda = 250.0;
    const GapDistribution gap = GapDistribution::geometric(lambda);
    const SimulationResult sim =
        simulate_stream(gaussian_mean_spec(), gap, 10000, 7);

    // completed gaps only; the censored trailing partition is excluded
    std::vector<double> gaps;
    std::int64_t prev = 1;
    for (const std::int64_t cp : sim.changepoint_steps) {
        gaps.push_back(static_cast<double>(cp - prev));
        prev = cp;
    }
    REQUIRE(gaps.size() >= 10);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());

    const double sd = std::sqrt(1.0 - 1.0 / lambda) * lambda;
    const double se = sd / std::sqrt(static_cast<double>(gaps.size()));
    CHECK(std::fabs(mean - lambda) < 3.0 * se);
}

TEST_CASE("poisson streams are non-negative integers") {
    const GapDistribution gap = GapDistribution::geometric(100.0);
    const SimulationResult sim = simulate_stream(poisson_spec(), gap, 2000, 11);
    for (const double x : sim.series) {
        CHECK(x >= 0.0);
        CHECK(std::floor(x) == x);
    }
}

TEST_CASE("gaussian_scale streams are centred at zero") {
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::GaussianScale;
    spec.gamma_a = 2.0;
    spec.gamma_b = 2.0;
    const SimulationResult sim =
        simulate_stream(spec, GapDistribution::geometric(100.0), 5000, 13);
    double mean = 0.0;
    for (const double x : sim.series) mean += x;
    mean /= static_cast<double>(sim.series.size());
    CHECK(std::fabs(mean) < 0.2);
}

TEST_CASE("timescale one changes at every step") {
    const SimulationResult sim = simulate_stream(
        gaussian_mean_spec(), GapDistribution::geometric(1.0), 6, 3);
    CHECK(sim.changepoint_steps == std::vector<std::int64_t>{2, 3, 4, 5, 6});
}

TEST_CASE("invalid length is rejected") {
    CHECK_THROWS_AS(simulate_stream(gaussian_mean_spec(),
                                    GapDistribution::geometric(10.0), 0, 1),
                    ConfigError);
}

}  // TEST_SUITE
