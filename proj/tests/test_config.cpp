#include <doctest.h>

#include <string>

#include "bocpd/config.hpp"
#include "bocpd/errors.hpp"
#include "bocpd/models.hpp"
#include "testkit/util.hpp"

using namespace bocpd;
namespace tk = bocpd::testkit;

TEST_SUITE("config") {

TEST_CASE("gaussian_mean config parses") {
    const tk::TempDir dir("bocpd_config");
    const auto path = dir / "gm.conf";
    tk::write_file(path,
                   "# well-log style setup\n"
                   "model = gaussian_mean\n"
                   "mean_mu0 = 1.15e5\n"
                   "mean_var0 = 1e8\n"
                   "obs_var = 1e8\n"
                   "hazard = constant\n"
                   "hazard_lambda = 250\n"
                   "boundary = reset\n"
                   "truncation_threshold = 1e-4\n");
    const ConfigDocument doc = parse_config_file(path);
    CHECK(doc.detector.model.kind == ModelSpec::Kind::GaussianMean);
    CHECK(doc.detector.model.mean_mu0 == 1.15e5);
    CHECK(doc.detector.model.mean_var0 == 1e8);
    CHECK(doc.detector.model.obs_var == 1e8);
    CHECK(doc.detector.gap.kind == GapSpec::Kind::Geometric);
    CHECK(doc.detector.gap.lambda == 250.0);
    CHECK(doc.detector.boundary.kind == Boundary::Kind::Reset);
    CHECK(doc.detector.truncation_threshold == 1e-4);
    CHECK_FALSE(doc.length.has_value());
}

TEST_CASE("gaussian_scale and poisson configs parse") {
    const tk::TempDir dir("bocpd_config");
    const auto scale = dir / "gs.conf";
    tk::write_file(scale,
                   "model = gaussian_scale\n"
                   "gamma_a = 1\n"
                   "gamma_b = 1e-4\n"
                   "hazard = constant\n"
                   "hazard_lambda = 250\n"
                   "boundary = reset\n");
    const ConfigDocument gs = parse_config_file(scale);
    CHECK(gs.detector.model.kind == ModelSpec::Kind::GaussianScale);
    CHECK(gs.detector.model.gamma_b == 1e-4);
    CHECK(gs.detector.truncation_threshold == 0.0);  // default

    const auto pois = dir / "pois.conf";
    tk::write_file(pois,
                   "model = poisson\n"
                   "gamma_a = 1\n"
                   "gamma_b = 1\n"
                   "hazard = constant\n"
                   "hazard_lambda = 1000\n"
                   "boundary = survival\n"
                   "survival_horizon = 40\n"
                   "length = 500\n");
    const ConfigDocument pd = parse_config_file(pois);
    CHECK(pd.detector.model.kind == ModelSpec::Kind::Poisson);
    CHECK(pd.detector.boundary.kind == Boundary::Kind::Survival);
    CHECK(pd.detector.boundary.survival_horizon == 40);
    CHECK(pd.length == 500);
}

TEST_CASE("missing keys are reported by name") {
    const tk::TempDir dir("bocpd_config");
    const auto path = dir / "missing.conf";
    tk::write_file(path,
                   "model = poisson\n"
                   "gamma_a = 1\n"
                   "hazard = constant\n"
                   "hazard_lambda = 10\n"
                   "boundary = reset\n");
    CHECK_THROWS_WITH_AS(parse_config_file(path), doctest::Contains("gamma_b"),
                         ConfigError);
}

TEST_CASE("unknown and inapplicable keys are rejected") {
    const tk::TempDir dir("bocpd_config");
    const auto unknown = dir / "unknown.conf";
    tk::write_file(unknown,
                   "model = poisson\n"
                   "gamma_a = 1\n"
                   "gamma_b = 1\n"
                   "hazard = constant\n"
                   "hazard_lambda = 10\n"
                   "boundary = reset\n"
                   "volume = 11\n");
    CHECK_THROWS_WITH_AS(parse_config_file(unknown),
                         doctest::Contains("volume"), ConfigError);

    const auto inapplicable = dir / "inapplicable.conf";
    tk::write_file(inapplicable,
                   "model = gaussian_mean\n"
                   "mean_mu0 = 0\n"
                   "mean_var0 = 1\n"
                   "obs_var = 1\n"
                   "gamma_a = 2\n"
                   "hazard = constant\n"
                   "hazard_lambda = 10\n"
                   "boundary = reset\n");
    CHECK_THROWS_WITH_AS(parse_config_file(inapplicable),
                         doctest::Contains("gamma_a"), ConfigError);
}

TEST_CASE("malformed lines and values") {
    const tk::TempDir dir("bocpd_config");
    const auto path = dir / "bad.conf";
    tk::write_file(path, "model gaussian_mean\n");
    CHECK_THROWS_AS(parse_config_file(path), ConfigError);

    tk::write_file(path,
                   "model = poisson\n"
                   "gamma_a = abc\n"
                   "gamma_b = 1\n"
                   "hazard = constant\n"
                   "hazard_lambda = 10\n"
                   "boundary = reset\n");
    CHECK_THROWS_WITH_AS(parse_config_file(path), doctest::Contains("gamma_a"),
                         ConfigError);

    tk::write_file(path,
                   "model = poisson\n"
                   "model = poisson\n");
    CHECK_THROWS_WITH_AS(parse_config_file(path), doctest::Contains("duplicate"),
                         ConfigError);

    CHECK_THROWS_AS(parse_config_file(dir / "absent.conf"), ConfigError);
}

TEST_CASE("unknown enum values are configuration errors") {
    const tk::TempDir dir("bocpd_config");
    const auto path = dir / "enum.conf";
    tk::write_file(path,
                   "model = studentt\n"
                   "hazard = constant\n"
                   "hazard_lambda = 10\n"
                   "boundary = reset\n");
    CHECK_THROWS_WITH_AS(parse_config_file(path), doctest::Contains("studentt"),
                         ConfigError);
}

TEST_CASE("gap table paths resolve relative to the config file") {
    const tk::TempDir dir("bocpd_config");
    tk::write_file(dir / "gap.txt", "1 0.5\n2 0.5\n");
    const auto path = dir / "table.conf";
    tk::write_file(path,
                   "model = poisson\n"
                   "gamma_a = 1\n"
                   "gamma_b = 1\n"
                   "hazard = gap_table\n"
                   "gap_table_path = gap.txt\n"
                   "boundary = reset\n");
    const ConfigDocument doc = parse_config_file(path);
    const GapDistribution gap = make_gap(doc.detector.gap);
    CHECK(gap.pmf(1) == 0.5);
    CHECK(gap.support_end() == 2);
}

TEST_CASE("make_detector runs end to end") {
    const tk::TempDir dir("bocpd_config");
    const auto path = dir / "run.conf";
    tk::write_file(path,
                   "model = poisson\n"
                   "gamma_a = 1\n"
                   "gamma_b = 1\n"
                   "hazard = constant\n"
                   "hazard_lambda = 20\n"
                   "boundary = reset\n"
                   "truncation_threshold = 1e-6\n");
    Detector det = make_detector(parse_config_file(path).detector);
    const StepOutcome o = det.step(2.0);
    CHECK(o.posterior.size() == 2);
    CHECK(det.model().name() == std::string("poisson"));
}

TEST_CASE("invalid hyperparameters surface as config errors") {
    ModelSpec bad;
    bad.kind = ModelSpec::Kind::GaussianScale;
    bad.gamma_a = -1.0;
    bad.gamma_b = 1.0;
    CHECK_THROWS_AS(make_model(bad), ConfigError);
}

}  // TEST_SUITE
