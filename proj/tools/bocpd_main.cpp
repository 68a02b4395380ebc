// bocpd: streaming Bayesian online changepoint detection.
//
// Subcommands:
//   detect    run the run-length filter over a series file
//   simulate  draw a synthetic stream with known changepoints
//   oracle    cross-check the filter against exhaustive enumeration

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bocpd/config.hpp"
#include "bocpd/detector.hpp"
#include "bocpd/enumeration.hpp"
#include "bocpd/errors.hpp"
#include "bocpd/series_io.hpp"
#include "bocpd/simulate.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitOracleMismatch = 5;

int run_detect(const std::filesystem::path& config_path,
               const std::filesystem::path& input_path,
               const std::filesystem::path& posterior_path,
               const std::filesystem::path& predictive_path,
               const std::filesystem::path& summary_path) {
    const bocpd::ConfigDocument doc = bocpd::parse_config_file(config_path);
    const std::vector<bocpd::SeriesRecord> series =
        bocpd::load_series(input_path);

    bocpd::Detector detector = bocpd::make_detector(doc.detector);
    bocpd::PosteriorMatrixWriter posterior_out(posterior_path);
    bocpd::PredictiveSeriesWriter predictive_out(predictive_path);

    // Streamed: nothing below grows with the series length except the
    // changepoint list itself.
    std::vector<std::int64_t> changepoints;
    std::int64_t prev_map = -1;
    std::size_t step = 0;
    for (const bocpd::SeriesRecord& rec : series) {
        ++step;
        const bocpd::StepOutcome outcome = detector.step(rec.value);
        posterior_out.append(step, outcome);
        predictive_out.append(step, outcome);
        if (prev_map >= 0 && outcome.map_run_length < prev_map) {
            changepoints.push_back(static_cast<std::int64_t>(step));
        }
        prev_map = outcome.map_run_length;
    }

    std::string summary;
    summary += "steps = " + std::to_string(step) + "\n";
    summary += "log_evidence = " +
               bocpd::format_g12(detector.state().log_evidence) + "\n";
    summary += "map_changepoints =";
    for (const std::int64_t cp : changepoints) {
        summary += " " + std::to_string(cp);
    }
    summary += "\n";

    if (summary_path.empty()) {
        std::cout << summary;
    } else {
        std::ofstream out(summary_path);
        if (!out) {
            throw bocpd::DataError("cannot open summary file: " +
                                   summary_path.string());
        }
        out << summary;
    }
    return 0;
}

int run_simulate(const std::filesystem::path& config_path, std::uint64_t seed,
                 const std::filesystem::path& out_path,
                 const std::filesystem::path& truth_path) {
    const bocpd::ConfigDocument doc = bocpd::parse_config_file(config_path);
    if (!doc.length) {
        throw bocpd::ConfigError("missing config key: length");
    }
    const bocpd::GapDistribution gap = bocpd::make_gap(doc.detector.gap);
    const bocpd::SimulationResult sim =
        bocpd::simulate_stream(doc.detector.model, gap, *doc.length, seed);

    std::ofstream series_out(out_path);
    if (!series_out) {
        throw bocpd::DataError("cannot open output file: " + out_path.string());
    }
    for (const double x : sim.series) {
        series_out << bocpd::format_g12(x) << "\n";
    }

    std::ofstream truth_out(truth_path);
    if (!truth_out) {
        throw bocpd::DataError("cannot open output file: " +
                               truth_path.string());
    }
    truth_out << "# ground-truth changepoint steps (1-based)\n";
    for (const std::int64_t cp : sim.changepoint_steps) {
        truth_out << cp << "\n";
    }
    return 0;
}

int run_oracle(const std::filesystem::path& config_path,
               const std::filesystem::path& input_path) {
    const bocpd::ConfigDocument doc = bocpd::parse_config_file(config_path);
    const std::vector<bocpd::SeriesRecord> series =
        bocpd::load_series(input_path);
    if (static_cast<std::int64_t>(series.size()) >
        bocpd::kMaxEnumerationLength) {
        throw bocpd::ConfigError(
            "oracle supports at most " +
            std::to_string(bocpd::kMaxEnumerationLength) +
            " observations, got " + std::to_string(series.size()));
    }
    std::vector<double> data;
    data.reserve(series.size());
    for (const bocpd::SeriesRecord& rec : series) data.push_back(rec.value);

    const auto model = bocpd::make_model(doc.detector.model);
    const bocpd::GapDistribution gap = bocpd::make_gap(doc.detector.gap);

    // Truncation stays off: the comparison is against exact enumeration.
    bocpd::Detector detector(model, gap, doc.detector.boundary, 0.0);
    bocpd::StepOutcome last;
    for (const double x : data) last = detector.step(x);

    const auto exact = bocpd::enumerate_run_length_posterior(
        data, *model, gap, doc.detector.boundary);
    const double err = bocpd::max_relative_error(last.posterior, exact);

    std::cout << "max relative error = " << bocpd::format_g12(err) << " over "
              << exact.size() << " run-length hypotheses\n";
    return err < 1e-9 ? 0 : kExitOracleMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian online changepoint detection over streaming series"};
    app.require_subcommand(1);

    std::filesystem::path config_path;
    std::filesystem::path input_path;
    std::filesystem::path posterior_path;
    std::filesystem::path predictive_path;
    std::filesystem::path summary_path;
    std::filesystem::path out_path;
    std::filesystem::path truth_path;
    std::uint64_t seed = 0;

    CLI::App* detect = app.add_subcommand(
        "detect", "Run the changepoint filter over a series file");
    detect->add_option("--config", config_path, "config file")->required();
    detect->add_option("--input", input_path, "input series file")->required();
    detect->add_option("--posterior-out", posterior_path,
                       "run-length posterior matrix (t,r,prob)")
        ->required();
    detect->add_option("--predictive-out", predictive_path,
                       "per-step predictive series")
        ->required();
    detect->add_option("--summary-out", summary_path,
                       "summary file (defaults to stdout)");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Sample a synthetic stream with known changepoints");
    simulate->add_option("--config", config_path, "config file")->required();
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--out", out_path, "series output file")->required();
    simulate->add_option("--truth-out", truth_path,
                         "ground-truth changepoint file")
        ->required();

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Check the filter against exhaustive enumeration");
    oracle->add_option("--config", config_path, "config file")->required();
    oracle->add_option("--input", input_path, "input series file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (detect->parsed()) {
            return run_detect(config_path, input_path, posterior_path,
                              predictive_path, summary_path);
        }
        if (simulate->parsed()) {
            return run_simulate(config_path, seed, out_path, truth_path);
        }
        return run_oracle(config_path, input_path);
    } catch (const bocpd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bocpd::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const bocpd::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
