#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "bocpd/detector.hpp"
#include "bocpd/hazard.hpp"
#include "bocpd/observation_model.hpp"

namespace bocpd {

struct ModelSpec {
    enum class Kind { GaussianMean, GaussianScale, Poisson };

    Kind kind = Kind::GaussianMean;
    // gaussian_mean
    double mean_mu0 = 0.0;
    double mean_var0 = 1.0;
    double obs_var = 1.0;
    // gaussian_scale / poisson
    double gamma_a = 1.0;
    double gamma_b = 1.0;
};

struct GapSpec {
    enum class Kind { Geometric, Table };

    Kind kind = Kind::Geometric;
    double lambda = 250.0;
    std::filesystem::path table_path;
};

struct DetectorSpec {
    ModelSpec model;
    GapSpec gap;
    Boundary boundary;
    double truncation_threshold = 0.0;
};

// A parsed config file.  `length` only applies to simulation.
struct ConfigDocument {
    DetectorSpec detector;
    std::optional<std::int64_t> length;
};

// Flat "key = value" grammar; '#' lines are comments.  Unknown keys, keys
// that do not apply to the chosen model/hazard/boundary, and missing
// required keys are configuration errors naming the key.
ConfigDocument parse_config_file(const std::filesystem::path& path);

std::shared_ptr<const ObservationModel> make_model(const ModelSpec& spec);
GapDistribution make_gap(const GapSpec& spec);
Detector make_detector(const DetectorSpec& spec);

}  // namespace bocpd
