#include "bocpd/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <string_view>

#include "bocpd/errors.hpp"
#include "bocpd/models.hpp"

namespace bocpd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

class KeyValues {
public:
    explicit KeyValues(const std::filesystem::path& path) : path_(path) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open config file: " + path.string());
        }
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string_view body = trim(line);
            if (body.empty() || body.front() == '#') continue;
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(path.string() + " line " +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
            }
            const std::string key{trim(body.substr(0, eq))};
            const std::string value{trim(body.substr(eq + 1))};
            if (key.empty() || value.empty()) {
                throw ConfigError(path.string() + " line " +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
            }
            if (!entries_.emplace(key, value).second) {
                throw ConfigError(path.string() + " line " +
                                  std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
            }
        }
    }

    std::string take_string(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            throw ConfigError("missing config key: " + key);
        }
        used_.insert(key);
        return it->second;
    }

    double take_real(const std::string& key) {
        return to_real(key, take_string(key));
    }

    std::int64_t take_int(const std::string& key) {
        return to_int(key, take_string(key));
    }

    std::optional<double> take_real_optional(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        used_.insert(key);
        return to_real(key, it->second);
    }

    std::optional<std::int64_t> take_int_optional(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        used_.insert(key);
        return to_int(key, it->second);
    }

    void finish() const {
        for (const auto& [key, value] : entries_) {
            if (!used_.contains(key)) {
                throw ConfigError("config key '" + key +
                                  "' is unknown or does not apply to this "
                                  "model/hazard/boundary");
            }
        }
    }

private:
    double to_real(const std::string& key, const std::string& value) const {
        double v = 0.0;
        const auto [ptr, ec] =
            std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ConfigError("config key '" + key + "': cannot parse number '" +
                              value + "'");
        }
        return v;
    }

    std::int64_t to_int(const std::string& key, const std::string& value) const {
        std::int64_t v = 0;
        const auto [ptr, ec] =
            std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ConfigError("config key '" + key +
                              "': cannot parse integer '" + value + "'");
        }
        return v;
    }

    std::filesystem::path path_;
    std::map<std::string, std::string> entries_;
    std::set<std::string> used_;
};

}  // namespace

ConfigDocument parse_config_file(const std::filesystem::path& path) {
    KeyValues kv(path);
    ConfigDocument doc;

    const std::string model = kv.take_string("model");
    if (model == "gaussian_mean") {
        doc.detector.model.kind = ModelSpec::Kind::GaussianMean;
        doc.detector.model.mean_mu0 = kv.take_real("mean_mu0");
        doc.detector.model.mean_var0 = kv.take_real("mean_var0");
        doc.detector.model.obs_var = kv.take_real("obs_var");
    } else if (model == "gaussian_scale") {
        doc.detector.model.kind = ModelSpec::Kind::GaussianScale;
        doc.detector.model.gamma_a = kv.take_real("gamma_a");
        doc.detector.model.gamma_b = kv.take_real("gamma_b");
    } else if (model == "poisson") {
        doc.detector.model.kind = ModelSpec::Kind::Poisson;
        doc.detector.model.gamma_a = kv.take_real("gamma_a");
        doc.detector.model.gamma_b = kv.take_real("gamma_b");
    } else {
        throw ConfigError("config key 'model': unknown model '" + model +
                          "' (expected gaussian_mean, gaussian_scale, or "
                          "poisson)");
    }

    const std::string hazard = kv.take_string("hazard");
    if (hazard == "constant") {
        doc.detector.gap.kind = GapSpec::Kind::Geometric;
        doc.detector.gap.lambda = kv.take_real("hazard_lambda");
    } else if (hazard == "gap_table") {
        doc.detector.gap.kind = GapSpec::Kind::Table;
        std::filesystem::path table = kv.take_string("gap_table_path");
        if (table.is_relative()) {
            table = path.parent_path() / table;
        }
        doc.detector.gap.table_path = table;
    } else {
        throw ConfigError("config key 'hazard': unknown hazard '" + hazard +
                          "' (expected constant or gap_table)");
    }

    const std::string boundary = kv.take_string("boundary");
    if (boundary == "reset") {
        doc.detector.boundary = Boundary::reset();
    } else if (boundary == "survival") {
        doc.detector.boundary =
            Boundary::survival(kv.take_int_optional("survival_horizon"));
    } else {
        throw ConfigError("config key 'boundary': unknown boundary '" +
                          boundary + "' (expected reset or survival)");
    }

    doc.detector.truncation_threshold =
        kv.take_real_optional("truncation_threshold").value_or(0.0);
    doc.length = kv.take_int_optional("length");

    kv.finish();
    return doc;
}

std::shared_ptr<const ObservationModel> make_model(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelSpec::Kind::GaussianMean:
            return std::make_shared<GaussianMeanModel>(
                spec.mean_mu0, spec.mean_var0, spec.obs_var);
        case ModelSpec::Kind::GaussianScale:
            return std::make_shared<GaussianScaleModel>(spec.gamma_a,
                                                        spec.gamma_b);
        case ModelSpec::Kind::Poisson:
            return std::make_shared<PoissonRateModel>(spec.gamma_a,
                                                      spec.gamma_b);
    }
    throw ConfigError("unknown model kind");
}

GapDistribution make_gap(const GapSpec& spec) {
    switch (spec.kind) {
        case GapSpec::Kind::Geometric:
            return GapDistribution::geometric(spec.lambda);
        case GapSpec::Kind::Table:
            return GapDistribution::table_from_file(spec.table_path);
    }
    throw ConfigError("unknown gap kind");
}

Detector make_detector(const DetectorSpec& spec) {
    return Detector(make_model(spec.model), make_gap(spec.gap), spec.boundary,
                    spec.truncation_threshold);
}

}  // namespace bocpd
