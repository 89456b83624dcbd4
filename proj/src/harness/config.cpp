#include "riscfo/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "riscfo/frame.hpp"

namespace riscfo::harness {

using nlohmann::json;

std::string to_string(EstimatorMode mode) {
    switch (mode) {
    case EstimatorMode::Baseline: return "baseline";
    case EstimatorMode::Proposed: return "proposed";
    case EstimatorMode::Both: return "both";
    }
    return "?";
}

std::string to_string(SweepAxis axis) { return axis == SweepAxis::Elements ? "M" : "snr_db"; }

double noise_variance(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0)
        return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

void validate(const ExperimentConfig& cfg) {
    auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (cfg.analysis == Analysis::MonteCarlo && cfg.trials < 1)
        fail("trials must be >= 1");
    if (cfg.elements.empty() || cfg.training.empty() || cfg.snr_db.empty())
        fail("M, N_z and snr_db lists must be nonempty");
    if (cfg.epsilon.kind == EpsilonPolicy::Kind::Fixed && cfg.epsilon.values.empty())
        fail("fixed epsilon policy needs at least one value");
    for (double e : cfg.epsilon.values)
        if (!(e > -0.5 && e <= 0.5))
            fail("epsilon " + std::to_string(e) + " outside (-0.5, 0.5]");
    for (double s : cfg.snr_db)
        if (std::isnan(s) || (std::isinf(s) && s < 0))
            fail("snr_db entries must be finite or +inf");
    if (!(cfg.pdp_decay > 0))
        fail("pdp_decay must be > 0");
    if (cfg.zc_root < 1 || std::gcd(cfg.zc_root, cfg.taps) != 1)
        fail("zc_root must be >= 1 and coprime with L");
    if (cfg.trials > std::numeric_limits<std::uint32_t>::max())
        fail("too many trials");
    if (cfg.analysis == Analysis::Complexity)
        return;
    for (Index m : cfg.elements)
        for (Index nz : cfg.training) {
            try {
                FrameGeometry(cfg.subcarriers, cfg.taps, cfg.cp_length, m, nz);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
    if (cfg.pilot_subcarriers != 0) {
        const Index np = cfg.pilot_subcarriers;
        if (np < cfg.taps || np > cfg.subcarriers || cfg.subcarriers % np != 0)
            fail("pilot_subcarriers must divide N and be >= L");
    }
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key))
        out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("config: top level must be a JSON object");
    ExperimentConfig cfg;
    try {
        if (j.contains("analysis")) {
            const auto a = j.at("analysis").get<std::string>();
            if (a == "monte_carlo")
                cfg.analysis = Analysis::MonteCarlo;
            else if (a == "complexity")
                cfg.analysis = Analysis::Complexity;
            else
                throw ConfigError("config: unknown analysis '" + a + "'");
        }
        read(j, "N", cfg.subcarriers);
        read(j, "L", cfg.taps);
        read(j, "L_CP", cfg.cp_length);
        read(j, "M", cfg.elements);
        read(j, "N_z", cfg.training);
        read(j, "N_p", cfg.pilot_subcarriers);
        if (j.contains("snr_db")) {
            cfg.snr_db.clear();
            for (const auto& v : j.at("snr_db")) {
                if (v.is_string() && v.get<std::string>() == "inf")
                    cfg.snr_db.push_back(std::numeric_limits<double>::infinity());
                else
                    cfg.snr_db.push_back(v.get<double>());
            }
        }
        if (j.contains("epsilon_policy")) {
            const json& p = j.at("epsilon_policy");
            const auto kind = p.at("kind").get<std::string>();
            if (kind == "fixed")
                cfg.epsilon = EpsilonPolicy::fixed(p.at("values").get<std::vector<double>>());
            else if (kind == "uniform")
                cfg.epsilon = EpsilonPolicy::uniform();
            else
                throw ConfigError("config: unknown epsilon_policy kind '" + kind + "'");
        }
        read(j, "trials", cfg.trials);
        read(j, "base_seed", cfg.base_seed);
        if (j.contains("estimator")) {
            const auto e = j.at("estimator").get<std::string>();
            if (e == "baseline")
                cfg.estimator = EstimatorMode::Baseline;
            else if (e == "proposed")
                cfg.estimator = EstimatorMode::Proposed;
            else if (e == "both")
                cfg.estimator = EstimatorMode::Both;
            else
                throw ConfigError("config: unknown estimator '" + e + "'");
        }
        read(j, "pdp_decay", cfg.pdp_decay);
        read(j, "zc_root", cfg.zc_root);
        if (j.contains("x_axis")) {
            const auto x = j.at("x_axis").get<std::string>();
            if (x == "M")
                cfg.x_axis = SweepAxis::Elements;
            else if (x == "snr_db")
                cfg.x_axis = SweepAxis::SnrDb;
            else
                throw ConfigError("config: unknown x_axis '" + x + "'");
        }
        read(j, "workers", cfg.workers);
        read(j, "output", cfg.output);
        read(j, "pattern_file", cfg.pattern_file);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["analysis"] = cfg.analysis == Analysis::MonteCarlo ? "monte_carlo" : "complexity";
    j["N"] = cfg.subcarriers;
    j["L"] = cfg.taps;
    j["L_CP"] = cfg.cp_length;
    j["M"] = cfg.elements;
    j["N_z"] = cfg.training;
    j["N_p"] = cfg.pilot_subcarriers;
    json snr = json::array();
    for (double s : cfg.snr_db)
        if (std::isinf(s))
            snr.push_back("inf");
        else
            snr.push_back(s);
    j["snr_db"] = snr;
    if (cfg.epsilon.kind == EpsilonPolicy::Kind::Fixed)
        j["epsilon_policy"] = {{"kind", "fixed"}, {"values", cfg.epsilon.values}};
    else
        j["epsilon_policy"] = {{"kind", "uniform"}};
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["estimator"] = to_string(cfg.estimator);
    j["pdp_decay"] = cfg.pdp_decay;
    j["zc_root"] = cfg.zc_root;
    j["x_axis"] = to_string(cfg.x_axis);
    j["workers"] = cfg.workers;
    if (!cfg.output.empty())
        j["output"] = cfg.output;
    if (!cfg.pattern_file.empty())
        j["pattern_file"] = cfg.pattern_file;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace riscfo::harness
