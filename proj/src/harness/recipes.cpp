#include "riscfo/harness/recipes.hpp"

namespace riscfo::harness {

namespace {

ExperimentConfig fig4_common() {
    ExperimentConfig cfg;
    cfg.analysis = Analysis::MonteCarlo;
    cfg.subcarriers = 256;
    cfg.taps = 32;
    cfg.cp_length = 34;
    cfg.elements = {16, 64};
    cfg.training = {4};
    cfg.snr_db = {0, 5, 10, 15, 20, 25, 30};
    cfg.epsilon = EpsilonPolicy::uniform();
    cfg.trials = 5000;
    cfg.x_axis = SweepAxis::SnrDb;
    return cfg;
}

}  // namespace

std::vector<std::string> recipe_names() { return {"fig2", "fig3", "fig4a", "fig4b"}; }

ExperimentConfig recipe(const std::string& name) {
    if (name == "fig2") {
        ExperimentConfig cfg;
        cfg.analysis = Analysis::MonteCarlo;
        cfg.subcarriers = 64;
        cfg.taps = 8;
        cfg.cp_length = 10;
        cfg.elements = {1, 2, 4, 8, 16, 32, 64};
        cfg.training = {2};
        cfg.snr_db = {10, 20};
        cfg.epsilon = EpsilonPolicy::fixed({0.0, 0.005, 0.01, 0.05});
        cfg.trials = 5000;
        cfg.estimator = EstimatorMode::Baseline;
        cfg.x_axis = SweepAxis::Elements;
        return cfg;
    }
    if (name == "fig3") {
        ExperimentConfig cfg;
        cfg.analysis = Analysis::Complexity;
        cfg.subcarriers = 1024;
        cfg.taps = 102;
        cfg.cp_length = 102;
        cfg.pilot_subcarriers = 1024;
        cfg.training = {4};
        cfg.elements = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
        cfg.trials = 1;
        cfg.x_axis = SweepAxis::Elements;
        return cfg;
    }
    if (name == "fig4a") {
        ExperimentConfig cfg = fig4_common();
        cfg.estimator = EstimatorMode::Proposed;
        return cfg;
    }
    if (name == "fig4b") {
        ExperimentConfig cfg = fig4_common();
        cfg.estimator = EstimatorMode::Both;
        return cfg;
    }
    throw ConfigError("unknown recipe '" + name + "' (expected fig2, fig3, fig4a or fig4b)");
}

}  // namespace riscfo::harness
