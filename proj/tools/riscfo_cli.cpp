// Command-line front end: simulate, recipe, closed-form, complexity, verify.
//
// Exit codes: 0 success, 1 verification or run failure, 2 configuration or
// usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "riscfo/harness/config.hpp"
#include "riscfo/harness/csv.hpp"
#include "riscfo/harness/monte_carlo.hpp"
#include "riscfo/harness/recipes.hpp"
#include "riscfo/harness/sweep.hpp"
#include "riscfo/harness/verify.hpp"
#include "riscfo/io.hpp"

namespace {

using namespace riscfo::harness;

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::optional<unsigned> workers;
    std::string out;
};

void apply(ExperimentConfig& cfg, const RunOverrides& o) {
    if (o.seed)
        cfg.base_seed = *o.seed;
    if (o.trials)
        cfg.trials = *o.trials;
    if (o.workers)
        cfg.workers = *o.workers;
    if (!o.out.empty())
        cfg.output = o.out;
    validate(cfg);
}

void write_points(const std::vector<CurvePoint>& points, const std::string& out) {
    if (out.empty() || out == "-") {
        write_csv(points, std::cout);
        return;
    }
    emit_csv(points, out);
    std::cerr << "wrote " << points.size() << " rows to " << out << "\n";
}

/// Config and CI convention next to the CSV, so a run can be repeated.
void write_metadata(const ExperimentConfig& cfg) {
    if (cfg.output.empty() || cfg.output == "-")
        return;
    const std::string path = cfg.output + ".meta.json";
    std::ofstream os(path);
    if (!os)
        throw riscfo::IoError(path, "cannot open for writing");
    nlohmann::json meta;
    meta["config"] = config_to_json(cfg);
    meta["ci95"] = "1.96 * standard error, normal approximation";
    meta["nmse"] = "nmse_* = sum ||H - H_hat||^2 / sum ||H||^2; nmse_*_avg = mean of per-trial ratios";
    os << meta.dump(2) << "\n";
}

void run_and_emit(const ExperimentConfig& cfg) {
    write_points(run_experiment(cfg), cfg.output);
    write_metadata(cfg);
}

void add_overrides(CLI::App* cmd, RunOverrides& o) {
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--trials", o.trials, "Trials per grid point");
    cmd->add_option("--workers", o.workers, "Worker threads (0: all cores)");
    cmd->add_option("--out", o.out, "Output CSV ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator for RIS-aided OFDM with joint CFO and channel estimation"};
    app.require_subcommand(1);

    std::string config_path;
    RunOverrides sim;
    auto* simulate = app.add_subcommand("simulate", "Run the experiment described by a JSON config");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    add_overrides(simulate, sim);

    std::string recipe_name;
    bool print_config = false;
    RunOverrides rec;
    auto* recipe_cmd = app.add_subcommand("recipe", "Run a figure preset");
    recipe_cmd->add_option("name", recipe_name, "fig2, fig3, fig4a or fig4b")->required();
    recipe_cmd->add_flag("--print-config", print_config, "Print the preset as JSON and exit");
    add_overrides(recipe_cmd, rec);

    std::string cf_spec, cf_out;
    auto* closed = app.add_subcommand("closed-form", "Evaluate the closed-form NMSE over a sweep");
    closed->add_option("--sweep", cf_spec, "e.g. M=0:1:100,eps=0.005|0.05,snr_db=20");
    closed->add_option("--out", cf_out, "Output CSV ('-' for stdout)");

    std::string cx_spec, cx_out;
    auto* complexity = app.add_subcommand("complexity", "Evaluate operation counts over a sweep");
    complexity->add_option("--sweep", cx_spec, "e.g. M=1:1:200,N=1024,L=102");
    complexity->add_option("--out", cx_out, "Output CSV ('-' for stdout)");

    std::string suite;
    VerifyOptions vopts;
    auto* verify_cmd = app.add_subcommand("verify", "Run an acceptance suite");
    verify_cmd->add_option("suite", suite,
                           "closed_form, exactness, monotonicity, comparison, complexity, "
                           "equivalence or all")
        ->required();
    verify_cmd->add_option("--trials", vopts.trials, "Monte Carlo trials per point");
    verify_cmd->add_option("--seed", vopts.seed, "Base seed");
    verify_cmd->add_option("--workers", vopts.workers, "Worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) {
            ExperimentConfig cfg = load_config(config_path);
            apply(cfg, sim);
            run_and_emit(cfg);
        } else if (*recipe_cmd) {
            ExperimentConfig cfg = recipe(recipe_name);
            apply(cfg, rec);
            if (print_config) {
                std::cout << config_to_json(cfg).dump(2) << "\n";
                return 0;
            }
            run_and_emit(cfg);
        } else if (*closed) {
            write_points(closed_form_sweep(parse_sweep(cf_spec)), cf_out);
        } else if (*complexity) {
            write_points(complexity_sweep(parse_sweep(cx_spec)), cx_out);
        } else if (*verify_cmd) {
            const auto results = verify(suite, vopts);
            for (const auto& r : results)
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << ": " << r.description
                          << "\n     " << r.detail << "\n";
            return all_passed(results) ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
