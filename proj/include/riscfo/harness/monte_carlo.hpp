#ifndef RISCFO_HARNESS_MONTE_CARLO_HPP
#define RISCFO_HARNESS_MONTE_CARLO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "riscfo/harness/config.hpp"

namespace riscfo::harness {

/// One aggregated metric at one x position. `metric` carries the metric name
/// followed by the non-x grid coordinates, e.g. "nmse_baseline/eps=0.01/snr_db=20/N_z=4".
struct CurvePoint {
    double x = 0;
    std::string metric;
    double mean = 0;
    double ci95 = 0;  ///< 1.96 x standard error (normal approximation)
    Index trials = 0;
};

/// Raised when a trial throws; names the trial's seed so it can be replayed.
class TrialError : public std::runtime_error {
public:
    TrialError(const std::string& what, std::uint64_t seed)
        : std::runtime_error(what), seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Per-trial raw numbers. Energies are kept unnormalized so ratios of means
/// can be formed at aggregation time.
struct TrialRecord {
    double epsilon = 0;
    double epsilon_hat = 0;
    double proposed_error = 0;
    double proposed_reference = 0;
    double baseline_error = 0;
    double baseline_reference = 0;
};

struct GridPoint {
    Index elements;
    Index training;
    double epsilon;  ///< NaN under the uniform policy
    double snr_db;
};

/// Cartesian grid in the fixed order elements, training, epsilon, snr_db.
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

/// One seeded trial at one grid point.
TrialRecord run_trial(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed);

/// All trials of every grid point, aggregated into curve points.
///
/// Metrics: mse_cfo, nmse_proposed, nmse_proposed_avg, nmse_baseline,
/// nmse_baseline_avg (as applicable to the estimator mode), plus
/// nmse_closed_form for baseline runs under a fixed epsilon. "nmse_*" is
/// E||H - H_hat||^2 / E||H||^2; "nmse_*_avg" is E{||H - H_hat||^2 / ||H||^2}.
/// Output is identical for any worker count.
std::vector<CurvePoint> run_monte_carlo(const ExperimentConfig& cfg);

/// Analytic complexity curves over cfg.elements (x = M).
std::vector<CurvePoint> run_complexity(const ExperimentConfig& cfg);

/// Dispatch on cfg.analysis.
std::vector<CurvePoint> run_experiment(const ExperimentConfig& cfg);

/// Look up one point by exact metric label and x; throws std::out_of_range.
const CurvePoint& find_point(const std::vector<CurvePoint>& points, const std::string& metric,
                             double x);

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_MONTE_CARLO_HPP
