#ifndef RISCFO_HARNESS_CONFIG_HPP
#define RISCFO_HARNESS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "riscfo/types.hpp"

namespace riscfo::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Analysis { MonteCarlo, Complexity };
enum class EstimatorMode { Baseline, Proposed, Both };
enum class SweepAxis { Elements, SnrDb };

struct EpsilonPolicy {
    enum class Kind { Fixed, Uniform };
    Kind kind = Kind::Uniform;
    std::vector<double> values;  ///< Fixed only: one curve per value

    static EpsilonPolicy fixed(std::vector<double> v) { return {Kind::Fixed, std::move(v)}; }
    static EpsilonPolicy uniform() { return {Kind::Uniform, {}}; }
};

/// One experiment; the grid is elements x training x epsilon x snr_db.
///
/// JSON field names match the member names. snr_db entries may be the string
/// "inf" for a noiseless link.
struct ExperimentConfig {
    Analysis analysis = Analysis::MonteCarlo;
    Index subcarriers = 256;           ///< N
    Index taps = 32;                   ///< L
    Index cp_length = 34;              ///< L_CP
    std::vector<Index> elements{16};   ///< M values
    std::vector<Index> training{4};    ///< N_z values
    /// Baseline pilot subcarriers N_p. 0 selects N for the baseline estimator
    /// and N_z L (matched usage) when both estimators run.
    Index pilot_subcarriers = 0;
    std::vector<double> snr_db{20.0};
    EpsilonPolicy epsilon = EpsilonPolicy::uniform();
    Index trials = 5000;
    std::uint64_t base_seed = 1;
    EstimatorMode estimator = EstimatorMode::Proposed;
    double pdp_decay = 1.0 / 3.0;
    Index zc_root = 1;
    SweepAxis x_axis = SweepAxis::SnrDb;
    unsigned workers = 0;              ///< 0: one per hardware thread
    std::string output;
    std::string pattern_file;          ///< optional reflection pattern CSV
};

/// Throws ConfigError on any violated invariant.
void validate(const ExperimentConfig& cfg);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 1 / 10^{snr/10}; 0 for +inf.
double noise_variance(double snr_db);

std::string to_string(EstimatorMode mode);
std::string to_string(SweepAxis axis);

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_CONFIG_HPP
