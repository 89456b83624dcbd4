#ifndef RISCFO_HARNESS_VERIFY_HPP
#define RISCFO_HARNESS_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "riscfo/estimators.hpp"
#include "riscfo/frame.hpp"
#include "riscfo/link.hpp"
#include "riscfo/ris_pattern.hpp"

namespace riscfo::harness {

struct CheckResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    Index trials = 5000;        ///< Monte Carlo trials per grid point
    unsigned workers = 0;       ///< 0: one per hardware thread
    std::uint64_t seed = 20231;
};

/// The stages of the proposed receiver that the exactness suite drives.
/// Each stage can be swapped to check that the suite notices a broken one.
struct ExactnessPipeline {
    std::function<ReflectionPattern(Index elements)> pattern;
    std::function<Observation(const Observation&, double epsilon_hat, Index block_length)>
        compensate;
    std::function<ComplexVec(const ComplexVec& r_tilde_k, const ComplexVec& training,
                             const FrameGeometry& geom)>
        cir_block;

    /// The library's own stages.
    static ExactnessPipeline library();
};

/// Baseline Monte Carlo NMSE against the closed form, the noise-only floor at
/// zero CFO, and large-M saturation / turning-point ordering.
std::vector<CheckResult> verify_closed_form(const VerifyOptions& opts);

/// Noiseless CFO and end-to-end CIR recovery.
std::vector<CheckResult> verify_exactness(const VerifyOptions& opts,
                                          const ExactnessPipeline& pipeline =
                                              ExactnessPipeline::library());

/// CFO MSE ordering over M, N and N_z at 10 dB; CIR NMSE ordering over N_z.
std::vector<CheckResult> verify_monotonicity(const VerifyOptions& opts);

/// Proposed vs baseline NMSE with matched pilot usage at 20 dB.
std::vector<CheckResult> verify_comparison(const VerifyOptions& opts);

/// Analytic ratio at M=100 and measured operation-count scaling.
std::vector<CheckResult> verify_complexity(const VerifyOptions& opts);

/// Time-domain link against the matrix frequency-domain form.
std::vector<CheckResult> verify_equivalence(const VerifyOptions& opts);

/// Suite by name: closed_form, exactness, monotonicity, comparison,
/// complexity, equivalence or all. Throws ConfigError for other names.
std::vector<CheckResult> verify(const std::string& suite, const VerifyOptions& opts);

std::vector<std::string> suite_names();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace riscfo::harness

#endif  // RISCFO_HARNESS_VERIFY_HPP
