#ifndef RISCFO_ESTIMATORS_HPP
#define RISCFO_ESTIMATORS_HPP

// Channel and CFO estimators. Every function here consumes an Observation
// (received samples only); ground truth lives in ReceivedFrame and never
// reaches these signatures.

#include <vector>

#include "riscfo/analysis.hpp"
#include "riscfo/frame.hpp"
#include "riscfo/link.hpp"
#include "riscfo/ris_pattern.hpp"
#include "riscfo/types.hpp"

namespace riscfo {

class ZeroPilotError : public EstimationError {
public:
    explicit ZeroPilotError(Index subcarrier)
        : EstimationError("zero pilot symbol on subcarrier " + std::to_string(subcarrier)),
          subcarrier_(subcarrier) {}
    Index subcarrier() const noexcept { return subcarrier_; }

private:
    Index subcarrier_;
};

struct CfrEstimate {
    ComplexMat cfr;  ///< N x (M+1)
    bool scaled_unitary_pattern = true;
};

struct CirEstimate {
    ComplexMat cir;  ///< L x (M+1)
    bool scaled_unitary_pattern = true;

    /// Frequency-domain view of the estimate.
    ComplexMat cfr(Index subcarriers) const;
};

struct CfoEstimate {
    double epsilon = 0.0;
    Complex correlation{};  ///< averaged lag-L correlation R
    Index sample_count = 0; ///< ((N_z - 2) L + 1)(M + 1)
};

struct JointEstimate {
    CfoEstimate cfo;
    CirEstimate cir;
    OpCount ops;
};

// ---- baseline frequency-domain estimator ----------------------------------

/// Least-squares CFR of one block from the pilot subcarriers, truncated to L
/// taps and re-expanded to N subcarriers. An empty `pilots` list means every
/// subcarrier; otherwise the list must be a uniform comb starting at 0.
ComplexVec baseline_cfr_block(const ComplexVec& y_k, const ComplexVec& s_k, Index taps,
                              const std::vector<Index>& pilots = {});

/// Stack the per-block estimates and undo the reflection pattern.
CfrEstimate baseline_cfr_full(const Observation& obs, const PilotFrame& frame,
                              const ReflectionPattern& pattern, Index taps);

// ---- proposed time-domain estimator ---------------------------------------

/// Lag-L correlation CFO estimate over t in [L-1, (N_z-1)L-1] and all blocks.
CfoEstimate cfo_estimate(const Observation& obs, const FrameGeometry& geom,
                         OpCount* ops = nullptr);

/// r~_k(u) = e^{-j 2 pi eps_hat (L_P k + u) / N} r_k(u).
Observation cfo_compensate(const Observation& obs, double epsilon_hat, Index block_length);

/// Least-squares CIR of one block: average training subsequences 2..N_z and
/// solve the L x L circulant system built from z.
ComplexVec cir_estimate_block(const ComplexVec& r_tilde_k, const ComplexVec& training,
                              const FrameGeometry& geom);

/// Per-block CIR estimates stacked and multiplied by the inverse pattern.
CirEstimate cir_estimate_full(const Observation& compensated, const PilotFrame& frame,
                              const ReflectionPattern& pattern, const FrameGeometry& geom);

/// CFO estimate, compensation and CIR estimate from the N_z L training
/// samples of each block. Samples past the training window are never read.
JointEstimate joint_estimate(const Observation& obs, const PilotFrame& frame,
                             const ReflectionPattern& pattern, const FrameGeometry& geom);

}  // namespace riscfo

#endif  // RISCFO_ESTIMATORS_HPP
