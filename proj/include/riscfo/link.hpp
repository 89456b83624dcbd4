#ifndef RISCFO_LINK_HPP
#define RISCFO_LINK_HPP

#include "riscfo/channel_model.hpp"
#include "riscfo/frame.hpp"
#include "riscfo/random.hpp"
#include "riscfo/ris_pattern.hpp"
#include "riscfo/types.hpp"

namespace riscfo {

/// What the receiver sees: one column per pilot block, after CP removal.
/// `freq` is the unitary DFT of `time`, column by column.
struct Observation {
    ComplexMat time;  ///< r_k(u), N x (M+1)
    ComplexMat freq;  ///< y_k(n), N x (M+1)

    Index subcarriers() const noexcept { return time.rows(); }
    Index blocks() const noexcept { return time.cols(); }
};

/// Observation plus the hidden ground truth used only for scoring.
struct ReceivedFrame {
    Observation observed;
    double epsilon_true = 0.0;
    double sigma2 = 0.0;
};

/// Build an observation from time-domain columns (frequency form by DFT).
Observation observe(ComplexMat time);

/// Pass `frame` through the RIS-aided multipath channel with normalized CFO
/// `epsilon` in (-0.5, 0.5] and complex AWGN of per-sample variance `sigma2`.
///
/// Per block k: r_k(u) = e^{j 2 pi eps (L_P k + u) / N} (x_k (*) g_phi,k)(u) + v_k(u),
/// with (*) the N-point circular convolution that CP removal leaves behind.
ReceivedFrame transmit_frame(const PilotFrame& frame, const ChannelSet& channel,
                             const ReflectionPattern& pattern, double epsilon, double sigma2,
                             RandomStream& rng);

/// y_k = dft(r_k) for every block.
ComplexMat freq_rx(const Observation& obs);

/// N-point circular convolution of x with a length-L (L <= N) impulse response.
ComplexVec circular_convolve(const ComplexVec& x, const ComplexVec& taps);

}  // namespace riscfo

#endif  // RISCFO_LINK_HPP
