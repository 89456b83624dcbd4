#ifndef RISCFO_CHANNEL_MODEL_HPP
#define RISCFO_CHANNEL_MODEL_HPP

#include "riscfo/random.hpp"
#include "riscfo/types.hpp"

namespace riscfo {

/// Per-tap average power of the L-tap channel, normalized to unit sum.
class PowerDelayProfile {
public:
    /// Normalizes `powers`; throws ParameterError on empty, negative or all-zero input.
    explicit PowerDelayProfile(RealVec powers);

    Index length() const noexcept { return power_.size(); }
    double operator()(Index l) const { return power_(l); }
    const RealVec& powers() const noexcept { return power_; }

private:
    RealVec power_;
};

/// p(l) proportional to e^{-decay * l}, l = 0..L-1.
PowerDelayProfile exponential_pdp(Index taps, double decay);

/// Direct path (column 0) and M reflected paths, in both CIR and CFR form.
///
/// Column m of cfr() is the unitary N-point DFT of column m of cir() padded
/// with zeros, so ||h_m|| == ||g_m||.
class ChannelSet {
public:
    ChannelSet(ComplexMat cir, Index subcarriers);

    const ComplexMat& cir() const noexcept { return cir_; }
    const ComplexMat& cfr() const noexcept { return cfr_; }
    Index subcarriers() const noexcept { return cfr_.rows(); }
    Index taps() const noexcept { return cir_.rows(); }
    Index elements() const noexcept { return cir_.cols() - 1; }

private:
    ComplexMat cir_;
    ComplexMat cfr_;
};

/// Independent CN(0, p(l)) taps for all M+1 paths, sharing one profile.
ChannelSet sample_cir(const PowerDelayProfile& pdp, Index elements, Index subcarriers,
                      RandomStream& rng);

/// Unitary N-point DFT of the CIR zero-padded to N.
ComplexVec cir_to_cfr(const ComplexVec& cir, Index subcarriers);

/// Apply cir_to_cfr to every column.
ComplexMat cir_to_cfr(const ComplexMat& cir, Index subcarriers);

/// Overall CFR seen under reflection vector phi_k: H * phi_k.
ComplexVec aggregate_cfr(const ComplexMat& cfr, const ComplexVec& phi_k);

/// Overall CIR seen under reflection vector phi_k: G * phi_k.
ComplexVec aggregate_cir(const ComplexMat& cir, const ComplexVec& phi_k);

}  // namespace riscfo

#endif  // RISCFO_CHANNEL_MODEL_HPP
