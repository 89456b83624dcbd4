#include "riscfo/channel_model.hpp"

#include <cmath>
#include <string>

#include "riscfo/numerics.hpp"

namespace riscfo {

PowerDelayProfile::PowerDelayProfile(RealVec powers) : power_(std::move(powers)) {
    require_param(power_.size() >= 1, "PowerDelayProfile: need at least one tap");
    require_param((power_.array() >= 0.0).all() && power_.allFinite(),
                  "PowerDelayProfile: tap powers must be finite and nonnegative");
    const double total = power_.sum();
    require_param(total > 0.0, "PowerDelayProfile: total power must be positive");
    power_ /= total;
}

PowerDelayProfile exponential_pdp(Index taps, double decay) {
    require_param(taps >= 1, "exponential_pdp: L must be >= 1");
    require_param(decay > 0.0 && std::isfinite(decay), "exponential_pdp: decay must be > 0");
    RealVec p(taps);
    for (Index l = 0; l < taps; ++l)
        p(l) = std::exp(-decay * static_cast<double>(l));
    return PowerDelayProfile(std::move(p));
}

ChannelSet::ChannelSet(ComplexMat cir, Index subcarriers)
    : cir_(std::move(cir)), cfr_(cir_to_cfr(cir_, subcarriers)) {
    require_param(all_finite(cir_), "ChannelSet: non-finite CIR entry");
}

ChannelSet sample_cir(const PowerDelayProfile& pdp, Index elements, Index subcarriers,
                      RandomStream& rng) {
    const Index taps = pdp.length();
    require_param(elements >= 0, "sample_cir: M must be >= 0");
    require_param(taps <= subcarriers, "sample_cir: L (" + std::to_string(taps) +
                                           ") exceeds N (" + std::to_string(subcarriers) + ")");
    ComplexMat g(taps, elements + 1);
    for (Index m = 0; m <= elements; ++m)
        for (Index l = 0; l < taps; ++l)
            g(l, m) = rng.complex_normal(pdp(l));
    return ChannelSet(std::move(g), subcarriers);
}

ComplexVec cir_to_cfr(const ComplexVec& cir, Index subcarriers) {
    require_dim(cir.size() <= subcarriers, "cir_to_cfr: L (" + std::to_string(cir.size()) +
                                               ") exceeds N (" + std::to_string(subcarriers) + ")");
    ComplexVec padded = ComplexVec::Zero(subcarriers);
    padded.head(cir.size()) = cir;
    return dft(padded);
}

ComplexMat cir_to_cfr(const ComplexMat& cir, Index subcarriers) {
    ComplexMat cfr(subcarriers, cir.cols());
    for (Index m = 0; m < cir.cols(); ++m)
        cfr.col(m) = cir_to_cfr(ComplexVec(cir.col(m)), subcarriers);
    return cfr;
}

ComplexVec aggregate_cfr(const ComplexMat& cfr, const ComplexVec& phi_k) {
    require_dim(cfr.cols() == phi_k.size(), "aggregate_cfr: H has " + std::to_string(cfr.cols()) +
                                                " paths but phi_k has " +
                                                std::to_string(phi_k.size()) + " entries");
    return cfr * phi_k;
}

ComplexVec aggregate_cir(const ComplexMat& cir, const ComplexVec& phi_k) {
    require_dim(cir.cols() == phi_k.size(), "aggregate_cir: G has " + std::to_string(cir.cols()) +
                                                " paths but phi_k has " +
                                                std::to_string(phi_k.size()) + " entries");
    return cir * phi_k;
}

}  // namespace riscfo
