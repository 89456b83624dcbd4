#include "riscfo/link.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "riscfo/numerics.hpp"

namespace riscfo {

Observation observe(ComplexMat time) {
    Observation obs;
    obs.freq.resize(time.rows(), time.cols());
    for (Index k = 0; k < time.cols(); ++k)
        obs.freq.col(k) = dft(time.col(k));
    obs.time = std::move(time);
    return obs;
}

ComplexMat freq_rx(const Observation& obs) {
    ComplexMat y(obs.time.rows(), obs.time.cols());
    for (Index k = 0; k < obs.time.cols(); ++k)
        y.col(k) = dft(obs.time.col(k));
    return y;
}

ComplexVec circular_convolve(const ComplexVec& x, const ComplexVec& taps) {
    const Index n = x.size();
    require_dim(taps.size() <= n, "circular_convolve: more taps than samples");
    ComplexVec out = ComplexVec::Zero(n);
    for (Index l = 0; l < taps.size(); ++l) {
        const Complex g = taps(l);
        for (Index u = 0; u < n; ++u)
            out(u) += x(((u - l) % n + n) % n) * g;
    }
    return out;
}

ReceivedFrame transmit_frame(const PilotFrame& frame, const ChannelSet& channel,
                             const ReflectionPattern& pattern, double epsilon, double sigma2,
                             RandomStream& rng) {
    require_param(epsilon > -0.5 && epsilon <= 0.5,
                  "transmit_frame: epsilon " + std::to_string(epsilon) + " outside (-0.5, 0.5]");
    require_param(sigma2 >= 0.0 && std::isfinite(sigma2), "transmit_frame: sigma2 must be >= 0");
    require_dim(frame.blocks() == pattern.blocks(),
                "transmit_frame: frame has " + std::to_string(frame.blocks()) +
                    " blocks but pattern has " + std::to_string(pattern.blocks()));
    require_dim(channel.elements() == pattern.elements(),
                "transmit_frame: channel and pattern disagree on M");
    require_param(frame.cp_length() >= channel.taps(), "transmit_frame: L_CP must be >= L");

    const Index n = channel.subcarriers();
    const Index blocks = frame.blocks();
    const double block_len = static_cast<double>(frame.cp_length() + n);
    const double step = 2.0 * std::numbers::pi * epsilon / static_cast<double>(n);

    ComplexMat r(n, blocks);
    for (Index k = 0; k < blocks; ++k) {
        const ComplexVec& x = frame.block(k).samples;
        require_dim(x.size() == n, "transmit_frame: block length != N");
        const ComplexVec taps = aggregate_cir(channel.cir(), pattern.column(k));
        ComplexVec rk = circular_convolve(x, taps);
        for (Index u = 0; u < n; ++u)
            rk(u) *= std::polar(1.0, step * (block_len * static_cast<double>(k) +
                                             static_cast<double>(u)));
        if (sigma2 > 0.0)
            for (Index u = 0; u < n; ++u)
                rk(u) += rng.complex_normal(sigma2);
        r.col(k) = rk;
    }
    return {observe(std::move(r)), epsilon, sigma2};
}

}  // namespace riscfo
