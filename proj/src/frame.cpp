#include "riscfo/frame.hpp"

#include <string>

#include "riscfo/numerics.hpp"

namespace riscfo {

FrameGeometry::FrameGeometry(Index subcarriers, Index channel_taps, Index cp_length,
                             Index elements, Index training_subsequences)
    : n_(subcarriers), l_(channel_taps), l_cp_(cp_length), m_(elements),
      n_z_(training_subsequences) {
    require_param(l_ >= 1, "FrameGeometry: L must be >= 1");
    require_param(n_ >= 2, "FrameGeometry: N must be >= 2");
    require_param(n_ % l_ == 0, "FrameGeometry: N (" + std::to_string(n_) +
                                    ") must be a multiple of L (" + std::to_string(l_) + ")");
    require_param(n_ / l_ >= 2, "FrameGeometry: N/L must be >= 2");
    require_param(n_z_ >= 2, "FrameGeometry: N_z must be >= 2 (one correlation lag)");
    require_param(n_z_ <= n_ / l_, "FrameGeometry: N_z (" + std::to_string(n_z_) +
                                       ") exceeds N/L (" + std::to_string(n_ / l_) + ")");
    require_param(l_cp_ >= l_, "FrameGeometry: L_CP must be >= L");
    require_param(l_cp_ <= n_, "FrameGeometry: L_CP must be <= N");
    require_param(m_ >= 0, "FrameGeometry: M must be >= 0");
}

const ComplexVec& PilotFrame::training_sequence(Index k) const {
    if (style_ != FrameStyle::Periodic)
        throw std::logic_error("PilotFrame: baseline frames have no training sequence");
    return training_.at(static_cast<std::size_t>(k));
}

PilotFrame build_baseline_pilots(const FrameGeometry& geom, RandomStream& rng, Index pilot_count) {
    const Index n = geom.subcarriers();
    if (pilot_count == 0)
        pilot_count = n;
    require_param(pilot_count >= geom.channel_taps() && pilot_count <= n && n % pilot_count == 0,
                  "build_baseline_pilots: pilot count " + std::to_string(pilot_count) +
                      " must divide N and be >= L");

    PilotFrame frame;
    frame.style_ = FrameStyle::Baseline;
    frame.cp_len_ = geom.cp_length();
    const Index spacing = n / pilot_count;
    for (Index i = 0; i < pilot_count; ++i)
        frame.pilots_.push_back(i * spacing);

    frame.blocks_.reserve(static_cast<std::size_t>(geom.blocks()));
    for (Index k = 0; k < geom.blocks(); ++k) {
        ComplexVec s(n);
        for (Index i = 0; i < n; ++i)
            s(i) = rng.qpsk();
        ComplexVec x = idft(s);
        frame.blocks_.push_back({std::move(s), std::move(x)});
    }
    return frame;
}

PilotFrame build_baseline_pilots(const FrameGeometry& geom, const ComplexVec& comb_symbols,
                                 RandomStream& data_rng) {
    const Index n = geom.subcarriers();
    const Index count = comb_symbols.size();
    require_param(count >= geom.channel_taps() && count <= n && n % count == 0,
                  "build_baseline_pilots: pilot count " + std::to_string(count) +
                      " must divide N and be >= L");
    for (Index i = 0; i < count; ++i)
        if (comb_symbols(i) == Complex(0))
            throw PilotRejectedError("build_baseline_pilots: zero pilot symbol at comb index " +
                                         std::to_string(i),
                                     i);

    PilotFrame frame;
    frame.style_ = FrameStyle::Baseline;
    frame.cp_len_ = geom.cp_length();
    const Index spacing = n / count;
    for (Index i = 0; i < count; ++i)
        frame.pilots_.push_back(i * spacing);

    frame.blocks_.reserve(static_cast<std::size_t>(geom.blocks()));
    for (Index k = 0; k < geom.blocks(); ++k) {
        ComplexVec s(n);
        for (Index i = 0; i < n; ++i)
            s(i) = i % spacing == 0 ? comb_symbols(i / spacing) : data_rng.qpsk();
        ComplexVec x = idft(s);
        frame.blocks_.push_back({std::move(s), std::move(x)});
    }
    return frame;
}

PilotFrame build_periodic_pilots(const FrameGeometry& geom, const ComplexVec& training,
                                 RandomStream& data_rng) {
    return build_periodic_pilots(
        geom, std::vector<ComplexVec>(static_cast<std::size_t>(geom.blocks()), training), data_rng);
}

PilotFrame build_periodic_pilots(const FrameGeometry& geom,
                                 const std::vector<ComplexVec>& training_per_block,
                                 RandomStream& data_rng) {
    const Index n = geom.subcarriers();
    const Index l = geom.channel_taps();
    require_dim(static_cast<Index>(training_per_block.size()) == geom.blocks(),
                "build_periodic_pilots: need one training sequence per block");

    PilotFrame frame;
    frame.style_ = FrameStyle::Periodic;
    frame.cp_len_ = geom.cp_length();
    frame.blocks_.reserve(training_per_block.size());
    for (const ComplexVec& z : training_per_block) {
        require_dim(z.size() == l, "build_periodic_pilots: training length " +
                                       std::to_string(z.size()) + " != L " + std::to_string(l));
        const ComplexVec eig = circulant_eigenvalues(z);
        const double largest = eig.cwiseAbs().maxCoeff();
        for (Index i = 0; i < l; ++i)
            if (!(std::abs(eig(i)) > kCirculantTolerance * largest))
                throw PilotRejectedError("build_periodic_pilots: training circulant is singular "
                                         "at eigenvalue " + std::to_string(i),
                                         i);

        ComplexVec x(n);
        for (Index rep = 0; rep < geom.training(); ++rep)
            x.segment(rep * l, l) = z;
        for (Index u = geom.training_length(); u < n; ++u)
            x(u) = data_rng.qpsk();
        ComplexVec s = dft(x);
        frame.blocks_.push_back({std::move(s), std::move(x)});
        frame.training_.push_back(z);
    }
    return frame;
}

ComplexVec add_cp(const ComplexVec& samples, Index cp_length) {
    const Index n = samples.size();
    require_param(cp_length >= 0 && cp_length <= n,
                  "add_cp: L_CP (" + std::to_string(cp_length) + ") must be in [0, N]");
    ComplexVec out(n + cp_length);
    out.head(cp_length) = samples.tail(cp_length);
    out.tail(n) = samples;
    return out;
}

ComplexVec remove_cp(const ComplexVec& samples, Index cp_length) {
    require_param(cp_length >= 0 && cp_length <= samples.size(),
                  "remove_cp: L_CP (" + std::to_string(cp_length) + ") exceeds input length");
    return samples.tail(samples.size() - cp_length);
}

}  // namespace riscfo
