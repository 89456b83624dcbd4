#include "riscfo/estimators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "riscfo/channel_model.hpp"
#include "riscfo/numerics.hpp"

namespace riscfo {

ComplexMat CirEstimate::cfr(Index subcarriers) const { return cir_to_cfr(cir, subcarriers); }

namespace {

void require_periodic(const PilotFrame& frame, const FrameGeometry& geom, const char* who) {
    if (frame.style() != FrameStyle::Periodic)
        throw std::invalid_argument(std::string(who) + ": needs a periodic pilot frame");
    require_dim(frame.blocks() == geom.blocks(), std::string(who) + ": frame/geometry block count");
}

/// Correlation over the training window only: rows [0, N_z L).
CfoEstimate cfo_from_training(const ComplexMat& training, const FrameGeometry& geom,
                              Index subcarriers, OpCount* ops) {
    const Index l = geom.channel_taps();
    const Index first = l - 1;
    const Index last = (geom.training() - 1) * l - 1;  // inclusive
    Complex sum{0.0, 0.0};
    for (Index k = 0; k < training.cols(); ++k)
        for (Index t = first; t <= last; ++t)
            sum += training(t, k) * std::conj(training(t + l, k));
    const Index count = (last - first + 1) * training.cols();
    if (ops)
        ops->cfo_correlation += static_cast<std::uint64_t>(count);
    if (sum == Complex{0.0, 0.0})
        throw EstimationError("cfo_estimate: correlation is exactly zero");

    CfoEstimate est;
    est.correlation = sum / static_cast<double>(count);
    est.sample_count = count;
    est.epsilon = -static_cast<double>(subcarriers) * std::arg(est.correlation) /
                  (2.0 * std::numbers::pi * static_cast<double>(l));
    return est;
}

/// Average of subsequences 2..N_z of one compensated block.
ComplexVec average_training(const Eigen::Ref<const ComplexVec>& r_tilde, const FrameGeometry& geom) {
    const Index l = geom.channel_taps();
    ComplexVec avg = ComplexVec::Zero(l);
    for (Index ns = 2; ns <= geom.training(); ++ns)
        avg += r_tilde.segment((ns - 1) * l, l);
    return avg / static_cast<double>(geom.training() - 1);
}

}  // namespace

ComplexVec baseline_cfr_block(const ComplexVec& y_k, const ComplexVec& s_k, Index taps,
                              const std::vector<Index>& pilots) {
    const Index n = y_k.size();
    require_dim(s_k.size() == n, "baseline_cfr_block: y_k and s_k lengths differ");
    require_param(taps >= 1 && taps <= n, "baseline_cfr_block: L must be in [1, N]");

    ComplexVec taps_hat;
    if (pilots.empty()) {
        ComplexVec ratio(n);
        for (Index i = 0; i < n; ++i) {
            if (s_k(i) == Complex{0.0, 0.0})
                throw ZeroPilotError(i);
            ratio(i) = y_k(i) / s_k(i);
        }
        // g(l) = (1/N) sum_n (y/s)(n) e^{j 2 pi n l / N}
        taps_hat = idft(ratio).head(taps) / std::sqrt(static_cast<double>(n));
    } else {
        const Index np = static_cast<Index>(pilots.size());
        require_param(np >= taps && n % np == 0, "baseline_cfr_block: pilot comb must divide N and hold >= L pilots");
        const Index spacing = n / np;
        ComplexVec ratio(np);
        for (Index i = 0; i < np; ++i) {
            const Index sc = pilots[static_cast<std::size_t>(i)];
            require_param(sc == i * spacing, "baseline_cfr_block: pilots must form a uniform comb from 0");
            if (s_k(sc) == Complex{0.0, 0.0})
                throw ZeroPilotError(sc);
            ratio(i) = y_k(sc) / s_k(sc);
        }
        // Comb columns of the partial DFT are orthogonal with norm^2 N_p.
        taps_hat = idft(ratio).head(taps) / std::sqrt(static_cast<double>(np));
    }
    return cir_to_cfr(taps_hat, n);
}

CfrEstimate baseline_cfr_full(const Observation& obs, const PilotFrame& frame,
                              const ReflectionPattern& pattern, Index taps) {
    require_dim(obs.blocks() == frame.blocks() && frame.blocks() == pattern.blocks(),
                "baseline_cfr_full: observation, frame and pattern block counts differ");
    const Index n = obs.subcarriers();
    ComplexMat stacked(n, obs.blocks());
    for (Index k = 0; k < obs.blocks(); ++k)
        stacked.col(k) = baseline_cfr_block(obs.freq.col(k), frame.block(k).symbols, taps,
                                            frame.pilot_subcarriers());
    const PatternInverse inv = inverse_pattern(pattern);
    return {stacked * inv.matrix, inv.scaled_unitary};
}

CfoEstimate cfo_estimate(const Observation& obs, const FrameGeometry& geom, OpCount* ops) {
    require_dim(obs.subcarriers() == geom.subcarriers() && obs.blocks() == geom.blocks(),
                "cfo_estimate: observation does not match geometry");
    return cfo_from_training(obs.time.topRows(geom.training_length()), geom, geom.subcarriers(),
                             ops);
}

Observation cfo_compensate(const Observation& obs, double epsilon_hat, Index block_length) {
    const Index n = obs.subcarriers();
    const double step = -2.0 * std::numbers::pi * epsilon_hat / static_cast<double>(n);
    ComplexMat r = obs.time;
    for (Index k = 0; k < r.cols(); ++k)
        for (Index u = 0; u < n; ++u)
            r(u, k) *= std::polar(1.0, step * static_cast<double>(block_length * k + u));
    return observe(std::move(r));
}

ComplexVec cir_estimate_block(const ComplexVec& r_tilde_k, const ComplexVec& training,
                              const FrameGeometry& geom) {
    require_dim(r_tilde_k.size() >= geom.training_length(),
                "cir_estimate_block: fewer samples than the training window");
    require_dim(training.size() == geom.channel_taps(), "cir_estimate_block: training length != L");
    return circulant_solve(training, average_training(r_tilde_k, geom));
}

CirEstimate cir_estimate_full(const Observation& compensated, const PilotFrame& frame,
                              const ReflectionPattern& pattern, const FrameGeometry& geom) {
    require_periodic(frame, geom, "cir_estimate_full");
    require_dim(compensated.blocks() == geom.blocks() && pattern.blocks() == geom.blocks(),
                "cir_estimate_full: block counts differ");
    ComplexMat stacked(geom.channel_taps(), geom.blocks());
    for (Index k = 0; k < geom.blocks(); ++k)
        stacked.col(k) =
            cir_estimate_block(compensated.time.col(k), frame.training_sequence(k), geom);
    const PatternInverse inv = inverse_pattern(pattern);
    return {stacked * inv.matrix, inv.scaled_unitary};
}

JointEstimate joint_estimate(const Observation& obs, const PilotFrame& frame,
                             const ReflectionPattern& pattern, const FrameGeometry& geom) {
    require_periodic(frame, geom, "joint_estimate");
    require_dim(obs.subcarriers() == geom.subcarriers() && obs.blocks() == geom.blocks() &&
                    pattern.blocks() == geom.blocks(),
                "joint_estimate: observation, pattern and geometry disagree");

    const Index n = geom.subcarriers();
    const Index l = geom.channel_taps();
    const Index blocks = geom.blocks();
    const Index window = geom.training_length();

    JointEstimate out;
    OpCount& ops = out.ops;

    // Everything below reads only this copy of the training window.
    ComplexMat training = obs.time.topRows(window);
    out.cfo = cfo_from_training(training, geom, n, &ops);

    const double step = -2.0 * std::numbers::pi * out.cfo.epsilon / static_cast<double>(n);
    const Index block_length = geom.block_length();
    for (Index k = 0; k < blocks; ++k)
        for (Index u = 0; u < window; ++u)
            training(u, k) *= std::polar(1.0, step * static_cast<double>(block_length * k + u));
    ops.cfo_compensation += static_cast<std::uint64_t>(window * blocks);

    // Z^{-1} is itself circulant; its first column solves Z c = e_0.
    ComplexMat z_inverse;
    const ComplexVec* z_for_inverse = nullptr;
    ComplexMat stacked(l, blocks);
    for (Index k = 0; k < blocks; ++k) {
        const ComplexVec& z = frame.training_sequence(k);
        if (z_for_inverse == nullptr || !(z.array() == z_for_inverse->array()).all()) {
            z_inverse = circulant_matrix(circulant_solve(z, ComplexVec::Unit(l, 0)));
            z_for_inverse = &z;
        }
        stacked.col(k) = z_inverse * average_training(training.col(k), geom);
        ops.cir_solve += static_cast<std::uint64_t>(l * l);
    }

    const PatternInverse inv = inverse_pattern(pattern);
    ops.pattern_inverse += static_cast<std::uint64_t>(
        inv.scaled_unitary ? blocks * blocks : blocks * blocks * blocks);
    out.cir.cir = stacked * inv.matrix;
    out.cir.scaled_unitary_pattern = inv.scaled_unitary;
    ops.cir_combine += static_cast<std::uint64_t>(l * blocks * blocks);
    return out;
}

}  // namespace riscfo
