#ifndef RISCFO_ANALYSIS_HPP
#define RISCFO_ANALYSIS_HPP

// Closed-form NMSE of the baseline estimator under CFO, big-O operation
// counts of both estimators, and per-trial error metrics.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

#include "riscfo/types.hpp"

namespace riscfo {

struct NmseParams {
    double epsilon = 0.0;
    Index subcarriers = 64;  ///< N
    Index taps = 8;          ///< L
    Index cp_length = 10;    ///< L_CP
    Index elements = 0;      ///< M
    double sigma2 = 0.0;     ///< noise variance; SNR = 1 / sigma2

    Index block_length() const noexcept { return cp_length + subcarriers; }
};

namespace detail {

/// sin(K x) / (K sin x) for integer K, continuous through x = m pi.
template <typename Real>
Real dirichlet_ratio(Real x, Real k) {
    const Real pi = std::numbers::pi_v<Real>;
    const Real turns = std::round(x / pi);
    const Real offset = x - turns * pi;
    if (std::abs(offset) < Real(1e-8)) {
        // Near x = m pi the ratio is (-1)^{m (K-1)} sin(K d) / (K sin d), d = x - m pi.
        const Real sign = std::cos(k * turns * pi) / std::cos(turns * pi);
        if (offset == Real(0))
            return sign;
        return sign * std::sin(k * offset) / (k * std::sin(offset));
    }
    return std::sin(k * x) / (k * std::sin(x));
}

}  // namespace detail

/// NMSE of the baseline CFR estimator with unit-modulus pilots under CFO:
///
///   sigma2 L / (N (M+1)) + 2
///     - 2 [sin(pi e)/(N sin(pi e/N))] [sin((M+1) pi e L_P/N) / ((M+1) sin(pi e L_P/N))]
///         cos(pi e (M L_P + N - 1) / N)
///
/// Removable singularities use their limits; at e == 0 only the noise term is left.
template <typename Real = double>
Real nmse_closed_form(const NmseParams& p) {
    const Real pi = std::numbers::pi_v<Real>;
    const Real n = static_cast<Real>(p.subcarriers);
    const Real l = static_cast<Real>(p.taps);
    const Real m = static_cast<Real>(p.elements);
    const Real lp = static_cast<Real>(p.block_length());
    const Real eps = static_cast<Real>(p.epsilon);
    const Real noise = static_cast<Real>(p.sigma2) * l / (n * (m + 1));
    if (eps == Real(0))
        return noise;
    const Real leakage = detail::dirichlet_ratio(pi * eps / n, n);
    const Real drift = detail::dirichlet_ratio(pi * eps * lp / n, m + 1);
    const Real rotation = std::cos(pi * eps * (m * lp + n - 1) / n);
    return noise + Real(2) - Real(2) * leakage * drift * rotation;
}

/// Smallest M in [0, m_max) with nmse(M + 1) > nmse(M); nullopt when the
/// curve does not turn upward below m_max.
std::optional<Index> nmse_turning_point(double epsilon, Index subcarriers, Index taps,
                                        Index cp_length, double sigma2, Index m_max);

/// Leading terms of the baseline CFR estimator cost, unit coefficients:
/// (L N_p^2 + N^2) M + N M^2 + M^3.
struct CfrComplexity {
    double pilot_ls = 0;  ///< L N_p^2 M
    double transform = 0; ///< N^2 M
    double combine = 0;   ///< N M^2
    double inverse = 0;   ///< M^3
    double total() const noexcept { return pilot_ls + transform + combine + inverse; }
};

/// Leading terms of the joint CFO/CIR estimator cost, unit coefficients:
/// (L N_z + L^2) M + L M^2 + M^3.
struct JointComplexity {
    double cfo = 0;       ///< L N_z M
    double cir_solve = 0; ///< L^2 M
    double combine = 0;   ///< L M^2
    double inverse = 0;   ///< M^3
    double total() const noexcept { return cfo + cir_solve + combine + inverse; }
};

CfrComplexity complexity_cfr(Index subcarriers, Index taps, Index pilots, Index elements);
JointComplexity complexity_joint(Index taps, Index training, Index elements);

/// Complex multiplications actually performed by one joint_estimate() run.
/// The one-off FFT that forms the inverse training circulant is not counted.
struct OpCount {
    std::uint64_t cfo_correlation = 0;  ///< r(t) r*(t+L) products
    std::uint64_t cfo_compensation = 0; ///< phase de-rotation of training samples
    std::uint64_t cir_solve = 0;        ///< Z^{-1} rbar, L^2 per block
    std::uint64_t cir_combine = 0;      ///< G_Phi Phi^{-1}
    std::uint64_t pattern_inverse = 0;  ///< forming Phi^{-1}

    std::uint64_t total() const noexcept {
        return cfo_correlation + cfo_compensation + cir_solve + cir_combine + pattern_inverse;
    }
};

/// ||H - H_hat||^2 / ||H||^2 for one realization.
double nmse_freq(const ComplexMat& truth, const ComplexMat& estimate);

/// Same metric for CIR matrices.
double nmse_time(const ComplexMat& truth, const ComplexMat& estimate);

/// |eps - eps_hat|^2.
double mse_cfo(double epsilon, double epsilon_hat);

/// Unnormalized pieces of an NMSE, so callers can form ratios of means.
struct ErrorEnergy {
    double error = 0;      ///< ||truth - estimate||^2
    double reference = 0;  ///< ||truth||^2
};

ErrorEnergy error_energy(const ComplexMat& truth, const ComplexMat& estimate);

}  // namespace riscfo

#endif  // RISCFO_ANALYSIS_HPP
