#include "riscfo/analysis.hpp"

#include <string>

namespace riscfo {

std::optional<Index> nmse_turning_point(double epsilon, Index subcarriers, Index taps,
                                        Index cp_length, double sigma2, Index m_max) {
    require_param(epsilon != 0.0, "nmse_turning_point: epsilon must be nonzero");
    NmseParams p{epsilon, subcarriers, taps, cp_length, 0, sigma2};
    double previous = nmse_closed_form(p);
    for (Index m = 0; m < m_max; ++m) {
        p.elements = m + 1;
        const double next = nmse_closed_form(p);
        if (next > previous)
            return m;
        previous = next;
    }
    return std::nullopt;
}

CfrComplexity complexity_cfr(Index subcarriers, Index taps, Index pilots, Index elements) {
    require_param(subcarriers > 0 && taps > 0 && pilots > 0 && elements > 0,
                  "complexity_cfr: parameters must be positive");
    const double n = static_cast<double>(subcarriers);
    const double l = static_cast<double>(taps);
    const double np = static_cast<double>(pilots);
    const double m = static_cast<double>(elements);
    return {l * np * np * m, n * n * m, n * m * m, m * m * m};
}

JointComplexity complexity_joint(Index taps, Index training, Index elements) {
    require_param(taps > 0 && training > 0 && elements > 0,
                  "complexity_joint: parameters must be positive");
    const double l = static_cast<double>(taps);
    const double nz = static_cast<double>(training);
    const double m = static_cast<double>(elements);
    return {l * nz * m, l * l * m, l * m * m, m * m * m};
}

ErrorEnergy error_energy(const ComplexMat& truth, const ComplexMat& estimate) {
    require_dim(truth.rows() == estimate.rows() && truth.cols() == estimate.cols(),
                "error_energy: shape mismatch (" + std::to_string(truth.rows()) + "x" +
                    std::to_string(truth.cols()) + " vs " + std::to_string(estimate.rows()) + "x" +
                    std::to_string(estimate.cols()) + ")");
    return {(truth - estimate).squaredNorm(), truth.squaredNorm()};
}

double nmse_freq(const ComplexMat& truth, const ComplexMat& estimate) {
    const ErrorEnergy e = error_energy(truth, estimate);
    return e.error / e.reference;
}

double nmse_time(const ComplexMat& truth, const ComplexMat& estimate) {
    return nmse_freq(truth, estimate);
}

double mse_cfo(double epsilon, double epsilon_hat) {
    const double d = epsilon - epsilon_hat;
    return d * d;
}

}  // namespace riscfo
