#include "riscfo/ris_pattern.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace riscfo {

ReflectionPattern::ReflectionPattern(ComplexMat phi) : phi_(std::move(phi)) {
    require_dim(phi_.rows() >= 1 && phi_.rows() == phi_.cols(),
                "ReflectionPattern: matrix must be square and nonempty");
    require_param(all_finite(phi_), "ReflectionPattern: non-finite entry");
}

ReflectionPattern dft_pattern(Index elements) {
    require_param(elements >= 0, "dft_pattern: M must be >= 0");
    const Index size = elements + 1;
    ComplexMat phi(size, size);
    for (Index k = 0; k < size; ++k)
        for (Index m = 0; m < size; ++m) {
            // Reduce m k mod (M+1) first so the angle stays small.
            const Index r = (m * k) % size;
            phi(m, k) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) /
                                            static_cast<double>(size));
        }
    return ReflectionPattern(std::move(phi));
}

namespace {

std::string describe(const char* what, Index row, Index col, double deviation) {
    std::ostringstream os;
    os << what << " (worst entry (" << row << ", " << col << "), deviation " << deviation << ")";
    return os.str();
}

}  // namespace

std::vector<PatternViolation> validate_pattern(const ReflectionPattern& pattern) {
    const ComplexMat& phi = pattern.matrix();
    const Index size = phi.rows();
    std::vector<PatternViolation> violations;

    double worst = 0.0;
    Index wr = 0, wc = 0;
    for (Index k = 0; k < size; ++k)
        for (Index m = 0; m < size; ++m) {
            const double dev = std::abs(std::abs(phi(m, k)) - 1.0);
            if (dev > worst) {
                worst = dev;
                wr = m;
                wc = k;
            }
        }
    if (worst > kModulusTolerance)
        violations.push_back({PatternViolation::Kind::NotUnitModulus, wr, wc, worst,
                              describe("entry not unit modulus", wr, wc, worst)});

    worst = 0.0;
    wr = wc = 0;
    for (Index k = 0; k < size; ++k) {
        const double dev = std::abs(phi(0, k) - 1.0);
        if (dev > worst) {
            worst = dev;
            wc = k;
        }
    }
    if (worst > kModulusTolerance)
        violations.push_back({PatternViolation::Kind::DirectPathNotUnity, 0, wc, worst,
                              describe("direct-path coefficient not unity", 0, wc, worst)});

    const ComplexMat gram = phi * phi.adjoint() -
                            static_cast<double>(size) * ComplexMat::Identity(size, size);
    worst = 0.0;
    wr = wc = 0;
    for (Index c = 0; c < size; ++c)
        for (Index r = 0; r < size; ++r) {
            const double dev = std::abs(gram(r, c));
            if (dev > worst) {
                worst = dev;
                wr = r;
                wc = c;
            }
        }
    if (worst > kUnitaryTolerance)
        violations.push_back({PatternViolation::Kind::NotScaledUnitary, wr, wc, worst,
                              describe("not scaled-unitary", wr, wc, worst)});
    return violations;
}

PatternInverse inverse_pattern(const ReflectionPattern& pattern) {
    const ComplexMat& phi = pattern.matrix();
    const Index size = phi.rows();
    if (validate_pattern(pattern).empty())
        return {phi.adjoint() / static_cast<double>(size), true};

    Eigen::FullPivLU<ComplexMat> lu(phi);
    if (!lu.isInvertible())
        throw SingularityError("inverse_pattern: reflection pattern is singular (rank " +
                                   std::to_string(lu.rank()) + " of " + std::to_string(size) + ")",
                               lu.rank());
    return {lu.inverse(), false};
}

}  // namespace riscfo
