#ifndef RISCFO_RIS_PATTERN_HPP
#define RISCFO_RIS_PATTERN_HPP

#include <string>
#include <vector>

#include "riscfo/types.hpp"

namespace riscfo {

/// (M+1) x (M+1) reflection-pattern matrix. Row m is RIS element m (row 0 is
/// the direct path), column k is pilot block k.
class ReflectionPattern {
public:
    /// Throws DimensionError unless `phi` is square and nonempty.
    explicit ReflectionPattern(ComplexMat phi);

    const ComplexMat& matrix() const noexcept { return phi_; }
    Index elements() const noexcept { return phi_.rows() - 1; }
    Index blocks() const noexcept { return phi_.cols(); }
    ComplexVec column(Index k) const { return phi_.col(k); }

private:
    ComplexMat phi_;
};

/// Phi(m, k) = e^{-j 2 pi m k / (M+1)}.
ReflectionPattern dft_pattern(Index elements);

inline constexpr double kModulusTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

struct PatternViolation {
    enum class Kind { NotUnitModulus, DirectPathNotUnity, NotScaledUnitary };

    Kind kind;
    Index row;
    Index col;
    double deviation;
    std::string message;
};

/// Empty iff every entry has unit modulus, row 0 is all ones and
/// Phi Phi^H == (M+1) I. Each violation reports the worst offending entry.
std::vector<PatternViolation> validate_pattern(const ReflectionPattern& pattern);

struct PatternInverse {
    ComplexMat matrix;
    /// False when the pattern failed validation and a general solve was used.
    bool scaled_unitary;
};

/// Phi^{-1}: Phi^H / (M+1) for valid patterns, otherwise an LU inverse.
/// Throws SingularityError if the fallback finds Phi singular.
PatternInverse inverse_pattern(const ReflectionPattern& pattern);

}  // namespace riscfo

#endif  // RISCFO_RIS_PATTERN_HPP
