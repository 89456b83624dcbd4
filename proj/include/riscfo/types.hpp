#ifndef RISCFO_TYPES_HPP
#define RISCFO_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace riscfo {

/// Dynamic complex column vector, templated on the real scalar.
template <typename Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Dynamic complex matrix, templated on the real scalar.
template <typename Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexVec = CVec<double>;
using ComplexMat = CMat<double>;
using RealVec = RVec<double>;

using Index = Eigen::Index;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a circulant (or pattern) system has an eigenvalue below tolerance.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, Index offending_index)
        : std::runtime_error(what), index_(offending_index) {}

    Index index() const noexcept { return index_; }

private:
    Index index_;
};

class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) {
            const auto v = m(i, j);
            if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v)))
                return false;
        }
    return true;
}

inline void require_dim(bool ok, const std::string& what) {
    if (!ok)
        throw DimensionError(what);
}

inline void require_param(bool ok, const std::string& what) {
    if (!ok)
        throw ParameterError(what);
}

}  // namespace riscfo

#endif  // RISCFO_TYPES_HPP
