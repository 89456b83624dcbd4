#ifndef RISCFO_NUMERICS_HPP
#define RISCFO_NUMERICS_HPP

// Complex-vector primitives: unitary DFT, Dirichlet kernel, CFO leakage
// matrix, Zadoff-Chu sequences and circulant solves.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include <unsupported/Eigen/FFT>

#include "riscfo/types.hpp"

namespace riscfo {

namespace detail {

template <typename Real>
Eigen::FFT<Real>& fft_engine() {
    // kissfft caches twiddles per size; one engine per thread keeps that cache
    // private to the worker.
    thread_local Eigen::FFT<Real> engine;
    return engine;
}

}  // namespace detail

/// Unitary forward DFT: out(p) = N^{-1/2} sum_q x(q) e^{-j 2 pi p q / N}.
template <typename Derived>
CVec<typename Derived::RealScalar> dft(const Eigen::MatrixBase<Derived>& x) {
    using Real = typename Derived::RealScalar;
    const Index n = x.size();
    CVec<Real> in = x;
    CVec<Real> out(n);
    if (n == 0)
        return out;
    detail::fft_engine<Real>().fwd(out, in);
    out /= std::sqrt(static_cast<Real>(n));
    return out;
}

template <typename Derived>
CVec<typename Derived::RealScalar> dft(const Eigen::MatrixBase<Derived>& x, Index n) {
    require_dim(x.size() == n, "dft: input length " + std::to_string(x.size()) +
                                   " != N " + std::to_string(n));
    return dft(x);
}

/// Unitary inverse DFT, the adjoint of dft().
template <typename Derived>
CVec<typename Derived::RealScalar> idft(const Eigen::MatrixBase<Derived>& y) {
    using Real = typename Derived::RealScalar;
    const Index n = y.size();
    CVec<Real> in = y;
    CVec<Real> out(n);
    if (n == 0)
        return out;
    auto& engine = detail::fft_engine<Real>();
    engine.SetFlag(Eigen::FFT<Real>::Unscaled);
    engine.inv(out, in);
    engine.ClearFlag(Eigen::FFT<Real>::Unscaled);
    out /= std::sqrt(static_cast<Real>(n));
    return out;
}

template <typename Derived>
CVec<typename Derived::RealScalar> idft(const Eigen::MatrixBase<Derived>& y, Index n) {
    require_dim(y.size() == n, "idft: input length " + std::to_string(y.size()) +
                                   " != N " + std::to_string(n));
    return idft(y);
}

/// Dirichlet kernel f_s(alpha) = sin(pi a) / (N sin(pi a / N)) e^{j pi (N-1) a / N}.
///
/// N-periodic in alpha; evaluated on the representative nearest zero so the
/// removable singularity at alpha == 0 (mod N) maps to the exact limit 1.
template <typename Real>
std::complex<Real> dirichlet_fs(Real alpha, Index n) {
    require_param(n >= 1, "dirichlet_fs: N must be >= 1");
    const Real big_n = static_cast<Real>(n);
    const Real reduced = alpha - big_n * std::round(alpha / big_n);
    const Real pi = std::numbers::pi_v<Real>;
    const Real phase = pi * (big_n - 1) / big_n * reduced;
    Real magnitude;
    if (std::abs(pi * reduced / big_n) < Real(1e-8)) {
        // sin(x)/(N sin(x/N)) = 1 - x^2 (1 - 1/N^2)/6 + O(x^4)
        const Real x = pi * reduced;
        magnitude = Real(1) - x * x * (Real(1) - Real(1) / (big_n * big_n)) / Real(6);
    } else {
        magnitude = std::sin(pi * reduced) / (big_n * std::sin(pi * reduced / big_n));
    }
    return std::polar(magnitude, phase);
}

/// Right-circulant N x N CFO leakage matrix with first column
/// [f_s(eps), f_s(eps - 1), ..., f_s(eps - N + 1)].
///
/// Entry (n, p) is f_s(p - n + eps); Lambda(0) is the identity.
template <typename Real>
CMat<Real> build_lambda(Real epsilon, Index n) {
    require_param(n >= 2, "build_lambda: N must be >= 2");
    CVec<Real> first_col(n);
    for (Index i = 0; i < n; ++i)
        first_col(i) = dirichlet_fs<Real>(epsilon - static_cast<Real>(i), n);
    CMat<Real> lambda(n, n);
    for (Index col = 0; col < n; ++col)
        for (Index row = 0; row < n; ++row)
            lambda(row, col) = first_col(((row - col) % n + n) % n);
    return lambda;
}

/// Zadoff-Chu sequence z(n) = e^{-j pi q n (n + (L mod 2)) / L}.
template <typename Real = double>
CVec<Real> zadoff_chu(Index length, Index root = 1) {
    require_param(length >= 1, "zadoff_chu: L must be >= 1");
    require_param(root >= 1, "zadoff_chu: q must be >= 1");
    require_param(std::gcd(length, root) == 1,
                  "zadoff_chu: gcd(q, L) must be 1 (q=" + std::to_string(root) +
                      ", L=" + std::to_string(length) + ")");
    const std::int64_t len = length;
    const std::int64_t modulus = 2 * len;
    const std::int64_t parity = len % 2;
    const std::int64_t q = root % modulus;
    const Real pi = std::numbers::pi_v<Real>;
    CVec<Real> z(length);
    for (std::int64_t k = 0; k < len; ++k) {
        // Exponent reduced mod 2L in integers; e^{-j pi m / L} is 2L-periodic in m.
        const std::int64_t base = (k * (k + parity)) % modulus;
        const std::int64_t m = (base * q) % modulus;
        z(k) = std::polar(Real(1), -pi * static_cast<Real>(m) / static_cast<Real>(len));
    }
    return z;
}

/// Dense circulant matrix whose (u, l) entry is c((u - l) mod L).
template <typename Derived>
CMat<typename Derived::RealScalar> circulant_matrix(const Eigen::MatrixBase<Derived>& first_col) {
    const Index n = first_col.size();
    CMat<typename Derived::RealScalar> c(n, n);
    for (Index l = 0; l < n; ++l)
        for (Index u = 0; u < n; ++u)
            c(u, l) = first_col(((u - l) % n + n) % n);
    return c;
}

/// Eigenvalues of the circulant built from first_col: sqrt(L) * dft(first_col).
template <typename Derived>
CVec<typename Derived::RealScalar> circulant_eigenvalues(const Eigen::MatrixBase<Derived>& first_col) {
    using Real = typename Derived::RealScalar;
    return dft(first_col) * std::sqrt(static_cast<Real>(first_col.size()));
}

/// Relative tolerance below which a circulant eigenvalue counts as zero.
inline constexpr double kCirculantTolerance = 1e-10;

/// Solve circulant(first_col) * g == rhs by DFT diagonalization.
///
/// Throws SingularityError carrying the index of the first eigenvalue whose
/// magnitude is at most kCirculantTolerance times the largest one.
template <typename DerivedA, typename DerivedB>
CVec<typename DerivedA::RealScalar> circulant_solve(const Eigen::MatrixBase<DerivedA>& first_col,
                                                    const Eigen::MatrixBase<DerivedB>& rhs) {
    using Real = typename DerivedA::RealScalar;
    require_dim(first_col.size() == rhs.size() && first_col.size() > 0,
                "circulant_solve: first column length " + std::to_string(first_col.size()) +
                    " != rhs length " + std::to_string(rhs.size()));
    const CVec<Real> eig = circulant_eigenvalues(first_col);
    const Real largest = eig.cwiseAbs().maxCoeff();
    for (Index i = 0; i < eig.size(); ++i)
        if (!(std::abs(eig(i)) > Real(kCirculantTolerance) * largest))
            throw SingularityError("circulant_solve: eigenvalue " + std::to_string(i) +
                                       " below tolerance (|lambda|=" +
                                       std::to_string(std::abs(eig(i))) + ")",
                                   i);
    const CVec<Real> spectrum = dft(rhs);
    return idft(spectrum.cwiseQuotient(eig).eval());
}

}  // namespace riscfo

#endif  // RISCFO_NUMERICS_HPP
