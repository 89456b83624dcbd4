#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "riscfo/numerics.hpp"

using namespace riscfo;

TEST_CASE("dft of all-ones length 4 is a DC spike of 2") {
    const ComplexVec y = dft(ComplexVec::Ones(4));
    CHECK(std::abs(y(0) - Complex(2, 0)) < 1e-15);
    for (Index i = 1; i < 4; ++i)
        CHECK(std::abs(y(i)) < 1e-15);
}

TEST_CASE("dft of zeros is zeros") {
    CHECK(dft(ComplexVec::Zero(16)).norm() == 0.0);
}

TEST_CASE("dft and idft match the direct matrix product") {
    RandomStream rng(11);
    const ComplexVec x = oracle::random_vector(64, rng);
    const ComplexMat f = oracle::dft_matrix(64);
    CHECK((dft(x) - f * x).norm() < 1e-12 * x.norm());
    CHECK((idft(x) - f.adjoint() * x).norm() < 1e-12 * x.norm());
}

TEST_CASE("dft length mismatch is a dimension error") {
    CHECK_THROWS_AS(dft(ComplexVec::Ones(5), 4), DimensionError);
    CHECK_THROWS_AS(idft(ComplexVec::Ones(3), 4), DimensionError);
}

TEST_CASE("idft of a bin-0 impulse is flat at 1/sqrt(N)") {
    ComplexVec e = ComplexVec::Zero(16);
    e(0) = 1;
    const ComplexVec x = idft(e);
    for (Index i = 0; i < 16; ++i)
        CHECK(std::abs(x(i) - Complex(0.25, 0)) < 1e-15);
}

TEST_CASE("dft is unitary and idft inverts it") {
    RandomStream rng(12);
    for (Index n : {4, 8, 64, 256}) {
        const ComplexVec x = oracle::random_vector(n, rng);
        CHECK(std::abs(dft(x).norm() - x.norm()) < 1e-12 * x.norm());
        CHECK((idft(dft(x)) - x).norm() < 1e-12 * x.norm());
    }
}

TEST_CASE("dirichlet kernel special values") {
    for (Index n : {1, 2, 7, 64})
        CHECK(std::abs(dirichlet_fs(0.0, n) - Complex(1, 0)) < 1e-15);
    for (int k : {1, 2, 5, -3, 63})
        CHECK(std::abs(dirichlet_fs(double(k), 64)) < 1e-14);
    // Removable singularity at alpha = N: the e^{j pi (N-1)} factor is -1 for even N
    // and the sin ratio is -1 as well.
    CHECK(std::abs(dirichlet_fs(64.0, 64) - oracle::geometric_dirichlet(64.0, 64)) < 1e-12);
    CHECK(std::abs(dirichlet_fs(7.0, 7) - oracle::geometric_dirichlet(7.0, 7)) < 1e-12);
}

TEST_CASE("dirichlet kernel equals the geometric sum") {
    CHECK(std::abs(dirichlet_fs(0.5, 64) - oracle::geometric_dirichlet(0.5, 64)) < 1e-12);
    RandomStream rng(13);
    for (Index n : {2, 16, 64, 256})
        for (int i = 0; i < 100; ++i) {
            const double alpha = (2 * rng.uniform() - 1) * double(n);
            CHECK(std::abs(dirichlet_fs(alpha, n) - oracle::geometric_dirichlet(alpha, n)) <
                  1e-12);
        }
    // Right next to the singular points.
    for (double alpha : {1e-12, -1e-10, 64 + 1e-11, 128 - 1e-9, 3e-8})
        CHECK(std::abs(dirichlet_fs(alpha, 64) - oracle::geometric_dirichlet(alpha, 64)) < 1e-12);
}

TEST_CASE("lambda is the identity without CFO") {
    CHECK((build_lambda(0.0, 8) - ComplexMat::Identity(8, 8)).norm() < 1e-12);
}

TEST_CASE("lambda is right-circulant with f_s(p - n + eps) entries") {
    const double eps = 0.1;
    const Index n = 16;
    const ComplexMat lam = build_lambda(eps, n);
    for (Index r = 1; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            CHECK(std::abs(lam(r, c) - lam(r - 1, (c - 1 + n) % n)) < 1e-15);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            CHECK(std::abs(lam(r, c) - oracle::geometric_dirichlet(double(c - r) + eps, n)) <
                  1e-12);
    Complex row_sum = 0;
    for (Index a = 0; a < n; ++a)
        row_sum += oracle::geometric_dirichlet(eps - double(a), n);
    for (Index r = 0; r < n; ++r)
        CHECK(std::abs(lam.row(r).sum() - row_sum) < 1e-12);
}

TEST_CASE("lambda is the frequency image of a time-domain phase ramp") {
    for (double eps : {0.0, 0.013, -0.27, 0.5}) {
        const Index n = 32;
        const ComplexMat f = oracle::dft_matrix(n);
        ComplexVec ramp(n);
        for (Index u = 0; u < n; ++u)
            ramp(u) = std::polar(1.0, 2 * oracle::kPi * eps * double(u) / double(n));
        const ComplexMat expected = f * ramp.asDiagonal() * f.adjoint();
        CHECK((build_lambda(eps, n) - expected).norm() < 1e-10);
    }
}

TEST_CASE("zadoff-chu values and constant-magnitude spectrum") {
    const ComplexVec one = zadoff_chu(1, 1);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one(0) - Complex(1, 0)) < 1e-15);

    for (Index l : {2, 7, 16, 31, 32, 64})
        for (Index q = 1; q < 6; ++q) {
            if (std::gcd(q, l) != 1)
                continue;
            const ComplexVec z = zadoff_chu(l, q);
            for (Index i = 0; i < l; ++i) {
                CHECK(std::abs(std::abs(z(i)) - 1.0) < 1e-14);
                const double expected = -oracle::kPi * double(q) * double(i) *
                                        double(i + l % 2) / double(l);
                CHECK(std::abs(z(i) - std::polar(1.0, expected)) < 1e-10);
            }
            const ComplexVec spec = oracle::dft_matrix(l) * z;
            for (Index k = 0; k < l; ++k)
                CHECK(std::abs(std::abs(spec(k)) - 1.0) < 1e-10);
        }
}

TEST_CASE("zadoff-chu rejects a root sharing a factor with the length") {
    CHECK_THROWS_AS(zadoff_chu(32, 2), ParameterError);
    CHECK_THROWS_AS(zadoff_chu(9, 3), ParameterError);
}

TEST_CASE("zadoff-chu circulants are perfectly conditioned") {
    for (Index l : {8, 13, 32}) {
        const ComplexVec eig = circulant_eigenvalues(zadoff_chu(l, 1));
        CHECK(eig.cwiseAbs().maxCoeff() - eig.cwiseAbs().minCoeff() < 1e-10);
    }
}

TEST_CASE("circulant matrix layout") {
    RandomStream rng(14);
    const ComplexVec c = oracle::random_vector(6, rng);
    CHECK((circulant_matrix(c) - oracle::dense_circulant(c)).norm() == 0.0);
}

TEST_CASE("circulant solve with an impulse is the identity") {
    RandomStream rng(15);
    ComplexVec e = ComplexVec::Zero(8);
    e(0) = 1;
    const ComplexVec r = oracle::random_vector(8, rng);
    CHECK((circulant_solve(e, r) - r).norm() < 1e-14);
}

TEST_CASE("circulant solve round-trips through a zadoff-chu circulant") {
    RandomStream rng(16);
    const ComplexVec z = zadoff_chu(32, 1);
    const ComplexVec g = oracle::random_vector(32, rng);
    const ComplexVec rhs = oracle::dense_circulant(z) * g;
    CHECK((circulant_solve(z, rhs) - g).norm() < 1e-10 * g.norm());
}

TEST_CASE("circulant solve matches a dense LU solve") {
    RandomStream rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexVec c = oracle::random_vector(8, rng);
        c(0) += 4.0;  // diagonally dominant, well conditioned
        const ComplexVec rhs = oracle::random_vector(8, rng);
        const ComplexVec dense = oracle::dense_circulant(c).fullPivLu().solve(rhs);
        CHECK((circulant_solve(c, rhs) - dense).norm() < 1e-9 * dense.norm());
        CHECK((oracle::dense_circulant(c) * circulant_solve(c, rhs) - rhs).norm() <
              1e-10 * rhs.norm());
    }
}

TEST_CASE("singular circulant reports the offending eigenvalue") {
    // All-ones first column: eigenvalues sqrt(L) * dft = (L, 0, ..., 0).
    const ComplexVec ones = ComplexVec::Ones(4);
    try {
        circulant_solve(ones, ComplexVec::Ones(4));
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(circulant_solve(ComplexVec::Ones(4), ComplexVec::Ones(3)), DimensionError);
}

TEST_CASE("float instantiation") {
    const CVec<float> x = CVec<float>::Ones(8);
    const CVec<float> y = dft(x);
    CHECK(std::abs(y(0) - std::complex<float>(std::sqrt(8.0f), 0)) < 1e-5f);
    CHECK(std::abs(dirichlet_fs(0.25f, 8) -
                   std::complex<float>(oracle::geometric_dirichlet(0.25, 8))) < 1e-5f);
}
