#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "isar/linalg.hpp"
#include "isar/rng.hpp"

using namespace isar;
using cd = std::complex<double>;

namespace {
CMatrix random_hermitian(int n, Rng& rng) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cd(rng.gaussian(), rng.gaussian());
    return 0.5 * (a + a.adjoint().eval());
}
}  // namespace

TEST_CASE("eigendecomposition of known small matrices") {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    EigenDecomposition e = hermitian_eig(d);
    CHECK(e.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-14));

    CMatrix a(2, 2);
    a << cd(2, 0), cd(1, 0), cd(1, 0), cd(2, 0);
    EigenDecomposition e2 = hermitian_eig(a);
    CHECK(e2.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e2.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eigendecomposition reconstructs and is orthonormal up to 64x64") {
    Rng rng(11);
    for (int n : {1, 2, 5, 16, 33, 64}) {
        CMatrix a = random_hermitian(n, rng);
        EigenDecomposition e = hermitian_eig(a);
        CMatrix recon = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
        CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()));
        CMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
        CHECK((gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        // ascending order
        for (int i = 1; i < n; ++i) CHECK(e.eigenvalues(i) >= e.eigenvalues(i - 1));
        // trace identity
        CHECK(e.eigenvalues.sum() == doctest::Approx(a.trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("psd_project is idempotent and fixes PSD matrices") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = random_hermitian(12, rng);
        CMatrix p = psd_project(a);
        // result is PSD
        EigenDecomposition e = hermitian_eig(p);
        CHECK(e.eigenvalues.minCoeff() >= -1e-10);
        // idempotent
        CHECK((psd_project(p) - p).cwiseAbs().maxCoeff() < 1e-10);
        // a genuine PSD matrix is a fixed point
        CMatrix b = a * a.adjoint();
        CHECK((psd_project(b) - b).cwiseAbs().maxCoeff() < 1e-9 * b.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("psd_project is the Frobenius-nearest PSD point") {
    // the projection must beat 100 random PSD candidates in Frobenius distance
    Rng rng(31);
    CMatrix a = random_hermitian(6, rng);
    CMatrix p = psd_project(a);
    double best = (a - p).norm();
    for (int trial = 0; trial < 100; ++trial) {
        CMatrix c = random_hermitian(6, rng);
        CMatrix cand = psd_project(p + 0.5 * c);  // PSD candidate near p
        CHECK((a - cand).norm() >= best - 1e-10);
    }
}

TEST_CASE("dft2 of a constant concentrates at the centered DC bin") {
    CMatrix x = CMatrix::Constant(8, 8, cd(1, 0));
    CMatrix y = dft2(x, 1);
    REQUIRE(y.rows() == 8);
    REQUIRE(y.cols() == 8);
    // unitary scaling: DC bin is sqrt(P*Q) * mean = 8
    CHECK(std::abs(y(4, 4) - cd(8, 0)) < 1e-12);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i != 4 || j != 4) CHECK(std::abs(y(i, j)) < 1e-12);
}

TEST_CASE("dft2 preserves the Frobenius norm at pad 1") {
    Rng rng(5);
    for (int rows : {4, 6, 8}) {
        CMatrix x(rows, rows + 1);
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) x(i, j) = cd(rng.gaussian(), rng.gaussian());
        CMatrix y = dft2(x, 1);
        CHECK(y.norm() == doctest::Approx(x.norm()).epsilon(1e-12));
    }
}

TEST_CASE("fft path agrees with direct summation") {
    // length 8 exercises the radix-2 path, length 6 the direct path; compare
    // both against an explicit O(n^2) sum
    Rng rng(7);
    for (int n : {6, 8, 16}) {
        Eigen::VectorXcd v(n), ref(n);
        for (int i = 0; i < n; ++i) v(i) = cd(rng.gaussian(), rng.gaussian());
        for (int k = 0; k < n; ++k) {
            cd acc(0, 0);
            for (int i = 0; i < n; ++i)
                acc += v(i) * std::exp(cd(0, -2.0 * M_PI * k * i / n));
            ref(k) = acc;
        }
        Eigen::VectorXcd w = v;
        detail::dft1_inplace(w);
        CHECK((w - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("zero padding refines the grid without moving the peak") {
    // single complex exponential at frequency 3/8 cycles/sample
    int n = 8;
    CMatrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            x(i, j) = std::exp(cd(0, 2.0 * M_PI * (3.0 * i / n + 1.0 * j / n)));
    CMatrix y = dft2(x, 4);
    REQUIRE(y.rows() == 32);
    Eigen::Index pi, pj;
    y.cwiseAbs().maxCoeff(&pi, &pj);
    // centered spectrum: frequency f maps to bin P/2 + f*P
    CHECK(pi == 16 + 3 * 4);
    CHECK(pj == 16 + 1 * 4);
}
