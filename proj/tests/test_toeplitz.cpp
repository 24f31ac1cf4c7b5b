#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "isar/errors.hpp"
#include "isar/rng.hpp"
#include "isar/toeplitz.hpp"

using namespace isar;
using cd = std::complex<double>;

namespace {
ToeplitzParam random_valid_param(int n, int m, Rng& rng) {
    ToeplitzParam u = ToeplitzParam::zero(n, m);
    for (int p = 0; p <= n - 1; ++p)
        for (int q = -(m - 1); q <= m - 1; ++q) {
            if (p == 0 && q < 0) continue;
            cd v(rng.gaussian(), rng.gaussian());
            if (p == 0 && q == 0) v = cd(v.real(), 0.0);
            u.lag(p, q) = v;
            u.lag(-p, -q) = std::conj(v);
        }
    return u;
}

CMatrix random_complex(int n, Rng& rng) {
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cd(rng.gaussian(), rng.gaussian());
    return g;
}

double lag_inner(const ToeplitzParam& a, const ToeplitzParam& b) {
    // orbit-weighted real inner product on lag arrays
    double acc = 0.0;
    for (int p = -(a.num_angles - 1); p <= a.num_angles - 1; ++p)
        for (int q = -(a.num_freqs - 1); q <= a.num_freqs - 1; ++q)
            acc += a.orbit_size(p, q) * std::real(std::conj(a.lag(p, q)) * b.lag(p, q));
    return acc;
}
}  // namespace

TEST_CASE("identity lag array builds the identity matrix") {
    ToeplitzParam u = ToeplitzParam::zero(3, 4);
    u.lag(0, 0) = 1.0;
    CMatrix t = build_toeplitz(u);
    REQUIRE(t.rows() == 12);
    CHECK((t - CMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("N=1 collapses to an ordinary Toeplitz matrix") {
    Rng rng(3);
    ToeplitzParam u = random_valid_param(1, 5, rng);
    CMatrix t = build_toeplitz(u);
    REQUIRE(t.rows() == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(t(i, j) == u.lag(0, i - j));
}

TEST_CASE("atom outer products produce the expected lag array") {
    // a scatterer atom a[(n,m)] = exp(-j (fn n + fm m)) has
    // a a^* [(n,m),(n',m')] = exp(-j (fn (n-n') + fm (m-m'))), i.e. the lag
    // array lag(p,q) = sigma exp(-j (fn p + fm q))
    int n = 4, m = 5;
    double fn = 0.7, fm = -1.3, sigma = 2.5;
    Eigen::VectorXcd a(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i * m + j) = std::exp(cd(0, -(fn * i + fm * j)));
    CMatrix outer = sigma * a * a.adjoint();

    ToeplitzParam u = ToeplitzParam::zero(n, m);
    for (int p = -(n - 1); p <= n - 1; ++p)
        for (int q = -(m - 1); q <= m - 1; ++q)
            u.lag(p, q) = sigma * std::exp(cd(0, -(fn * p + fm * q)));
    u.validate();
    CMatrix t = build_toeplitz(u);
    CHECK((t - outer).cwiseAbs().maxCoeff() < 1e-12);

    // and the adjoint recovers the lag array from the rank-1 matrix exactly
    ToeplitzParam back = toeplitz_adjoint(outer, n, m);
    CHECK((back.lags - u.lags).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adjoint is a left inverse of build_toeplitz") {
    Rng rng(17);
    const std::vector<std::pair<int, int>> shapes = {{2, 2}, {3, 4}, {5, 3}, {1, 6}};
    for (auto [n, m] : shapes) {
        ToeplitzParam u = random_valid_param(n, m, rng);
        ToeplitzParam back = toeplitz_adjoint(build_toeplitz(u), n, m);
        CHECK((back.lags - u.lags).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("adjoint identity <T(u), G> = <u, T*(G)>_w") {
    Rng rng(29);
    int n = 3, m = 4;
    for (int trial = 0; trial < 100; ++trial) {
        ToeplitzParam u = random_valid_param(n, m, rng);
        CMatrix g = random_complex(n * m, rng);
        double lhs = std::real((build_toeplitz(u).adjoint() * g).trace());
        double rhs = lag_inner(u, toeplitz_adjoint(g, n, m));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("adjoint output satisfies the Hermitian lag symmetry") {
    Rng rng(41);
    CMatrix g = random_complex(12, rng);
    ToeplitzParam u = toeplitz_adjoint(g, 3, 4);
    u.validate(1e-12);  // must not throw
}

TEST_CASE("validate flags broken Hermitian symmetry") {
    ToeplitzParam u = ToeplitzParam::zero(2, 2);
    u.lag(1, 0) = cd(1.0, 0.5);
    u.lag(-1, 0) = cd(1.0, 0.5);  // should be the conjugate
    CHECK_THROWS_AS(u.validate(), StructureError);
}

TEST_CASE("weight_matrix inverts a PSD lag matrix with the epsilon shift") {
    // T(u) = 2 I at N=M=2: W must be (2 + eps)^{-1} I
    ToeplitzParam u = ToeplitzParam::zero(2, 2);
    u.lag(0, 0) = 2.0;
    double eps = 0.5;
    CMatrix w = weight_matrix(u, eps);
    CHECK((w - (1.0 / 2.5) * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weight_matrix clamps negative eigenvalues before inverting") {
    // T(u) = -3 I is clamped to 0, so W = eps^{-1} I
    ToeplitzParam u = ToeplitzParam::zero(2, 2);
    u.lag(0, 0) = -3.0;
    CMatrix w = weight_matrix(u, 0.25);
    CHECK((w - 4.0 * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weight_matrix of a rank-1 atom separates signal and noise directions") {
    int n = 3, m = 3;
    double fn = 0.9, fm = 0.4;
    ToeplitzParam u = ToeplitzParam::zero(n, m);
    for (int p = -(n - 1); p <= n - 1; ++p)
        for (int q = -(m - 1); q <= m - 1; ++q)
            u.lag(p, q) = std::exp(cd(0, -(fn * p + fm * q)));
    // T(u) = a a^*, eigenvalues {9, 0 x 8}; with small eps the weight along the
    // atom is tiny and the weight off the atom is huge
    double eps = 1e-6;
    CMatrix w = weight_matrix(u, eps);
    Eigen::VectorXcd a(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i * m + j) = std::exp(cd(0, -(fn * i + fm * j)));
    double along = std::real((a.adjoint() * w * a)(0)) / std::real((a.adjoint() * a)(0));
    CHECK(along == doctest::Approx(1.0 / (9.0 + eps)).epsilon(1e-8));
    // a vector orthogonal to the atom sees the 1/eps weight
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n * m);
    b(0) = 1.0;
    b -= (a.dot(b) / a.squaredNorm()) * a;
    double off = std::real((b.adjoint() * w * b)(0)) / b.squaredNorm();
    CHECK(off == doctest::Approx(1.0 / eps).epsilon(1e-6));
}
