#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "isar/baselines.hpp"
#include "isar/errors.hpp"
#include "isar/model.hpp"
#include "isar/rng.hpp"

using namespace isar;
using cd = std::complex<double>;

namespace {
RadarParams round_params(int n = 8, int m = 8) {
    RadarParams p;
    p.f0 = 1e10;
    p.delta_f = 5e7;
    p.num_angles = n;
    p.num_freqs = m;
    p.theta_span = 0.02;
    p.c = 3e8;
    return p;
}

CMatrix random_complex(int rows, int cols, Rng& rng) {
    CMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = cd(rng.gaussian(), rng.gaussian());
    return a;
}
}  // namespace

TEST_CASE("MUSIC locates a single scatterer within one grid cell") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({0.8, 0.9, 1.0});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = ApertureMask::full(p.nm());
    BaselineConfig cfg;
    cfg.model_order = 1;
    cfg.music_grid = 256;
    auto [est, r_hat] = music2d(z, mask, p, cfg);
    REQUIRE(est.size() == 1);
    double cell_x = 2.0 * M_PI / (cfg.music_grid * p.cross_range_slope());
    double cell_y = 2.0 * M_PI / (cfg.music_grid * p.range_slope());
    CHECK(std::abs(est[0].x - 0.8) <= cell_x);
    CHECK(std::abs(est[0].y - 0.9) <= cell_y);
    // LS amplitude close to the reflectivity (up to a phase from the grid offset)
    CHECK(std::abs(est[0].amplitude) == doctest::Approx(1.0).epsilon(0.2));
    // reconstructed echo explains most of the data
    double rel = (r_hat - vectorize(z)).norm() / vectorize(z).norm();
    CHECK(rel < 0.35);
}

TEST_CASE("MUSIC separates two well-spaced scatterers") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({1.2, 1.0, 1.0});
    scene.scatterers.push_back({-1.0, -0.8, 0.8});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = ApertureMask::full(p.nm());
    BaselineConfig cfg;
    cfg.model_order = 2;
    cfg.music_grid = 256;
    auto [est, r_hat] = music2d(z, mask, p, cfg);
    REQUIRE(est.size() == 2);
    for (const auto& sc : scene.scatterers) {
        double best = 1e9;
        for (const auto& e : est)
            best = std::min(best, std::hypot(e.x - sc.x, e.y - sc.y));
        CHECK(best < 0.1);
    }
}

TEST_CASE("MUSIC estimate is invariant to a global phase on the data") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({0.8, -0.6, 1.0});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = ApertureMask::full(p.nm());
    BaselineConfig cfg;
    cfg.model_order = 1;
    cfg.music_grid = 128;
    auto [est1, r1] = music2d(z, mask, p, cfg);
    auto [est2, r2] = music2d(std::polar(1.0, 0.7) * z, mask, p, cfg);
    REQUIRE(est1.size() == 1);
    REQUIRE(est2.size() == 1);
    CHECK(est1[0].x == doctest::Approx(est2[0].x).epsilon(1e-12));
    CHECK(est1[0].y == doctest::Approx(est2[0].y).epsilon(1e-12));
}

TEST_CASE("MUSIC order handling") {
    RadarParams p = round_params(4, 4);  // subarray 2x2 -> order must be < 4
    DataMatrix z = DataMatrix::Ones(4, 4);
    ApertureMask mask = ApertureMask::full(16);
    BaselineConfig cfg;
    cfg.model_order = 4;
    CHECK_THROWS_AS(music2d(z, mask, p, cfg), OrderError);
    cfg.model_order = 0;
    auto [est, r_hat] = music2d(z, mask, p, cfg);
    CHECK(est.empty());
    CHECK(r_hat.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Hankel lift and restore are mutually inverse on structured data") {
    Rng rng(3);
    for (int n : {4, 5, 8}) {
        DataMatrix x = random_complex(n, n + 1, rng);
        auto g = detail::hankel_geometry(n, n + 1);
        CHECK(g.p1 + g.l1 - 1 == n);
        CHECK(g.p2 + g.l2 - 1 == n + 1);
        DataMatrix back = detail::hankel_restore(detail::hankel_lift(x, g), g, n, n + 1);
        CHECK((back - x).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("rank_truncate matches SVD truncation") {
    Rng rng(9);
    CMatrix h = random_complex(7, 5, rng);
    for (int k : {1, 2, 4}) {
        CMatrix ours = detail::rank_truncate(h, k);
        Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        CMatrix ref = CMatrix::Zero(7, 5);
        for (int i = 0; i < k; ++i)
            ref += svd.singularValues()(i) * svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
        CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
    // exact low-rank input is a fixed point
    CMatrix lr = random_complex(7, 2, rng) * random_complex(2, 5, rng);
    CHECK((detail::rank_truncate(lr, 2) - lr).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("Cadzow leaves noiseless full-aperture data unchanged") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({0.5, 0.7, 1.0});
    scene.scatterers.push_back({-0.9, -0.4, 1.3});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = ApertureMask::full(p.nm());
    BaselineConfig cfg;
    cfg.model_order = 2;
    cfg.cadzow_iters = 5;
    Eigen::VectorXcd out = cadzow(z, mask, cfg);
    double rel = (out - vectorize(z)).norm() / vectorize(z).norm();
    CHECK(rel < 1e-10);
}

TEST_CASE("Cadzow completes missing entries of a noiseless sparse scene") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({0.6, 0.8, 1.0});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = random_mask(p.nm(), 44, 21);
    BaselineConfig cfg;
    cfg.model_order = 1;
    cfg.cadzow_iters = 60;
    Eigen::VectorXcd out = cadzow(z, mask, cfg);
    double rel = (out - vectorize(z)).norm() / vectorize(z).norm();
    CHECK(rel < 1e-2);
}

TEST_CASE("Cadzow rejects an infeasible model order") {
    DataMatrix z = DataMatrix::Ones(3, 3);
    ApertureMask mask = ApertureMask::full(9);
    BaselineConfig cfg;
    cfg.model_order = 5;  // Hankel lift is 4x4 at most here
    CHECK_THROWS_AS(cadzow(z, mask, cfg), OrderError);
}

TEST_CASE("SL0 reproduces fully observed data exactly") {
    // full aperture: the affine projection pins A s = z, so the synthesis
    // reproduces the data bit-for-bit up to roundoff
    Rng rng(17);
    DataMatrix z = random_complex(6, 6, rng);
    ApertureMask mask = ApertureMask::full(36);
    BaselineConfig cfg;
    auto [coeffs, r_hat] = sl0(z, mask, cfg);
    CHECK((r_hat - vectorize(z)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("SL0 completes an on-grid sparse scene from partial data") {
    // scatterer placed so its 2D frequency lands on the oversampled DFT grid:
    // alpha x / 2 pi = p / (g N), beta y / 2 pi = q / (g M)
    RadarParams p = round_params();
    BaselineConfig cfg;
    cfg.sl0_grid_factor = 2;
    double x = 2.0 * M_PI * 3.0 / (cfg.sl0_grid_factor * 8) / p.cross_range_slope();
    double y = 2.0 * M_PI * 5.0 / (cfg.sl0_grid_factor * 8) / p.range_slope();
    Scene scene;
    scene.scatterers.push_back({x, y, 1.0});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = random_mask(p.nm(), 40, 7);
    DataMatrix z_masked = DataMatrix::Zero(8, 8);
    for (int idx : mask.observed) z_masked(idx / 8, idx % 8) = z(idx / 8, idx % 8);
    auto [coeffs, r_hat] = sl0(z_masked, mask, cfg);
    double rel = (r_hat - vectorize(z)).norm() / vectorize(z).norm();
    CHECK(rel < 1e-3);
}

TEST_CASE("SL0 sigma schedule decays geometrically and sparsifies") {
    RadarParams p = round_params();
    Scene scene;
    scene.scatterers.push_back({0.4, 0.6, 1.0});
    DataMatrix z = synthesize_echo(scene, p);
    ApertureMask mask = random_mask(p.nm(), 32, 3);
    DataMatrix z_masked = DataMatrix::Zero(8, 8);
    for (int idx : mask.observed) z_masked(idx / 8, idx % 8) = z(idx / 8, idx % 8);
    BaselineConfig cfg;
    detail::Sl0Trace trace;
    sl0(z_masked, mask, cfg, &trace);
    REQUIRE(trace.sigmas.size() >= 3);
    REQUIRE(trace.sigmas.size() == trace.active_counts.size());
    for (size_t i = 1; i < trace.sigmas.size(); ++i)
        CHECK(trace.sigmas[i] ==
              doctest::Approx(trace.sigmas[i - 1] * cfg.sl0_sigma_decay).epsilon(1e-12));
    // the surviving support is a small fraction of the 256-atom dictionary
    CHECK(trace.active_counts.back() < 128);
}

TEST_CASE("SL0 maps zero data to zero") {
    DataMatrix z = DataMatrix::Zero(4, 4);
    ApertureMask mask = random_mask(16, 8, 1);
    BaselineConfig cfg;
    auto [coeffs, r_hat] = sl0(z, mask, cfg);
    CHECK(coeffs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r_hat.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("baseline config validation") {
    BaselineConfig cfg;
    cfg.model_order = -1;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = BaselineConfig{};
    cfg.sl0_sigma_decay = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = BaselineConfig{};
    cfg.music_grid = 1;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}
