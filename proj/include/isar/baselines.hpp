#ifndef ISAR_BASELINES_HPP
#define ISAR_BASELINES_HPP

#include <utility>
#include <vector>

#include "isar/linalg.hpp"
#include "isar/model.hpp"

namespace isar {

struct BaselineConfig {
    int model_order = 3;          // K for MUSIC and Cadzow
    int music_grid = 128;         // pseudospectrum grid per axis
    int cadzow_iters = 20;
    double sl0_sigma_decay = 0.6;  // in (0, 1)
    int sl0_inner_steps = 3;
    int sl0_grid_factor = 2;       // dictionary oversampling per axis
    double sl0_mu = 2.0;           // gradient step scale
    double sl0_sigma_ratio = 1e-8; // stop when sigma < ratio * sigma_0

    void validate() const;
};

struct ScattererEstimate {
    double x = 0.0;
    double y = 0.0;
    std::complex<double> amplitude;
};

/// 2D MUSIC with spatial smoothing (subarray ceil(N/2) x ceil(M/2)).  Missing
/// aperture entries are zero-filled before smoothing; this degrades gracefully
/// at low sample counts and is the documented limitation of the method here.
/// Returns the top-K scatterer estimates and the re-synthesized echo vector.
std::pair<std::vector<ScattererEstimate>, Eigen::VectorXcd> music2d(
    const DataMatrix& z_obs, const ApertureMask& mask, const RadarParams& params,
    const BaselineConfig& cfg);

/// Cadzow denoising: alternate rank-K truncation of the two-level Hankel lift
/// (pencil split ceil((N+1)/2), ceil((M+1)/2)) with Hankel structure
/// restoration and re-imposition of the observed data.
Eigen::VectorXcd cadzow(const DataMatrix& z_obs, const ApertureMask& mask,
                        const BaselineConfig& cfg);

namespace detail {

/// Pencil split of the two-level Hankel lift.
struct HankelGeometry {
    int p1, l1, p2, l2;
    int rows() const { return p1 * p2; }
    int cols() const { return l1 * l2; }
};
HankelGeometry hankel_geometry(int n_dim, int m_dim);
CMatrix hankel_lift(const DataMatrix& x, const HankelGeometry& g);
/// Anti-diagonal orbit averaging back to the N x M data matrix.
DataMatrix hankel_restore(const CMatrix& h, const HankelGeometry& g, int n_dim, int m_dim);
/// Frobenius-nearest rank-k matrix via the Hermitian dilation of h.
CMatrix rank_truncate(const CMatrix& h, int k);

/// Per-sigma record of the smoothed-l0 schedule.
struct Sl0Trace {
    std::vector<double> sigmas;
    std::vector<int> active_counts;  // entries with |coefficient| > sigma
};

}  // namespace detail

/// Smoothed-l0 recovery on an oversampled 2D DFT dictionary restricted to the
/// observed rows; returns the coefficient grid and the completed echo vector.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> sl0(const DataMatrix& z_obs,
                                                  const ApertureMask& mask,
                                                  const BaselineConfig& cfg,
                                                  detail::Sl0Trace* trace = nullptr);

}  // namespace isar

#endif
