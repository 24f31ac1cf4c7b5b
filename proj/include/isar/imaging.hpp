#ifndef ISAR_IMAGING_HPP
#define ISAR_IMAGING_HPP

#include <string>
#include <vector>

#include "isar/baselines.hpp"
#include "isar/model.hpp"
#include "isar/toeplitz.hpp"

namespace isar {

struct IsarImage {
    Eigen::MatrixXd pixels;  // non-negative; rows follow x, columns follow y
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    bool normalized = false;
};

/// Magnitude image of the recovered echo vector: reshape to N x M, centered
/// zero-padded 2D DFT, axes mapped to meters through the phase slopes, and
/// max-normalized (skipped for an all-zero input).
IsarImage form_image(const Eigen::VectorXcd& r_hat, const RadarParams& params,
                     int zero_pad = 4);

/// Scatterer read-out from the lag array: eigenpairs of T(u_hat) above
/// 1e-6 * lambda_max (at most K), 2D frequency per eigenvector by zero-padded
/// DFT peak with quadratic interpolation.  Amplitudes are eigenvalue-based;
/// the overload with data refines them by least squares on the observed set.
std::vector<ScattererEstimate> extract_scatterers(const ToeplitzParam& u_hat, int k,
                                                  const RadarParams& params);
std::vector<ScattererEstimate> extract_scatterers(const ToeplitzParam& u_hat, int k,
                                                  const RadarParams& params,
                                                  const DataMatrix& z_obs,
                                                  const ApertureMask& mask);

/// 16-bit binary PGM plus a sidecar text file (<path>.txt) with the extent
/// and normalization flag.
void write_pgm16(const std::string& path, const IsarImage& image);

/// Optional CSV of scatterer estimates (x, y, re, im).
void write_scatterers_csv(const std::string& path,
                          const std::vector<ScattererEstimate>& scatterers);

}  // namespace isar

#endif
