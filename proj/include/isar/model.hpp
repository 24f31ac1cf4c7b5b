#ifndef ISAR_MODEL_HPP
#define ISAR_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace isar {

/// Dechirped N x M echo matrix; row n = observation angle, column m = frequency step.
using DataMatrix = Eigen::MatrixXcd;

/// Stepped-frequency radar geometry.  Angle grid is uniform over
/// [0, theta_span]; frequency grid is f0 + m * delta_f.
struct RadarParams {
    double f0 = 10e9;          // carrier start frequency, Hz
    double delta_f = 12.5e6;   // frequency step, Hz
    int num_freqs = 40;        // M
    int num_angles = 40;       // N
    double theta_span = 0.1;   // total rotation angle, rad
    double c = 299792458.0;    // propagation speed, m/s

    void validate() const;
    int nm() const { return num_angles * num_freqs; }
    /// theta_n = n * theta_span / (N - 1); zero when N == 1.
    double theta(int n) const;
    double freq(int m) const { return f0 + m * delta_f; }

    /// Cross-range phase slope per angle index: h_n = alpha * n.
    double cross_range_slope() const;
    /// Range phase slope per frequency index: h_m = 4 pi f0 / c + beta * m.
    double range_slope() const { return 4.0 * 3.141592653589793238 * delta_f / c; }
};

struct Scatterer {
    double x = 0.0;      // cross-range, m
    double y = 0.0;      // range, m
    double sigma = 1.0;  // real reflectivity, > 0
};

struct Scene {
    std::vector<Scatterer> scatterers;
    void validate() const;
};

/// Observed subset of the length-NM vectorization (n-major, m-minor),
/// stored as ascending unique flat indices.
struct ApertureMask {
    std::vector<int> observed;
    int nm_total = 0;

    void validate() const;
    bool is_full() const { return static_cast<int>(observed.size()) == nm_total; }
    static ApertureMask full(int nm_total);
};

/// Flat index of entry (n, m); matches vec(R) with n-major ordering.
inline int flat_index(int n, int m, int num_freqs) { return n * num_freqs + m; }

/// vec(R): length-NM vector, n-major, m-minor.
Eigen::VectorXcd vectorize(const DataMatrix& data);
/// Inverse of vectorize.
DataMatrix unvectorize(const Eigen::VectorXcd& vec, int num_angles, int num_freqs);

/// Angle/frequency phase parameters (h_n, h_m), both in rad/m.  The carrier
/// approximation f_m ~ f0 is applied only inside h_n.
std::pair<Eigen::VectorXd, Eigen::VectorXd> angle_freq_params(const RadarParams& params);

/// Noiseless dechirped echo: entry (n, m) = sum_k sigma_k exp(-j h_n x_k - j h_m y_k).
DataMatrix synthesize_echo(const Scene& scene, const RadarParams& params);

/// Uniform random subset of n_observed indices without replacement.
ApertureMask random_mask(int nm_total, int n_observed, std::uint64_t seed);

/// Circular complex AWGN on the observed entries, zeros elsewhere.  Noise
/// variance is set from the mean observed signal power and the requested SNR;
/// snr_db = +infinity passes the observed entries through unchanged.
DataMatrix add_awgn(const DataMatrix& data, const ApertureMask& mask, double snr_db,
                    std::uint64_t seed);

/// Synthetic cross-shaped point-scatterer layout (4 arms + center body) inside
/// a 1 m x 1 m box, reflectivities in [0.5, 1.5].  A stand-in demo target; not
/// measured data.
Scene quadcopter_scene();

/// Binary DataMatrix file: 16-byte magic/version header, u32 N, u32 M, then
/// N*M little-endian f64 (re, im) pairs in row-major order.
void save_data_matrix(const std::string& path, const DataMatrix& data);
DataMatrix load_data_matrix(const std::string& path);

}  // namespace isar

#endif
