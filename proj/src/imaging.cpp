#include "isar/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "isar/errors.hpp"
#include "isar/linalg.hpp"

namespace isar {

namespace {
constexpr double kPi = std::numbers::pi;

/// Peak bin of a magnitude matrix with 3-point quadratic refinement per axis
/// (periodic neighbors).  Returns fractional (row, col).
std::pair<double, double> refined_peak(const Eigen::MatrixXd& mag) {
    int rows = static_cast<int>(mag.rows()), cols = static_cast<int>(mag.cols());
    int pr = 0, pc = 0;
    mag.maxCoeff(&pr, &pc);
    auto interp = [](double lo, double mid, double hi) {
        double denom = lo - 2.0 * mid + hi;
        if (denom >= 0.0) return 0.0;  // flat or not a proper maximum
        double delta = 0.5 * (lo - hi) / denom;
        return std::clamp(delta, -0.5, 0.5);
    };
    double dr = rows > 1 ? interp(mag((pr + rows - 1) % rows, pc), mag(pr, pc),
                                  mag((pr + 1) % rows, pc))
                         : 0.0;
    double dc = cols > 1 ? interp(mag(pr, (pc + cols - 1) % cols), mag(pr, pc),
                                  mag(pr, (pc + 1) % cols))
                         : 0.0;
    return {pr + dr, pc + dc};
}

}  // namespace

IsarImage form_image(const Eigen::VectorXcd& r_hat, const RadarParams& params, int zero_pad) {
    params.validate();
    if (r_hat.size() != params.nm()) throw DimensionError("form_image: r_hat length mismatch");
    DataMatrix data = unvectorize(r_hat, params.num_angles, params.num_freqs);
    // Conjugation flips the phase convention so pixel axes grow with (x, y).
    CMatrix spectrum = dft2(data.conjugate(), zero_pad);
    IsarImage image;
    image.pixels = spectrum.cwiseAbs();

    const int rows = static_cast<int>(image.pixels.rows());
    const int cols = static_cast<int>(image.pixels.cols());
    const double alpha = params.cross_range_slope();
    const double beta = params.range_slope();
    auto axis_value = [](int bin, int size, double slope) {
        if (slope == 0.0) return 0.0;
        double nu = static_cast<double>(bin - size / 2) / size;
        return 2.0 * kPi * nu / slope;
    };
    image.x_min = axis_value(0, rows, alpha);
    image.x_max = axis_value(rows - 1, rows, alpha);
    image.y_min = axis_value(0, cols, beta);
    image.y_max = axis_value(cols - 1, cols, beta);

    double peak = image.pixels.maxCoeff();
    if (peak > 0.0) {
        image.pixels /= peak;
        image.normalized = true;
    }
    return image;
}

std::vector<ScattererEstimate> extract_scatterers(const ToeplitzParam& u_hat, int k,
                                                  const RadarParams& params) {
    params.validate();
    if (k < 0) throw ParameterError("extract_scatterers: K must be >= 0");
    if (u_hat.num_angles != params.num_angles || u_hat.num_freqs != params.num_freqs)
        throw DimensionError("extract_scatterers: lag array does not match params");

    EigenDecomposition eig = hermitian_eig(build_toeplitz(u_hat));
    const int nm = u_hat.nm();
    double lam_max = eig.eigenvalues.maxCoeff();
    if (lam_max <= 0.0) return {};
    const double threshold = 1e-6 * lam_max;

    const double alpha = params.cross_range_slope();
    const double beta = params.range_slope();
    const int pad = 8;
    std::vector<ScattererEstimate> estimates;
    for (int i = 0; i < k; ++i) {
        int idx = nm - 1 - i;
        if (idx < 0 || eig.eigenvalues[idx] <= threshold) break;
        DataMatrix mode =
            unvectorize(eig.eigenvectors.col(idx), params.num_angles, params.num_freqs);
        Eigen::MatrixXd mag = dft2(mode.conjugate(), pad).cwiseAbs();
        auto [pr, pc] = refined_peak(mag);
        double nu_n = (pr - static_cast<double>(mag.rows() / 2)) / mag.rows();
        double nu_m = (pc - static_cast<double>(mag.cols() / 2)) / mag.cols();
        ScattererEstimate est;
        est.x = alpha != 0.0 ? 2.0 * kPi * nu_n / alpha : 0.0;
        est.y = beta != 0.0 ? 2.0 * kPi * nu_m / beta : 0.0;
        est.amplitude = eig.eigenvalues[idx] / static_cast<double>(nm);
        estimates.push_back(est);
    }
    return estimates;
}

std::vector<ScattererEstimate> extract_scatterers(const ToeplitzParam& u_hat, int k,
                                                  const RadarParams& params,
                                                  const DataMatrix& z_obs,
                                                  const ApertureMask& mask) {
    std::vector<ScattererEstimate> estimates = extract_scatterers(u_hat, k, params);
    if (estimates.empty()) return estimates;
    mask.validate();
    CMatrix atoms_obs(mask.observed.size(), estimates.size());
    Eigen::VectorXcd z_vec = vectorize(z_obs);
    Eigen::VectorXcd z_omega(mask.observed.size());
    for (size_t col = 0; col < estimates.size(); ++col) {
        Scene single;
        single.scatterers.push_back({estimates[col].x, estimates[col].y, 1.0});
        Eigen::VectorXcd atom = vectorize(synthesize_echo(single, params));
        for (size_t row = 0; row < mask.observed.size(); ++row)
            atoms_obs(row, col) = atom[mask.observed[row]];
    }
    for (size_t row = 0; row < mask.observed.size(); ++row)
        z_omega[row] = z_vec[mask.observed[row]];
    Eigen::VectorXcd coeffs = atoms_obs.colPivHouseholderQr().solve(z_omega);
    for (size_t col = 0; col < estimates.size(); ++col) estimates[col].amplitude = coeffs[col];
    return estimates;
}

void write_pgm16(const std::string& path, const IsarImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_pgm16: cannot open " + path);
    const int rows = static_cast<int>(image.pixels.rows());
    const int cols = static_cast<int>(image.pixels.cols());
    out << "P5\n" << cols << " " << rows << "\n65535\n";
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double v = std::clamp(image.pixels(r, c), 0.0, 1.0);
            auto word = static_cast<unsigned>(std::lround(v * 65535.0));
            unsigned char bytes[2] = {static_cast<unsigned char>(word >> 8),
                                      static_cast<unsigned char>(word & 0xff)};
            out.write(reinterpret_cast<const char*>(bytes), 2);
        }
    if (!out) throw IoError("write_pgm16: write failed for " + path);

    std::ofstream sidecar(path + ".txt");
    if (!sidecar) throw IoError("write_pgm16: cannot open sidecar for " + path);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "x_min = %.10g\nx_max = %.10g\ny_min = %.10g\ny_max = %.10g\n"
                  "normalized = %d\n",
                  image.x_min, image.x_max, image.y_min, image.y_max,
                  image.normalized ? 1 : 0);
    sidecar << buf;
}

void write_scatterers_csv(const std::string& path,
                          const std::vector<ScattererEstimate>& scatterers) {
    std::ofstream out(path);
    if (!out) throw IoError("write_scatterers_csv: cannot open " + path);
    out << "x,y,amplitude_re,amplitude_im\n";
    char line[160];
    for (const auto& s : scatterers) {
        std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g\n", s.x, s.y,
                      s.amplitude.real(), s.amplitude.imag());
        out << line;
    }
}

}  // namespace isar
