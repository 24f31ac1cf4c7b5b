#include "isar/metrics.hpp"

#include <cmath>

#include "isar/errors.hpp"

namespace isar {

namespace {
void check_shapes(Eigen::Index r1, Eigen::Index c1, Eigen::Index r2, Eigen::Index c2) {
    if (r1 != r2 || c1 != c2) throw DimensionError("metrics: shape mismatch");
}
}  // namespace

double mse(const Eigen::MatrixXcd& ref, const Eigen::MatrixXcd& est) {
    check_shapes(ref.rows(), ref.cols(), est.rows(), est.cols());
    return (ref - est).squaredNorm() / static_cast<double>(ref.size());
}

double mse(const Eigen::VectorXcd& ref, const Eigen::VectorXcd& est) {
    check_shapes(ref.size(), 1, est.size(), 1);
    return (ref - est).squaredNorm() / static_cast<double>(ref.size());
}

double mse(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est) {
    check_shapes(ref.rows(), ref.cols(), est.rows(), est.cols());
    return (ref - est).squaredNorm() / static_cast<double>(ref.size());
}

double psnr(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est) {
    check_shapes(ref.rows(), ref.cols(), est.rows(), est.cols());
    double peak = ref.cwiseAbs().maxCoeff();
    if (peak == 0.0) throw ParameterError("psnr: reference image is all zero");
    double err = mse(ref, est);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / err);
}

double ssim(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est) {
    check_shapes(ref.rows(), ref.cols(), est.rows(), est.cols());
    constexpr int kWindow = 11;
    constexpr double kSigma = 1.5;
    if (ref.rows() < kWindow || ref.cols() < kWindow)
        throw DimensionError("ssim: image smaller than the 11x11 window");

    // Normalized Gaussian window.
    Eigen::MatrixXd weights(kWindow, kWindow);
    for (int i = 0; i < kWindow; ++i)
        for (int j = 0; j < kWindow; ++j) {
            double di = i - (kWindow - 1) / 2.0;
            double dj = j - (kWindow - 1) / 2.0;
            weights(i, j) = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
        }
    weights /= weights.sum();

    double level = ref.cwiseAbs().maxCoeff();
    if (level == 0.0) level = 1.0;  // degenerate all-zero reference
    const double c1 = (0.01 * level) * (0.01 * level);
    const double c2 = (0.03 * level) * (0.03 * level);

    double total = 0.0;
    int windows = 0;
    for (Eigen::Index r = 0; r + kWindow <= ref.rows(); ++r)
        for (Eigen::Index c = 0; c + kWindow <= ref.cols(); ++c) {
            auto a = ref.block(r, c, kWindow, kWindow);
            auto b = est.block(r, c, kWindow, kWindow);
            double mu_a = (weights.array() * a.array()).sum();
            double mu_b = (weights.array() * b.array()).sum();
            double var_a = (weights.array() * (a.array() - mu_a).square()).sum();
            double var_b = (weights.array() * (b.array() - mu_b).square()).sum();
            double cov = (weights.array() * (a.array() - mu_a) * (b.array() - mu_b)).sum();
            double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
            double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
            total += num / den;
            ++windows;
        }
    return total / windows;
}

}  // namespace isar
