#ifndef ISAR_METRICS_HPP
#define ISAR_METRICS_HPP

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace isar {

struct MetricReport {
    double mse = 0.0;
    double psnr_db = 0.0;  // +infinity when the estimate is exact
    double ssim = 0.0;
    int n_trials = 1;
    std::vector<double> per_trial_mse, per_trial_psnr, per_trial_ssim;
};

/// Mean of |ref - est|^2 over all entries; complex-aware.
double mse(const Eigen::MatrixXcd& ref, const Eigen::MatrixXcd& est);
double mse(const Eigen::VectorXcd& ref, const Eigen::VectorXcd& est);
double mse(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est);

/// 10 log10(peak^2 / mse) with peak = max |ref|; +infinity when mse = 0.
/// Throws on an all-zero reference.
double psnr(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est);

/// Mean local SSIM over valid 11x11 windows, Gaussian weights (std 1.5),
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2 with L = max(ref).
double ssim(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& est);

}  // namespace isar

#endif
