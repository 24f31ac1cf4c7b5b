#include "isar/frand.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "isar/errors.hpp"

namespace isar {

void SolverConfig::validate() const {
    if (lambda < 0.0) throw ParameterError("SolverConfig: lambda must be >= 0");
    if (rho <= 0.0) throw ParameterError("SolverConfig: rho must be positive");
    if (max_iters < 1) throw ParameterError("SolverConfig: max_iters must be >= 1");
    if (reweight_rounds < 1) throw ParameterError("SolverConfig: reweight_rounds must be >= 1");
    if (epsilon_scale < 0.0 || epsilon_floor <= 0.0)
        throw ParameterError("SolverConfig: invalid epsilon rule");
}

double select_lambda(double sigma_n, int nm, double calibration) {
    if (sigma_n < 0.0) throw ParameterError("select_lambda: sigma_n must be >= 0");
    if (nm < 1) throw ParameterError("select_lambda: nm must be >= 1");
    return calibration * sigma_n * std::sqrt(static_cast<double>(nm) * std::log(static_cast<double>(nm)));
}

CMatrix bordered_matrix(const ToeplitzParam& u, const Eigen::VectorXcd& r, double t) {
    const int nm = u.nm();
    CMatrix b(nm + 1, nm + 1);
    b.topLeftCorner(nm, nm) = build_toeplitz(u);
    b.topRightCorner(nm, 1) = r;
    b.bottomLeftCorner(1, nm) = r.adjoint();
    b(nm, nm) = t;
    return b;
}

double frand_objective(const Eigen::VectorXcd& r, const ToeplitzParam& u, double t,
                       const Eigen::VectorXcd& z_vec, const ApertureMask& mask,
                       const CMatrix& w, double lambda) {
    double fidelity = 0.0;
    for (int idx : mask.observed) fidelity += std::norm(r[idx] - z_vec[idx]);
    // Tr(W T(u)) through the lag parameterization: orbit-weighted inner product.
    double trace_term = 0.0;
    ToeplitzParam w_lags = toeplitz_adjoint(w, u.num_angles, u.num_freqs);
    for (int p = -(u.num_angles - 1); p <= u.num_angles - 1; ++p)
        for (int q = -(u.num_freqs - 1); q <= u.num_freqs - 1; ++q)
            trace_term += u.orbit_size(p, q) *
                          (std::conj(w_lags.lag(p, q)) * u.lag(p, q)).real();
    return fidelity + lambda * (trace_term + t);
}

IterateDiagnostics admm_iterate(SolverState& state, const Eigen::VectorXcd& z_vec,
                                const ApertureMask& mask, const CMatrix& w,
                                const SolverConfig& cfg) {
    const int nm = state.u.nm();
    const double rho = cfg.rho;
    const double lam = cfg.lambda;

    // Q = Z + Lambda / rho, the anchor of every primal block minimizer.
    CMatrix q = state.z + state.lambda / rho;

    // t-block: minimize lambda t + (rho/2)(t - q_tt)^2.
    state.t = q(nm, nm).real() - lam / rho;

    // u-block: projection of Q0 - (lambda/rho) W onto the two-level Toeplitz
    // subspace, which is exactly the averaging adjoint.
    CMatrix u_target = q.topLeftCorner(nm, nm) - (lam / rho) * w;
    state.u = toeplitz_adjoint(u_target, state.u.num_angles, state.u.num_freqs);

    // r-block: data fidelity acts only on the observed indices.
    Eigen::VectorXcd q1 = q.topRightCorner(nm, 1);
    state.r = q1;
    for (int idx : mask.observed)
        state.r[idx] = (z_vec[idx] + rho * q1[idx]) / (1.0 + rho);

    // Z-block: PSD projection of the bordered matrix shifted by the multiplier.
    CMatrix b = bordered_matrix(state.u, state.r, state.t);
    CMatrix z_prev = std::move(state.z);
    state.z = psd_project(b - state.lambda / rho);

    // Multiplier step.
    state.lambda += rho * (state.z - b);
    state.lambda = 0.5 * (state.lambda + state.lambda.adjoint()).eval();
    state.iteration += 1;

    IterateDiagnostics diag;
    diag.primal = (state.z - b).norm();
    diag.dual = rho * (state.z - z_prev).norm();
    return diag;
}

SolveResult solve(const DataMatrix& z_obs, const ApertureMask& mask, const SolverConfig& cfg) {
    cfg.validate();
    mask.validate();
    if (mask.nm_total != z_obs.size())
        throw DimensionError("solve: mask does not match data dimensions");
    const int num_angles = static_cast<int>(z_obs.rows());
    const int num_freqs = static_cast<int>(z_obs.cols());
    const int nm = num_angles * num_freqs;
    const auto t_start = std::chrono::steady_clock::now();

    Eigen::VectorXcd z_vec = vectorize(z_obs);
    const double tol_primal =
        cfg.tol_primal > 0.0 ? cfg.tol_primal : 1e-6 * std::sqrt(static_cast<double>(nm));
    const double tol_dual =
        cfg.tol_dual > 0.0 ? cfg.tol_dual : 1e-6 * std::sqrt(static_cast<double>(nm));

    SolverState state;
    state.u = ToeplitzParam::zero(num_angles, num_freqs);
    state.r = Eigen::VectorXcd::Zero(nm);
    for (int idx : mask.observed) state.r[idx] = z_vec[idx];
    state.z = CMatrix::Zero(nm + 1, nm + 1);
    state.lambda = CMatrix::Zero(nm + 1, nm + 1);

    SolveResult result;
    CMatrix w = CMatrix::Identity(nm, nm);
    for (int round = 0; round < cfg.reweight_rounds; ++round) {
        if (round > 0 && cfg.weighting_enabled) {
            CMatrix t_prev = build_toeplitz(state.u);
            double lam_max = hermitian_eig(t_prev).eigenvalues.maxCoeff();
            double eps = cfg.epsilon_scale * std::max(lam_max, 0.0) + cfg.epsilon_floor;
            w = weight_matrix(state.u, eps);
        }
        for (int it = 0; it < cfg.max_iters; ++it) {
            IterateDiagnostics diag = admm_iterate(state, z_vec, mask, w, cfg);
            if (!std::isfinite(diag.primal) || !std::isfinite(diag.dual))
                throw SolverError("solve: ADMM residual diverged", state.iteration);
            result.primal_residuals.push_back(diag.primal);
            result.dual_residuals.push_back(diag.dual);
            result.objectives.push_back(
                frand_objective(state.r, state.u, state.t, z_vec, mask, w, cfg.lambda));
            if (diag.primal < tol_primal && diag.dual < tol_dual) break;
        }
    }

    result.r_hat = state.r;
    result.u_hat = state.u;
    result.t_hat = state.t;
    result.iterations_run = state.iteration;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

void write_diagnostics_csv(const std::string& path, const SolveResult& result) {
    std::ofstream out(path);
    if (!out) throw IoError("write_diagnostics_csv: cannot open " + path);
    out << "iteration,primal,dual,objective\n";
    char line[128];
    for (size_t i = 0; i < result.primal_residuals.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.10g,%.10g,%.10g\n", i + 1,
                      result.primal_residuals[i], result.dual_residuals[i],
                      result.objectives[i]);
        out << line;
    }
}

}  // namespace isar
