#ifndef ISAR_FRAND_HPP
#define ISAR_FRAND_HPP

#include <vector>

#include "isar/model.hpp"
#include "isar/toeplitz.hpp"

namespace isar {

struct SolverConfig {
    double lambda = 0.0;       // regularization weight, >= 0
    double rho = 1.0;          // ADMM penalty parameter, > 0
    int max_iters = 1000;      // inner ADMM iterations per reweighting round
    double tol_primal = -1.0;  // < 0 selects the default 1e-6 * sqrt(NM)
    double tol_dual = -1.0;
    int reweight_rounds = 3;
    // Weighting floor rule: eps = epsilon_scale * lambda_max(T(u)) + epsilon_floor.
    double epsilon_scale = 0.1;
    double epsilon_floor = 1e-8;
    bool weighting_enabled = true;

    void validate() const;
};

/// Full ADMM iterate for the bordered-matrix splitting of the weighted
/// atomic-norm denoising program.
struct SolverState {
    double t = 0.0;
    ToeplitzParam u;
    Eigen::VectorXcd r;
    CMatrix z;       // (NM+1) x (NM+1), PSD after every update
    CMatrix lambda;  // multiplier, Hermitian
    int iteration = 0;
};

struct SolveResult {
    Eigen::VectorXcd r_hat;
    ToeplitzParam u_hat;
    double t_hat = 0.0;
    std::vector<double> primal_residuals;
    std::vector<double> dual_residuals;
    std::vector<double> objectives;
    int iterations_run = 0;
    double wall_time = 0.0;
};

/// lambda = calibration * sigma_n * sqrt(NM log NM); the standard AST-style
/// rule (the reference value the harness feeds to the solver).
double select_lambda(double sigma_n, int nm, double calibration = 1.0);

/// Objective of the weighted denoising program:
/// ||r_Omega - z_Omega||^2 + lambda * (Tr(W T(u)) + t).
double frand_objective(const Eigen::VectorXcd& r, const ToeplitzParam& u, double t,
                       const Eigen::VectorXcd& z_vec, const ApertureMask& mask,
                       const CMatrix& w, double lambda);

/// Bordered SDP variable [T(u), r; r*, t].
CMatrix bordered_matrix(const ToeplitzParam& u, const Eigen::VectorXcd& r, double t);

/// One ADMM sweep: exact block minimizers for (t, u, r) given (Z, Lambda),
/// then PSD projection for Z and the multiplier step.  Appends nothing;
/// residuals are returned through the state-external result in solve().
/// primal = ||Z - bordered||_F after the sweep, dual = rho ||Z - Z_prev||_F.
struct IterateDiagnostics {
    double primal = 0.0;
    double dual = 0.0;
};
IterateDiagnostics admm_iterate(SolverState& state, const Eigen::VectorXcd& z_vec,
                                const ApertureMask& mask, const CMatrix& w,
                                const SolverConfig& cfg);

/// FRAND: reweighted atomic-norm denoising.  Round 1 runs with W = I; later
/// rounds recompute W from the previous round's lag array.  Throws
/// SolverError if residuals go non-finite.
SolveResult solve(const DataMatrix& z_obs, const ApertureMask& mask, const SolverConfig& cfg);

/// Writes per-iteration diagnostics as CSV (iteration, primal, dual, objective).
void write_diagnostics_csv(const std::string& path, const SolveResult& result);

}  // namespace isar

#endif
