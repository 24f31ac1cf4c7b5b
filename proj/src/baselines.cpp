#include "isar/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isar/errors.hpp"
#include "isar/linalg.hpp"

namespace isar {

namespace {
constexpr double kPi = std::numbers::pi;

/// Re-zero everything outside the observed set.
DataMatrix zero_filled(const DataMatrix& z_obs, const ApertureMask& mask) {
    DataMatrix out = DataMatrix::Zero(z_obs.rows(), z_obs.cols());
    const int num_freqs = static_cast<int>(z_obs.cols());
    for (int idx : mask.observed) out(idx / num_freqs, idx % num_freqs) = z_obs(idx / num_freqs, idx % num_freqs);
    return out;
}
}  // namespace

void BaselineConfig::validate() const {
    if (model_order < 0) throw ParameterError("BaselineConfig: model_order must be >= 0");
    if (music_grid < 2) throw ParameterError("BaselineConfig: music_grid must be >= 2");
    if (cadzow_iters < 1) throw ParameterError("BaselineConfig: cadzow_iters must be >= 1");
    if (sl0_sigma_decay <= 0.0 || sl0_sigma_decay >= 1.0)
        throw ParameterError("BaselineConfig: sl0_sigma_decay must be in (0, 1)");
    if (sl0_inner_steps < 1) throw ParameterError("BaselineConfig: sl0_inner_steps must be >= 1");
    if (sl0_grid_factor < 1) throw ParameterError("BaselineConfig: sl0_grid_factor must be >= 1");
}

std::pair<std::vector<ScattererEstimate>, Eigen::VectorXcd> music2d(
    const DataMatrix& z_obs, const ApertureMask& mask, const RadarParams& params,
    const BaselineConfig& cfg) {
    cfg.validate();
    mask.validate();
    params.validate();
    const int n_dim = static_cast<int>(z_obs.rows());
    const int m_dim = static_cast<int>(z_obs.cols());
    const int nm = n_dim * m_dim;
    const int order = cfg.model_order;

    if (order == 0)
        return {{}, Eigen::VectorXcd::Zero(nm)};

    const int sub_n = (n_dim + 1) / 2;
    const int sub_m = (m_dim + 1) / 2;
    const int sub_dim = sub_n * sub_m;
    if (order >= sub_dim)
        throw OrderError("music2d: model order must be below the subarray size");

    DataMatrix data = zero_filled(z_obs, mask);

    // Spatially smoothed covariance over all subarray shifts.
    CMatrix cov = CMatrix::Zero(sub_dim, sub_dim);
    Eigen::VectorXcd snapshot(sub_dim);
    int snapshots = 0;
    for (int sn = 0; sn + sub_n <= n_dim; ++sn)
        for (int sm = 0; sm + sub_m <= m_dim; ++sm) {
            for (int i = 0; i < sub_n; ++i)
                for (int j = 0; j < sub_m; ++j)
                    snapshot[i * sub_m + j] = data(sn + i, sm + j);
            cov.noalias() += snapshot * snapshot.adjoint();
            ++snapshots;
        }
    cov /= static_cast<double>(snapshots);

    EigenDecomposition eig = hermitian_eig(cov);
    // Signal subspace = top-order eigenvectors; pseudospectrum via the
    // complement: ||a||^2 - ||Es^H a||^2.
    CMatrix sig = eig.eigenvectors.rightCols(order);

    const int grid = cfg.music_grid;
    Eigen::MatrixXd pseudo(grid, grid);
    Eigen::VectorXcd steer(sub_dim);
    for (int gi = 0; gi < grid; ++gi) {
        double nu_n = -0.5 + static_cast<double>(gi) / grid;
        for (int gj = 0; gj < grid; ++gj) {
            double nu_m = -0.5 + static_cast<double>(gj) / grid;
            for (int i = 0; i < sub_n; ++i)
                for (int j = 0; j < sub_m; ++j)
                    steer[i * sub_m + j] = std::polar(1.0, -2.0 * kPi * (nu_n * i + nu_m * j));
            double total = static_cast<double>(sub_dim);
            double sig_part = (sig.adjoint() * steer).squaredNorm();
            pseudo(gi, gj) = 1.0 / std::max(total - sig_part, 1e-12);
        }
    }

    // Top-order local maxima on the periodic grid.
    struct Peak {
        double value;
        int gi, gj;
    };
    std::vector<Peak> peaks;
    for (int gi = 0; gi < grid; ++gi)
        for (int gj = 0; gj < grid; ++gj) {
            double v = pseudo(gi, gj);
            bool is_max = v >= pseudo((gi + 1) % grid, gj) &&
                          v > pseudo((gi + grid - 1) % grid, gj) &&
                          v >= pseudo(gi, (gj + 1) % grid) &&
                          v > pseudo(gi, (gj + grid - 1) % grid);
            if (is_max) peaks.push_back({v, gi, gj});
        }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.value > b.value; });
    if (static_cast<int>(peaks.size()) > order) peaks.resize(order);

    const double alpha = params.cross_range_slope();
    const double beta = params.range_slope();
    std::vector<ScattererEstimate> estimates;
    for (const auto& pk : peaks) {
        double nu_n = -0.5 + static_cast<double>(pk.gi) / grid;
        double nu_m = -0.5 + static_cast<double>(pk.gj) / grid;
        // Steering a(nu)[i] = exp(-j 2 pi nu i) matches the atom
        // exp(-j alpha x i) at nu_n = alpha x / (2 pi).
        ScattererEstimate est;
        est.x = alpha != 0.0 ? 2.0 * kPi * nu_n / alpha : 0.0;
        est.y = beta != 0.0 ? 2.0 * kPi * nu_m / beta : 0.0;
        estimates.push_back(est);
    }

    // Amplitudes by least squares of the full atoms against the observed data.
    Eigen::VectorXcd r_hat = Eigen::VectorXcd::Zero(nm);
    if (!estimates.empty()) {
        CMatrix atoms(nm, estimates.size());
        for (size_t k = 0; k < estimates.size(); ++k) {
            Scene single;
            single.scatterers.push_back({estimates[k].x, estimates[k].y, 1.0});
            atoms.col(k) = vectorize(synthesize_echo(single, params));
        }
        CMatrix atoms_obs(mask.observed.size(), estimates.size());
        Eigen::VectorXcd z_omega(mask.observed.size());
        Eigen::VectorXcd z_vec = vectorize(data);
        for (size_t i = 0; i < mask.observed.size(); ++i) {
            atoms_obs.row(i) = atoms.row(mask.observed[i]);
            z_omega[i] = z_vec[mask.observed[i]];
        }
        Eigen::VectorXcd coeffs =
            atoms_obs.colPivHouseholderQr().solve(z_omega);
        for (size_t k = 0; k < estimates.size(); ++k) estimates[k].amplitude = coeffs[k];
        r_hat = atoms * coeffs;
    }
    return {std::move(estimates), std::move(r_hat)};
}

namespace detail {

HankelGeometry hankel_geometry(int n_dim, int m_dim) {
    HankelGeometry g;
    g.p1 = (n_dim + 2) / 2;  // ceil((N + 1) / 2)
    g.l1 = n_dim - g.p1 + 1;
    g.p2 = (m_dim + 2) / 2;
    g.l2 = m_dim - g.p2 + 1;
    return g;
}

CMatrix hankel_lift(const DataMatrix& x, const HankelGeometry& g) {
    CMatrix h(g.rows(), g.cols());
    for (int i1 = 0; i1 < g.p1; ++i1)
        for (int i2 = 0; i2 < g.p2; ++i2)
            for (int j1 = 0; j1 < g.l1; ++j1)
                for (int j2 = 0; j2 < g.l2; ++j2)
                    h(i1 * g.p2 + i2, j1 * g.l2 + j2) = x(i1 + j1, i2 + j2);
    return h;
}

DataMatrix hankel_restore(const CMatrix& h, const HankelGeometry& g, int n_dim, int m_dim) {
    DataMatrix x = DataMatrix::Zero(n_dim, m_dim);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n_dim, m_dim);
    for (int i1 = 0; i1 < g.p1; ++i1)
        for (int i2 = 0; i2 < g.p2; ++i2)
            for (int j1 = 0; j1 < g.l1; ++j1)
                for (int j2 = 0; j2 < g.l2; ++j2) {
                    x(i1 + j1, i2 + j2) += h(i1 * g.p2 + i2, j1 * g.l2 + j2);
                    counts(i1 + j1, i2 + j2) += 1.0;
                }
    return x.cwiseQuotient(counts.cast<std::complex<double>>());
}

/// Frobenius-nearest rank-k matrix through the Hermitian dilation
/// [[0, H], [H^H, 0]], whose positive eigenpairs carry the singular triplets.
CMatrix rank_truncate(const CMatrix& h, int k) {
    const int rows = static_cast<int>(h.rows());
    const int cols = static_cast<int>(h.cols());
    CMatrix dilation = CMatrix::Zero(rows + cols, rows + cols);
    dilation.topRightCorner(rows, cols) = h;
    dilation.bottomLeftCorner(cols, rows) = h.adjoint();
    EigenDecomposition eig = hermitian_eig(dilation);
    CMatrix out = CMatrix::Zero(rows, cols);
    // Eigenvalues ascending; the top-k positive ones are the leading singular values.
    for (int i = 0; i < k; ++i) {
        int idx = rows + cols - 1 - i;
        double s = eig.eigenvalues[idx];
        if (s <= 0.0) break;
        Eigen::VectorXcd left = eig.eigenvectors.col(idx).head(rows);
        Eigen::VectorXcd right = eig.eigenvectors.col(idx).tail(cols);
        out.noalias() += 2.0 * s * left * right.adjoint();
    }
    return out;
}

}  // namespace detail

Eigen::VectorXcd cadzow(const DataMatrix& z_obs, const ApertureMask& mask,
                        const BaselineConfig& cfg) {
    cfg.validate();
    mask.validate();
    const int n_dim = static_cast<int>(z_obs.rows());
    const int m_dim = static_cast<int>(z_obs.cols());
    const int num_freqs = m_dim;
    detail::HankelGeometry geom = detail::hankel_geometry(n_dim, m_dim);
    if (cfg.model_order > std::min(geom.rows(), geom.cols()))
        throw OrderError("cadzow: model order exceeds the Hankel rank bound");

    DataMatrix x = zero_filled(z_obs, mask);
    for (int round = 0; round < cfg.cadzow_iters; ++round) {
        CMatrix lifted = detail::rank_truncate(detail::hankel_lift(x, geom), cfg.model_order);
        x = detail::hankel_restore(lifted, geom, n_dim, m_dim);
        for (int idx : mask.observed)
            x(idx / num_freqs, idx % num_freqs) = z_obs(idx / num_freqs, idx % num_freqs);
    }
    return vectorize(x);
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> sl0(const DataMatrix& z_obs,
                                                  const ApertureMask& mask,
                                                  const BaselineConfig& cfg,
                                                  detail::Sl0Trace* trace) {
    cfg.validate();
    mask.validate();
    const int n_dim = static_cast<int>(z_obs.rows());
    const int m_dim = static_cast<int>(z_obs.cols());
    const int nm = n_dim * m_dim;
    const int g = cfg.sl0_grid_factor;
    const int grid_n = g * n_dim, grid_m = g * m_dim;
    const int atoms = grid_n * grid_m;
    const double norm_scale = 1.0 / std::sqrt(static_cast<double>(nm));

    // Dictionary restricted to observed rows.  For integer oversampling the
    // frame is tight: A A^H = g^2 I, which makes the affine projection exact
    // and cheap.
    const int observed = static_cast<int>(mask.observed.size());
    CMatrix a(observed, atoms);
    for (int row = 0; row < observed; ++row) {
        int n = mask.observed[row] / m_dim;
        int m = mask.observed[row] % m_dim;
        for (int p = 0; p < grid_n; ++p)
            for (int q = 0; q < grid_m; ++q)
                a(row, p * grid_m + q) =
                    norm_scale *
                    std::polar(1.0, -2.0 * kPi * (static_cast<double>(p) * n / grid_n +
                                                  static_cast<double>(q) * m / grid_m));
    }
    Eigen::VectorXcd z_omega(observed);
    for (int row = 0; row < observed; ++row) {
        int idx = mask.observed[row];
        z_omega[row] = z_obs(idx / m_dim, idx % m_dim);
    }

    const double tight = static_cast<double>(g) * g;
    Eigen::VectorXcd coeffs = a.adjoint() * z_omega / tight;  // min-norm start
    double sigma0 = 2.0 * coeffs.cwiseAbs().maxCoeff();
    if (sigma0 == 0.0) {
        Eigen::VectorXcd zero_coeffs = Eigen::VectorXcd::Zero(atoms);
        return {zero_coeffs, Eigen::VectorXcd::Zero(nm)};
    }

    for (double sigma = sigma0; sigma > cfg.sl0_sigma_ratio * sigma0;
         sigma *= cfg.sl0_sigma_decay) {
        for (int step = 0; step < cfg.sl0_inner_steps; ++step) {
            double two_sigma_sq = 2.0 * sigma * sigma;
            for (int i = 0; i < atoms; ++i)
                coeffs[i] -= cfg.sl0_mu * coeffs[i] * std::exp(-std::norm(coeffs[i]) / two_sigma_sq);
            coeffs -= a.adjoint() * ((a * coeffs - z_omega) / tight);
        }
        if (trace) {
            int active = 0;
            for (int i = 0; i < atoms; ++i)
                if (std::abs(coeffs[i]) > sigma) ++active;
            trace->sigmas.push_back(sigma);
            trace->active_counts.push_back(active);
        }
    }

    // Full-dictionary synthesis without materializing the full dictionary.
    Eigen::VectorXcd r_hat = Eigen::VectorXcd::Zero(nm);
    for (int n = 0; n < n_dim; ++n)
        for (int m = 0; m < m_dim; ++m) {
            std::complex<double> acc = 0.0;
            for (int p = 0; p < grid_n; ++p)
                for (int q = 0; q < grid_m; ++q)
                    acc += coeffs[p * grid_m + q] *
                           std::polar(1.0, -2.0 * kPi * (static_cast<double>(p) * n / grid_n +
                                                         static_cast<double>(q) * m / grid_m));
            r_hat[flat_index(n, m, m_dim)] = norm_scale * acc;
        }
    return {std::move(coeffs), std::move(r_hat)};
}

}  // namespace isar
