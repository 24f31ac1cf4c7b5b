#include "isar/toeplitz.hpp"

#include <cmath>

#include "isar/errors.hpp"

namespace isar {

ToeplitzParam ToeplitzParam::zero(int num_angles, int num_freqs) {
    ToeplitzParam u;
    u.num_angles = num_angles;
    u.num_freqs = num_freqs;
    u.lags = Eigen::MatrixXcd::Zero(2 * num_angles - 1, 2 * num_freqs - 1);
    return u;
}

void ToeplitzParam::validate(double tol) const {
    if (num_angles < 1 || num_freqs < 1)
        throw DimensionError("ToeplitzParam: dimensions must be >= 1");
    if (lags.rows() != 2 * num_angles - 1 || lags.cols() != 2 * num_freqs - 1)
        throw DimensionError("ToeplitzParam: lag array shape mismatch");
    for (int p = -(num_angles - 1); p <= num_angles - 1; ++p)
        for (int q = -(num_freqs - 1); q <= num_freqs - 1; ++q)
            if (std::abs(lag(-p, -q) - std::conj(lag(p, q))) > tol)
                throw StructureError("ToeplitzParam: Hermitian lag symmetry violated");
}

CMatrix build_toeplitz(const ToeplitzParam& u) {
    u.validate();
    const int n_dim = u.num_angles, m_dim = u.num_freqs;
    CMatrix t(u.nm(), u.nm());
    for (int n = 0; n < n_dim; ++n)
        for (int np = 0; np < n_dim; ++np)
            for (int m = 0; m < m_dim; ++m)
                for (int mp = 0; mp < m_dim; ++mp)
                    t(n * m_dim + m, np * m_dim + mp) = u.lag(n - np, m - mp);
    return t;
}

ToeplitzParam toeplitz_adjoint(const CMatrix& g, int num_angles, int num_freqs) {
    const int nm = num_angles * num_freqs;
    if (g.rows() != nm || g.cols() != nm)
        throw DimensionError("toeplitz_adjoint: matrix must be NM x NM");
    CMatrix h = 0.5 * (g + g.adjoint());
    ToeplitzParam u = ToeplitzParam::zero(num_angles, num_freqs);
    for (int n = 0; n < num_angles; ++n)
        for (int np = 0; np < num_angles; ++np)
            for (int m = 0; m < num_freqs; ++m)
                for (int mp = 0; mp < num_freqs; ++mp)
                    u.lag(n - np, m - mp) += h(n * num_freqs + m, np * num_freqs + mp);
    for (int p = -(num_angles - 1); p <= num_angles - 1; ++p)
        for (int q = -(num_freqs - 1); q <= num_freqs - 1; ++q)
            u.lag(p, q) /= static_cast<double>(u.orbit_size(p, q));
    return u;
}

CMatrix weight_matrix(const ToeplitzParam& u_prev, double epsilon) {
    if (epsilon <= 0.0) throw ParameterError("weight_matrix: epsilon must be positive");
    EigenDecomposition eig = hermitian_eig(build_toeplitz(u_prev));
    const int n = static_cast<int>(eig.eigenvalues.size());
    Eigen::VectorXd inv_vals(n);
    for (int i = 0; i < n; ++i)
        inv_vals[i] = 1.0 / (std::max(eig.eigenvalues[i], 0.0) + epsilon);
    CMatrix scaled = eig.eigenvectors * inv_vals.asDiagonal();
    CMatrix w = scaled * eig.eigenvectors.adjoint();
    return 0.5 * (w + w.adjoint());
}

}  // namespace isar
