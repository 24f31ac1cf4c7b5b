#ifndef ISAR_TOEPLITZ_HPP
#define ISAR_TOEPLITZ_HPP

#include "isar/linalg.hpp"

namespace isar {

/// Lag array of a two-level Hermitian Toeplitz matrix: the (n, n') block of
/// T(u) is the M x M Toeplitz block with entries lag(n - n', m - m').
/// Hermitian symmetry requires lag(-p, -q) = conj(lag(p, q)).
struct ToeplitzParam {
    int num_angles = 0;  // N
    int num_freqs = 0;   // M
    // (2N-1) x (2M-1), entry (p + N - 1, q + M - 1) holds lag (p, q).
    Eigen::MatrixXcd lags;

    static ToeplitzParam zero(int num_angles, int num_freqs);

    std::complex<double>& lag(int p, int q) {
        return lags(p + num_angles - 1, q + num_freqs - 1);
    }
    std::complex<double> lag(int p, int q) const {
        return lags(p + num_angles - 1, q + num_freqs - 1);
    }

    int nm() const { return num_angles * num_freqs; }
    /// Number of (n, m, n', m') positions sharing lag (p, q).
    int orbit_size(int p, int q) const {
        return (num_angles - std::abs(p)) * (num_freqs - std::abs(q));
    }
    /// Throws StructureError when the Hermitian lag symmetry is violated
    /// beyond tol.
    void validate(double tol = 1e-12) const;
};

/// Assembles the NM x NM two-level Hermitian Toeplitz matrix T(u).
/// Vectorization order matches vec(R): flat index n * M + m.
CMatrix build_toeplitz(const ToeplitzParam& u);

/// Averaging adjoint of the structure map: lag (p, q) is the mean of the
/// Hermitian part of G over its diagonal orbit.  Left inverse of
/// build_toeplitz, and the adjoint of it under the orbit-weighted lag inner
/// product <u, v>_w = Re sum_pq w_pq conj(u_pq) v_pq with w_pq = orbit size.
ToeplitzParam toeplitz_adjoint(const CMatrix& g, int num_angles, int num_freqs);

/// Reweighting matrix W = (clamp(T(u_prev), PSD) + eps I)^{-1}, Hermitian PSD.
CMatrix weight_matrix(const ToeplitzParam& u_prev, double epsilon);

}  // namespace isar

#endif
