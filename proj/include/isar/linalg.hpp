#ifndef ISAR_LINALG_HPP
#define ISAR_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace isar {

using CMatrix = Eigen::MatrixXcd;

/// Eigenvalues ascending; eigenvector column j pairs with eigenvalue j.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    CMatrix eigenvectors;
};

/// Hermitian eigendecomposition.  The input is symmetrized as (A + A*)/2
/// before solving, so small Hermitian drift is tolerated.
EigenDecomposition hermitian_eig(const CMatrix& a);

/// Frobenius-nearest PSD matrix: eigenvalues clamped at zero.
CMatrix psd_project(const CMatrix& a);

/// Centered unitary 2D DFT of the zero-padded matrix.  Output is
/// (zero_pad * rows) x (zero_pad * cols) with the DC bin at (P/2, Q/2);
/// scaling 1/sqrt(P*Q) so the pad-1 transform preserves the Frobenius norm.
CMatrix dft2(const CMatrix& data, int zero_pad);

namespace detail {
/// 1D in-place unscaled DFT along a vector; radix-2 FFT when the length is a
/// power of two, direct O(n^2) summation otherwise.  Both paths agree to
/// roundoff and are cross-checked in the tests.
void dft1_inplace(Eigen::VectorXcd& v);
}  // namespace detail

}  // namespace isar

#endif
