#include "isar/linalg.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "isar/errors.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace isar {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian_eig: matrix must be square");
    const int n = static_cast<int>(a.rows());
    CMatrix work = 0.5 * (a + a.adjoint());
    Eigen::VectorXd eigenvalues(n);
    int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n, eigenvalues.data());
    if (info != 0)
        throw SolverError("hermitian_eig: LAPACK zheevd failed with info " +
                              std::to_string(info),
                          0);
    return {std::move(eigenvalues), std::move(work)};
}

CMatrix psd_project(const CMatrix& a) {
    EigenDecomposition eig = hermitian_eig(a);
    const int n = static_cast<int>(a.rows());
    // Reconstruct from the positive part only; cheap when the rank collapses.
    int first_pos = 0;
    while (first_pos < n && eig.eigenvalues[first_pos] <= 0.0) ++first_pos;
    if (first_pos == n) return CMatrix::Zero(n, n);
    auto vecs = eig.eigenvectors.rightCols(n - first_pos);
    auto vals = eig.eigenvalues.tail(n - first_pos);
    CMatrix scaled = vecs * vals.asDiagonal();
    CMatrix result = scaled * vecs.adjoint();
    return 0.5 * (result + result.adjoint());
}

namespace detail {

void dft1_inplace(Eigen::VectorXcd& v) {
    const int n = static_cast<int>(v.size());
    if (n <= 1) return;
    if (is_pow2(n)) {
        // Iterative radix-2 Cooley-Tukey, bit-reversal ordering.
        int log2n = 0;
        while ((1 << log2n) < n) ++log2n;
        for (int i = 1, j = 0; i < n; ++i) {
            int bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(v[i], v[j]);
        }
        for (int len = 2; len <= n; len <<= 1) {
            std::complex<double> w_len = std::polar(1.0, -2.0 * kPi / len);
            for (int i = 0; i < n; i += len) {
                std::complex<double> w = 1.0;
                for (int k = 0; k < len / 2; ++k) {
                    std::complex<double> even = v[i + k];
                    std::complex<double> odd = v[i + k + len / 2] * w;
                    v[i + k] = even + odd;
                    v[i + k + len / 2] = even - odd;
                    w *= w_len;
                }
            }
        }
        return;
    }
    Eigen::VectorXcd out(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n; ++j) acc += v[j] * std::polar(1.0, -2.0 * kPi * k * j / n);
        out[k] = acc;
    }
    v = out;
}

}  // namespace detail

CMatrix dft2(const CMatrix& data, int zero_pad) {
    if (zero_pad < 1) throw ParameterError("dft2: zero_pad must be >= 1");
    const int rows = static_cast<int>(data.rows()) * zero_pad;
    const int cols = static_cast<int>(data.cols()) * zero_pad;
    CMatrix padded = CMatrix::Zero(rows, cols);
    padded.topLeftCorner(data.rows(), data.cols()) = data;

    Eigen::VectorXcd buf;
    for (int r = 0; r < rows; ++r) {
        buf = padded.row(r).transpose();
        detail::dft1_inplace(buf);
        padded.row(r) = buf.transpose();
    }
    for (int c = 0; c < cols; ++c) {
        buf = padded.col(c);
        detail::dft1_inplace(buf);
        padded.col(c) = buf;
    }
    padded /= std::sqrt(static_cast<double>(rows) * cols);

    // Center DC at (rows/2, cols/2).
    CMatrix centered(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            centered((r + rows / 2) % rows, (c + cols / 2) % cols) = padded(r, c);
    return centered;
}

}  // namespace isar
