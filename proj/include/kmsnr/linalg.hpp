#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kmsnr/matrix.hpp"

namespace kmsnr {

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops, relative to ||H||_F.
inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 60;
/// Allowed asymmetry ||H - H^*|| relative to ||H||_F before a matrix is rejected as non-Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;
/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-8;

/// Eigen-decomposition of a Hermitian matrix.
///
/// `values` are ascending; column k of `vectors` is a unit eigenvector for
/// `values[k]`, and the columns are mutually orthonormal.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;

    Vector vector(std::size_t k) const { return vectors.column(k); }
    double max() const { return values.back(); }
    double min() const { return values.front(); }
};

/// (A + A^*) / 2
ComplexMatrix real_part(const ComplexMatrix& a);
/// (A - A^*) / (2i)
ComplexMatrix imag_part(const ComplexMatrix& a);

/// Cyclic complex Jacobi eigensolver.
///
/// Throws NotHermitian when ||H - H^*|| exceeds kHermitianTolerance * ||H||_F,
/// NoConvergence if kJacobiMaxSweeps sweeps do not drive the off-diagonal mass
/// below kJacobiTolerance * ||H||_F.
HermitianEigen hermitian_eigs(const ComplexMatrix& h);

/// Determinant by LU factorisation with partial pivoting.
Complex det(const ComplexMatrix& a);

/// Singular values (descending) of the matrix whose columns are `columns`.
/// All columns must share one length. One-sided Jacobi.
std::vector<double> singular_values(std::span<const Vector> columns);

/// Number of singular values above `rel_tol` times the largest.
std::size_t numerical_rank(std::span<const Vector> columns, double rel_tol = kRankTolerance);

/// Numerical rank of the Krylov matrix [x | Ax | ... | A^{n-1}x].
///
/// Each Krylov column is generated from the normalised previous one, so the
/// rank decision does not depend on the growth of ||A^k||. A column whose norm
/// falls below 1e-13 ||A||_F is an exact zero and terminates the sequence.
/// Throws ZeroVector for x = 0.
std::size_t krylov_rank(const ComplexMatrix& a, std::span<const Complex> x);

}  // namespace kmsnr
