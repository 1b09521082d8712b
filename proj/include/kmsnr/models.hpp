#pragma once

#include <cstddef>
#include <vector>

#include "kmsnr/matrix.hpp"

namespace kmsnr {

struct KmsParams {
    std::size_t n;
    Complex a;
};

/// Upper-triangular KMS matrix: entry (i, j) is a^(j-i) for j > i, zero otherwise.
ComplexMatrix kms(const KmsParams& p);
inline ComplexMatrix kms(std::size_t n, Complex a) { return kms(KmsParams{n, a}); }

/// n-by-n Jordan block with eigenvalue 0 (ones on the first superdiagonal only).
ComplexMatrix jordan(std::size_t n);

/// A with row and column j deleted; j is 1-based. Requires n >= 2.
ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::size_t j);

/// Leading m-by-m block of A (1 <= m <= n).
ComplexMatrix leading_block(const ComplexMatrix& a, std::size_t m);

/// ((1 - |a|^2) / a) J_n(a) - conj(a) I_n.
///
/// Upper triangular with constant diagonal -conj(a); band k carries
/// a^(k-1) (1 - |a|^2). Lands in S_n for 0 < |a| < 1 and in S_n^{-1} for
/// |a| > 1. Throws InvalidParameter for a = 0 or |a| = 1.
ComplexMatrix affine_class_map(const KmsParams& p);

/// Upper-triangular S_n^{-1} representative with diagonal lambda and
/// entry conj(lambda)^(j-i-1) (|lambda|^2 - 1) above it. Requires |lambda| > 1.
ComplexMatrix snm1_standard(std::size_t n, Complex lambda);

/// Toeplitz matrix [a^|i-j|], equal to 2 Re J_n(a) + I_n, for real 0 <= a < 1.
ComplexMatrix poisson_toeplitz(std::size_t n, double a);

/// P_a(e^{it}) = (1 - a^2) / |1 - a e^{it}|^2
double poisson_kernel(double a, double t);

/// sin((n+1)t) - 2a sin(nt) + a^2 sin((n-1)t)
double sine_equation(std::size_t n, double a, double t);

struct SineRootSet {
    std::size_t n;
    double a;
    std::vector<double> roots;  // strictly increasing, inside (0, pi)

    /// (P_a(e^{i t_k}) - 1) / 2, in root order. These are the eigenvalues of Re J_n(a).
    std::vector<double> kms_eigenvalues() const;
};

/// The n roots of sine_equation in (0, pi) for 0 < a < 1.
///
/// Sign changes are isolated on a uniform grid of 64 n interior samples and each
/// bracket is bisected to machine precision. Throws RootCountMismatch when the
/// scan does not find exactly n brackets.
SineRootSet sine_roots(std::size_t n, double a);

/// rank(I - A^* A) with the default rank tolerance.
std::size_t defect_rank(const ComplexMatrix& a);

}  // namespace kmsnr
