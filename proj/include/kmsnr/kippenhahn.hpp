#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kmsnr/matrix.hpp"
#include "kmsnr/numrange.hpp"

namespace kmsnr {

/// Real homogeneous polynomial of degree n in (x, y, z):
///   p(x, y, z) = sum_{j + k <= n} c_{jk} x^j y^k z^(n - j - k).
///
/// Kippenhahn polynomials are monic in z (c_00 = 1); general instances such as
/// division remainders need not be.
class HomogeneousPoly3 {
public:
    explicit HomogeneousPoly3(std::size_t degree);

    std::size_t degree() const noexcept { return degree_; }

    double coeff(std::size_t j, std::size_t k) const { return coeffs_[index(j, k)]; }
    double& coeff(std::size_t j, std::size_t k) { return coeffs_[index(j, k)]; }

    /// max |c_jk|
    double max_abs() const;
    bool is_monic(double tol = 1e-12) const;

    std::span<const double> raw() const noexcept { return coeffs_; }

    friend HomogeneousPoly3 operator*(const HomogeneousPoly3& p, const HomogeneousPoly3& q);
    friend HomogeneousPoly3 operator+(const HomogeneousPoly3& p, const HomogeneousPoly3& q);
    friend HomogeneousPoly3 operator-(const HomogeneousPoly3& p, const HomogeneousPoly3& q);

private:
    std::size_t index(std::size_t j, std::size_t k) const;

    std::size_t degree_;
    std::vector<double> coeffs_;
};

/// Largest matrix size accepted by kipp_coeffs.
inline constexpr std::size_t kKippMaxDimension = 16;
/// Relative residual of the per-degree coefficient refit above which kipp_coeffs gives up.
inline constexpr double kKippRefitTolerance = 1e-8;

/// p_A(x, y, z) = det(x Re A + y Im A + z I).
///
/// For each node (x_s, y_t) of a tensor Chebyshev grid scaled by
/// 1 / (1 + ||A||_F), the coefficients of prod_k (z + mu_k) over the
/// eigenvalues mu_k of x_s Re A + y_t Im A are formed. The coefficient of
/// z^(n-d) is a degree-d form in (x, y); its d + 1 monomial coefficients are
/// recovered by least squares over the grid. Throws IllConditioned when a refit
/// residual exceeds kKippRefitTolerance, InvalidParameter for n > 16.
HomogeneousPoly3 kipp_coeffs(const ComplexMatrix& a);

Complex kipp_eval(const HomogeneousPoly3& p, Complex x, Complex y, Complex z);

struct Division {
    HomogeneousPoly3 quotient;
    HomogeneousPoly3 remainder;
    double remainder_norm;  // max |remainder coefficient|
};

/// Long division in z with x, y carried symbolically. Q must be monic in z and
/// deg Q <= deg P; then P = quotient * Q + remainder and the remainder has
/// z-degree below deg Q.
Division divide_remainder(const HomogeneousPoly3& p, const HomogeneousPoly3& q);

/// c x + d y + z, the Kippenhahn factor of a normal eigenvalue c + di.
HomogeneousPoly3 linear_form(double c, double d);

/// Dual (tangent-line) quadratic of the conic through the given points,
/// normalised monic in z. Requires at least five points; least squares for more.
/// Returns nullopt for degenerate fits.
std::optional<HomogeneousPoly3> conic_dual_form(std::span<const Complex> points);

/// Roots of the monic polynomial p(1, i, z) in z. These are -lambda for the
/// eigenvalues lambda of A when p = p_A.
std::vector<Complex> pencil_roots(const HomogeneousPoly3& p);

struct LinearFactor {
    double c;
    double d;
    double remainder_norm;
};

struct QuadraticFactor {
    HomogeneousPoly3 form;
    double remainder_norm;
};

struct FactorProbeReport {
    double factor_tol = 0.0;
    std::size_t linear_candidates = 0;
    std::size_t quadratic_candidates = 0;
    double best_linear_remainder = 0.0;
    double best_quadratic_remainder = 0.0;
    std::vector<LinearFactor> linear;
    std::vector<QuadraticFactor> quadratic;

    bool factor_detected() const { return !linear.empty() || !quadratic.empty(); }
    std::string summary() const;
};

/// Falsification probe for low-degree real factors of p.
///
/// Linear candidates c x + d y + z come from the roots of p(1, i, z); the
/// quadratic candidates are dual forms of conics fitted to windows of six
/// consecutive boundary samples. Anything dividing p with remainder at most
/// 1e-6 max|c| is reported. An empty report is evidence, not a proof, of
/// irreducibility.
FactorProbeReport factor_probe(const HomogeneousPoly3& p, std::span<const BoundarySample> boundary);

}  // namespace kmsnr
