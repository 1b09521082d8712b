#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kmsnr/linalg.hpp"
#include "kmsnr/matrix.hpp"

namespace kmsnr {

// Direction convention used everywhere: the supporting line with outward
// normal e^{i theta} is Re(e^{-i theta} z) = h(theta), where
// h(theta) = max sigma(Re(e^{-i theta} A)).

inline constexpr double kTouchTol = 1e-7;
inline constexpr double kPointTol = 1e-6;
inline constexpr double kDiscTol = 1e-7;
inline constexpr double kSegMinLength = 1e-5;
inline constexpr std::size_t kDefaultSamples = 720;
/// Relative singular-value cutoff for boundary_span_rank, about 50 machine epsilons.
inline constexpr double kSpanRankTolerance = 1e-14;

/// Eigenvalue clustering tolerance for multiplicity counting: 1e-8 (1 + ||A||_F).
double cluster_tol(const ComplexMatrix& a);

/// Re(e^{-i theta} A)
ComplexMatrix rotated_real_part(const ComplexMatrix& a, double theta);
/// Im(e^{-i theta} A)
ComplexMatrix rotated_imag_part(const ComplexMatrix& a, double theta);

/// theta_k = 2 pi k / m, k = 0..m-1. Multiples of pi are exact.
std::vector<double> theta_grid(std::size_t m);

struct BoundarySample {
    double theta;
    double support;
    Complex point;
    std::size_t multiplicity;
};

/// Support function of W(A).
double support(const ComplexMatrix& a, double theta);

/// Supporting-line probe in direction theta. The point is <A x, x> for the
/// top unit eigenvector x of Re(e^{-i theta} A).
BoundarySample boundary_point(const ComplexMatrix& a, double theta);

/// Probes on theta_grid(m); m >= 3.
std::vector<BoundarySample> boundary_sample(const ComplexMatrix& a, std::size_t m);

struct RadiusDetail {
    double value;
    std::vector<double> maximizers;  // refined directions attaining the maximum
};

/// w(A) = max_theta h(theta): grid search followed by golden-section refinement
/// of the leading local maxima to 1e-10 in theta.
RadiusDetail numerical_radius_detail(const ComplexMatrix& a, std::size_t m = 360);
double numerical_radius(const ComplexMatrix& a);

/// min over theta_grid(m) of h_outer - h_inner. Positive certifies interior
/// containment on the grid; non-negative, plain containment.
double interior_gap(const ComplexMatrix& inner, const ComplexMatrix& outer, std::size_t m);

/// Part of the boundary of W(A) on the supporting line at theta.
///
/// Rotated coordinates: e^{-i theta} z = support + i mu for mu in
/// [mu_min, mu_max]. The interval comes from the compression of
/// Im(e^{-i theta} A) onto the top eigenspace of Re(e^{-i theta} A), so it
/// collapses to a single point when the top eigenvalue is simple.
struct FlatPiece {
    double theta;
    double support;
    double mu_min;
    double mu_max;
    std::size_t multiplicity;

    Complex lower() const;
    Complex upper() const;
    double length() const { return mu_max - mu_min; }
};

FlatPiece flat_piece(const ComplexMatrix& a, double theta);

struct SegmentReport {
    bool present = false;
    double abscissa = 0.0;  // real part of the segment midpoint
    std::array<Complex, 2> endpoints{};
    double direction_theta = 0.0;
};

/// Looks for line segments in the boundary of W(A).
///
/// Directions where the top two eigenvalues of Re(e^{-i theta} A) merge are
/// located from local minima of their gap on the grid, refined by golden
/// section, and accepted when the gap falls within cluster_tol. The longest
/// segment of length >= kSegMinLength is reported.
SegmentReport detect_segment(const ComplexMatrix& a, std::size_t m = kDefaultSamples);

struct DiscReport {
    bool is_disc = false;
    Complex center{};
    double radius = 0.0;
    double support_spread = 0.0;  // max - min of the support function about the center
    double radial_spread = 0.0;   // max - min of |q - center| over samples
};

/// Circular-disc test. The center is the centroid of the boundary samples;
/// W(A) counts as a disc when both spreads are within kDiscTol and the radius
/// exceeds it.
DiscReport disc_check(const ComplexMatrix& a, std::size_t m = kDefaultSamples);

/// Boundary points with |q| >= w(A) - kTouchTol, merged into clusters of
/// diameter kPointTol, in theta order.
std::vector<Complex> circle_touch_points(const ComplexMatrix& a, std::size_t m = kDefaultSamples);

/// Common points of the boundaries of W(A) and W(B), for W(B) inside W(A).
///
/// Candidate directions are local minima of h_A - h_B on the grid, refined by
/// golden section. At directions where the support gap is within kTouchTol the
/// flat pieces of both boundaries are intersected with slack kPointTol; a
/// point intersection contributes one touch point, an overlap of positive
/// length contributes its two endpoints. Throws NotContained when the grid gap
/// is below -1e-9.
std::vector<Complex> boundary_touch(const ComplexMatrix& a, const ComplexMatrix& b,
                                    std::size_t m = kDefaultSamples);

/// Singular values, relative to the largest, of the n x m matrix whose columns
/// are the top eigenvectors of Re(e^{-i theta} A) over theta_grid(m).
std::vector<double> boundary_span_singular_values(const ComplexMatrix& a, std::size_t m);

/// Numerical rank of that matrix, counting relative singular values above rel_tol.
std::size_t boundary_span_rank(const ComplexMatrix& a, std::size_t m, double rel_tol = kSpanRankTolerance);

}  // namespace kmsnr
