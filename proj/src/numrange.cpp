#include "kmsnr/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "kmsnr/errors.hpp"

namespace kmsnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThetaTol = 1e-10;

Complex unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

double wrap(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

struct Extremum {
    double x;
    double fx;
};

// Golden-section search for a minimum of f on [lo, hi].
Extremum golden_min(const std::function<double(double)>& f, double lo, double hi) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > kThetaTol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

// Locates a sign change of g on [lo, hi] by bisection. Returns nullopt when
// g does not change sign across the bracket.
std::optional<double> bisect_sign_change(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0.0) == (ghi < 0.0)) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Tangential coordinate of the top-eigenvector boundary point, which is the
// derivative of the support function wherever the top eigenvalue is simple.
double tangent_offset(const ComplexMatrix& a, double theta) {
    const auto eig = hermitian_eigs(rotated_real_part(a, theta));
    const Vector x = eig.vector(a.n() - 1);
    return (std::conj(Complex{std::cos(theta), std::sin(theta)}) * inner(x, a * x)).imag();
}

// Indices k where values[k] is a local minimum on the circular grid.
std::vector<std::size_t> circular_local_minima(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = values[(k + m - 1) % m];
        const double next = values[(k + 1) % m];
        if (values[k] <= prev && values[k] <= next) out.push_back(k);
    }
    return out;
}

void require_samples(std::size_t m) {
    if (m < 3) throw InvalidParameter("need at least 3 directions");
}

}  // namespace

double cluster_tol(const ComplexMatrix& a) { return 1e-8 * (1.0 + a.frobenius_norm()); }

ComplexMatrix rotated_real_part(const ComplexMatrix& a, double theta) {
    return real_part(std::conj(unit(theta)) * a);
}

ComplexMatrix rotated_imag_part(const ComplexMatrix& a, double theta) {
    return imag_part(std::conj(unit(theta)) * a);
}

std::vector<double> theta_grid(std::size_t m) {
    std::vector<double> g(m);
    for (std::size_t k = 0; k < m; ++k) {
        g[k] = (2.0 * static_cast<double>(k) / static_cast<double>(m)) * std::numbers::pi;
    }
    return g;
}

double support(const ComplexMatrix& a, double theta) {
    return hermitian_eigs(rotated_real_part(a, theta)).max();
}

BoundarySample boundary_point(const ComplexMatrix& a, double theta) {
    const auto eig = hermitian_eigs(rotated_real_part(a, theta));
    const double top = eig.max();
    const double tol = cluster_tol(a);
    const auto mult = static_cast<std::size_t>(std::count_if(
        eig.values.begin(), eig.values.end(), [&](double v) { return v >= top - tol; }));
    const Vector x = eig.vector(a.n() - 1);
    const Complex q = inner(x, a * x);
    return {theta, top, q, mult};
}

std::vector<BoundarySample> boundary_sample(const ComplexMatrix& a, std::size_t m) {
    require_samples(m);
    std::vector<BoundarySample> out;
    out.reserve(m);
    for (double t : theta_grid(m)) out.push_back(boundary_point(a, t));
    return out;
}

RadiusDetail numerical_radius_detail(const ComplexMatrix& a, std::size_t m) {
    require_samples(m);
    const auto grid = theta_grid(m);
    std::vector<double> neg(m);
    for (std::size_t k = 0; k < m; ++k) neg[k] = -support(a, grid[k]);

    auto minima = circular_local_minima(neg);
    std::stable_sort(minima.begin(), minima.end(),
                     [&](std::size_t i, std::size_t j) { return neg[i] < neg[j]; });
    if (minima.size() > 4) minima.resize(4);

    const double step = kTwoPi / static_cast<double>(m);
    const auto f = [&](double t) { return -support(a, t); };
    std::vector<Extremum> refined;
    double best = -*std::min_element(neg.begin(), neg.end());
    const auto slope = [&](double t) { return tangent_offset(a, t); };
    for (std::size_t k : minima) {
        // h' = mu runs from + to - across a maximum.
        Extremum e{};
        if (const auto root = bisect_sign_change(slope, grid[k] - step, grid[k] + step)) {
            e = {*root, f(*root)};
        } else {
            e = golden_min(f, grid[k] - step, grid[k] + step);
        }
        refined.push_back({wrap(e.x), -e.fx});
        best = std::max(best, -e.fx);
    }

    RadiusDetail out{best, {}};
    for (const auto& e : refined) {
        if (e.fx >= best - 1e-12 * (1.0 + best)) out.maximizers.push_back(e.x);
    }
    return out;
}

double numerical_radius(const ComplexMatrix& a) { return numerical_radius_detail(a).value; }

double interior_gap(const ComplexMatrix& inner_m, const ComplexMatrix& outer, std::size_t m) {
    require_samples(m);
    double gap = std::numeric_limits<double>::infinity();
    for (double t : theta_grid(m)) {
        gap = std::min(gap, support(outer, t) - support(inner_m, t));
    }
    return gap;
}

Complex FlatPiece::lower() const { return unit(theta) * Complex{support, mu_min}; }

Complex FlatPiece::upper() const { return unit(theta) * Complex{support, mu_max}; }

FlatPiece flat_piece(const ComplexMatrix& a, double theta) {
    const auto eig = hermitian_eigs(rotated_real_part(a, theta));
    const std::size_t n = a.n();
    const double top = eig.max();
    const double tol = cluster_tol(a);
    std::size_t k = 0;
    while (k < n && eig.values[n - 1 - k] >= top - tol) ++k;

    const ComplexMatrix im = rotated_imag_part(a, theta);
    ComplexMatrix compressed(k);
    std::vector<Vector> basis;
    for (std::size_t r = 0; r < k; ++r) basis.push_back(eig.vector(n - 1 - r));
    for (std::size_t r = 0; r < k; ++r) {
        const Vector imv = im * basis[r];
        for (std::size_t s = 0; s < k; ++s) {
            compressed(s, r) = inner(basis[s], imv);
        }
    }
    // Restore exact Hermitian symmetry lost to rounding before the eigensolve.
    const auto mu = hermitian_eigs(real_part(compressed));
    return {theta, top, mu.min(), mu.max(), k};
}

SegmentReport detect_segment(const ComplexMatrix& a, std::size_t m) {
    require_samples(m);
    SegmentReport report;
    if (a.n() < 2) return report;

    const auto gap_at = [&](double t) {
        const auto eig = hermitian_eigs(rotated_real_part(a, t));
        return eig.values[a.n() - 1] - eig.values[a.n() - 2];
    };
    const auto grid = theta_grid(m);
    std::vector<double> gaps(m);
    for (std::size_t k = 0; k < m; ++k) gaps[k] = gap_at(grid[k]);

    const double tol = cluster_tol(a);
    const double screen = 0.05 * (1.0 + a.frobenius_norm());
    const double step = kTwoPi / static_cast<double>(m);
    double best_len = 0.0;
    for (std::size_t k : circular_local_minima(gaps)) {
        if (gaps[k] > screen) continue;
        double theta = grid[k];
        if (gaps[k] > tol) {
            const auto e = golden_min(gap_at, grid[k] - step, grid[k] + step);
            if (e.fx > tol) continue;
            theta = wrap(e.x);
        }
        const auto piece = flat_piece(a, theta);
        if (piece.length() >= kSegMinLength && piece.length() > best_len) {
            best_len = piece.length();
            report.present = true;
            report.endpoints = {piece.lower(), piece.upper()};
            report.abscissa = 0.5 * (piece.lower().real() + piece.upper().real());
            report.direction_theta = theta;
        }
    }
    return report;
}

DiscReport disc_check(const ComplexMatrix& a, std::size_t m) {
    const auto samples = boundary_sample(a, m);
    DiscReport r;
    for (const auto& s : samples) r.center += s.point;
    r.center /= static_cast<double>(samples.size());

    double hmin = std::numeric_limits<double>::infinity();
    double hmax = -hmin;
    double rmin = hmin;
    double rmax = -hmin;
    double rsum = 0.0;
    for (const auto& s : samples) {
        const double hc = s.support - (std::conj(unit(s.theta)) * r.center).real();
        hmin = std::min(hmin, hc);
        hmax = std::max(hmax, hc);
        const double rad = std::abs(s.point - r.center);
        rmin = std::min(rmin, rad);
        rmax = std::max(rmax, rad);
        rsum += rad;
    }
    r.radius = rsum / static_cast<double>(samples.size());
    r.support_spread = hmax - hmin;
    r.radial_spread = rmax - rmin;
    r.is_disc = r.support_spread <= kDiscTol && r.radial_spread <= kDiscTol && r.radius > kDiscTol;
    return r;
}

std::vector<Complex> circle_touch_points(const ComplexMatrix& a, std::size_t m) {
    const auto radius = numerical_radius_detail(a);
    auto samples = boundary_sample(a, m);
    for (double t : radius.maximizers) samples.push_back(boundary_point(a, t));
    std::stable_sort(samples.begin(), samples.end(),
                     [](const BoundarySample& x, const BoundarySample& y) { return x.theta < y.theta; });

    struct Cluster {
        Complex anchor;
        Complex sum;
        std::size_t count;
    };
    std::vector<Cluster> clusters;
    for (const auto& s : samples) {
        if (std::abs(s.point) < radius.value - kTouchTol) continue;
        auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
            return std::abs(c.anchor - s.point) <= kPointTol;
        });
        if (it == clusters.end()) {
            clusters.push_back({s.point, s.point, 1});
        } else {
            it->sum += s.point;
            ++it->count;
        }
    }
    std::vector<Complex> out;
    for (const auto& c : clusters) out.push_back(c.sum / static_cast<double>(c.count));
    return out;
}

std::vector<Complex> boundary_touch(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t m) {
    require_samples(m);
    const auto grid = theta_grid(m);
    const auto diff = [&](double t) { return support(a, t) - support(b, t); };
    const auto slope_diff = [&](double t) { return tangent_offset(a, t) - tangent_offset(b, t); };
    std::vector<double> d(m);
    for (std::size_t k = 0; k < m; ++k) d[k] = diff(grid[k]);
    if (*std::min_element(d.begin(), d.end()) < -1e-9) {
        throw NotContained("W(B) is not contained in W(A)");
    }

    const double screen = 1e-2 * (1.0 + a.frobenius_norm());
    const double step = kTwoPi / static_cast<double>(m);
    std::vector<Complex> touches;
    const auto add = [&](Complex z) {
        for (const auto& t : touches) {
            if (std::abs(t - z) <= kPointTol) return;
        }
        touches.push_back(z);
    };

    for (std::size_t k : circular_local_minima(d)) {
        if (d[k] > screen) continue;
        double theta = grid[k];
        double gap = d[k];
        Extremum e{};
        if (const auto root = bisect_sign_change(slope_diff, grid[k] - step, grid[k] + step)) {
            e = {*root, diff(*root)};
        } else {
            e = golden_min(diff, grid[k] - step, grid[k] + step);
        }
        if (e.fx <= gap) {
            theta = wrap(e.x);
            gap = e.fx;
        }
        if (gap > kTouchTol) continue;

        const auto pa = flat_piece(a, theta);
        const auto pb = flat_piece(b, theta);
        const double lo = std::max(pa.mu_min, pb.mu_min);
        const double hi = std::min(pa.mu_max, pb.mu_max);
        if (lo > hi + kPointTol) continue;
        const Complex dir = unit(theta);
        if (hi - lo <= kPointTol) {
            add(dir * Complex{pa.support, 0.5 * (lo + hi)});
        } else {
            add(dir * Complex{pa.support, lo});
            add(dir * Complex{pa.support, hi});
        }
    }
    return touches;
}

std::vector<double> boundary_span_singular_values(const ComplexMatrix& a, std::size_t m) {
    require_samples(m);
    // Rows of the n x m eigenvector matrix, so the SVD sees n columns.
    const std::size_t n = a.n();
    std::vector<Vector> rows(n, Vector(m));
    const auto grid = theta_grid(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Vector x = hermitian_eigs(rotated_real_part(a, grid[k])).vector(n - 1);
        for (std::size_t i = 0; i < n; ++i) rows[i][k] = std::conj(x[i]);
    }
    auto s = singular_values(rows);
    const double top = s.front();
    for (auto& v : s) v /= top;
    return s;
}

std::size_t boundary_span_rank(const ComplexMatrix& a, std::size_t m, double rel_tol) {
    const auto s = boundary_span_singular_values(a, m);
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [rel_tol](double v) { return v > rel_tol; }));
}

}  // namespace kmsnr
