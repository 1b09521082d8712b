#include "kmsnr/kippenhahn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kmsnr/errors.hpp"
#include "kmsnr/linalg.hpp"

namespace kmsnr {

namespace {

// Householder least squares for a dense rows x cols system, rows >= cols.
std::vector<double> least_squares(std::vector<double> a, std::vector<double> b, std::size_t rows,
                                  std::size_t cols) {
    const auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * cols + j]; };
    for (std::size_t k = 0; k < cols; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k; i < rows; ++i) alpha += at(i, k) * at(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (at(k, k) > 0.0) alpha = -alpha;
        std::vector<double> v(rows - k);
        for (std::size_t i = k; i < rows; ++i) v[i - k] = at(i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;
        if (vnorm2 == 0.0) continue;
        for (std::size_t j = k; j < cols; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * at(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < rows; ++i) at(i, j) -= f * v[i - k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * b[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i - k];
    }
    std::vector<double> x(cols);
    for (std::size_t k = cols; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < cols; ++j) s -= at(k, j) * x[j];
        if (at(k, k) == 0.0) throw IllConditioned("rank-deficient least-squares system");
        x[k] = s / at(k, k);
    }
    return x;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 adjugate(const Mat3& m) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
            const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            r[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
        }
    }
    return r;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Complex horner(std::span<const Complex> c, Complex z) {
    Complex s{};
    for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
    return s;
}

}  // namespace

HomogeneousPoly3::HomogeneousPoly3(std::size_t degree)
    : degree_(degree), coeffs_((degree + 1) * (degree + 2) / 2) {}

std::size_t HomogeneousPoly3::index(std::size_t j, std::size_t k) const {
    const std::size_t d = j + k;
    if (d > degree_) throw IndexOutOfRange("monomial degree exceeds polynomial degree");
    return d * (d + 1) / 2 + k;
}

double HomogeneousPoly3::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool HomogeneousPoly3::is_monic(double tol) const { return std::abs(coeff(0, 0) - 1.0) <= tol; }

HomogeneousPoly3 operator*(const HomogeneousPoly3& p, const HomogeneousPoly3& q) {
    HomogeneousPoly3 r(p.degree_ + q.degree_);
    for (std::size_t d1 = 0; d1 <= p.degree_; ++d1) {
        for (std::size_t j1 = 0; j1 <= d1; ++j1) {
            const double a = p.coeff(j1, d1 - j1);
            if (a == 0.0) continue;
            for (std::size_t d2 = 0; d2 <= q.degree_; ++d2) {
                for (std::size_t j2 = 0; j2 <= d2; ++j2) {
                    r.coeff(j1 + j2, d1 - j1 + d2 - j2) += a * q.coeff(j2, d2 - j2);
                }
            }
        }
    }
    return r;
}

HomogeneousPoly3 operator+(const HomogeneousPoly3& p, const HomogeneousPoly3& q) {
    if (p.degree_ != q.degree_) throw InvalidParameter("polynomial degrees differ");
    HomogeneousPoly3 r = p;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += q.coeffs_[i];
    return r;
}

HomogeneousPoly3 operator-(const HomogeneousPoly3& p, const HomogeneousPoly3& q) {
    if (p.degree_ != q.degree_) throw InvalidParameter("polynomial degrees differ");
    HomogeneousPoly3 r = p;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= q.coeffs_[i];
    return r;
}

HomogeneousPoly3 kipp_coeffs(const ComplexMatrix& a) {
    const std::size_t n = a.n();
    if (n > kKippMaxDimension) {
        throw InvalidParameter("Kippenhahn coefficients are limited to n <= 16");
    }
    const ComplexMatrix re = real_part(a);
    const ComplexMatrix im = imag_part(a);
    const double scale = 1.0 / (1.0 + a.frobenius_norm());

    const std::size_t nodes = n + 1;
    std::vector<double> cheb(nodes);
    for (std::size_t s = 0; s < nodes; ++s) {
        cheb[s] = std::cos((2.0 * static_cast<double>(s) + 1.0) * std::numbers::pi /
                           (2.0 * static_cast<double>(nodes)));
    }

    // sym[node][d] = e_d(mu) for the pencil eigenvalues at that node.
    std::vector<std::array<double, 2>> uv;
    std::vector<std::vector<double>> sym;
    for (std::size_t s = 0; s < nodes; ++s) {
        for (std::size_t t = 0; t < nodes; ++t) {
            ComplexMatrix h = (scale * cheb[s]) * re;
            h += (scale * cheb[t]) * im;
            const auto mu = hermitian_eigs(h).values;
            std::vector<double> e(n + 1, 0.0);
            e[0] = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t d = k + 1; d >= 1; --d) e[d] += mu[k] * e[d - 1];
            }
            uv.push_back({cheb[s], cheb[t]});
            sym.push_back(std::move(e));
        }
    }

    HomogeneousPoly3 p(n);
    p.coeff(0, 0) = 1.0;
    const std::size_t rows = uv.size();
    for (std::size_t d = 1; d <= n; ++d) {
        const std::size_t cols = d + 1;
        const double unscale = std::pow(scale, -static_cast<double>(d));
        std::vector<double> v(rows * cols);
        std::vector<double> rhs(rows);
        double rhs_max = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < cols; ++j) {
                v[r * cols + j] = std::pow(uv[r][0], static_cast<double>(j)) *
                                  std::pow(uv[r][1], static_cast<double>(d - j));
            }
            rhs[r] = sym[r][d] * unscale;
            rhs_max = std::max(rhs_max, std::abs(rhs[r]));
        }
        const auto c = least_squares(v, rhs, rows, cols);
        double resid = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double fit = 0.0;
            for (std::size_t j = 0; j < cols; ++j) fit += v[r * cols + j] * c[j];
            resid = std::max(resid, std::abs(fit - rhs[r]));
        }
        if (resid > kKippRefitTolerance * std::max(1.0, rhs_max)) {
            throw IllConditioned("Kippenhahn coefficient refit residual too large");
        }
        for (std::size_t j = 0; j < cols; ++j) p.coeff(j, d - j) = c[j];
    }
    return p;
}

Complex kipp_eval(const HomogeneousPoly3& p, Complex x, Complex y, Complex z) {
    const std::size_t n = p.degree();
    std::vector<Complex> xp(n + 1), yp(n + 1), zp(n + 1);
    xp[0] = yp[0] = zp[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
        zp[k] = zp[k - 1] * z;
    }
    Complex s{};
    for (std::size_t d = 0; d <= n; ++d) {
        for (std::size_t j = 0; j <= d; ++j) {
            s += p.coeff(j, d - j) * xp[j] * yp[d - j] * zp[n - d];
        }
    }
    return s;
}

Division divide_remainder(const HomogeneousPoly3& p, const HomogeneousPoly3& q) {
    const std::size_t n = p.degree();
    const std::size_t m = q.degree();
    if (m > n) throw InvalidParameter("divisor degree exceeds dividend degree");
    if (!q.is_monic()) throw InvalidParameter("divisor must be monic in z");

    const std::size_t qdeg = n - m;
    HomogeneousPoly3 quotient(qdeg);
    HomogeneousPoly3 rem = p;
    for (std::size_t i = 0; i <= qdeg; ++i) {
        std::vector<double> lead(i + 1);
        for (std::size_t j = 0; j <= i; ++j) lead[j] = rem.coeff(j, i - j);
        for (std::size_t j = 0; j <= i; ++j) quotient.coeff(j, i - j) = lead[j];
        for (std::size_t e = 0; e <= m; ++e) {
            for (std::size_t j1 = 0; j1 <= i; ++j1) {
                if (lead[j1] == 0.0) continue;
                for (std::size_t j2 = 0; j2 <= e; ++j2) {
                    rem.coeff(j1 + j2, i - j1 + e - j2) -= lead[j1] * q.coeff(j2, e - j2);
                }
            }
        }
        for (std::size_t j = 0; j <= i; ++j) rem.coeff(j, i - j) = 0.0;
    }
    return {quotient, rem, rem.max_abs()};
}

HomogeneousPoly3 linear_form(double c, double d) {
    HomogeneousPoly3 p(1);
    p.coeff(0, 0) = 1.0;
    p.coeff(1, 0) = c;
    p.coeff(0, 1) = d;
    return p;
}

std::optional<HomogeneousPoly3> conic_dual_form(std::span<const Complex> points) {
    if (points.size() < 5) return std::nullopt;
    Complex center{};
    for (const auto& z : points) center += z;
    center /= static_cast<double>(points.size());
    double spread = 0.0;
    for (const auto& z : points) spread += std::norm(z - center);
    spread = std::sqrt(spread / static_cast<double>(points.size()));
    if (spread == 0.0) return std::nullopt;

    // Normal matrix of the design rows [X^2, XY, Y^2, X, Y, 1].
    ComplexMatrix normal(6);
    for (const auto& z : points) {
        const Complex w = (z - center) / spread;
        const std::array<double, 6> row{w.real() * w.real(), w.real() * w.imag(),
                                        w.imag() * w.imag(), w.real(), w.imag(), 1.0};
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) normal(i, j) += row[i] * row[j];
    }
    const auto eig = hermitian_eigs(normal);
    if (eig.values[1] <= 1e-10 * eig.values[5]) return std::nullopt;
    const Vector c = eig.vector(0);
    const auto r = [&](int k) { return c[k].real(); };

    const Mat3 conic{{{r(0), 0.5 * r(1), 0.5 * r(3)},
                      {0.5 * r(1), r(2), 0.5 * r(4)},
                      {0.5 * r(3), 0.5 * r(4), r(5)}}};
    const Mat3 adj = adjugate(conic);
    const double detc = conic[0][0] * adj[0][0] + conic[0][1] * adj[1][0] + conic[0][2] * adj[2][0];
    if (std::abs(detc) <= 1e-12) return std::nullopt;

    // Undo the normalisation: p = T p' for homogeneous points, so the dual
    // form transforms as T adj(C') T^T.
    const Mat3 t{{{spread, 0.0, center.real()}, {0.0, spread, center.imag()}, {0.0, 0.0, 1.0}}};
    Mat3 tt{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) tt[i][j] = t[j][i];
    const Mat3 dual = multiply(multiply(t, adj), tt);
    if (std::abs(dual[2][2]) <= 1e-14 * std::abs(dual[0][0] + dual[1][1])) return std::nullopt;

    const double s = dual[2][2];
    HomogeneousPoly3 q(2);
    q.coeff(0, 0) = 1.0;
    q.coeff(1, 0) = 2.0 * dual[0][2] / s;
    q.coeff(0, 1) = 2.0 * dual[1][2] / s;
    q.coeff(2, 0) = dual[0][0] / s;
    q.coeff(1, 1) = 2.0 * dual[0][1] / s;
    q.coeff(0, 2) = dual[1][1] / s;
    return q;
}

std::vector<Complex> pencil_roots(const HomogeneousPoly3& p) {
    const std::size_t n = p.degree();
    if (n == 0) return {};
    const Complex iu{0.0, 1.0};
    // c[m] is the coefficient of z^m.
    std::vector<Complex> c(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        Complex s{};
        Complex ipow = 1.0;
        std::vector<Complex> ip(d + 1);
        for (std::size_t k = 0; k <= d; ++k) {
            ip[k] = ipow;
            ipow *= iu;
        }
        for (std::size_t j = 0; j <= d; ++j) s += p.coeff(j, d - j) * ip[d - j];
        c[n - d] = s;
    }
    const Complex lead = c[n];
    if (lead == Complex{}) throw InvalidParameter("polynomial is not monic in z");
    for (auto& v : c) v /= lead;

    std::vector<Complex> dc(n);
    for (std::size_t k = 1; k <= n; ++k) dc[k - 1] = static_cast<double>(k) * c[k];

    double bound = 0.0;
    for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
    const double radius = 1.0 + bound;
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                      static_cast<double>(n) + 0.4);
    }
    // Aberth-Ehrlich iteration.
    for (int it = 0; it < 1000; ++it) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex pv = horner(c, z[k]);
            if (pv == Complex{}) continue;
            const Complex ratio = pv / horner(dc, z[k]);
            Complex repulse{};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) repulse += 1.0 / (z[k] - z[j]);
            }
            const Complex w = ratio / (1.0 - ratio * repulse);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (worst <= 1e-15) break;
    }
    return z;
}

std::string FactorProbeReport::summary() const {
    if (!factor_detected()) return "no real linear/quadratic factor detected";
    std::ostringstream os;
    os << linear.size() << " linear and " << quadratic.size() << " quadratic factor(s) detected";
    return os.str();
}

FactorProbeReport factor_probe(const HomogeneousPoly3& p, std::span<const BoundarySample> boundary) {
    if (boundary.size() < 6) throw InvalidParameter("factor probe needs at least 6 boundary samples");
    FactorProbeReport report;
    report.factor_tol = 1e-6 * p.max_abs();
    report.best_linear_remainder = std::numeric_limits<double>::infinity();
    report.best_quadratic_remainder = std::numeric_limits<double>::infinity();

    if (p.degree() >= 1) {
        const auto roots = pencil_roots(p);
        std::vector<Complex> candidates;
        const auto push = [&](Complex lambda) {
            for (const auto& c : candidates) {
                if (std::abs(c - lambda) <= 1e-9) return;
            }
            candidates.push_back(lambda);
        };
        double rmax = 0.0;
        for (const auto& r : roots) rmax = std::max(rmax, std::abs(r));
        std::vector<std::vector<Complex>> groups;
        for (const auto& r : roots) {
            push(-r);
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                return std::abs(g.front() - r) <= 1e-3 * (1.0 + rmax);
            });
            if (it == groups.end()) {
                groups.push_back({r});
            } else {
                it->push_back(r);
            }
        }
        for (const auto& g : groups) {
            Complex mean{};
            for (const auto& r : g) mean += r;
            push(-mean / static_cast<double>(g.size()));
        }
        for (const auto& lambda : candidates) {
            ++report.linear_candidates;
            const auto div = divide_remainder(p, linear_form(lambda.real(), lambda.imag()));
            report.best_linear_remainder = std::min(report.best_linear_remainder, div.remainder_norm);
            if (div.remainder_norm > report.factor_tol) continue;
            const bool seen = std::any_of(report.linear.begin(), report.linear.end(), [&](const auto& f) {
                return std::abs(f.c - lambda.real()) <= 1e-6 && std::abs(f.d - lambda.imag()) <= 1e-6;
            });
            if (!seen) report.linear.push_back({lambda.real(), lambda.imag(), div.remainder_norm});
        }
    }

    if (p.degree() >= 2) {
        const std::size_t count = boundary.size();
        const std::size_t windows = std::min<std::size_t>(8, count);
        for (std::size_t w = 0; w < windows; ++w) {
            const std::size_t start = w * count / windows;
            std::vector<Complex> pts;
            for (std::size_t k = 0; k < 6; ++k) pts.push_back(boundary[(start + k) % count].point);
            const auto form = conic_dual_form(pts);
            if (!form) continue;
            ++report.quadratic_candidates;
            const auto div = divide_remainder(p, *form);
            report.best_quadratic_remainder =
                std::min(report.best_quadratic_remainder, div.remainder_norm);
            if (div.remainder_norm > report.factor_tol) continue;
            const bool seen = std::any_of(report.quadratic.begin(), report.quadratic.end(), [&](const auto& f) {
                return (f.form - *form).max_abs() <= 1e-6;
            });
            if (!seen) report.quadratic.push_back({*form, div.remainder_norm});
        }
    }
    return report;
}

}  // namespace kmsnr
