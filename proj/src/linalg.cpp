#include "kmsnr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kmsnr/errors.hpp"

namespace kmsnr {

namespace {

constexpr Complex kI{0.0, 1.0};

// Parameters of the real rotation that annihilates r in [[app, r], [r, aqq]].
struct Rotation {
    double c;
    double s;
    double t;
};

Rotation jacobi_rotation(double app, double aqq, double r) {
    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c, t};
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix real_part(const ComplexMatrix& a) {
    ComplexMatrix r(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }
    return r;
}

ComplexMatrix imag_part(const ComplexMatrix& a) {
    ComplexMatrix r(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            r(i, j) = (a(i, j) - std::conj(a(j, i))) / (2.0 * kI);
        }
    }
    return r;
}

HermitianEigen hermitian_eigs(const ComplexMatrix& h) {
    const std::size_t n = h.n();
    const double scale = h.frobenius_norm();

    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    }
    if (asym > kHermitianTolerance * scale) {
        throw NotHermitian("matrix is not Hermitian within tolerance");
    }

    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double target = kJacobiTolerance * scale;
    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweep++ == kJacobiMaxSweeps) {
            throw NoConvergence("Jacobi sweep limit exceeded");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const Complex phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const auto rot = jacobi_rotation(app, aqq, r);

                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on coordinates (p, q).
                const Complex gpp = rot.c;
                const Complex gpq = rot.s;
                const Complex gqp = -rot.s * std::conj(phase);
                const Complex gqq = rot.c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, p) = app - rot.t * r;
                a(q, q) = aqq + rot.t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

Complex det(const ComplexMatrix& m) {
    const std::size_t n = m.n();
    ComplexMatrix a = m;
    Complex d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        }
        if (a(piv, k) == Complex{}) {
            return 0.0;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
        }
    }
    return d;
}

std::vector<double> singular_values(std::span<const Vector> columns) {
    const std::size_t count = columns.size();
    if (count == 0) return {};
    const std::size_t length = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != length) throw InvalidParameter("columns differ in length");
    }
    // Wide matrices are handled through the adjoint, which has the same
    // nonzero singular values and far fewer column pairs.
    std::vector<Vector> u;
    if (count > length) {
        u.assign(length, Vector(count));
        for (std::size_t j = 0; j < count; ++j)
            for (std::size_t i = 0; i < length; ++i) u[i][j] = std::conj(columns[j][i]);
    } else {
        u.assign(columns.begin(), columns.end());
    }
    const std::size_t k = u.size();
    const std::size_t rows = u.front().size();

    const double eps = std::max(1e-15, static_cast<double>(rows) * std::numeric_limits<double>::epsilon());
    double fro2 = 0.0;
    for (const auto& c : u) fro2 += std::real(inner(c, c));
    const double negligible = 1e-34 * fro2;
    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                const double alpha = std::real(inner(u[p], u[p]));
                const double beta = std::real(inner(u[q], u[q]));
                const Complex gamma = inner(u[p], u[q]);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) continue;
                rotated = true;
                const Complex phase = gamma / g;
                const auto rot = jacobi_rotation(alpha, beta, g);
                const Complex gpp = rot.c;
                const Complex gpq = rot.s;
                const Complex gqp = -rot.s * std::conj(phase);
                const Complex gqq = rot.c * std::conj(phase);
                for (std::size_t i = 0; i < rows; ++i) {
                    const Complex x = u[p][i];
                    const Complex y = u[q][i];
                    u[p][i] = x * gpp + y * gqp;
                    u[q][i] = x * gpq + y * gqq;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) throw NoConvergence("one-sided Jacobi SVD did not converge");

    std::vector<double> s(count, 0.0);
    for (std::size_t j = 0; j < k; ++j) s[j] = norm(u[j]);
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::size_t numerical_rank(std::span<const Vector> columns, double rel_tol) {
    const auto s = singular_values(columns);
    if (s.empty() || s.front() == 0.0) return 0;
    const double cut = rel_tol * s.front();
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

std::size_t krylov_rank(const ComplexMatrix& a, std::span<const Complex> x) {
    if (x.size() != a.n()) {
        throw InvalidParameter("vector length does not match matrix dimension");
    }
    const double nx = norm(x);
    if (nx == 0.0) {
        throw ZeroVector("Krylov start vector is zero");
    }
    const double zero_cut = 1e-13 * a.frobenius_norm();

    std::vector<Vector> cols;
    Vector current(x.begin(), x.end());
    for (auto& v : current) v /= nx;
    cols.push_back(current);
    for (std::size_t k = 1; k < a.n(); ++k) {
        Vector next = a * current;
        const double nn = norm(next);
        if (nn <= zero_cut) break;
        for (auto& v : next) v /= nn;
        cols.push_back(next);
        current = std::move(next);
    }
    return numerical_rank(cols);
}

}  // namespace kmsnr
