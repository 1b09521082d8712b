#include "kmsnr/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kmsnr/errors.hpp"
#include "kmsnr/linalg.hpp"

namespace kmsnr {

namespace {

std::vector<Complex> powers(Complex a, std::size_t count) {
    std::vector<Complex> p(count);
    if (count == 0) return p;
    p[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k) p[k] = p[k - 1] * a;
    return p;
}

void require_finite(Complex a) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw InvalidParameter("parameter must be finite");
    }
}

}  // namespace

ComplexMatrix kms(const KmsParams& p) {
    require_finite(p.a);
    ComplexMatrix m(p.n);
    const auto pw = powers(p.a, p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t j = i + 1; j < p.n; ++j) {
            m(i, j) = pw[j - i];
        }
    }
    return m;
}

ComplexMatrix jordan(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
    return m;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::size_t j) {
    const std::size_t n = a.n();
    if (n < 2 || j < 1 || j > n) {
        throw IndexOutOfRange("principal submatrix index out of range");
    }
    ComplexMatrix r(n - 1);
    for (std::size_t i = 0, ri = 0; i < n; ++i) {
        if (i == j - 1) continue;
        for (std::size_t k = 0, rk = 0; k < n; ++k) {
            if (k == j - 1) continue;
            r(ri, rk++) = a(i, k);
        }
        ++ri;
    }
    return r;
}

ComplexMatrix leading_block(const ComplexMatrix& a, std::size_t m) {
    if (m < 1 || m > a.n()) {
        throw IndexOutOfRange("leading block size out of range");
    }
    ComplexMatrix r(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) r(i, j) = a(i, j);
    }
    return r;
}

ComplexMatrix affine_class_map(const KmsParams& p) {
    require_finite(p.a);
    const double mod2 = std::norm(p.a);
    if (p.a == Complex{} || std::abs(std::sqrt(mod2) - 1.0) < 1e-12) {
        throw InvalidParameter("affine class map needs a != 0 and |a| != 1");
    }
    ComplexMatrix m(p.n);
    const auto pw = powers(p.a, p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        m(i, i) = -std::conj(p.a);
        for (std::size_t j = i + 1; j < p.n; ++j) {
            m(i, j) = pw[j - i - 1] * (1.0 - mod2);
        }
    }
    return m;
}

ComplexMatrix snm1_standard(std::size_t n, Complex lambda) {
    require_finite(lambda);
    const double mod2 = std::norm(lambda);
    if (mod2 <= 1.0) {
        throw InvalidParameter("S_n^{-1} standard form needs |lambda| > 1");
    }
    ComplexMatrix m(n);
    const auto pw = powers(std::conj(lambda), n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = lambda;
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = pw[j - i - 1] * (mod2 - 1.0);
        }
    }
    return m;
}

ComplexMatrix poisson_toeplitz(std::size_t n, double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw InvalidParameter("Poisson Toeplitz matrix needs 0 <= a < 1");
    }
    ComplexMatrix m(n);
    const auto pw = powers(a, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = pw[i > j ? i - j : j - i];
        }
    }
    return m;
}

double poisson_kernel(double a, double t) {
    return (1.0 - a * a) / (1.0 - 2.0 * a * std::cos(t) + a * a);
}

double sine_equation(std::size_t n, double a, double t) {
    const double nd = static_cast<double>(n);
    return std::sin((nd + 1.0) * t) - 2.0 * a * std::sin(nd * t) +
           a * a * std::sin((nd - 1.0) * t);
}

std::vector<double> SineRootSet::kms_eigenvalues() const {
    std::vector<double> out;
    out.reserve(roots.size());
    for (double t : roots) out.push_back(0.5 * (poisson_kernel(a, t) - 1.0));
    return out;
}

SineRootSet sine_roots(std::size_t n, double a) {
    if (n < 1) throw InvalidParameter("n must be positive");
    if (!(a > 0.0 && a < 1.0)) {
        throw InvalidParameter("sine roots need 0 < a < 1");
    }
    const auto g = [n, a](double t) { return sine_equation(n, a, t); };
    const std::size_t samples = 64 * n;
    const double step = std::numbers::pi / static_cast<double>(samples);

    SineRootSet out{n, a, {}};
    double lo = step;
    double glo = g(lo);
    for (std::size_t k = 2; k < samples; ++k) {
        const double hi = step * static_cast<double>(k);
        const double ghi = g(hi);
        if (glo == 0.0) {
            out.roots.push_back(lo);
        } else if (glo * ghi < 0.0) {
            double l = lo, h = hi, gl = glo;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (l + h);
                if (mid <= l || mid >= h) break;
                const double gm = g(mid);
                if (gm == 0.0) {
                    l = h = mid;
                    break;
                }
                if ((gm < 0.0) == (gl < 0.0)) {
                    l = mid;
                    gl = gm;
                } else {
                    h = mid;
                }
            }
            const double root = std::abs(g(l)) <= std::abs(g(h)) ? l : h;
            out.roots.push_back(root);
        }
        lo = hi;
        glo = ghi;
    }
    if (out.roots.size() != n) {
        throw RootCountMismatch("sine equation scan found " + std::to_string(out.roots.size()) +
                                " roots, expected " + std::to_string(n));
    }
    return out;
}

std::size_t defect_rank(const ComplexMatrix& a) {
    const ComplexMatrix d = ComplexMatrix::identity(a.n()) - a.adjoint() * a;
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < d.n(); ++j) cols.push_back(d.column(j));
    return numerical_rank(cols);
}

}  // namespace kmsnr
