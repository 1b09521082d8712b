#pragma once

// Independent reference computations and random generators shared by the
// unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "kmsnr/matrix.hpp"

namespace oracle {

using kmsnr::Complex;
using kmsnr::ComplexMatrix;
using kmsnr::Vector;

inline Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    return {re, g(rng)};
}

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = gaussian(rng);
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix g = random_matrix(n, rng);
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

inline Vector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
    Vector v(n);
    for (auto& c : v) c = gaussian(rng);
    const double nv = kmsnr::norm(v);
    for (auto& c : v) c /= nv;
    return v;
}

// Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix q(n);
    std::vector<Vector> cols;
    while (cols.size() < n) {
        Vector v = random_unit_vector(n, rng);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : cols) {
                const Complex p = kmsnr::inner(c, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= p * c[i];
            }
        }
        const double nv = kmsnr::norm(v);
        if (nv < 1e-6) continue;
        for (auto& c : v) c /= nv;
        cols.push_back(v);
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
    return q;
}

// Laplace expansion along the first row.
inline Complex cofactor_det(const ComplexMatrix& a) {
    const std::size_t n = a.n();
    if (n == 1) return a(0, 0);
    Complex s{};
    for (std::size_t c = 0; c < n; ++c) {
        ComplexMatrix minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, mj = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, mj++) = a(i, j);
            }
        const double sign = c % 2 == 0 ? 1.0 : -1.0;
        s += sign * a(0, c) * cofactor_det(minor);
    }
    return s;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline Complex rayleigh(const ComplexMatrix& a, const Vector& x) { return kmsnr::inner(x, a * x); }

using Point = std::pair<double, double>;

inline double cross(Point o, Point a, Point b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain; counter-clockwise, no repeated end point.
inline std::vector<Point> convex_hull(std::vector<Point> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    std::vector<Point> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
        h[k++] = p[i - 1];
    }
    h.resize(k - 1);
    return h;
}

// Distance from q to a convex CCW polygon; zero inside.
inline double distance_to_hull(const std::vector<Point>& h, Point q) {
    if (h.empty()) return INFINITY;
    if (h.size() == 1) return std::hypot(q.first - h[0].first, q.second - h[0].second);
    bool inside = h.size() >= 3;
    double best = INFINITY;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Point a = h[i], b = h[(i + 1) % h.size()];
        if (cross(a, b, q) < 0) inside = false;
        const double dx = b.first - a.first, dy = b.second - a.second;
        const double len2 = dx * dx + dy * dy;
        double t = len2 == 0.0 ? 0.0 : ((q.first - a.first) * dx + (q.second - a.second) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(q.first - a.first - t * dx, q.second - a.second - t * dy));
    }
    return inside ? 0.0 : best;
}

inline std::vector<Point> rayleigh_cloud(const ComplexMatrix& a, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const Complex q = rayleigh(a, random_unit_vector(a.n(), rng));
        pts.emplace_back(q.real(), q.imag());
    }
    return pts;
}

}  // namespace oracle
