#include "kmsnr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "kmsnr/errors.hpp"
#include "kmsnr/io.hpp"
#include "kmsnr/kippenhahn.hpp"
#include "kmsnr/linalg.hpp"
#include "kmsnr/models.hpp"
#include "kmsnr/numrange.hpp"

namespace kmsnr {

namespace {

constexpr const char* kSuiteVersion = "1.0";
constexpr double kUnitTol = 1e-12;
constexpr double kNearUnitTol = 1e-6;

bool unit_modulus(Complex a) { return std::abs(std::abs(a) - 1.0) <= kUnitTol; }
bool near_unit(Complex a) { return !unit_modulus(a) && std::abs(std::abs(a) - 1.0) <= kNearUnitTol; }

using Params = std::vector<std::pair<std::string, ParamValue>>;

ParamValue pv(std::size_t v) { return static_cast<std::int64_t>(v); }
ParamValue pv(Complex a) { return format_complex(a); }

CheckResult start(std::string id, Params params, double tol) {
    CheckResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.tolerance = tol;
    return r;
}

CheckResult skipped(std::string id, Params params, std::string note) {
    CheckResult r = start(std::move(id), std::move(params), 0.0);
    r.status = Status::skip;
    r.note = std::move(note);
    return r;
}

void decide(CheckResult& r, bool ok) { r.status = ok ? Status::pass : Status::fail; }

double rel_fro(const ComplexMatrix& diff, const ComplexMatrix& ref) {
    return diff.frobenius_norm() / std::max(1.0, ref.frobenius_norm());
}

// Min-eigenvector of Re J_n(a) with the phases of a removed and the largest
// component made real positive.
Vector normalized_min_vector(const HermitianEigen& eig, Complex a) {
    Vector x = eig.vector(0);
    const Complex u = a / std::abs(a);
    Complex uk = 1.0;
    for (auto& v : x) {
        v *= uk;
        uk *= u;
    }
    const auto big = std::max_element(x.begin(), x.end(),
                                      [](Complex p, Complex q) { return std::abs(p) < std::abs(q); });
    const Complex phase = std::conj(*big) / std::abs(*big);
    for (auto& v : x) v *= phase;
    return x;
}

// |p(x, y, z)| relative to max|c| (|x| + |y| + |z|)^n.
double relative_residual(const HomogeneousPoly3& p, double x, double y, double z) {
    const double scale = std::max(1.0, p.max_abs()) *
                         std::pow(std::abs(x) + std::abs(y) + std::abs(z), static_cast<double>(p.degree()));
    return scale == 0.0 ? 0.0 : std::abs(kipp_eval(p, x, y, z)) / scale;
}

ComplexMatrix random_isometry(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vector> cols;
    while (cols.size() < m) {
        Vector v(n);
        for (auto& c : v) c = Complex(g(rng), g(rng));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) {
                const Complex proj = inner(q, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q[i];
            }
        }
        const double nv = norm(v);
        if (nv < 1e-8) continue;
        for (auto& c : v) c /= nv;
        cols.push_back(std::move(v));
    }
    ComplexMatrix out(n);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) out(i, j) = cols[j][i];
    return out;
}

ComplexMatrix s3_inverse_matrix() {
    const double r3 = std::sqrt(3.0);
    return ComplexMatrix{{2.0, 2.0 * r3, Complex(6.0, -12.0)},
                         {0.0, Complex(1.0, 2.0), 4.0 * r3},
                         {0.0, 0.0, Complex(2.0, -3.0)}};
}

// ---------------------------------------------------------------------------

struct Context {
    const SuiteConfig& cfg;
    std::vector<std::size_t> ns;
    std::vector<CheckResult>& out;

    void emit(const std::function<CheckResult()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r = fn();
        if (cfg.record_timing) {
            r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        out.push_back(std::move(r));
    }

    bool too_large(std::size_t n) const { return n > cfg.n_max; }
};

const char* kTooLarge = "n exceeds n_max";
const char* kIllConditioned = "ill-conditioned regime: |a| within 1e-6 of 1";

// Runs body(n, a) for each (n, a) pair, emitting size skips.
void for_each_na(Context& ctx, const std::string& id,
                 const std::function<CheckResult(std::size_t, Complex, Params)>& body) {
    for (std::size_t n : ctx.ns) {
        for (Complex a : ctx.cfg.a_values) {
            Params p{{"n", pv(n)}, {"a", pv(a)}};
            if (ctx.too_large(n)) {
                ctx.out.push_back(skipped(id, p, kTooLarge));
                continue;
            }
            ctx.emit([&] { return body(n, a, p); });
        }
    }
}

void run_affine_class(Context& ctx) {
    for_each_na(ctx, "affine_class_membership", [](std::size_t n, Complex a, Params p) {
        const std::string id = "affine_class_membership";
        if (a == Complex{} || unit_modulus(a)) return skipped(id, p, "requires a != 0 and |a| != 1");
        if (near_unit(a)) return skipped(id, p, kIllConditioned);
        auto r = start(id, p, 1e-10);
        const ComplexMatrix m = affine_class_map({n, a});
        const double mod2 = std::norm(a);
        ComplexMatrix ref = ((1.0 - mod2) / a) * kms(n, a);
        ref -= std::conj(a) * ComplexMatrix::identity(n);
        double diag_dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) diag_dev = std::max(diag_dev, std::abs(m(i, i) + std::conj(a)));
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(m.column(j));
        const double smax = singular_values(cols).front();
        const std::size_t rank = defect_rank(m);
        r.measured["defect_rank"] = static_cast<double>(rank);
        r.measured["diagonal_deviation"] = diag_dev;
        r.measured["map_deviation"] = rel_fro(m - ref, ref);
        r.measured["spectral_radius"] = std::sqrt(mod2);
        r.measured["norm"] = smax;
        const bool contraction_ok = mod2 > 1.0 || smax <= 1.0 + r.tolerance;
        decide(r, rank == 1 && diag_dev <= r.tolerance && r.measured["map_deviation"] <= r.tolerance &&
                      contraction_ok);
        return r;
    });
}

void run_boundary_intersection(Context& ctx) {
    const std::string id = "boundary_intersection";
    for (std::size_t n : ctx.ns) {
        for (Complex a : ctx.cfg.a_values) {
            for (std::size_t j = 1; j <= std::max<std::size_t>(n, 1); ++j) {
                Params p{{"n", pv(n)}, {"a", pv(a)}, {"j", pv(j)}};
                if (ctx.too_large(n)) {
                    ctx.out.push_back(skipped(id, p, kTooLarge));
                } else if (n < 2) {
                    ctx.out.push_back(skipped(id, p, "requires n >= 2"));
                } else if (a == Complex{} || unit_modulus(a)) {
                    ctx.out.push_back(skipped(id, p, "requires |a| not in {0, 1}"));
                } else if (near_unit(a)) {
                    ctx.out.push_back(skipped(id, p, kIllConditioned));
                } else {
                    ctx.emit([&] { return check_boundary_intersection(n, a, j, ctx.cfg.grid_m); });
                }
            }
        }
    }
}

void run_boundary_intersection_unit(Context& ctx) {
    const std::string id = "boundary_intersection_unit_modulus";
    for (std::size_t n : ctx.ns) {
        for (Complex a : ctx.cfg.a_values) {
            if (!unit_modulus(a)) continue;
            for (std::size_t j = 1; j <= std::max<std::size_t>(n, 1); ++j) {
                Params p{{"n", pv(n)}, {"a", pv(a)}, {"j", pv(j)}};
                if (ctx.too_large(n)) {
                    ctx.out.push_back(skipped(id, p, kTooLarge));
                    continue;
                }
                if (n < 2) {
                    ctx.out.push_back(skipped(id, p, "requires n >= 2"));
                    continue;
                }
                ctx.emit([&] {
                    auto r = start(id, p, kPointTol);
                    const ComplexMatrix A = kms(n, a);
                    const auto touch = boundary_touch(A, principal_submatrix(A, j), ctx.cfg.grid_m);
                    double dev = 0.0;
                    for (const auto& t : touch) dev = std::max(dev, std::abs(t.real() + 0.5));
                    r.measured["touch_count"] = static_cast<double>(touch.size());
                    r.measured["abscissa_deviation"] = dev;
                    decide(r, dev <= r.tolerance);
                    return r;
                });
            }
        }
    }
}

void run_boundary_span(Context& ctx) {
    for_each_na(ctx, "boundary_span", [&](std::size_t n, Complex a, Params p) {
        if (a == Complex{}) return skipped("boundary_span", p, "requires a != 0");
        auto r = start("boundary_span", p, 0.0);
        const std::size_t m = std::max(ctx.cfg.grid_m, n);
        const ComplexMatrix A = kms(n, a);
        const std::size_t rank = boundary_span_rank(A, m);
        r.measured["rank"] = static_cast<double>(rank);
        r.measured["sigma_min_relative"] = boundary_span_singular_values(A, m).back();
        r.measured["rank_deficit"] = static_cast<double>(n - rank);
        decide(r, rank == n);
        return r;
    });
}

void run_circle_touch(Context& ctx) {
    for_each_na(ctx, "circle_touch", [&](std::size_t n, Complex a, Params p) {
        if (n < 3 || a == Complex{}) return skipped("circle_touch", p, "requires n >= 3 and a != 0");
        auto r = start("circle_touch", p, kPointTol);
        const ComplexMatrix A = kms(n, a);
        const double w = numerical_radius(A);
        const auto pts = circle_touch_points(A, ctx.cfg.grid_m);
        r.measured["clusters"] = static_cast<double>(pts.size());
        r.measured["numerical_radius"] = w;
        if (!pts.empty()) r.measured["deviation_from_w"] = std::abs(pts.front() - w);
        decide(r, pts.size() == 1 && std::abs(pts.front() - w) <= r.tolerance);
        return r;
    });
}

void run_compression(Context& ctx) {
    const std::string id = "compression_strictness";
    for (std::size_t n : ctx.ns) {
        for (std::size_t ai = 0; ai < ctx.cfg.a_values.size(); ++ai) {
            const Complex a = ctx.cfg.a_values[ai];
            Params p{{"n", pv(n)}, {"a", pv(a)}};
            if (ctx.too_large(n)) {
                ctx.out.push_back(skipped(id, p, kTooLarge));
            } else if (n < 2 || n > 6 || a == Complex{}) {
                ctx.out.push_back(skipped(id, p, "requires 2 <= n <= 6 and a != 0"));
            } else {
                ctx.emit([&] {
                    auto r = start(id, p, 1e-9);
                    std::seed_seq seq{static_cast<std::uint64_t>(ctx.cfg.seed), static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(ai)};
                    std::mt19937_64 rng(seq);
                    const std::size_t m = n - 1;
                    const ComplexMatrix A = kms(n, a);
                    const ComplexMatrix v = random_isometry(n, m, rng);
                    const ComplexMatrix full = v.adjoint() * A * v;
                    ComplexMatrix b(m);
                    for (std::size_t i = 0; i < m; ++i)
                        for (std::size_t k = 0; k < m; ++k) b(i, k) = full(i, k);
                    double excess = -std::numeric_limits<double>::infinity();
                    double deficit = -std::numeric_limits<double>::infinity();
                    for (double t : theta_grid(ctx.cfg.grid_m)) {
                        const double d = support(b, t) - support(A, t);
                        excess = std::max(excess, d);
                        deficit = std::max(deficit, -d);
                    }
                    r.measured["max_excess"] = excess;
                    r.measured["max_deficit"] = deficit;
                    decide(r, excess <= r.tolerance && deficit > r.tolerance);
                    return r;
                });
            }
        }
    }
}

void run_conjugate_symmetry(Context& ctx) {
    for_each_na(ctx, "conjugate_symmetry", [&](std::size_t n, Complex a, Params p) {
        const ComplexMatrix A = kms(n, a);
        auto r = start("conjugate_symmetry", p, 1e-10 * std::max(1.0, A.frobenius_norm()));
        const auto grid = theta_grid(ctx.cfg.grid_m);
        std::vector<double> h;
        for (double t : grid) h.push_back(support(A, t));
        double dev = 0.0;
        for (std::size_t k = 1; k < h.size(); ++k) dev = std::max(dev, std::abs(h[k] - h[h.size() - k]));
        r.measured["max_deviation"] = dev;
        decide(r, dev <= r.tolerance);
        return r;
    });
}

void run_cyclicity(Context& ctx) {
    for_each_na(ctx, "cyclicity", [&](std::size_t n, Complex a, Params p) {
        if (a == Complex{}) return skipped("cyclicity", p, "requires a != 0");
        auto r = start("cyclicity", p, 0.0);
        const ComplexMatrix A = kms(n, a);
        const double tol = cluster_tol(A);
        std::size_t min_rank = n, directions = 0;
        for (double t : theta_grid(ctx.cfg.grid_m)) {
            const auto eig = hermitian_eigs(rotated_real_part(A, t));
            if (n > 1 && eig.values[n - 1] - eig.values[n - 2] <= tol) continue;
            ++directions;
            min_rank = std::min(min_rank, krylov_rank(A, eig.vector(n - 1)));
        }
        r.measured["min_rank"] = static_cast<double>(min_rank);
        r.measured["directions"] = static_cast<double>(directions);
        decide(r, min_rank == n && directions > 0);
        return r;
    });
}

void run_determinant(Context& ctx) {
    for_each_na(ctx, "determinant_identity", [](std::size_t n, Complex a, Params p) {
        auto r = start("determinant_identity", p, 1e-8);
        ComplexMatrix m = 2.0 * real_part(kms(n, a));
        m += ComplexMatrix::identity(n);
        const Complex d = det(m);
        const double expected = std::pow(1.0 - std::norm(a), static_cast<double>(n - 1));
        r.measured["determinant"] = d.real();
        r.measured["expected"] = expected;
        r.measured["relative_error"] = std::abs(d - expected) / std::max(1.0, std::abs(expected));
        decide(r, r.measured["relative_error"] <= r.tolerance);
        return r;
    });
}

void run_disc_and_segment(Context& ctx) {
    for_each_na(ctx, "disc_and_segment", [&](std::size_t n, Complex a, Params p) {
        if (near_unit(a)) return skipped("disc_and_segment", p, kIllConditioned);
        return check_segment_and_disc(n, a, ctx.cfg.grid_m);
    });
}

void run_interior_containment(Context& ctx) {
    for_each_na(ctx, "interior_containment", [&](std::size_t n, Complex a, Params p) {
        const std::string id = "interior_containment";
        if (n < 2) return skipped(id, p, "requires n >= 2");
        if (near_unit(a)) return skipped(id, p, kIllConditioned);
        const bool strict = a != Complex{} && !unit_modulus(a);
        auto r = start(id, p, strict ? 0.0 : 1e-9);
        const ComplexMatrix A = kms(n, a);
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < n; ++k) {
            gap = std::min(gap, interior_gap(leading_block(A, k), A, ctx.cfg.grid_m));
        }
        r.measured["min_gap"] = gap;
        r.measured["strict_expected"] = strict ? 1.0 : 0.0;
        decide(r, strict ? gap > 1e-12 : gap >= -r.tolerance);
        return r;
    });
}

void run_jordan_radius(Context& ctx) {
    const std::string id = "jordan_radius";
    for (std::size_t n : ctx.ns) {
        Params p{{"n", pv(n)}};
        if (ctx.too_large(n)) {
            ctx.out.push_back(skipped(id, p, kTooLarge));
            continue;
        }
        ctx.emit([&] {
            auto r = start(id, p, 1e-8);
            const double w = numerical_radius(jordan(n));
            const double expected = std::cos(std::numbers::pi / static_cast<double>(n + 1));
            r.measured["radius"] = w;
            r.measured["deviation"] = std::abs(w - expected);
            decide(r, r.measured["deviation"] <= r.tolerance);
            return r;
        });
    }
}

void run_kippenhahn(Context& ctx) {
    for_each_na(ctx, "kippenhahn_identities", [&](std::size_t n, Complex a, Params p) {
        if (n > 8) return skipped("kippenhahn_identities", p, "requires n <= 8");
        auto r = start("kippenhahn_identities", p, 1e-7);
        const ComplexMatrix A = kms(n, a);
        const HomogeneousPoly3 poly = kipp_coeffs(A);
        const double scale = std::max(1.0, poly.max_abs());

        double mixed = 0.0;
        for (std::size_t d = 1; d <= n; ++d) {
            Complex s{};
            for (std::size_t j = 0; j <= d; ++j) {
                s += poly.coeff(j, d - j) * std::pow(Complex(0.0, 1.0), static_cast<int>(d - j));
            }
            mixed = std::max(mixed, std::abs(s));
        }
        r.measured["mixed_coefficients"] = mixed / scale;

        double support_res = 0.0;
        for (double t : theta_grid(ctx.cfg.grid_m)) {
            support_res = std::max(support_res,
                                   relative_residual(poly, std::cos(t), std::sin(t), -support(A, t)));
        }
        r.measured["support_residual"] = support_res;

        double re_res = 0.0;
        for (double lambda : hermitian_eigs(real_part(A)).values) {
            re_res = std::max(re_res, relative_residual(poly, 1.0, 0.0, -lambda));
        }
        r.measured["real_part_residual"] = re_res;

        bool ok = r.measured["mixed_coefficients"] <= 1e-8 && support_res <= r.tolerance &&
                  re_res <= r.tolerance;
        if (n == 4) {
            const double m2 = std::norm(a);
            const double k = m2 * m2 / 16.0;
            const double dev = std::max({std::abs(poly.coeff(4, 0) - k * (1.0 - 4.0 * m2)),
                                         std::abs(poly.coeff(2, 2) - k * (2.0 - 4.0 * m2)),
                                         std::abs(poly.coeff(0, 4) - k), std::abs(poly.coeff(3, 1)),
                                         std::abs(poly.coeff(1, 3))});
            r.measured["constant_term_deviation"] = dev;
            ok = ok && dev <= r.tolerance;
        }
        decide(r, ok);
        return r;
    });
}

void run_middle_deletion(Context& ctx) {
    const std::string id = "middle_deletion_minimum";
    for (std::size_t n : ctx.ns) {
        if (n < 3 || n % 2 == 0) continue;
        const std::size_t m = (n + 1) / 2;
        for (Complex a : ctx.cfg.a_values) {
            Params p{{"m", pv(m)}, {"a", pv(a)}};
            if (ctx.too_large(n)) {
                ctx.out.push_back(skipped(id, p, kTooLarge));
            } else {
                ctx.emit([&] { return check_middle_deletion_minimum(m, a); });
            }
        }
    }
}

void run_monotonicity(Context& ctx) {
    const std::string id = "monotonicity";
    const auto& as = ctx.cfg.a_values;
    for (std::size_t n : ctx.ns) {
        for (std::size_t i = 0; i < as.size(); ++i) {
            for (std::size_t k = 0; k < as.size(); ++k) {
                const Complex a = as[i], b = as[k];
                if (i == k || std::abs(a) > std::abs(b) + kUnitTol) continue;
                const bool equal = std::abs(std::abs(a) - std::abs(b)) <= kUnitTol;
                if (equal && k < i) continue;
                Params p{{"n", pv(n)}, {"a", pv(a)}, {"b", pv(b)}};
                if (ctx.too_large(n)) {
                    ctx.out.push_back(skipped(id, p, kTooLarge));
                    continue;
                }
                ctx.emit([&] {
                    const bool strict = !equal && n >= 2;
                    auto r = start(id, p, strict ? 0.0 : 1e-9);
                    const double gap = interior_gap(kms(n, a), kms(n, b), ctx.cfg.grid_m);
                    r.measured["min_gap"] = gap;
                    r.measured["strict_expected"] = strict ? 1.0 : 0.0;
                    decide(r, strict ? gap > 1e-12 : gap >= -r.tolerance);
                    return r;
                });
            }
        }
    }
}

void run_multiplicity(Context& ctx) {
    for_each_na(ctx, "multiplicity_dichotomy", [&](std::size_t n, Complex a, Params p) {
        const std::string id = "multiplicity_dichotomy";
        if (n < 3 || a == Complex{}) return skipped(id, p, "requires n >= 3 and a != 0");
        if (near_unit(a)) return skipped(id, p, kIllConditioned);
        auto r = start(id, p, 0.0);
        const ComplexMatrix A = kms(n, a);
        std::size_t off = 0;
        for (double t : theta_grid(ctx.cfg.grid_m)) {
            if (std::abs(t - std::numbers::pi) <= 1e-12) continue;
            off = std::max(off, boundary_point(A, t).multiplicity);
        }
        const std::size_t at_pi = boundary_point(A, std::numbers::pi).multiplicity;
        r.measured["max_multiplicity_off_pi"] = static_cast<double>(off);
        r.measured["multiplicity_at_pi"] = static_cast<double>(at_pi);
        decide(r, off == 1 && (unit_modulus(a) ? at_pi >= 2 : at_pi == 1));
        return r;
    });
}

void run_nilpotency(Context& ctx) {
    for_each_na(ctx, "nilpotency", [](std::size_t n, Complex a, Params p) {
        auto r = start("nilpotency", p, 1e-12);
        const ComplexMatrix A = kms(n, a);
        ComplexMatrix pw = ComplexMatrix::identity(n);
        for (std::size_t k = 0; k + 1 < n; ++k) pw = pw * A;
        const ComplexMatrix top = pw * A;
        r.measured["power_n_norm"] = top.frobenius_norm() / std::max(1.0, A.frobenius_norm());
        bool ok = r.measured["power_n_norm"] <= r.tolerance;
        if (a != Complex{} && n >= 2) {
            const Complex expected = std::pow(a, static_cast<int>(n - 1));
            r.measured["power_n_minus_1_corner_error"] =
                std::abs(pw(0, n - 1) - expected) / std::abs(expected);
            ok = ok && r.measured["power_n_minus_1_corner_error"] <= r.tolerance && pw.frobenius_norm() > 0.0;
        }
        decide(r, ok);
        return r;
    });
}

void run_poisson(Context& ctx) {
    for_each_na(ctx, "poisson_spectrum", [](std::size_t n, Complex a, Params p) {
        const double r0 = std::abs(a);
        if (!(r0 > 0.0 && r0 < 1.0)) return skipped("poisson_spectrum", p, "requires 0 < |a| < 1");
        auto r = start("poisson_spectrum", p, 1e-9);
        auto from_roots = sine_roots(n, r0).kms_eigenvalues();
        std::sort(from_roots.begin(), from_roots.end());
        const auto eig = hermitian_eigs(real_part(kms(n, a))).values;
        double dev = 0.0;
        for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, std::abs(from_roots[k] - eig[k]));
        r.measured["max_deviation"] = dev;
        r.measured["toeplitz_min_eigenvalue"] = hermitian_eigs(poisson_toeplitz(n, r0)).min();
        bool ok = dev <= r.tolerance && r.measured["toeplitz_min_eigenvalue"] >= -1e-10;
        if (n >= 2) {
            const auto roots = sine_roots(n, r0).roots;
            r.measured["t2_margin"] = roots[1] - std::numbers::pi / static_cast<double>(n + 1);
            ok = ok && r.measured["t2_margin"] > 0.0;
        }
        decide(r, ok);
        return r;
    });
}

void run_rotation_invariance(Context& ctx) {
    for_each_na(ctx, "rotation_invariance", [&](std::size_t n, Complex a, Params p) {
        const ComplexMatrix A = kms(n, a);
        const ComplexMatrix B = kms(n, std::abs(a));
        auto r = start("rotation_invariance", p, 1e-10 * std::max(1.0, A.frobenius_norm()));
        double dev = 0.0;
        for (double t : theta_grid(ctx.cfg.grid_m)) dev = std::max(dev, std::abs(support(A, t) - support(B, t)));
        r.measured["max_deviation"] = dev;
        decide(r, dev <= r.tolerance);
        return r;
    });
}

void run_s3(Context& ctx) {
    const bool requested = std::find(ctx.ns.begin(), ctx.ns.end(), 3) != ctx.ns.end();
    if (!requested) return;
    if (ctx.too_large(3)) {
        ctx.out.push_back(skipped("s3_inverse_example", {}, kTooLarge));
        return;
    }
    ctx.emit([&] { return check_s3_inverse_example(ctx.cfg.grid_m); });
}

void run_similarity(Context& ctx) {
    for_each_na(ctx, "similarity", [](std::size_t n, Complex a, Params p) {
        if (a == Complex{}) return skipped("similarity", p, "requires a != 0");
        const Complex b = 1.5;
        auto r = start("similarity", p, 1e-12);
        std::vector<Complex> d(n);
        Complex ratio = 1.0;
        for (auto& v : d) {
            v = ratio;
            ratio *= a / b;
        }
        const ComplexMatrix x = ComplexMatrix::diagonal(d);
        const ComplexMatrix lhs = x * kms(n, a);
        r.measured["relative_residual"] = rel_fro(lhs - kms(n, b) * x, lhs);
        decide(r, r.measured["relative_residual"] <= r.tolerance);
        return r;
    });
}

void run_snm1(Context& ctx) {
    const std::string id = "snm1_boundary_intersection";
    for (std::size_t n : ctx.ns) {
        for (Complex a : ctx.cfg.a_values) {
            for (std::size_t j = 1; j <= std::max<std::size_t>(n, 1); ++j) {
                const Complex lambda = std::conj(a);
                Params p{{"n", pv(n)}, {"lambda", pv(lambda)}, {"j", pv(j)}};
                if (ctx.too_large(n)) {
                    ctx.out.push_back(skipped(id, p, kTooLarge));
                    continue;
                }
                if (n < 2 || std::abs(a) <= 1.0 || unit_modulus(a)) {
                    ctx.out.push_back(skipped(id, p, "requires n >= 2 and |lambda| > 1"));
                    continue;
                }
                if (near_unit(a)) {
                    ctx.out.push_back(skipped(id, p, kIllConditioned));
                    continue;
                }
                ctx.emit([&] {
                    auto r = start(id, p, kPointTol);
                    const double mod2 = std::norm(lambda);
                    const ComplexMatrix A = snm1_standard(n, lambda);
                    const ComplexMatrix J = kms(n, a);
                    ComplexMatrix mapped = A - lambda * ComplexMatrix::identity(n);
                    mapped = (std::conj(lambda) / (mod2 - 1.0)) * mapped;
                    r.measured["affine_identity_residual"] = rel_fro(mapped - J, J);

                    const Complex c = (mod2 - 1.0) / std::conj(lambda);
                    const double b = hermitian_eigs(real_part(J)).min();
                    const bool singleton = n % 2 == 1 && j == (n + 1) / 2;
                    const auto touch = boundary_touch(A, principal_submatrix(A, j), ctx.cfg.grid_m);
                    r.measured["touch_count"] = static_cast<double>(touch.size());
                    r.measured["expected_count"] = singleton ? 1.0 : 0.0;
                    bool ok = r.measured["affine_identity_residual"] <= 1e-12 &&
                              touch.size() == (singleton ? 1u : 0u);
                    if (singleton && touch.size() == 1) {
                        const double dev = std::abs(touch.front() - (lambda + c * b)) / std::max(1.0, std::abs(c));
                        r.measured["touch_deviation"] = dev;
                        ok = ok && dev <= r.tolerance;
                    }
                    decide(r, ok);
                    return r;
                });
            }
        }
    }
}

void run_unitary_similarity(Context& ctx) {
    for_each_na(ctx, "unitary_similarity", [](std::size_t n, Complex a, Params p) {
        auto r = start("unitary_similarity", p, 1e-12);
        const double theta = std::arg(a);
        std::vector<Complex> d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = std::polar(1.0, static_cast<double>(k) * theta);
        const ComplexMatrix u = ComplexMatrix::diagonal(d);
        const ComplexMatrix lhs = u * kms(n, a);
        r.measured["relative_residual"] = rel_fro(lhs - kms(n, std::abs(a)) * u, lhs);
        decide(r, r.measured["relative_residual"] <= r.tolerance);
        return r;
    });
}

struct Registered {
    const char* id;
    void (*run)(Context&);
};

// Sorted by id.
constexpr Registered kRegistry[] = {
    {"affine_class_membership", run_affine_class},
    {"boundary_intersection", run_boundary_intersection},
    {"boundary_intersection_unit_modulus", run_boundary_intersection_unit},
    {"boundary_span", run_boundary_span},
    {"circle_touch", run_circle_touch},
    {"compression_strictness", run_compression},
    {"conjugate_symmetry", run_conjugate_symmetry},
    {"cyclicity", run_cyclicity},
    {"determinant_identity", run_determinant},
    {"disc_and_segment", run_disc_and_segment},
    {"interior_containment", run_interior_containment},
    {"jordan_radius", run_jordan_radius},
    {"kippenhahn_identities", run_kippenhahn},
    {"middle_deletion_minimum", run_middle_deletion},
    {"monotonicity", run_monotonicity},
    {"multiplicity_dichotomy", run_multiplicity},
    {"nilpotency", run_nilpotency},
    {"poisson_spectrum", run_poisson},
    {"rotation_invariance", run_rotation_invariance},
    {"s3_inverse_example", run_s3},
    {"similarity", run_similarity},
    {"snm1_boundary_intersection", run_snm1},
    {"unitary_similarity", run_unitary_similarity},
};

}  // namespace

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skip: return "skip";
    }
    return "unknown";
}

SuiteConfig default_config() {
    SuiteConfig cfg;
    for (std::size_t n = 2; n <= 9; ++n) cfg.n_values.push_back(n);
    cfg.a_values = {0.3, 0.5, 0.9, 1.0, 1.2, 2.0, Complex(1.0, 1.0)};
    return cfg;
}

std::vector<std::string> check_ids() {
    std::vector<std::string> ids;
    for (const auto& r : kRegistry) ids.emplace_back(r.id);
    return ids;
}

CheckResult check_boundary_intersection(std::size_t n, Complex a, std::size_t j, std::size_t m) {
    Params p{{"n", pv(n)}, {"a", pv(a)}, {"j", pv(j)}};
    const std::string id = "boundary_intersection";
    if (n < 2 || j < 1 || j > n) return skipped(id, p, "requires n >= 2 and 1 <= j <= n");
    if (a == Complex{} || unit_modulus(a)) return skipped(id, p, "requires |a| not in {0, 1}");
    auto r = start(id, p, kPointTol);
    const ComplexMatrix A = kms(n, a);
    const auto eig = hermitian_eigs(real_part(A));
    const double b = eig.min();
    const bool singleton = n % 2 == 1 && j == (n + 1) / 2 && std::abs(a) > 1.0;
    const auto touch = boundary_touch(A, principal_submatrix(A, j), m);
    r.measured["touch_count"] = static_cast<double>(touch.size());
    r.measured["expected_count"] = singleton ? 1.0 : 0.0;
    r.measured["b"] = b;
    bool ok = touch.size() == (singleton ? 1u : 0u);
    if (singleton) {
        const Vector x = normalized_min_vector(eig, a);
        double antisym = 0.0;
        for (std::size_t k = 1; k < j; ++k) antisym = std::max(antisym, std::abs(x[j - 1 - k] + x[j - 1 + k]));
        r.measured["eigenvector_center"] = std::abs(x[j - 1]);
        r.measured["eigenvector_antisymmetry"] = antisym;
        r.measured["eigen_gap"] = eig.values[1] - eig.values[0];
        ok = ok && r.measured["eigenvector_center"] <= 1e-8 && antisym <= 1e-8;
        if (touch.size() == 1) {
            r.measured["touch_deviation"] = std::abs(touch.front() - b);
            ok = ok && r.measured["touch_deviation"] <= r.tolerance;
        }
    }
    decide(r, ok);
    return r;
}

CheckResult check_middle_deletion_minimum(std::size_t m, Complex a) {
    Params p{{"m", pv(m)}, {"a", pv(a)}};
    const std::string id = "middle_deletion_minimum";
    if (m < 2 || std::abs(a) <= 1.0 || unit_modulus(a)) return skipped(id, p, "requires m >= 2 and |a| > 1");
    if (near_unit(a)) return skipped(id, p, kIllConditioned);
    auto r = start(id, p, 1e-9);
    const std::size_t n = 2 * m - 1;
    const ComplexMatrix A = kms(n, a);
    const double full = hermitian_eigs(real_part(A)).min();
    const double middle = hermitian_eigs(real_part(principal_submatrix(A, m))).min();
    const double last = hermitian_eigs(real_part(principal_submatrix(A, n))).min();
    r.measured["difference"] = std::abs(middle - full);
    r.measured["strictness_margin"] = last - middle;
    decide(r, r.measured["difference"] <= r.tolerance && r.measured["strictness_margin"] > 1e-10);
    return r;
}

CheckResult check_segment_and_disc(std::size_t n, Complex a, std::size_t m) {
    auto r = start("disc_and_segment", {{"n", pv(n)}, {"a", pv(a)}}, kDiscTol);
    const ComplexMatrix A = kms(n, a);
    const bool seg_expected = n >= 3 && unit_modulus(a);
    const bool disc_expected = n == 2 && a != Complex{};
    const auto seg = detect_segment(A, m);
    const auto disc = disc_check(A, m);
    r.measured["segment_present"] = seg.present ? 1.0 : 0.0;
    r.measured["segment_expected"] = seg_expected ? 1.0 : 0.0;
    r.measured["disc"] = disc.is_disc ? 1.0 : 0.0;
    r.measured["disc_expected"] = disc_expected ? 1.0 : 0.0;
    bool ok = seg.present == seg_expected && disc.is_disc == disc_expected;
    if (seg.present) {
        r.measured["segment_length"] = std::abs(seg.endpoints[1] - seg.endpoints[0]);
        if (seg_expected) {
            r.measured["abscissa_deviation"] = std::abs(seg.abscissa + 0.5);
            ok = ok && r.measured["abscissa_deviation"] <= r.tolerance;
        }
    }
    if (disc.is_disc && disc_expected) {
        r.measured["radius_deviation"] = std::abs(disc.radius - std::abs(a) / 2.0);
        r.measured["center_deviation"] = std::abs(disc.center);
        ok = ok && r.measured["radius_deviation"] <= r.tolerance && r.measured["center_deviation"] <= r.tolerance;
    }
    decide(r, ok);
    return r;
}

CheckResult check_s3_inverse_example(std::size_t m) {
    auto r = start("s3_inverse_example", {}, 0.0);
    const ComplexMatrix A = s3_inverse_matrix();
    bool ok = true;
    for (std::size_t j = 1; j <= 3; ++j) {
        const auto touch = boundary_touch(A, principal_submatrix(A, j), m);
        r.measured["touch_count_j" + std::to_string(j)] = static_cast<double>(touch.size());
        ok = ok && touch.empty();
    }
    const ComplexMatrix d = ComplexMatrix::identity(3) - A.adjoint() * A;
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < 3; ++j) cols.push_back(d.column(j));
    const auto sv = singular_values(cols);
    r.measured["defect_sigma_max"] = sv[0];
    r.measured["defect_sigma_2_relative"] = sv[1] / sv[0];
    double min_mod = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) min_mod = std::min(min_mod, std::abs(A(i, i)));
    r.measured["min_eigenvalue_modulus"] = min_mod;
    ok = ok && sv[0] > 1e-6 && sv[1] / sv[0] < 1e-8 && min_mod > 1.0;
    decide(r, ok);
    return r;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
    std::set<std::string> wanted;
    for (const auto& s : cfg.suites) {
        if (s == "all") {
            wanted.clear();
            break;
        }
        const bool known = std::any_of(std::begin(kRegistry), std::end(kRegistry),
                                       [&](const Registered& r) { return s == r.id; });
        if (!known) throw InvalidParameter("unknown check id: " + s);
        wanted.insert(s);
    }
    if (cfg.grid_m < 3) throw InvalidParameter("grid_m must be at least 3");

    std::vector<std::size_t> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (!ns.empty() && ns.front() == 0) throw InvalidParameter("n must be positive");

    std::vector<CheckResult> out;
    if (ns.empty()) return out;
    Context ctx{cfg, ns, out};
    for (const auto& reg : kRegistry) {
        if (!wanted.empty() && !wanted.count(reg.id)) continue;
        reg.run(ctx);
    }
    return out;
}

std::string report_json(const SuiteConfig& cfg, const std::vector<CheckResult>& results) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["suite_version"] = kSuiteVersion;
    ordered_json c;
    c["n_values"] = cfg.n_values;
    ordered_json as = ordered_json::array();
    for (Complex a : cfg.a_values) as.push_back(format_complex(a));
    c["a_values"] = std::move(as);
    c["grid_m"] = cfg.grid_m;
    c["seed"] = cfg.seed;
    c["n_max"] = cfg.n_max;
    c["suites"] = cfg.suites.empty() ? std::vector<std::string>{"all"} : cfg.suites;
    c["record_timing"] = cfg.record_timing;
    doc["config"] = std::move(c);

    ordered_json res = ordered_json::array();
    for (const auto& r : results) {
        ordered_json e;
        e["id"] = r.id;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : r.params) {
            std::visit([&](const auto& x) { params[k] = x; }, v);
        }
        e["params"] = std::move(params);
        e["status"] = to_string(r.status);
        ordered_json measured = ordered_json::object();
        for (const auto& [k, v] : r.measured) measured[k] = v;
        e["measured"] = std::move(measured);
        e["tolerance"] = r.tolerance;
        e["elapsed_s"] = r.elapsed_s;
        if (!r.note.empty()) e["note"] = r.note;
        res.push_back(std::move(e));
    }
    doc["results"] = std::move(res);
    return doc.dump(2) + "\n";
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& r) { return r.status == Status::fail; });
}

}  // namespace kmsnr
