#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kmsnr/errors.hpp"
#include "kmsnr/linalg.hpp"
#include "kmsnr/models.hpp"
#include "oracles.hpp"

using namespace kmsnr;
using std::numbers::pi;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix power(const ComplexMatrix& a, std::size_t k) {
    ComplexMatrix r = ComplexMatrix::identity(a.n());
    for (std::size_t i = 0; i < k; ++i) r = r * a;
    return r;
}

ComplexMatrix diag_powers(std::size_t n, Complex z) {
    std::vector<Complex> d(n);
    Complex p = 1.0;
    for (auto& x : d) {
        x = p;
        p *= z;
    }
    return ComplexMatrix::diagonal(d);
}

}  // namespace

TEST_CASE("kms examples") {
    CHECK(kms(2, 1.0) == ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    CHECK(kms(3, 2.0) == ComplexMatrix{{0.0, 2.0, 4.0}, {0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}});
    CHECK(kms(3, I) == ComplexMatrix{{0.0, I, -1.0}, {0.0, 0.0, I}, {0.0, 0.0, 0.0}});
    CHECK(kms(1, 5.0) == ComplexMatrix{{0.0}});
    CHECK_THROWS_AS(kms(2, Complex(INFINITY, 0.0)), InvalidParameter);
}

TEST_CASE("jordan") {
    CHECK(jordan(2) == ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    const ComplexMatrix j3 = jordan(3);
    CHECK(j3(0, 1) == 1.0);
    CHECK(j3(1, 2) == 1.0);
    CHECK(j3(0, 2) == 0.0);
    CHECK(j3.frobenius_norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("principal_submatrix") {
    const ComplexMatrix j = kms(3, 2.0);
    CHECK(principal_submatrix(j, 2) == ComplexMatrix{{0.0, 4.0}, {0.0, 0.0}});
    CHECK(principal_submatrix(j, 1) == kms(2, 2.0));
    for (std::size_t n = 2; n <= 7; ++n) {
        const Complex a(0.8, -0.6);
        CHECK(principal_submatrix(kms(n, a), n) == kms(n - 1, a));
        CHECK(leading_block(kms(n, a), n - 1) == kms(n - 1, a));
    }
    CHECK_THROWS_AS(principal_submatrix(j, 0), IndexOutOfRange);
    CHECK_THROWS_AS(principal_submatrix(j, 4), IndexOutOfRange);
    CHECK_THROWS_AS(principal_submatrix(kms(1, 1.0), 1), IndexOutOfRange);
    CHECK_THROWS_AS(leading_block(j, 0), IndexOutOfRange);
}

TEST_CASE("affine_class_map") {
    const ComplexMatrix f = affine_class_map({2, 0.5});
    CHECK(oracle::max_abs_diff(f, ComplexMatrix{{-0.5, 0.75}, {0.0, -0.5}}) < 1e-15);

    CHECK(defect_rank(affine_class_map({3, 0.5})) == 1);

    const ComplexMatrix g = affine_class_map({3, 2.0});
    for (std::size_t i = 0; i < 3; ++i) CHECK(g(i, i) == Complex(-2.0));
    CHECK(defect_rank(g) == 1);

    CHECK_THROWS_AS(affine_class_map({3, 0.0}), InvalidParameter);
    CHECK_THROWS_AS(affine_class_map({3, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(affine_class_map({3, I}), InvalidParameter);
}

TEST_CASE("affine_class_map equals f(J_n(a)) with a singleton spectrum") {
    for (Complex a : {Complex(0.5), Complex(0.3, 0.4), Complex(2.0), Complex(-1.0, 1.5)}) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const ComplexMatrix f = affine_class_map({n, a});
            ComplexMatrix expected = ((1.0 - std::norm(a)) / a) * kms(n, a);
            expected -= std::conj(a) * ComplexMatrix::identity(n);
            CHECK(oracle::max_abs_diff(f, expected) < 1e-13 * (1.0 + std::norm(a)));
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(f(i, i) == -std::conj(a));
                for (std::size_t k = 0; k < i; ++k) CHECK(f(i, k) == Complex{});
            }
            if (n >= 2) CHECK(defect_rank(f) == 1);
        }
    }
}

TEST_CASE("snm1_standard") {
    CHECK(snm1_standard(2, 2.0) == ComplexMatrix{{2.0, 3.0}, {0.0, 2.0}});

    const ComplexMatrix s3 = snm1_standard(3, 2.0 * I);
    CHECK(s3(0, 1) == 3.0);
    CHECK(s3(1, 2) == 3.0);
    CHECK(std::abs(s3(0, 2) - 3.0 * Complex(0.0, -2.0)) < 1e-15);

    const Complex lambda(1.0, 1.0);
    const ComplexMatrix a = snm1_standard(4, lambda);
    ComplexMatrix shifted = a - lambda * ComplexMatrix::identity(4);
    shifted *= std::conj(lambda) / (std::norm(lambda) - 1.0);
    CHECK(oracle::max_abs_diff(shifted, kms(4, std::conj(lambda))) < 1e-14);

    CHECK_THROWS_AS(snm1_standard(3, 1.0), InvalidParameter);
    CHECK_THROWS_AS(snm1_standard(3, Complex(0.5, 0.5)), InvalidParameter);
}

TEST_CASE("poisson_toeplitz") {
    CHECK(poisson_toeplitz(2, 0.5) == ComplexMatrix{{1.0, 0.5}, {0.5, 1.0}});
    for (std::size_t n = 1; n <= 8; ++n) {
        for (double a : {0.0, 0.3, 0.7, 0.95}) {
            ComplexMatrix twice = 2.0 * real_part(kms(n, a));
            twice += ComplexMatrix::identity(n);
            CHECK(oracle::max_abs_diff(poisson_toeplitz(n, a), twice) < 1e-15);
            CHECK(hermitian_eigs(poisson_toeplitz(n, a)).min() >= -1e-10);
        }
    }
    CHECK_THROWS_AS(poisson_toeplitz(3, 1.0), InvalidParameter);
    CHECK_THROWS_AS(poisson_toeplitz(3, -0.1), InvalidParameter);
}

TEST_CASE("Poisson Toeplitz eigenvalues are the kernel at the sine roots") {
    const auto roots = sine_roots(3, 0.5);
    std::vector<double> kernel;
    for (double t : roots.roots) kernel.push_back(poisson_kernel(0.5, t));
    std::sort(kernel.begin(), kernel.end());
    const auto eig = hermitian_eigs(poisson_toeplitz(3, 0.5));
    for (std::size_t k = 0; k < 3; ++k) CHECK(kernel[k] == doctest::Approx(eig.values[k]).epsilon(1e-10));
}

TEST_CASE("sine_roots examples") {
    SUBCASE("matches the eigensolver") {
        auto lam = sine_roots(5, 0.3).kms_eigenvalues();
        std::sort(lam.begin(), lam.end());
        const auto eig = hermitian_eigs(real_part(kms(5, 0.3)));
        for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(lam[k] - eig.values[k]) <= 1e-9);
    }
    SUBCASE("second root bound") {
        const auto r = sine_roots(6, 0.7);
        CHECK(r.roots[1] > pi / 7.0);
    }
    SUBCASE("small a") {
        const auto r = sine_roots(4, 1e-6);
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(r.roots[k] - (k + 1) * pi / 5.0) < 1e-4);
    }
    CHECK_THROWS_AS(sine_roots(3, 0.0), InvalidParameter);
    CHECK_THROWS_AS(sine_roots(3, 1.0), InvalidParameter);
}

TEST_CASE("sine_roots invariants") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (double a : {0.05, 0.3, 0.5, 0.7, 0.9}) {
            CAPTURE(n);
            CAPTURE(a);
            const auto r = sine_roots(n, a);
            REQUIRE(r.roots.size() == n);
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(r.roots[k] > 0.0);
                CHECK(r.roots[k] < pi);
                CHECK(std::abs(sine_equation(n, a, r.roots[k])) <= 1e-12);
                if (k > 0) CHECK(r.roots[k] > r.roots[k - 1]);
            }
            if (n >= 2) CHECK(r.roots[1] > pi / (n + 1.0));
        }
    }
}

TEST_CASE("unitary similarity under rotation of a") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (double phi : {0.3, 1.0, 2.5, -2.0}) {
            const Complex b(1.3, 0.0);
            const Complex a = std::polar(1.0, phi) * b;
            // U = diag(e^{ik phi}) gives U J_n(a) = J_n(b) U.
            const ComplexMatrix u = diag_powers(n, std::polar(1.0, phi));
            CHECK(distance(u * kms(n, a), kms(n, b) * u) <= 1e-12);
        }
    }
}

TEST_CASE("diagonal similarity between nonzero parameters") {
    for (std::size_t n = 1; n <= 7; ++n) {
        for (Complex a : {Complex(0.5), Complex(2.0, -1.0)}) {
            const Complex b(1.5, 0.5);
            const ComplexMatrix x = diag_powers(n, a / b);
            CHECK(oracle::max_abs_diff(x * kms(n, a), kms(n, b) * x) <= 1e-12);
        }
    }
}

TEST_CASE("nilpotency") {
    for (std::size_t n = 1; n <= 9; ++n) {
        for (Complex a : {Complex(0.5), Complex(1.0), Complex(0.0, 2.0)}) {
            const ComplexMatrix j = kms(n, a);
            CHECK(power(j, n).frobenius_norm() == 0.0);
            if (n >= 2) CHECK(power(j, n - 1).frobenius_norm() > 0.0);
        }
    }
}
