#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kmsnr {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
///
/// Dimension is fixed at construction and is always at least one. Entries are
/// required to be finite; constructors reject NaN/Inf.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> d);

    std::size_t n() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * n_ + j];
    }

    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    bool is_finite() const;
    Vector column(std::size_t j) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
Vector operator*(const ComplexMatrix& m, std::span<const Complex> x);

/// <x, y> = sum conj(x_i) y_i
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);

/// Frobenius norm of lhs - rhs; dimensions must agree.
double distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

}  // namespace kmsnr
