#include "kmsnr/matrix.hpp"

#include <cmath>

#include "kmsnr/errors.hpp"

namespace kmsnr {

namespace {

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n() != b.n()) {
        throw InvalidParameter("matrix dimensions differ");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {
    if (n == 0) {
        throw InvalidParameter("matrix dimension must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) {
            throw InvalidParameter("matrix must be square");
        }
        std::size_t j = 0;
        for (const auto& v : row) {
            (*this)(i, j++) = v;
        }
        ++i;
    }
    if (!is_finite()) {
        throw InvalidParameter("matrix entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(i, i) = d[i];
    }
    if (!m.is_finite()) {
        throw InvalidParameter("matrix entries must be finite");
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
    for (const auto& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

Vector ComplexMatrix::column(std::size_t j) const {
    Vector c(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_size(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_size(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : data_) {
        v *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_size(lhs, rhs);
    const std::size_t n = lhs.n();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += a * rhs(k, j);
            }
        }
    }
    return r;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

Vector operator*(const ComplexMatrix& m, std::span<const Complex> x) {
    if (x.size() != m.n()) {
        throw InvalidParameter("vector length does not match matrix dimension");
    }
    Vector y(m.n());
    for (std::size_t i = 0; i < m.n(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < m.n(); ++j) {
            s += m(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

double norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& v : x) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

double distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    return (lhs - rhs).frobenius_norm();
}

}  // namespace kmsnr
