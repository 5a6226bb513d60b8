#pragma once

// Dense exact matrices and Smith normal form over the local PID Z_(p).

#include "kop/arith.hpp"

#include <optional>
#include <vector>

namespace kop {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;
    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    bool is_zero() const;

    Vector apply(const Vector& x) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& c, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// U * A * V = D with U, V invertible over Z_(p) and D diagonal with
/// entries p^{exponents[i]} for i < rank, zero afterwards.
struct LocalSmithForm {
    Matrix u;
    Matrix u_inv;
    Matrix v;
    Matrix v_inv;
    std::vector<long> exponents;
    std::size_t rank = 0;
};

/// Requires every entry of `a` to be p-local.
LocalSmithForm local_smith_form(const Matrix& a, unsigned long p);

/// Z_(p)-basis of {x : a x = 0} (a must be p-local). Saturated in Z_(p)^n.
std::vector<Vector> local_kernel(const Matrix& a, unsigned long p);

/// Some p-local x with a x = b, if one exists.
std::optional<Vector> local_solve(const Matrix& a, const Vector& b, unsigned long p);

/// Rank over Q.
std::size_t rational_rank(const Matrix& a);

/// Coefficients of det(X I - a), constant term first (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const Matrix& a);

/// Least power of p that makes every entry of `a` p-local.
long denominator_exponent(const Matrix& a, unsigned long p);

}  // namespace kop
