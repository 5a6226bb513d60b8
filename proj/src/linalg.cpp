#include "kop/linalg.hpp"

#include <utility>

namespace kop {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) throw DomainError("matrix data size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DomainError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<long>(i * cols_),
                  data_.begin() + static_cast<long>((i + 1) * cols_));
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw DomainError("matrix-vector size mismatch");
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if ((*this)(i, j) != 0 && x[j] != 0) acc += (*this)(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum size mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum size mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
}

LocalSmithForm local_smith_form(const Matrix& input, unsigned long p) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    Matrix a = input;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_p_local(a(i, j), p)) throw DomainError("local_smith_form: entry is not p-local");

    LocalSmithForm out{Matrix::identity(m), Matrix::identity(m), Matrix::identity(n),
                       Matrix::identity(n), {}, 0};
    Matrix& u = out.u;
    Matrix& ui = out.u_inv;
    Matrix& v = out.v;
    Matrix& vi = out.v_inv;

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(r1, j), a(r2, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(u(r1, j), u(r2, j));
        for (std::size_t i = 0; i < m; ++i) std::swap(ui(i, r1), ui(i, r2));
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(a(i, c1), a(i, c2));
        for (std::size_t i = 0; i < n; ++i) std::swap(v(i, c1), v(i, c2));
        for (std::size_t j = 0; j < n; ++j) std::swap(vi(c1, j), vi(c2, j));
    };

    const std::size_t limit = std::min(m, n);
    for (std::size_t t = 0; t < limit; ++t) {
        std::size_t bi = 0, bj = 0;
        Valuation best = Valuation::infinity();
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (a(i, j) == 0) continue;
                Valuation w = vp(a(i, j), p);
                if (w < best) {
                    best = w;
                    bi = i;
                    bj = j;
                }
            }
        if (best.is_infinite()) break;
        swap_rows(t, bi);
        swap_cols(t, bj);

        const Rational pivot_power(ipow(p, static_cast<unsigned long>(best.value())));
        const Rational scale = pivot_power / a(t, t);
        if (scale != 1) {
            for (std::size_t j = 0; j < n; ++j) a(t, j) *= scale;
            for (std::size_t j = 0; j < m; ++j) u(t, j) *= scale;
            for (std::size_t i = 0; i < m; ++i) ui(i, t) /= scale;
        }
        for (std::size_t i = t + 1; i < m; ++i) {
            if (a(i, t) == 0) continue;
            const Rational f = a(i, t) / pivot_power;
            for (std::size_t j = t; j < n; ++j) a(i, j) -= f * a(t, j);
            for (std::size_t j = 0; j < m; ++j) u(i, j) -= f * u(t, j);
            for (std::size_t r = 0; r < m; ++r) ui(r, t) += f * ui(r, i);
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (a(t, j) == 0) continue;
            const Rational f = a(t, j) / pivot_power;
            for (std::size_t i = t; i < m; ++i) a(i, j) -= f * a(i, t);
            for (std::size_t i = 0; i < n; ++i) v(i, j) -= f * v(i, t);
            for (std::size_t c = 0; c < n; ++c) vi(t, c) += f * vi(j, c);
        }
        out.exponents.push_back(best.value());
        out.rank = t + 1;
    }
    return out;
}

std::vector<Vector> local_kernel(const Matrix& a, unsigned long p) {
    auto snf = local_smith_form(a, p);
    std::vector<Vector> basis;
    for (std::size_t j = snf.rank; j < a.cols(); ++j) basis.push_back(snf.v.column(j));
    return basis;
}

std::optional<Vector> local_solve(const Matrix& a, const Vector& b, unsigned long p) {
    auto snf = local_smith_form(a, p);
    Vector ub = snf.u.apply(b);
    Vector y(a.cols(), Rational(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < snf.rank) {
            Rational yi = ub[i] / Rational(ipow(p, static_cast<unsigned long>(snf.exponents[i])));
            if (!is_p_local(yi, p)) return std::nullopt;
            y[i] = yi;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.v.apply(y);
}

std::size_t rational_rank(const Matrix& input) {
    Matrix a = input;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(piv, j));
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(rank, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::vector<Rational> characteristic_polynomial(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DomainError("characteristic polynomial of a non-square matrix");
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix amk = a * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / static_cast<long>(k);
        mk = amk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k];
    }
    return c;
}

long denominator_exponent(const Matrix& a, unsigned long p) {
    long worst = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            long w = vp(a(i, j), p).value();
            if (-w > worst) worst = -w;
        }
    return worst;
}

}  // namespace kop
