#pragma once

#include "kop/arith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kop {

/// Dense univariate polynomial in Psi^q with rational coefficients,
/// coefficient i multiplying X^i. Trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
class OperationPoly {
public:
    OperationPoly() = default;
    explicit OperationPoly(std::vector<Rational> coeffs);

    static OperationPoly constant(const Rational& c);
    static OperationPoly x();
    /// X - root
    static OperationPoly linear(const Rational& root);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const;
    Rational leading() const;

    Rational evaluate(const Rational& x) const;

    /// Quotient and remainder by a nonzero divisor.
    std::pair<OperationPoly, OperationPoly> divmod(const OperationPoly& divisor) const;

    bool is_p_local(unsigned long p) const;
    /// Coefficientwise residues mod p (as a trimmed polynomial over Z).
    OperationPoly reduce_mod_p(unsigned long p) const;

    OperationPoly& operator+=(const OperationPoly& o);
    OperationPoly& operator-=(const OperationPoly& o);
    OperationPoly& operator*=(const Rational& c);

    friend OperationPoly operator+(OperationPoly a, const OperationPoly& b) { return a += b; }
    friend OperationPoly operator-(OperationPoly a, const OperationPoly& b) { return a -= b; }
    friend OperationPoly operator*(OperationPoly a, const Rational& c) { return a *= c; }
    friend OperationPoly operator*(const Rational& c, OperationPoly a) { return a *= c; }
    friend OperationPoly operator*(const OperationPoly& a, const OperationPoly& b);
    friend bool operator==(const OperationPoly& a, const OperationPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string(std::string_view var = "X") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

}  // namespace kop
