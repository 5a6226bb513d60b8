#include "kop/poly.hpp"

#include <algorithm>
#include <sstream>

namespace kop {

OperationPoly::OperationPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

OperationPoly OperationPoly::constant(const Rational& c) { return OperationPoly({c}); }

OperationPoly OperationPoly::x() { return OperationPoly({Rational(0), Rational(1)}); }

OperationPoly OperationPoly::linear(const Rational& root) {
    return OperationPoly({Rational(-root), Rational(1)});
}

void OperationPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational OperationPoly::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational OperationPoly::leading() const {
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational OperationPoly::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

std::pair<OperationPoly, OperationPoly> OperationPoly::divmod(const OperationPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const std::size_t dd = divisor.coeffs_.size() - 1;
    if (rem.size() <= dd) return {OperationPoly(), *this};
    std::vector<Rational> quo(rem.size() - dd);
    const Rational& lead = divisor.coeffs_.back();
    for (std::size_t i = rem.size(); i-- > dd;) {
        Rational c = rem[i] / lead;
        quo[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t t = 0; t <= dd; ++t) rem[i - dd + t] -= c * divisor.coeffs_[t];
    }
    rem.resize(dd);
    return {OperationPoly(std::move(quo)), OperationPoly(std::move(rem))};
}

bool OperationPoly::is_p_local(unsigned long p) const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [p](const Rational& c) { return kop::is_p_local(c, p); });
}

OperationPoly OperationPoly::reduce_mod_p(unsigned long p) const {
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.emplace_back(reduce_mod(c, p, 1));
    return OperationPoly(std::move(out));
}

OperationPoly& OperationPoly::operator+=(const OperationPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

OperationPoly& OperationPoly::operator-=(const OperationPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

OperationPoly& OperationPoly::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
}

OperationPoly operator*(const OperationPoly& a, const OperationPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return OperationPoly(std::move(out));
}

std::string OperationPoly::to_string(std::string_view var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const bool unit = mag == 1;
        if (i == 0 || !unit) os << kop::to_string(mag);
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace kop
