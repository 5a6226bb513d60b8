#pragma once

// Exact p-local arithmetic: valuations, residues, q-binomials and the
// validated ring configuration shared by every other component.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kop {

using Integer = mpz_class;
using Rational = mpq_class;

/// Precondition violations on user-supplied values (non-unit j, bad index, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computed identity that the mathematics guarantees failed to hold.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class ConfigErrorKind { NotPrime, EvenPrime, NotPrimitive, BadTruncation };

class ConfigError : public std::invalid_argument {
public:
    ConfigError(ConfigErrorKind kind, const std::string& what)
        : std::invalid_argument(what), kind_(kind) {}
    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

/// p-adic valuation with a dedicated infinity for zero.
class Valuation {
public:
    constexpr Valuation(long v) noexcept : value_(v), infinite_(false) {}  // NOLINT
    static constexpr Valuation infinity() noexcept { return Valuation(); }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    long value() const;

    friend constexpr bool operator==(Valuation a, Valuation b) noexcept {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) noexcept {
        if (a.infinite_ || b.infinite_) {
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        }
        return a.value_ <=> b.value_;
    }
    friend Valuation operator+(Valuation a, Valuation b) noexcept {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    std::string to_string() const;

private:
    constexpr Valuation() noexcept : value_(0), infinite_(true) {}
    long value_;
    bool infinite_;
};

Valuation vp(const Integer& x, unsigned long p);
Valuation vp(const Rational& x, unsigned long p);

/// True when the denominator is prime to p.
bool is_p_local(const Rational& x, unsigned long p);

/// Residue of x in Z/p^m, in [0, p^m). Throws DomainError if vp(x) < 0.
Integer reduce_mod(const Rational& x, unsigned long p, unsigned long m);

Integer ipow(unsigned long p, unsigned long m);
Rational rpow(const Rational& base, long e);

/// Multiplicative order of a modulo m (0 when gcd(a, m) != 1).
unsigned long multiplicative_order(const Integer& a, unsigned long m);
bool is_prime(unsigned long n);

/// Smallest positive integer whose order modulo p^2 is p(p-1).
unsigned long default_generator(unsigned long p);

enum class Variant { NonSplit, Split };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

/// Validated (p, q) data. `base` is q for the full ring and q^{p-1} for the
/// Adams-summand variant; all node sequences use `base`.
struct RingConfig {
    unsigned long p = 3;
    Integer q = 2;
    Variant variant = Variant::NonSplit;
    std::size_t truncation = 12;
    Integer base = 2;

    /// Order of base modulo p: p-1 for NonSplit, 1 for Split.
    unsigned long residue_order() const;
    /// Period 2p-2 of the node residues used by the congruence lemmas.
    std::size_t period() const { return 2 * p - 2; }

    friend bool operator==(const RingConfig& a, const RingConfig& b) {
        return a.p == b.p && a.q == b.q && a.variant == b.variant;
    }
};

RingConfig make_config(unsigned long p, const Integer& q, Variant variant,
                       std::size_t truncation);
RingConfig make_config(unsigned long p, Variant variant = Variant::NonSplit,
                       std::size_t truncation = 12);

/// [n choose k] in the working base, via the Pascal recurrence
/// gp(n,k) = gp(n-1,k-1) + base^k gp(n-1,k).
Rational gaussian_binomial(unsigned long n, unsigned long k, const RingConfig& cfg);

/// "num/den", or "num" when den = 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view s);

}  // namespace kop
