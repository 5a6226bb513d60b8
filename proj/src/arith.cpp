#include "kop/arith.hpp"

#include <vector>

namespace kop {

long Valuation::value() const {
    if (infinite_) throw DomainError("valuation of zero is infinite");
    return value_;
}

std::string Valuation::to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation vp(const Integer& x, unsigned long p) {
    if (x == 0) return Valuation::infinity();
    Integer rest;
    Integer prime(p);
    auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
    return Valuation(static_cast<long>(v));
}

Valuation vp(const Rational& x, unsigned long p) {
    if (x == 0) return Valuation::infinity();
    return Valuation(vp(x.get_num(), p).value() - vp(x.get_den(), p).value());
}

bool is_p_local(const Rational& x, unsigned long p) {
    return mpz_divisible_ui_p(x.get_den_mpz_t(), p) == 0;
}

Integer ipow(unsigned long p, unsigned long m) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, m);
    return r;
}

Rational rpow(const Rational& base, long e) {
    Rational r;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw DomainError("negative power of zero");
        r = 1 / r;
    }
    return r;
}

Integer reduce_mod(const Rational& x, unsigned long p, unsigned long m) {
    if (!is_p_local(x, p)) {
        throw DomainError("reduce_mod: " + to_string(x) + " has negative valuation");
    }
    Integer mod = ipow(p, m);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), mod.get_mpz_t()) == 0) {
        if (m == 0) return 0;
        throw ConsistencyError("reduce_mod: denominator not invertible");
    }
    Integer r = x.get_num() * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

unsigned long multiplicative_order(const Integer& a, unsigned long m) {
    if (m == 1) return 1;
    Integer mod(m);
    Integer r = a % mod;
    if (r < 0) r += mod;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    if (g != 1) return 0;
    Integer acc = r;
    unsigned long k = 1;
    while (acc != 1) {
        acc = (acc * r) % mod;
        ++k;
    }
    return k;
}

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

unsigned long default_generator(unsigned long p) {
    const unsigned long target = p * (p - 1);
    for (unsigned long g = 2;; ++g) {
        if (multiplicative_order(Integer(g), p * p) == target) return g;
    }
}

std::string_view to_string(Variant v) {
    return v == Variant::Split ? "split" : "nonsplit";
}

Variant parse_variant(std::string_view s) {
    if (s == "nonsplit" || s == "NonSplit") return Variant::NonSplit;
    if (s == "split" || s == "Split") return Variant::Split;
    throw DomainError("unknown variant '" + std::string(s) + "'");
}

unsigned long RingConfig::residue_order() const {
    return multiplicative_order(base, p);
}

RingConfig make_config(unsigned long p, const Integer& q, Variant variant,
                       std::size_t truncation) {
    if (!is_prime(p)) {
        throw ConfigError(ConfigErrorKind::NotPrime, std::to_string(p) + " is not prime");
    }
    if (p == 2) {
        throw ConfigError(ConfigErrorKind::EvenPrime, "p must be an odd prime");
    }
    const unsigned long order = multiplicative_order(q, p * p);
    if (order != p * (p - 1)) {
        throw ConfigError(ConfigErrorKind::NotPrimitive,
                          "q = " + q.get_str() + " has order " + std::to_string(order) +
                              " modulo " + std::to_string(p * p) + ", expected " +
                              std::to_string(p * (p - 1)));
    }
    if (truncation == 0) {
        throw ConfigError(ConfigErrorKind::BadTruncation, "truncation must be positive");
    }
    RingConfig cfg;
    cfg.p = p;
    cfg.q = q;
    cfg.variant = variant;
    cfg.truncation = truncation;
    if (variant == Variant::Split) {
        mpz_pow_ui(cfg.base.get_mpz_t(), q.get_mpz_t(), p - 1);
    } else {
        cfg.base = q;
    }
    return cfg;
}

RingConfig make_config(unsigned long p, Variant variant, std::size_t truncation) {
    if (!is_prime(p)) {
        throw ConfigError(ConfigErrorKind::NotPrime, std::to_string(p) + " is not prime");
    }
    if (p == 2) {
        throw ConfigError(ConfigErrorKind::EvenPrime, "p must be an odd prime");
    }
    return make_config(p, Integer(default_generator(p)), variant, truncation);
}

Rational gaussian_binomial(unsigned long n, unsigned long k, const RingConfig& cfg) {
    if (k > n) {
        throw DomainError("gaussian_binomial: k = " + std::to_string(k) + " exceeds n = " +
                          std::to_string(n));
    }
    std::vector<Integer> powers(k + 1);
    powers[0] = 1;
    for (unsigned long i = 1; i <= k; ++i) powers[i] = powers[i - 1] * cfg.base;

    // row[i] holds gp(m, i) for the current m; updated in place from the top.
    std::vector<Integer> row(k + 1, Integer(0));
    row[0] = 1;
    for (unsigned long m = 1; m <= n; ++m) {
        for (unsigned long i = std::min(m, k); i >= 1; --i) {
            row[i] = row[i - 1] + powers[i] * row[i];
        }
    }
    return Rational(row[k]);
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    std::string text(s);
    while (!text.empty() && text.front() == ' ') text.erase(text.begin());
    while (!text.empty() && text.back() == ' ') text.pop_back();
    if (text.empty()) throw DomainError("empty rational literal");
    if (text.front() == '+') text.erase(text.begin());
    Rational r;
    if (r.set_str(text, 10) != 0) throw DomainError("malformed rational '" + std::string(s) + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

}  // namespace kop
