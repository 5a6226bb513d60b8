#include "kop/verify.hpp"

#include <random>
#include <tuple>

namespace kop {

namespace {

std::string idx(std::initializer_list<std::pair<const char*, std::size_t>> parts) {
    std::string s;
    for (const auto& [name, v] : parts) {
        if (!s.empty()) s += ",";
        s += std::string(name) + "=" + std::to_string(v);
    }
    return s;
}

// Each worker fills its own slot; slots are merged in index order so the
// report does not depend on scheduling.
template <class Body>
void run_instances(std::size_t count, IdentityReport& report, Body body) {
    std::vector<std::vector<IdentityFailure>> slots(count);
    std::vector<std::size_t> checked(count, 0);
    const long total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
        auto u = static_cast<std::size_t>(i);
        checked[u] = body(u, slots[u]);
    }
    for (std::size_t i = 0; i < count; ++i) {
        report.checked += checked[i];
        for (auto& f : slots[i]) report.failures.push_back(std::move(f));
    }
}

long mod_inverse(long a, long p) {
    long result = 1, e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1) result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

}  // namespace

std::size_t rank_mod_p(std::vector<std::vector<long>> m, long p) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const long inv = mod_inverse(((m[rank][c] % p) + p) % p, p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const long f = ((m[r][c] % p) + p) % p * inv % p;
            if (f == 0) continue;
            for (std::size_t t = c; t < cols; ++t) m[r][t] = ((m[r][t] - f * m[rank][t]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

IdentityReport verify_ccong(const OperationRing& ring, std::size_t s_max, std::size_t n_max) {
    IdentityReport report{"ccong", "c^k_{j,n} = 0 mod p on the congruence blocks", 0, {}};
    const std::size_t period = ring.config().period();
    std::vector<std::pair<std::size_t, std::size_t>> cases;
    for (std::size_t s = 1; s <= s_max; ++s)
        for (std::size_t n = 1; n <= n_max; ++n) cases.emplace_back(s, n);
    run_instances(cases.size(), report, [&](std::size_t i, std::vector<IdentityFailure>& out) {
        const auto [s, n] = cases[i];
        std::size_t count = 0;
        const std::size_t lo = period * s;
        for (std::size_t k = lo; k < lo + n; ++k)
            for (std::size_t j = lo; j <= k; ++j) {
                ++count;
                Rational c = ring.structure_constant(j, n, k);
                if (reduce_mod(c, ring.p(), 1) != 0) {
                    out.push_back({idx({{"s", s}, {"j", j}, {"n", n}, {"k", k}}),
                                   "c = " + to_string(c)});
                }
            }
        return count;
    });
    return report;
}

IdentityReport verify_phi_quotient(const OperationRing& ring, std::size_t n_max) {
    IdentityReport report{"phiquot", "Theta_n/Theta_m - Phi_{n-m} has vp >= 1 + vp(n-m)", 0, {}};
    const std::size_t period = ring.config().period();
    std::vector<std::pair<std::size_t, std::size_t>> cases;
    for (std::size_t n = 1; n <= n_max; ++n)
        for (std::size_t m = 0; m < n; ++m)
            if ((n - m) % period == 0) cases.emplace_back(m, n);
    run_instances(cases.size(), report, [&](std::size_t i, std::vector<IdentityFailure>& out) {
        const auto [m, n] = cases[i];
        PhiVector quotient = ring.poly_to_phi(ring.divide_phi(n, m));
        const std::size_t d = n - m;
        const Valuation need = Valuation(1) + vp(Integer(static_cast<unsigned long>(d)), ring.p());
        for (std::size_t t = 0; t < quotient.truncation(); ++t) {
            Rational c = quotient[t] - (t == d ? Rational(1) : Rational(0));
            Valuation v = vp(c, ring.p());
            if (v < need) {
                out.push_back({idx({{"m", m}, {"n", n}, {"coeff", t}}),
                               "vp = " + v.to_string() + " < " + need.to_string()});
            }
        }
        return std::size_t{1};
    });
    return report;
}

IdentityReport verify_theta_power(const OperationRing& ring, unsigned k, std::size_t index) {
    const std::size_t n = index ? index : ring.theta_power_index(k);
    IdentityReport report{"thetapower",
                          "Theta_" + std::to_string(n) + " = X^" + std::to_string(n) + " - 1 mod " +
                              std::to_string(ring.p()),
                          0, {}};
    const unsigned long p = ring.p();
    OperationPoly lhs = ring.theta(n).reduce_mod_p(p);
    std::vector<Rational> target(n + 1);
    target[0] = Rational(static_cast<long>(p - 1));
    target[n] = 1;
    OperationPoly rhs(target);
    report.checked += n + 1;
    for (std::size_t i = 0; i <= n; ++i) {
        if (lhs.coeff(i) != rhs.coeff(i)) {
            report.failures.push_back({"X^" + std::to_string(i),
                                       "coefficient " + to_string(lhs.coeff(i)) + " mod p, expected " +
                                           to_string(rhs.coeff(i))});
        }
    }
    for (std::size_t j = 1; j < n; ++j) {
        ++report.checked;
        Rational b = gaussian_binomial(n, j, ring.config());
        if (vp(b, p) < Valuation(1)) {
            report.failures.push_back({"qbinomial j=" + std::to_string(j),
                                       "[" + std::to_string(n) + " choose " + std::to_string(j) +
                                           "] = " + to_string(b) + " not divisible by p"});
        }
    }
    return report;
}

IdentityReport verify_symmetry(const OperationRing& ring, std::size_t n_max) {
    IdentityReport report{"symmetry", "c^k_{j,n} = c^k_{n,j}", 0, {}};
    run_instances(n_max + 1, report, [&](std::size_t j, std::vector<IdentityFailure>& out) {
        std::size_t count = 0;
        for (std::size_t n = 0; n <= n_max; ++n)
            for (std::size_t k = std::max(j, n); k <= j + n; ++k) {
                ++count;
                if (ring.structure_constant(j, n, k) != ring.structure_constant(n, j, k)) {
                    out.push_back({idx({{"j", j}, {"n", n}, {"k", k}}), "asymmetric"});
                }
            }
        return count;
    });
    return report;
}

IdentityReport verify_structure_oracle(const OperationRing& ring, std::size_t n_max) {
    IdentityReport report{"structure", "recursion equals expansion of Theta_j Theta_n", 0, {}};
    run_instances(n_max + 1, report, [&](std::size_t j, std::vector<IdentityFailure>& out) {
        std::size_t count = 0;
        for (std::size_t n = 0; n <= n_max; ++n) {
            PhiVector expanded = ring.poly_to_phi(ring.theta(j) * ring.theta(n));
            for (std::size_t k = 0; k <= j + n; ++k) {
                ++count;
                Rational oracle = k < expanded.truncation() ? expanded[k] : Rational(0);
                Rational rec = ring.structure_constant(j, n, k);
                if (oracle != rec) {
                    out.push_back({idx({{"j", j}, {"n", n}, {"k", k}}),
                                   "recursion " + to_string(rec) + " vs expansion " + to_string(oracle)});
                }
            }
        }
        return count;
    });
    return report;
}

IdentityReport verify_abcongs(const OperationRing& ring, std::size_t n_max, std::size_t trials,
                              std::uint64_t seed) {
    IdentityReport report{"abcongs", "solve, re-substitute and rank-check the b_j congruences", 0, {}};
    const unsigned long p = ring.p();
    const long lp = static_cast<long>(p);
    const std::size_t period = ring.config().period();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 6);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t K = n + 2 * period;
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<Rational> a;
            for (std::size_t k = n; k <= K; ++k) {
                long d = den(rng);
                while (d % lp == 0) ++d;
                Rational x(num(rng), d);
                x.canonicalize();
                a.push_back(x);
            }
            ++report.checked;
            const std::string tag = idx({{"n", n}, {"trial", t}});
            AbcongSolution sol = ring.solve_abcongs(a, n);
            if (!sol.consistent) {
                report.failures.push_back({tag, "inconsistent system"});
                continue;
            }
            for (std::size_t k = n; k <= K; ++k) {
                Integer acc = 0;
                for (std::size_t j = k - n; j <= k; ++j)
                    acc += reduce_mod(ring.structure_constant(j, n, k), p, 1) * sol.b[j];
                Integer lhs = acc % static_cast<long>(p);
                if (lhs < 0) lhs += lp;
                if (lhs != reduce_mod(a[k - n], p, 1)) {
                    report.failures.push_back({tag, "re-substitution fails at k=" + std::to_string(k)});
                }
            }
            if (!sol.pattern_holds) {
                report.failures.push_back({tag, "triangular unknowns not all determined"});
            }
            // Independent rank check on the triangular block.
            const std::size_t T = sol.triangular;
            std::vector<std::vector<long>> block(T, std::vector<long>(T));
            bool closed = true;
            for (std::size_t r = 0; r < T; ++r) {
                for (std::size_t j = 0; j < T; ++j)
                    block[r][j] = reduce_mod(ring.structure_constant(j, n, n + r), p, 1).get_si();
                for (std::size_t j = T; j <= n + r; ++j)
                    if (reduce_mod(ring.structure_constant(j, n, n + r), p, 1) != 0) closed = false;
            }
            if (!closed) {
                report.failures.push_back({tag, "triangular rows reach unknowns beyond the block"});
            }
            if (rank_mod_p(block, lp) != T) {
                report.failures.push_back({tag, "triangular block is singular mod p"});
            }
        }
    }
    return report;
}

}  // namespace kop
