// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "kop/cofree.hpp"
#include "kop/corpus.hpp"
#include "kop/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace kop;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::size_t checked = 0;
};

void record(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

// One checked instance.
void note(Outcome& o, bool ok, const std::string& what) {
    ++o.checked;
    record(o, ok, what);
}

void note(Outcome& o, const IdentityReport& r, const std::string& tag) {
    o.checked += r.checked;
    std::string what = tag + ": " + std::to_string(r.failures.size()) + " failures";
    if (!r.failures.empty()) what += " (first " + r.failures[0].instance + " " + r.failures[0].witness + ")";
    record(o, r.pass(), what);
}

Matrix mat(std::size_t n, std::initializer_list<Rational> v) { return Matrix(n, n, std::vector<Rational>(v)); }

Rational node(const RingConfig& cfg, long e) { return rpow(Rational(cfg.base), e); }

// ---------------------------------------------------------------- criteria

Outcome structure_oracle(Variant v, std::vector<unsigned long> primes) {
    Outcome o;
    for (unsigned long p : primes) {
        OperationRing ring(make_config(p, Integer(2), v, 13));
        note(o, verify_structure_oracle(ring, 12), "p=" + std::to_string(p));
    }
    return o;
}

Outcome ccong(Variant v, std::vector<unsigned long> primes) {
    Outcome o;
    for (unsigned long p : primes) {
        OperationRing ring(make_config(p, Integer(2), v, 12));
        note(o, verify_ccong(ring, 3, 8), "p=" + std::to_string(p));
    }
    return o;
}

Outcome phi_quotient(Variant v) {
    Outcome o;
    OperationRing ring(make_config(3, Integer(2), v, 12));
    note(o, verify_phi_quotient(ring, 28), "p=3");
    return o;
}

Outcome theta_power(Variant v, std::vector<std::pair<unsigned long, unsigned>> cases) {
    Outcome o;
    for (auto [p, k] : cases) {
        OperationRing ring(make_config(p, Integer(2), v, 12));
        note(o, verify_theta_power(ring, k), "(p,k)=(" + std::to_string(p) + "," + std::to_string(k) + ")");
    }
    return o;
}

Outcome abcongs() {
    Outcome o;
    for (unsigned long p : {3UL, 5UL}) {
        OperationRing ring(make_config(p, Integer(2), Variant::NonSplit, 12));
        note(o, verify_abcongs(ring, 6, 20, 1000 + p), "p=" + std::to_string(p));
    }
    return o;
}

Outcome adams() {
    Outcome o;
    const std::size_t N = 12;
    for (unsigned long p : {3UL, 5UL}) {
        RingConfig cfg = make_config(p, Integer(2), Variant::NonSplit, N);
        OperationRing ring(cfg);
        const Rational q(cfg.q);
        const std::string tag = "p=" + std::to_string(p);
        const std::vector<Rational> js = {q * q, Rational(1 + static_cast<long>(p)), Rational(2), 1 / q};
        for (const Rational& j : js) {
            try {
                PhiVector g = ring.adams_expansion(j, N);
                note(o, g.is_p_local(p), tag + " g(" + to_string(j) + ") not p-integral");
                OperationPoly pj = ring.phi_to_poly(g);
                for (std::size_t i = 1; i <= N; ++i) {
                    const long e = NodeSequence::exponent(i);
                    if (std::labs(e) > 5) continue;
                    note(o, pj.evaluate(ring.nodes().node(i)) == rpow(j, e),
                         tag + " P_j(q^" + std::to_string(e) + ") != j^e for j=" + to_string(j));
                }
            } catch (const std::exception& ex) {
                note(o, false, tag + " " + ex.what());
            }
        }
        std::mt19937_64 rng(77 + p);
        std::uniform_int_distribution<long> pick(-30, 30);
        auto unit = [&] {
            for (;;) {
                Rational x(pick(rng), std::labs(pick(rng)) + 1);
                x.canonicalize();
                if (x != 0 && vp(x, p) == Valuation(0)) return x;
            }
        };
        for (int t = 0; t < 10; ++t) {
            const Rational a = unit(), b = unit();
            PhiVector lhs = ring.adams_expansion(a * b, N);
            PhiVector rhs = ring.multiply(ring.adams_expansion(a, N), ring.adams_expansion(b, N));
            note(o, lhs == rhs, tag + " Psi^a Psi^b != Psi^{ab} for a=" + to_string(a) + ", b=" + to_string(b));
        }
    }
    return o;
}

Outcome equivalence() {
    Outcome o;
    RingConfig cfg = make_config(3, Integer(2), Variant::NonSplit, 12);
    auto corpus = generate_corpus(cfg, CorpusOptions{}, 20240601);
    std::map<std::string, std::pair<int, int>> tally;  // kind -> (discrete, total)
    const std::size_t period = cfg.period();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const FpModule& m = corpus[i].module;
        const std::size_t e = std::max<unsigned>(1, m.max_exponent());
        const bool discrete = annihilation_exponent(m, 4 * period * e).has_value();
        const bool bousfield = bousfield_check(m, m.max_exponent() + 2).pass();
        auto& t = tally[corpus[i].kind];
        t.first += discrete;
        t.second += 1;
        note(o, discrete == bousfield,
             "module " + std::to_string(i) + " (" + corpus[i].kind + "): discrete=" + std::to_string(discrete) +
                 " bousfield=" + std::to_string(bousfield));
    }
    std::string mix;
    for (const auto& [k, t] : tally) mix += k + " " + std::to_string(t.first) + "/" + std::to_string(t.second) + ", ";
    if (o.pass) o.detail = "discrete/total by kind: " + mix.substr(0, mix.size() - 2);
    return o;
}

std::vector<std::pair<std::string, FpModule>> sequence_modules(const RingConfig& cfg) {
    const long p = static_cast<long>(cfg.p);
    std::vector<std::pair<std::string, FpModule>> ms;
    ms.emplace_back("Z/p", make_module(cfg, {1}, 0, mat(1, {1})));
    ms.emplace_back("Z/p^2", make_module(cfg, {2}, 0, mat(1, {Rational(cfg.base)})));
    for (long e = -2; e <= 2; ++e)
        ms.emplace_back("Z_(p) T=q^" + std::to_string(e), make_module(cfg, {}, 1, mat(1, {node(cfg, e)})));
    ms.emplace_back("Z/p + Z_(p) mixed", make_module(cfg, {1}, 1, mat(2, {1, 1, 0, node(cfg, 1)})));
    ms.emplace_back("Z/p^2 + Z_(p) mixed",
                    make_module(cfg, {2}, 1, mat(2, {Rational(cfg.base) + p, 2, 0, node(cfg, -1)})));
    return ms;
}

Outcome exact_sequence(Variant v) {
    Outcome o;
    RingConfig cfg = make_config(3, Integer(2), v, 12);
    OperationRing ring(cfg);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> pick(-4, 4);
    for (const auto& [name, m] : sequence_modules(cfg)) {
        const std::size_t n0 = require_discrete(m);
        const std::size_t S = n0 + 2 * cfg.period();
        try {
            ExactnessReport rep = verify_exact_sequence(ring, m, S);
            for (const auto& c : rep.clauses) note(o, c.pass, name + " " + c.name + ": " + c.witness);
            // gamma at three admissible n.
            for (int t = 0; t < 3; ++t) {
                UElement f;
                f.bound = S;
                for (std::size_t k = 0; k < S; ++k) {
                    ModuleElement x = m.zero();
                    for (auto& c : x) c = pick(rng);
                    f.entries[k] = x;
                }
                f = normalize(m, f);
                const std::size_t n = gamma_min_n(m, f);
                Vector g0 = gamma(ring, m, f, n);
                note(o, g0 == gamma(ring, m, f, n + 1) && g0 == gamma(ring, m, f, n + 5),
                     name + " gamma depends on n");
            }
        } catch (const std::exception& ex) {
            note(o, false, name + ": " + ex.what());
        }
    }
    return o;
}

std::vector<std::pair<std::string, FpModule>> small_torsion(const RingConfig& cfg) {
    std::vector<std::pair<std::string, FpModule>> ms;
    ms.emplace_back("Z/3 T=1", make_module(cfg, {1}, 0, mat(1, {1})));
    ms.emplace_back("Z/3 T=2", make_module(cfg, {1}, 0, mat(1, {2})));
    ms.emplace_back("Z/9 T=4", make_module(cfg, {2}, 0, mat(1, {4})));
    ms.emplace_back("Z/9 T=2", make_module(cfg, {2}, 0, mat(1, {2})));
    ms.emplace_back("Z/27 T=2", make_module(cfg, {3}, 0, mat(1, {2})));
    ms.emplace_back("(Z/3)^2 Jordan", make_module(cfg, {1, 1}, 0, mat(2, {1, 1, 0, 1})));
    ms.emplace_back("(Z/3)^2 diag(1,2)", make_module(cfg, {1, 1}, 0, mat(2, {1, 0, 0, 2})));
    ms.emplace_back("Z/9+Z/3", make_module(cfg, {2, 1}, 0, mat(2, {1, 3, 1, 2})));
    ms.emplace_back("(Z/3)^3", make_module(cfg, {1, 1, 1}, 0, mat(3, {1, 1, 0, 0, 1, 0, 0, 0, 2})));
    return ms;
}

Outcome adjunction() {
    Outcome o;
    RingConfig cfg = make_config(3, Integer(2), Variant::NonSplit, 12);
    auto ms = small_torsion(cfg);
    std::size_t plain = 0, ahoms = 0;
    for (const auto& [nn, n] : ms)
        for (const auto& [mn, m] : ms) {
            const std::string tag = nn + " -> U(" + mn + ")";
            try {
                const std::size_t S = require_discrete(n) + 1;
                auto hs = enumerate_homs(n, m, hom_Z(n, m));
                plain += hs.size();
                for (const auto& h : hs) {
                    UHom g = transpose_from(n, m, h);
                    note(o, is_u_hom(n, m, g), tag + " transpose_from is not an A-hom");
                    note(o, reduce_hom(m, transpose_to(n, m, g)) == h, tag + " to(from(h)) != h");
                }
                FpModule um = truncated_cofree(m, S);
                auto gs = enumerate_homs(n, um, hom_A(n, um));
                ahoms += gs.size();
                note(o, gs.size() == hs.size(), tag + " |Hom_A(N,UM)| != |Hom(N,M)|");
                for (const auto& gm : gs) {
                    UHom g;
                    for (std::size_t j = 0; j < n.dimension(); ++j) g.push_back(from_truncated(m, S, gm.column(j)));
                    note(o, is_u_hom(n, m, g), tag + " enumerated A-hom fails the A-hom check");
                    UHom back = transpose_from(n, m, transpose_to(n, m, g));
                    bool same = true;
                    for (std::size_t j = 0; j < g.size(); ++j) same = same && u_equal(m, back[j], g[j]);
                    note(o, same, tag + " from(to(g)) != g");
                }
            } catch (const std::exception& ex) {
                note(o, false, tag + ": " + ex.what());
            }
        }

    // lift_through_epi on random epimorphisms.
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> pick(-5, 5);
    const std::vector<FpModule> targets = {
        make_module(cfg, {1}, 0, mat(1, {1})),
        make_module(cfg, {2, 1}, 0, mat(2, {1, 3, 1, 2})),
        make_module(cfg, {1}, 1, mat(2, {1, 1, 0, 2})),
        make_module(cfg, {}, 2, mat(2, {2, 0, 0, 1})),
    };
    const std::vector<FpModule> sources = {
        make_module(cfg, {2}, 0, mat(1, {1})),
        make_module(cfg, {3, 2}, 0, mat(2, {1, 0, 0, 1})),
        make_module(cfg, {2, 1}, 2, Matrix::identity(4)),
        make_module(cfg, {}, 3, Matrix::identity(3)),
    };
    int found = 0, attempts = 0;
    while (found < 10 && attempts < 5000) {
        ++attempts;
        const FpModule& l1 = sources[static_cast<std::size_t>(attempts) % sources.size()];
        const FpModule& l2 = targets[static_cast<std::size_t>(attempts / 7) % targets.size()];
        Matrix e(l2.dimension(), l1.dimension());
        for (std::size_t i = 0; i < e.rows(); ++i)
            for (std::size_t j = 0; j < e.cols(); ++j) {
                if (i >= l2.torsion_rank() && j < l1.torsion_rank()) continue;
                long shift = 0;
                if (i < l2.torsion_rank() && j < l1.torsion_rank())
                    shift = std::max(0L, static_cast<long>(l2.torsion_exponents()[i]) -
                                             static_cast<long>(l1.torsion_exponents()[j]));
                e(i, j) = Rational(ipow(3, static_cast<unsigned long>(shift))) * pick(rng);
            }
        if (!is_surjective(l1, l2, e)) continue;
        ++found;
        UElement g;
        g.bound = 5;
        for (std::size_t k = 0; k < 5; ++k) {
            ModuleElement x = l2.zero();
            for (auto& c : x) c = pick(rng);
            g.entries[k] = x;
        }
        g = normalize(l2, g);
        try {
            UElement h = lift_through_epi(l1, l2, e, g);
            bool ok = h.bound == g.bound;
            for (std::size_t k = 0; k < g.bound; ++k) ok = ok && l2.equal(e.apply(h.at(l1, k)), g.at(l2, k));
            note(o, ok, "lift " + std::to_string(found) + " does not map onto g");
        } catch (const std::exception& ex) {
            note(o, false, std::string("lift: ") + ex.what());
        }
    }
    note(o, found == 10, "only " + std::to_string(found) + " epimorphisms found");
    if (o.pass) {
        o.detail = std::to_string(plain) + " plain homs, " + std::to_string(ahoms) + " A-homs into U, " +
                   std::to_string(found) + " lifts";
    }
    return o;
}

Outcome split_variant() {
    Outcome o;
    auto merge = [&](const Outcome& r, const std::string& tag) {
        o.checked += r.checked;
        record(o, r.pass, tag + ": " + r.detail);
    };
    merge(structure_oracle(Variant::Split, {3}), "C1");
    merge(ccong(Variant::Split, {3}), "C2");
    merge(phi_quotient(Variant::Split), "C3");
    merge(theta_power(Variant::Split, {{3, 1}, {3, 2}}), "C4");
    merge(exact_sequence(Variant::Split), "C8");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"C1", "structure constants: recursion = expansion, j,n <= 12, p in {3,5}",
         [] { return structure_oracle(Variant::NonSplit, {3, 5}); }},
        {"C2", "ccong for s <= 3, n <= 8, p in {3,5}", [] { return ccong(Variant::NonSplit, {3, 5}); }},
        {"C3", "quotient congruence for p = 3, m < n <= 28", [] { return phi_quotient(Variant::NonSplit); }},
        {"C4", "Theta_{p^k(p-1)} = X^{p^k(p-1)} - 1 mod p and q-binomial divisibility",
         [] { return theta_power(Variant::NonSplit, {{3, 1}, {3, 2}, {5, 1}}); }},
        {"C5", "b_j congruences: 20 random windows per (p,n), p in {3,5}, n <= 6", abcongs},
        {"C6", "Adams expansion integrality, P_j(q^r) = j^r, multiplicativity", adams},
        {"C7", "corpus of 50: Bousfield conditions <=> annihilation exponent", equivalence},
        {"C8", "four-term exact sequence and gamma independence of n",
         [] { return exact_sequence(Variant::NonSplit); }},
        {"C9", "adjunction round trips and lifts through epimorphisms", adjunction},
        {"C10", "split variant: C1-C4 and C8 at p = 3", split_variant},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        if (r.checked > 0) r.detail = std::to_string(r.checked) + " instances" + (r.detail.empty() ? "" : "; " + r.detail);
        std::printf("[%s] %-4s %s (%.1fs)%s%s\n", r.pass ? "PASS" : "FAIL", c.id, c.title, dt.count(),
                    r.detail.empty() ? "" : " | ", r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    // The literal index p^k(p-1) in the split ring, for comparison only.
    OperationRing split(make_config(3, Integer(2), Variant::Split, 12));
    for (unsigned k : {1U, 2U}) {
        const std::size_t literal = static_cast<std::size_t>(ipow(3, k).get_ui()) * 2;
        IdentityReport r = verify_theta_power(split, k, literal);
        std::printf("[INFO] split ring, literal index %zu: %s (%zu failures; not gating)\n", literal,
                    r.pass() ? "holds" : "does not hold", r.failures.size());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
