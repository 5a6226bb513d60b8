#include "kop/cofree.hpp"

namespace kop {

bool ExactnessReport::pass() const {
    for (const auto& c : clauses)
        if (!c.pass) return false;
    return true;
}

namespace {

void fail(ExactnessClause& c, const std::string& why) {
    if (c.pass) c.witness = why;
    c.pass = false;
}

}  // namespace

ExactnessReport verify_exact_sequence(const OperationRing& ring, const FpModule& m, std::size_t support) {
    if (!(ring.config() == m.config())) throw DomainError("ring and module configurations differ");
    ExactnessReport rep;
    const std::size_t n0 = require_discrete(m);
    if (support < n0) {
        throw DomainError("support " + std::to_string(support) + " is below the annihilation exponent " +
                          std::to_string(n0));
    }
    rep.support = support;
    rep.annihilation = n0;
    const std::size_t d = m.dimension(), s = m.torsion_rank(), r = m.free_rank();
    const std::size_t S = support;
    const unsigned long p = m.p();

    ExactnessClause inj{"alpha_injective", true, ""};
    ExactnessClause ba{"beta_alpha_zero", true, ""};
    for (std::size_t i = 0; i < d; ++i) {
        UElement a = alpha(m, m.basis(i), S);
        if (!m.equal(a.at(m, 0), m.basis(i))) fail(inj, "alpha(e_" + std::to_string(i) + ")(Phi_0) != e_i");
        if (!u_is_zero(m, beta(m, a))) fail(ba, "beta(alpha(e_" + std::to_string(i) + ")) != 0");
    }
    rep.clauses.push_back(inj);
    rep.clauses.push_back(ba);

    // Ker beta on sequences supported below S, from the block matrix of beta
    // with the torsion relations appended.
    ExactnessClause kb{"ker_beta_in_im_alpha", true, ""};
    {
        const std::size_t dim = S * d;
        Matrix sys(dim, dim + S * s);
        const NodeSequence& nodes = ring.nodes();
        for (std::size_t k = 0; k < S; ++k) {
            const Rational q = nodes.node(k + 1);
            for (std::size_t i = 0; i < d; ++i) {
                const std::size_t row = k * d + i;
                for (std::size_t j = 0; j < d; ++j) sys(row, k * d + j) += m.action()(i, j);
                sys(row, k * d + i) -= q;
                if (k + 1 < S) sys(row, (k + 1) * d + i) -= 1;
                if (i < s) sys(row, dim + k * s + i) = Rational(ipow(p, m.torsion_exponents()[i]));
            }
        }
        std::size_t count = 0;
        for (const auto& v : local_kernel(sys, p)) {
            UElement f;
            f.bound = S;
            for (std::size_t k = 0; k < S; ++k)
                f.entries[k] = ModuleElement(v.begin() + static_cast<long>(k * d),
                                             v.begin() + static_cast<long>((k + 1) * d));
            f = normalize(m, f);
            if (u_is_zero(m, f)) continue;
            ++count;
            if (!u_is_zero(m, beta(m, f))) fail(kb, "kernel vector is not in Ker beta");
            if (!u_equal(m, f, alpha(m, f.at(m, 0), S))) fail(kb, "kernel vector is not alpha(f(Phi_0))");
        }
        if (kb.pass) kb.witness = std::to_string(count) + " kernel generators, all in Im alpha";
    }
    rep.clauses.push_back(kb);

    const std::size_t gn = std::max({S, n0, std::size_t{1}});
    ExactnessClause gb{"gamma_beta_zero", true, ""};
    if (r > 0) {
        for (std::size_t k = 0; k < S; ++k)
            for (std::size_t i = 0; i < d; ++i) {
                UElement f = UElement::rho(m, k, m.basis(i));
                f.bound = S;
                for (const auto& c : gamma(ring, m, beta(m, f), gn))
                    if (c != 0) fail(gb, "gamma(beta(rho_" + std::to_string(k) + " e_" + std::to_string(i) + ")) != 0");
            }
    }
    rep.clauses.push_back(gb);

    ExactnessClause kg{"ker_gamma_in_im_beta", true, ""};
    {
        std::vector<UElement> span;
        for (std::size_t k = 0; k < S; ++k)
            for (std::size_t i = 0; i < s; ++i) {
                UElement f = UElement::rho(m, k, m.basis(i));
                f.bound = S;
                span.push_back(f);
            }
        if (r > 0) {
            Matrix g(r, S * r);
            for (std::size_t k = 0; k < S; ++k)
                for (std::size_t i = 0; i < r; ++i) {
                    UElement f = UElement::rho(m, k, m.basis(s + i));
                    f.bound = S;
                    Vector col = gamma(ring, m, f, gn);
                    for (std::size_t t = 0; t < r; ++t) g(t, k * r + i) = col[t];
                }
            g = Rational(ipow(p, static_cast<unsigned long>(denominator_exponent(g, p)))) * g;
            for (const auto& v : local_kernel(g, p)) {
                UElement f;
                f.bound = S;
                for (std::size_t k = 0; k < S; ++k) {
                    ModuleElement x = m.zero();
                    for (std::size_t i = 0; i < r; ++i) x[s + i] = v[k * r + i];
                    f.entries[k] = x;
                }
                span.push_back(normalize(m, f));
            }
        }
        std::size_t max_r = 0;
        for (const auto& f : span) {
            try {
                BetaPreimage bp = beta_preimage(ring, m, f);
                max_r = std::max(max_r, bp.r);
                if (!u_equal(m, beta(m, bp.g), u_scale(m, Rational(-1), f))) fail(kg, "beta(g) != -f");
            } catch (const std::exception& e) {
                fail(kg, e.what());
            }
        }
        if (kg.pass) {
            kg.witness = std::to_string(span.size()) + " spanning elements, largest r = " + std::to_string(max_r);
        }
    }
    rep.clauses.push_back(kg);

    ExactnessClause gs{"gamma_surjective", true, ""};
    for (std::size_t i = 0; i < r; ++i) {
        Vector x(r);
        x[i] = 1;
        try {
            GammaPreimage gp = gamma_preimage(ring, m, x);
            UElement g = gp.f;
            const long a = vp(gp.d, p).value();
            for (long t = 0; t < a; ++t) g = p_reduce(ring, m, g);
            if (gamma(ring, m, g) != x) fail(gs, "gamma(g) != e_" + std::to_string(i));
            else if (gs.witness.empty()) gs.witness = "d = " + gp.d.get_str();
            else gs.witness += ", d = " + gp.d.get_str();
        } catch (const std::exception& e) {
            fail(gs, e.what());
        }
    }
    rep.clauses.push_back(gs);
    return rep;
}

}  // namespace kop
