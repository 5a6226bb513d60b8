#include "kop/cofree.hpp"

#include <algorithm>

namespace kop {

namespace {

Vector free_part(const FpModule& m, const ModuleElement& x) {
    return Vector(x.begin() + static_cast<long>(m.torsion_rank()), x.end());
}

ModuleElement embed_free(const FpModule& m, const Vector& v) {
    ModuleElement x = m.zero();
    for (std::size_t i = 0; i < v.size(); ++i) x[m.torsion_rank() + i] = v[i];
    return x;
}

// (F - q_i) applied for every i in 1..n except `skip`.
Vector apply_punctured(const Matrix& f, const NodeSequence& nodes, std::size_t n, std::size_t skip,
                       Vector v) {
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == skip) continue;
        const Rational q = nodes.node(i);
        Vector w = f.apply(v);
        for (std::size_t t = 0; t < w.size(); ++t) w[t] -= q * v[t];
        v = std::move(w);
    }
    return v;
}

ModuleElement sub(const ModuleElement& a, const ModuleElement& b) {
    ModuleElement c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

}  // namespace

ModuleElement UElement::at(const FpModule& m, std::size_t k) const {
    auto it = entries.find(k);
    return it == entries.end() ? m.zero() : it->second;
}

UElement UElement::rho(const FpModule& m, std::size_t k, const ModuleElement& x) {
    UElement f;
    f.bound = k + 1;
    f.entries[k] = m.reduce(x);
    return normalize(m, f);
}

UElement normalize(const FpModule& m, const UElement& f) {
    UElement g;
    g.bound = f.bound;
    for (const auto& [k, v] : f.entries) {
        if (k >= f.bound) throw DomainError("entry at k = " + std::to_string(k) + " beyond the support bound");
        ModuleElement r = m.reduce(v);
        if (!m.is_zero(r)) g.entries.emplace(k, std::move(r));
    }
    return g;
}

bool u_equal(const FpModule& m, const UElement& f, const UElement& g) {
    const std::size_t b = std::max(f.bound, g.bound);
    for (std::size_t k = 0; k < b; ++k)
        if (!m.equal(f.at(m, k), g.at(m, k))) return false;
    return true;
}

bool u_is_zero(const FpModule& m, const UElement& f) {
    for (const auto& [k, v] : f.entries)
        if (!m.is_zero(v)) return false;
    return true;
}

UElement u_add(const FpModule& m, const UElement& f, const UElement& g) {
    UElement h;
    h.bound = std::max(f.bound, g.bound);
    for (std::size_t k = 0; k < h.bound; ++k) {
        ModuleElement v = f.at(m, k);
        const ModuleElement w = g.at(m, k);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        h.entries[k] = v;
    }
    return normalize(m, h);
}

UElement u_scale(const FpModule& m, const Rational& c, const UElement& f) {
    UElement h = f;
    for (auto& [k, v] : h.entries)
        for (auto& x : v) x *= c;
    return normalize(m, h);
}

UElement u_action(const OperationRing& ring, const FpModule& m, const PhiVector& theta,
                  const UElement& f) {
    if (theta.truncation() < f.bound) {
        throw DomainError("operation truncated at " + std::to_string(theta.truncation()) +
                          " below the support bound " + std::to_string(f.bound));
    }
    UElement out;
    out.bound = f.bound;
    for (std::size_t k = 0; k < f.bound; ++k) {
        ModuleElement acc = m.zero();
        for (const auto& [mm, v] : f.entries) {
            if (mm < k) continue;
            Rational coeff = 0;
            for (std::size_t j = 0; j <= mm; ++j)
                if (theta[j] != 0) coeff += theta[j] * ring.structure_constant(k, j, mm);
            if (coeff == 0) continue;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * v[i];
        }
        out.entries[k] = acc;
    }
    return normalize(m, out);
}

UElement u_generator(const FpModule& m, const UElement& f) {
    NodeSequence nodes(m.config().base);
    UElement out;
    out.bound = f.bound;
    for (std::size_t k = 0; k < f.bound; ++k) {
        ModuleElement v = f.at(m, k + 1);
        const ModuleElement mk = f.at(m, k);
        const Rational q = nodes.node(k + 1);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += q * mk[i];
        out.entries[k] = v;
    }
    return normalize(m, out);
}

UElement alpha(const FpModule& m, const ModuleElement& x, std::size_t bound) {
    const std::size_t n0 = require_discrete(m);
    UElement f;
    f.bound = std::max(bound, n0);
    for (std::size_t k = 0; k < n0; ++k) f.entries[k] = m.apply_theta(k, x);
    return normalize(m, f);
}

UElement beta(const FpModule& m, const UElement& f) {
    NodeSequence nodes(m.config().base);
    UElement out;
    out.bound = f.bound;
    for (std::size_t k = 0; k < f.bound; ++k) {
        const ModuleElement mk = f.at(m, k);
        ModuleElement v = sub(m.action().apply(mk), f.at(m, k + 1));
        const Rational q = nodes.node(k + 1);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= q * mk[i];
        out.entries[k] = v;
    }
    return normalize(m, out);
}

std::size_t gamma_min_n(const FpModule& m, const UElement& f) {
    return std::max({f.bound, require_discrete(m), std::size_t{1}});
}

Vector gamma(const OperationRing& ring, const FpModule& m, const UElement& f, std::size_t n) {
    const std::size_t n_min = gamma_min_n(m, f);
    if (n == 0) n = n_min;
    if (n < n_min) {
        throw DomainError("gamma: n = " + std::to_string(n) + " is below the admissible " +
                          std::to_string(n_min));
    }
    const Matrix F = m.free_block();
    const std::size_t r = m.free_rank();
    Vector out(r);
    if (r == 0) return out;
    const NodeSequence& nodes = ring.nodes();
    // Group by j: sum_k v_k / Theta^{(j)}_{k+1}(q_j), then apply Theta^{(j)}_n(F).
    for (std::size_t j = 1; j <= n; ++j) {
        Vector u(r);
        bool any = false;
        for (const auto& [k, v] : f.entries) {
            if (k + 1 < j) continue;
            const Rational denom = ring.theta_punctured_at_node(k + 1, j);
            Vector w = free_part(m, v);
            for (std::size_t i = 0; i < r; ++i)
                if (w[i] != 0) {
                    u[i] += w[i] / denom;
                    any = true;
                }
        }
        if (!any) continue;
        Vector w = apply_punctured(F, nodes, n, j, u);
        const Rational denom = ring.theta_punctured_at_node(n, j);
        for (std::size_t i = 0; i < r; ++i) out[i] += w[i] / denom;
    }
    return out;
}

GammaPreimage gamma_preimage(const OperationRing& ring, const FpModule& m, const Vector& x) {
    const std::size_t r = m.free_rank();
    if (x.size() != r) throw DomainError("gamma_preimage: vector has the wrong dimension");
    const unsigned long p = m.p();
    const std::size_t n = std::max<std::size_t>(require_discrete(m), 1);
    const Matrix F = m.free_block();
    // Shifted indexing: the eigencomponent for q_k sits at Phi_{k-1}.
    std::vector<Vector> comps(n);
    long worst = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const Rational c = ring.theta_punctured_at_node(k, k) / ring.theta_punctured_at_node(n, k);
        Vector v = apply_punctured(F, ring.nodes(), n, k, x);
        for (auto& t : v) {
            t *= c;
            if (t != 0) worst = std::max(worst, -vp(t, p).value());
        }
        comps[k - 1] = std::move(v);
    }
    GammaPreimage out;
    out.d = ipow(p, static_cast<unsigned long>(worst));
    out.f.bound = n;
    for (std::size_t k = 0; k < n; ++k) {
        for (auto& t : comps[k]) t *= Rational(out.d);
        out.f.entries[k] = embed_free(m, comps[k]);
    }
    out.f = normalize(m, out.f);
    Vector check = gamma(ring, m, out.f);
    for (std::size_t i = 0; i < r; ++i) {
        if (check[i] != Rational(out.d) * x[i]) throw ConsistencyError("gamma(gamma_preimage(x)) != d x");
    }
    return out;
}

UElement p_reduce(const OperationRing& ring, const FpModule& m, const UElement& f) {
    const unsigned long p = m.p();
    const std::size_t period = m.config().period();
    const std::size_t need = std::max({f.bound, require_discrete(m), std::size_t{1}});
    const std::size_t mm = ((need + period - 1) / period) * period;
    const OperationPoly theta_m = ring.theta(mm);
    UElement g;
    g.bound = f.bound + mm;
    for (const auto& [i, v] : f.entries) {
        const std::size_t k = i + mm;
        OperationPoly diff = ring.divide_phi(k + 1, k - mm + 1) - theta_m;
        for (const auto& c : diff.coeffs()) {
            if (c != 0 && vp(c, p) < Valuation(1)) {
                throw ConsistencyError("p_reduce: Theta_" + std::to_string(k + 1) + "/Theta_" +
                                       std::to_string(k - mm + 1) + " - Theta_" + std::to_string(mm) +
                                       " is not divisible by p");
            }
        }
        diff *= Rational(1, static_cast<long>(p));
        g.entries[k] = m.apply_poly(diff, v);
    }
    g = normalize(m, g);
    UElement residue = u_add(m, f, u_scale(m, Rational(-static_cast<long>(p)), g));
    for (const auto& c : gamma(ring, m, residue)) {
        if (c != 0) throw ConsistencyError("p_reduce: gamma(f - p g) != 0");
    }
    return g;
}

BetaPreimage beta_preimage(const OperationRing& ring, const FpModule& m, const UElement& f) {
    if (m.free_rank() > 0) {
        for (const auto& c : gamma(ring, m, f))
            if (c != 0) throw DomainError("beta_preimage: gamma(f) != 0");
    }
    const std::size_t n0 = require_discrete(m);
    const std::size_t n = std::max({f.bound, n0, std::size_t{1}});
    // Torsion witness y = sum_i (Phi_n / Phi_{i+1}) f(Phi_i).
    ModuleElement y = m.zero();
    for (const auto& [i, v] : f.entries) {
        ModuleElement w = v;
        if (i + 1 < n) w = m.apply_poly(ring.divide_phi(n, i + 1), v);
        for (std::size_t t = 0; t < y.size(); ++t) y[t] += w[t];
    }
    y = m.reduce(y);
    for (std::size_t t = m.torsion_rank(); t < y.size(); ++t) {
        if (y[t] != 0) throw ConsistencyError("beta_preimage: torsion witness has a free component");
    }
    const std::size_t period = m.config().period();
    const std::size_t limit = n + period * (m.max_exponent() + 2);
    std::size_t r = ((n + period - 1) / period) * period;
    // z = (Theta_{r+1}/Theta_n)(T) y, advanced incrementally.
    ModuleElement z = y;
    std::size_t applied = n;  // z has seen factors q_{n+1}..q_applied
    const NodeSequence& nodes = ring.nodes();
    auto advance = [&](std::size_t upto) {
        for (; applied < upto; ++applied) {
            ModuleElement tz = m.action().apply(z);
            const Rational q = nodes.node(applied + 1);
            for (std::size_t t = 0; t < tz.size(); ++t) tz[t] -= q * z[t];
            z = m.reduce(tz);
        }
    };
    for (;; r += period) {
        if (r > limit) {
            throw ConsistencyError("beta_preimage: no r <= " + std::to_string(limit) +
                                   " annihilates the torsion witness");
        }
        advance(r + 1);
        if (m.is_zero(z)) break;
    }
    // f~_r(Phi_k) = sum_{i<k} (Phi_k/Phi_{i+1}) f(Phi_i), via f~_{k+1} = (T - q_{k+1}) f~_k + m_k.
    BetaPreimage out;
    out.r = r;
    out.witness = y;
    out.g.bound = r + 1;
    ModuleElement cur = m.zero();
    for (std::size_t k = 1; k <= r; ++k) {
        ModuleElement next = m.action().apply(cur);
        const Rational q = nodes.node(k);
        const ModuleElement mk = f.at(m, k - 1);
        for (std::size_t t = 0; t < next.size(); ++t) next[t] += mk[t] - q * cur[t];
        cur = m.reduce(next);
        out.g.entries[k] = cur;
    }
    out.g = normalize(m, out.g);
    if (!u_equal(m, beta(m, out.g), u_scale(m, Rational(-1), f))) {
        throw ConsistencyError("beta_preimage: beta(g) != -f");
    }
    return out;
}

// ---------------------------------------------------------------- adjunction

Matrix transpose_to(const FpModule& n, const FpModule& m, const UHom& g) {
    if (g.size() != n.dimension()) throw DomainError("transpose_to: one image per basis vector required");
    Matrix h(m.dimension(), n.dimension());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const ModuleElement v = m.reduce(g[j].at(m, 0));
        for (std::size_t i = 0; i < v.size(); ++i) h(i, j) = v[i];
    }
    return h;
}

UHom transpose_from(const FpModule& n, const FpModule& m, const Matrix& h) {
    if (!is_linear_map(n, m, h)) throw DomainError("transpose_from: not a Z_(p)-linear map");
    const std::size_t n0 = require_discrete(n);
    UHom g;
    for (std::size_t j = 0; j < n.dimension(); ++j) {
        UElement f;
        f.bound = n0;
        for (std::size_t k = 0; k < n0; ++k) f.entries[k] = m.reduce(h.apply(n.apply_theta(k, n.basis(j))));
        g.push_back(normalize(m, f));
    }
    return g;
}

bool is_u_hom(const FpModule& n, const FpModule& m, const UHom& g) {
    if (g.size() != n.dimension()) return false;
    const unsigned long p = n.p();
    for (std::size_t j = 0; j < n.dimension(); ++j) {
        if (j < n.torsion_rank()) {
            UElement scaled = u_scale(m, Rational(ipow(p, n.torsion_exponents()[j])), g[j]);
            if (!u_is_zero(m, scaled)) return false;
        }
        // g(T e_j) = sum_i T_ij g(e_i) must equal Psi^q g(e_j).
        UElement lhs;
        for (std::size_t i = 0; i < n.dimension(); ++i) {
            const Rational& t = n.action()(i, j);
            if (t != 0) lhs = u_add(m, lhs, u_scale(m, t, g[i]));
        }
        if (!u_equal(m, lhs, u_generator(m, g[j]))) return false;
    }
    return true;
}

FpModule truncated_cofree(const FpModule& m, std::size_t support) {
    const std::size_t d = m.dimension(), s = m.torsion_rank();
    const std::size_t dim = d * support;
    // Torsion coordinates (k, i), i < s, come first, then the free ones.
    auto pos = [&](std::size_t k, std::size_t i) {
        return i < s ? k * s + i : support * s + k * (d - s) + (i - s);
    };
    std::vector<unsigned> exps;
    for (std::size_t k = 0; k < support; ++k)
        for (std::size_t i = 0; i < s; ++i) exps.push_back(m.torsion_exponents()[i]);
    Matrix t(dim, dim);
    NodeSequence nodes(m.config().base);
    for (std::size_t k = 0; k < support; ++k)
        for (std::size_t i = 0; i < d; ++i) {
            t(pos(k, i), pos(k, i)) = nodes.node(k + 1);
            if (k + 1 < support) t(pos(k, i), pos(k + 1, i)) = 1;
        }
    return make_module(m.config(), exps, (d - s) * support, t);
}

UElement from_truncated(const FpModule& m, std::size_t support, const ModuleElement& v) {
    const std::size_t d = m.dimension(), s = m.torsion_rank();
    UElement f;
    f.bound = support;
    for (std::size_t k = 0; k < support; ++k) {
        ModuleElement x(d);
        for (std::size_t i = 0; i < d; ++i)
            x[i] = i < s ? v[k * s + i] : v[support * s + k * (d - s) + (i - s)];
        f.entries[k] = x;
    }
    return normalize(m, f);
}

ModuleElement to_truncated(const FpModule& m, std::size_t support, const UElement& f) {
    if (f.bound > support) throw DomainError("UElement support exceeds the truncation");
    const std::size_t d = m.dimension(), s = m.torsion_rank();
    ModuleElement v(d * support);
    for (std::size_t k = 0; k < support; ++k) {
        const ModuleElement x = f.at(m, k);
        for (std::size_t i = 0; i < d; ++i)
            (i < s ? v[k * s + i] : v[support * s + k * (d - s) + (i - s)]) = x[i];
    }
    return v;
}

namespace {

Matrix with_relations(const FpModule& l2, const Matrix& e) {
    const std::size_t s = l2.torsion_rank();
    Matrix a(e.rows(), e.cols() + s);
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) a(i, j) = e(i, j);
    for (std::size_t i = 0; i < s; ++i) a(i, e.cols() + i) = Rational(ipow(l2.p(), l2.torsion_exponents()[i]));
    return a;
}

}  // namespace

bool is_surjective(const FpModule& l1, const FpModule& l2, const Matrix& e) {
    if (!is_linear_map(l1, l2, e)) return false;
    auto snf = local_smith_form(with_relations(l2, e), l2.p());
    if (snf.rank != l2.dimension()) return false;
    return std::all_of(snf.exponents.begin(), snf.exponents.end(), [](long x) { return x == 0; });
}

UElement lift_through_epi(const FpModule& l1, const FpModule& l2, const Matrix& e, const UElement& g) {
    if (!is_surjective(l1, l2, e)) throw DomainError("lift_through_epi: map is not surjective");
    const Matrix a = with_relations(l2, e);
    UElement h;
    h.bound = g.bound;
    for (const auto& [k, v] : g.entries) {
        auto sol = local_solve(a, l2.reduce(v), l2.p());
        if (!sol) throw ConsistencyError("lift_through_epi: no preimage for a surjective map");
        h.entries[k] = l1.reduce(Vector(sol->begin(), sol->begin() + static_cast<long>(l1.dimension())));
    }
    return normalize(l1, h);
}

}  // namespace kop
