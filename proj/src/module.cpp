#include "kop/module.hpp"

#include <algorithm>

namespace kop {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
    return s;
}

Rational p_power(unsigned long p, long e) { return Rational(ipow(p, static_cast<unsigned long>(e))); }

}  // namespace

ModuleValidationError::ModuleValidationError(std::vector<std::string> violations)
    : DomainError("invalid module: " + join(violations)), violations_(std::move(violations)) {}

FpModule make_module_unchecked(RingConfig cfg, std::vector<unsigned> exps, std::size_t free_rank,
                               Matrix action) {
    FpModule m;
    m.cfg_ = std::move(cfg);
    m.exps_ = std::move(exps);
    m.free_rank_ = free_rank;
    m.action_ = std::move(action);
    return m;
}

unsigned FpModule::max_exponent() const {
    unsigned e = 0;
    for (unsigned x : exps_) e = std::max(e, x);
    return e;
}

ModuleElement FpModule::reduce(const ModuleElement& x) const {
    if (x.size() != dimension()) {
        throw DomainError("element has " + std::to_string(x.size()) + " coordinates, module has " +
                          std::to_string(dimension()));
    }
    ModuleElement y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!is_p_local(x[i], cfg_.p)) {
            throw DomainError("coordinate " + std::to_string(i) + " = " + to_string(x[i]) +
                              " is not p-local");
        }
        y[i] = i < exps_.size() ? Rational(reduce_mod(x[i], cfg_.p, exps_[i])) : x[i];
    }
    return y;
}

bool FpModule::is_zero(const ModuleElement& x) const {
    for (const auto& c : reduce(x))
        if (c != 0) return false;
    return true;
}

bool FpModule::equal(const ModuleElement& x, const ModuleElement& y) const {
    if (x.size() != y.size()) return false;
    ModuleElement d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return is_zero(d);
}

ModuleElement FpModule::basis(std::size_t i) const {
    ModuleElement e = zero();
    e.at(i) = 1;
    return e;
}

ModuleElement FpModule::act(const ModuleElement& x) const { return reduce(action_.apply(x)); }

ModuleElement FpModule::apply_poly(const OperationPoly& f, const ModuleElement& x) const {
    ModuleElement acc = zero();
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = action_.apply(acc);
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += c[i] * x[t];
        acc = reduce(acc);
    }
    return acc;
}

ModuleElement FpModule::apply_theta(std::size_t n, const ModuleElement& x) const {
    NodeSequence nodes(cfg_.base);
    ModuleElement v = reduce(x);
    for (std::size_t i = 1; i <= n; ++i) {
        const Rational q = nodes.node(i);
        ModuleElement tv = action_.apply(v);
        for (std::size_t t = 0; t < v.size(); ++t) tv[t] -= q * v[t];
        v = reduce(tv);
    }
    return v;
}

Matrix FpModule::free_block() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = exps_.size(); i < dimension(); ++i) idx.push_back(i);
    return action_.submatrix(idx, idx);
}

Matrix FpModule::torsion_block() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < exps_.size(); ++i) idx.push_back(i);
    return action_.submatrix(idx, idx);
}

std::vector<std::string> module_violations(const ModuleDescription& desc) {
    std::vector<std::string> out;
    const std::size_t s = desc.torsion_exponents.size();
    const std::size_t d = s + desc.free_rank;
    const unsigned long p = desc.config.p;
    for (std::size_t i = 0; i < s; ++i)
        if (desc.torsion_exponents[i] < 1)
            out.push_back("torsion exponent " + std::to_string(i) + " must be >= 1");
    if (desc.action.rows() != d || desc.action.cols() != d) {
        out.push_back("action is " + std::to_string(desc.action.rows()) + "x" +
                      std::to_string(desc.action.cols()) + ", expected " + std::to_string(d) + "x" +
                      std::to_string(d));
        return out;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Rational& t = desc.action(i, j);
            const std::string at = "T[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            if (!is_p_local(t, p)) {
                out.push_back(at + " = " + to_string(t) + " is not p-local");
                continue;
            }
            if (j >= s || t == 0) continue;
            if (i >= s) {
                out.push_back(at + " maps torsion into the free part");
            } else {
                const long need = std::max(0L, static_cast<long>(desc.torsion_exponents[i]) -
                                                   static_cast<long>(desc.torsion_exponents[j]));
                if (vp(t, p) < Valuation(need)) {
                    out.push_back(at + " has valuation " + vp(t, p).to_string() + " < " +
                                  std::to_string(need));
                }
            }
        }
    return out;
}

FpModule validate_module(const ModuleDescription& desc) {
    auto violations = module_violations(desc);
    if (!violations.empty()) throw ModuleValidationError(std::move(violations));
    Matrix t = desc.action;
    for (std::size_t i = 0; i < desc.torsion_exponents.size(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            t(i, j) = Rational(reduce_mod(t(i, j), desc.config.p, desc.torsion_exponents[i]));
    return make_module_unchecked(desc.config, desc.torsion_exponents, desc.free_rank, std::move(t));
}

FpModule make_module(const RingConfig& cfg, std::vector<unsigned> torsion_exponents,
                     std::size_t free_rank, const Matrix& action) {
    return validate_module(ModuleDescription{cfg, std::move(torsion_exponents), free_rank, action});
}

std::size_t default_n_max(const FpModule& m) {
    const std::size_t e = std::max<std::size_t>(1, m.max_exponent());
    return std::max<std::size_t>(48, 4 * m.config().period() * e);
}

std::size_t default_k_max(const FpModule& m) { return m.max_exponent() + 2; }

std::optional<std::size_t> element_annihilation_exponent(const FpModule& m, const ModuleElement& x,
                                                         std::size_t n_max) {
    NodeSequence nodes(m.config().base);
    ModuleElement v = m.reduce(x);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (m.is_zero(v)) return n;
        const Rational q = nodes.node(n + 1);
        ModuleElement tv = m.action().apply(v);
        for (std::size_t t = 0; t < v.size(); ++t) tv[t] -= q * v[t];
        v = m.reduce(tv);
    }
    return std::nullopt;
}

std::optional<std::size_t> annihilation_exponent(const FpModule& m, std::size_t n_max) {
    // Theta_n | Theta_{n'} for n <= n', so the module exponent is the
    // largest exponent of a basis vector.
    std::size_t worst = 0;
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        auto e = element_annihilation_exponent(m, m.basis(i), n_max);
        if (!e) return std::nullopt;
        worst = std::max(worst, *e);
    }
    return worst;
}

std::size_t require_discrete(const FpModule& m) {
    auto e = annihilation_exponent(m, default_n_max(m));
    if (!e) {
        throw DomainError("module is not discrete within n_max = " + std::to_string(default_n_max(m)));
    }
    return *e;
}

ModuleElement apply_operation(const OperationRing& ring, const FpModule& m, const PhiVector& a,
                              const ModuleElement& x) {
    if (!(ring.config() == m.config())) throw DomainError("ring and module configurations differ");
    const std::size_t n0 = require_discrete(m);
    if (a.truncation() < n0) {
        throw DomainError("operation truncated at " + std::to_string(a.truncation()) +
                          " below the annihilation exponent " + std::to_string(n0));
    }
    ModuleElement acc = m.zero();
    ModuleElement theta_x = m.reduce(x);
    NodeSequence nodes(m.config().base);
    for (std::size_t k = 0; k < n0; ++k) {
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += a[k] * theta_x[t];
        ModuleElement tv = m.action().apply(theta_x);
        const Rational q = nodes.node(k + 1);
        for (std::size_t t = 0; t < tv.size(); ++t) tv[t] -= q * theta_x[t];
        theta_x = m.reduce(tv);
    }
    return m.reduce(acc);
}

ModuleElement adams_action(const OperationRing& ring, const FpModule& m, const Rational& j,
                           const ModuleElement& x) {
    const std::size_t n0 = require_discrete(m);
    return apply_operation(ring, m, ring.adams_expansion(j, n0), x);
}

std::vector<std::pair<std::size_t, ModuleElement>> coaction(const FpModule& m,
                                                            const ModuleElement& x) {
    const std::size_t n0 = require_discrete(m);
    std::vector<std::pair<std::size_t, ModuleElement>> out;
    NodeSequence nodes(m.config().base);
    ModuleElement v = m.reduce(x);
    for (std::size_t n = 0; n < n0; ++n) {
        if (!m.is_zero(v)) out.emplace_back(n, v);
        ModuleElement tv = m.action().apply(v);
        const Rational q = nodes.node(n + 1);
        for (std::size_t t = 0; t < tv.size(); ++t) tv[t] -= q * v[t];
        v = m.reduce(tv);
    }
    return out;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& mod) {
    const std::size_t n = a.size();
    IntMatrix c(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    for (auto& row : c)
        for (auto& x : row) {
            x %= mod;
            if (x < 0) x += mod;
        }
    return c;
}

IntMatrix pow_mod(IntMatrix a, unsigned long e, const Integer& mod) {
    const std::size_t n = a.size();
    IntMatrix r(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1 % mod;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, mod);
        a = mul_mod(a, a, mod);
        e >>= 1;
    }
    return r;
}

// Distinct roots base^e of a monic rational polynomial, with multiplicity;
// returns the residual factor that has no such roots.
OperationPoly split_node_roots(OperationPoly f, const Integer& base,
                               std::vector<std::pair<long, std::size_t>>& roots) {
    if (f.degree() <= 0) return f;
    auto cauchy = [](const std::vector<Rational>& c) -> Rational {
        Rational m = 0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, Rational(abs(c[i] / c.back())));
        return m + 1;
    };
    if (f.coeff(0) == 0) return f;  // root 0 is never a power of base
    std::vector<Rational> rev(f.coeffs().rbegin(), f.coeffs().rend());
    const Rational upper = cauchy(f.coeffs());
    const Rational lower_inv = cauchy(rev);
    const Integer b = abs(base);
    long e_hi = 0, e_lo = 0;
    for (Integer t = 1; Rational(t) <= upper; t *= b) ++e_hi;
    for (Integer t = 1; Rational(t) <= lower_inv; t *= b) ++e_lo;
    for (long e = -e_lo; e <= e_hi && f.degree() > 0; ++e) {
        const Rational root = rpow(Rational(base), e);
        std::size_t mult = 0;
        while (f.degree() > 0 && f.evaluate(root) == 0) {
            f = f.divmod(OperationPoly::linear(root)).first;
            ++mult;
        }
        if (mult) roots.emplace_back(e, mult);
    }
    return f;
}

}  // namespace

BousfieldReport bousfield_check(const FpModule& m, std::size_t k_max) {
    BousfieldReport rep;
    const unsigned long p = m.p();
    // (b) rationalized action diagonalisable with eigenvalues base^e.
    const Matrix f = m.free_block();
    if (f.rows() > 0) {
        OperationPoly chi(characteristic_polynomial(f));
        std::vector<std::pair<long, std::size_t>> roots;
        OperationPoly residual = split_node_roots(chi, m.config().base, roots);
        for (const auto& [e, mult] : roots) rep.eigenvalue_exponents.push_back(e);
        if (residual.degree() > 0) {
            rep.diagonalisable = Verdict::Fail;
            rep.diagonalisable_witness = "eigenvalues outside the node set: factor " + residual.to_string();
        } else {
            Matrix prod = Matrix::identity(f.rows());
            for (const auto& [e, mult] : roots)
                prod = prod * (f - rpow(Rational(m.config().base), e) * Matrix::identity(f.rows()));
            if (!prod.is_zero()) {
                rep.diagonalisable = Verdict::Fail;
                rep.diagonalisable_witness = "minimal polynomial is not squarefree";
            }
        }
    }
    // (c) on torsion rows: T^{r p^{k-1}} = I mod p^{e_i}, r the residue order of base.
    const std::size_t s = m.torsion_rank();
    if (rep.diagonalisable != Verdict::Pass) {
        rep.continuity = Verdict::Indeterminate;
        rep.continuity_witness = "rationalized action fails the eigenvalue condition";
        return rep;
    }
    if (s == 0) return rep;
    const Integer mod = ipow(p, m.max_exponent());
    const std::size_t d = m.dimension();
    IntMatrix a(d, std::vector<Integer>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a[i][j] = reduce_mod(m.action()(i, j), p, m.max_exponent());
    IntMatrix power = pow_mod(a, m.config().residue_order(), mod);
    for (std::size_t k = 1; k <= k_max; ++k) {
        bool ok = true;
        for (std::size_t i = 0; i < s && ok; ++i) {
            const Integer mi = ipow(p, m.torsion_exponents()[i]);
            for (std::size_t j = 0; j < d && ok; ++j) {
                Integer v = power[i][j] - (i == j ? 1 : 0);
                if (v % mi != 0) ok = false;
            }
        }
        if (ok) {
            rep.continuity_k = k;
            return rep;
        }
        power = pow_mod(power, p, mod);
    }
    rep.continuity = Verdict::Fail;
    rep.continuity_witness = "T^{r p^{k-1}} != I on the torsion part for all k <= " + std::to_string(k_max);
    return rep;
}

FpModule direct_sum(const FpModule& a, const FpModule& b) {
    if (!(a.config() == b.config())) throw DomainError("direct_sum: configurations differ");
    const std::size_t sa = a.torsion_rank(), sb = b.torsion_rank();
    const std::size_t da = a.dimension(), db = b.dimension();
    // New position of each old coordinate.
    std::vector<std::size_t> pa(da), pb(db);
    for (std::size_t i = 0; i < da; ++i) pa[i] = i < sa ? i : sb + i;
    for (std::size_t i = 0; i < db; ++i) pb[i] = i < sb ? sa + i : da + i;
    Matrix t(da + db, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) t(pa[i], pa[j]) = a.action()(i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) t(pb[i], pb[j]) = b.action()(i, j);
    std::vector<unsigned> exps = a.torsion_exponents();
    exps.insert(exps.end(), b.torsion_exponents().begin(), b.torsion_exponents().end());
    return make_module(a.config(), exps, a.free_rank() + b.free_rank(), t);
}

FpModule present(const RingConfig& cfg, const Matrix& relations, const Matrix& action) {
    const std::size_t d = action.rows();
    auto snf = local_smith_form(relations, cfg.p);
    Matrix t = snf.u * action * snf.u_inv;
    std::vector<std::size_t> keep;
    std::vector<unsigned> exps;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.exponents[i] > 0) {
            keep.push_back(i);
            exps.push_back(static_cast<unsigned>(snf.exponents[i]));
        }
    for (std::size_t i = snf.rank; i < d; ++i) keep.push_back(i);
    Matrix sub = t.submatrix(keep, keep);
    try {
        return make_module(cfg, exps, d - snf.rank, sub);
    } catch (const ModuleValidationError& e) {
        throw ConsistencyError(std::string("induced action is not well defined: ") + e.what());
    }
}

namespace {

std::pair<std::size_t, std::vector<long>> lattice_signature(const Matrix& r, unsigned long p) {
    auto snf = local_smith_form(r, p);
    std::vector<long> e = snf.exponents;
    std::sort(e.begin(), e.end());
    return {snf.rank, e};
}

Matrix append_column(const Matrix& r, const Vector& v) {
    Matrix out(r.rows(), r.cols() + 1);
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) out(i, j) = r(i, j);
        out(i, r.cols()) = v[i];
    }
    return out;
}

}  // namespace

FpModule quotient_by_orbit(const FpModule& m, const std::vector<ModuleElement>& generators) {
    const std::size_t d = m.dimension();
    const unsigned long p = m.p();
    Matrix rel(d, 0);
    for (std::size_t i = 0; i < m.torsion_rank(); ++i) {
        Vector v(d);
        v[i] = p_power(p, m.torsion_exponents()[i]);
        rel = append_column(rel, v);
    }
    auto sig = lattice_signature(rel, p);
    for (const auto& g : generators) {
        ModuleElement v = m.reduce(g);
        // Add x, Tx, T^2 x, ... until the lattice stops growing.
        for (std::size_t step = 0;; ++step) {
            if (step > 64 * (d + 1) * (m.max_exponent() + 2)) {
                throw ConsistencyError("orbit did not stabilize");
            }
            Matrix next = append_column(rel, v);
            auto next_sig = lattice_signature(next, p);
            if (next_sig == sig) break;
            rel = std::move(next);
            sig = std::move(next_sig);
            v = m.act(v);
        }
    }
    return present(m.config(), rel, m.action());
}

FpModule torsion_submodule(const FpModule& m) {
    return make_module(m.config(), m.torsion_exponents(), 0, m.torsion_block());
}

RationalizedModule rationalize(const FpModule& m) { return RationalizedModule{m.config(), m.free_block()}; }

FpModule twist(const FpModule& m, long i) {
    return make_module(m.config(), m.torsion_exponents(), m.free_rank(),
                       rpow(Rational(m.config().base), i) * m.action());
}

// ---------------------------------------------------------------- homs

namespace {

long entry_shift(const FpModule& src, const FpModule& tgt, std::size_t i, std::size_t j) {
    if (i < tgt.torsion_rank() && j < src.torsion_rank()) {
        return std::max(0L, static_cast<long>(tgt.torsion_exponents()[i]) -
                                static_cast<long>(src.torsion_exponents()[j]));
    }
    return 0;
}

bool entry_allowed(const FpModule& src, const FpModule& tgt, std::size_t i, std::size_t j) {
    return !(i >= tgt.torsion_rank() && j < src.torsion_rank());
}

HomGroup hom_impl(const FpModule& src, const FpModule& tgt, bool commuting) {
    if (!(src.config() == tgt.config())) throw DomainError("hom: configurations differ");
    const unsigned long p = src.p();
    const std::size_t dm = src.dimension(), dn = tgt.dimension();
    const std::size_t sn = tgt.torsion_rank();
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    std::vector<std::vector<long>> var_of(dn, std::vector<long>(dm, -1));
    for (std::size_t i = 0; i < dn; ++i)
        for (std::size_t j = 0; j < dm; ++j)
            if (entry_allowed(src, tgt, i, j)) {
                var_of[i][j] = static_cast<long>(vars.size());
                vars.emplace_back(i, j);
            }
    const std::size_t nv = vars.size();
    auto scale = [&](std::size_t v) { return p_power(p, entry_shift(src, tgt, vars[v].first, vars[v].second)); };

    // Basis of K (allowed S satisfying the hom conditions), in s-coordinates.
    std::vector<Vector> kbasis;
    if (!commuting) {
        for (std::size_t v = 0; v < nv; ++v) {
            Vector e(nv);
            e[v] = 1;
            kbasis.push_back(e);
        }
    } else {
        const std::size_t nslack = sn * dm;
        Matrix sys(dn * dm, nv + nslack);
        const Matrix& tm = src.action();
        const Matrix& tn = tgt.action();
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                const std::size_t row = i * dm + j;
                // (S T_M)_{ij} = sum_k S_ik T_M[k][j]
                for (std::size_t k = 0; k < dm; ++k) {
                    long v = var_of[i][k];
                    if (v >= 0 && tm(k, j) != 0) sys(row, static_cast<std::size_t>(v)) += scale(v) * tm(k, j);
                }
                // - (T_N S)_{ij} = - sum_k T_N[i][k] S_kj
                for (std::size_t k = 0; k < dn; ++k) {
                    long v = var_of[k][j];
                    if (v >= 0 && tn(i, k) != 0) sys(row, static_cast<std::size_t>(v)) -= scale(v) * tn(i, k);
                }
                if (i < sn) sys(row, nv + i * dm + j) = -p_power(p, tgt.torsion_exponents()[i]);
            }
        for (const auto& k : local_kernel(sys, p)) kbasis.emplace_back(k.begin(), k.begin() + static_cast<long>(nv));
    }

    HomGroup out;
    if (kbasis.empty()) return out;
    Matrix b = Matrix::from_columns(nv, kbasis);
    // K_0: S = 0 as a map, i.e. torsion-target entries divisible by p^{f_i}.
    std::vector<Vector> rel_cols;
    for (std::size_t v = 0; v < nv; ++v) {
        const auto [i, j] = vars[v];
        if (i >= sn) continue;
        Vector z(nv);
        z[v] = p_power(p, static_cast<long>(tgt.torsion_exponents()[i]) - entry_shift(src, tgt, i, j));
        auto c = local_solve(b, z, p);
        if (!c) throw ConsistencyError("zero map missing from the hom lattice");
        rel_cols.push_back(*c);
    }
    Matrix c = Matrix::from_columns(kbasis.size(), rel_cols);
    auto snf = local_smith_form(c, p);
    Matrix gens = b * snf.u_inv;
    for (std::size_t t = 0; t < kbasis.size(); ++t) {
        std::optional<long> order;
        if (t < snf.rank) {
            if (snf.exponents[t] == 0) continue;
            order = snf.exponents[t];
        }
        Matrix s(dn, dm);
        for (std::size_t v = 0; v < nv; ++v) s(vars[v].first, vars[v].second) = scale(v) * gens(v, t);
        out.generators.push_back(reduce_hom(tgt, s));
        out.orders.push_back(order);
    }
    return out;
}

}  // namespace

Matrix reduce_hom(const FpModule& target, const Matrix& s) {
    Matrix r = s;
    for (std::size_t i = 0; i < target.torsion_rank(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            r(i, j) = Rational(reduce_mod(r(i, j), target.p(), target.torsion_exponents()[i]));
    return r;
}

bool is_linear_map(const FpModule& source, const FpModule& target, const Matrix& s) {
    if (s.rows() != target.dimension() || s.cols() != source.dimension()) return false;
    const unsigned long p = source.p();
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) {
            const Rational& x = s(i, j);
            if (!is_p_local(x, p)) return false;
            if (x == 0) continue;
            if (!entry_allowed(source, target, i, j)) return false;
            if (vp(x, p) < Valuation(entry_shift(source, target, i, j))) return false;
        }
    return true;
}

bool is_hom(const FpModule& source, const FpModule& target, const Matrix& s) {
    if (!is_linear_map(source, target, s)) return false;
    Matrix d = s * source.action() - target.action() * s;
    for (std::size_t j = 0; j < d.cols(); ++j)
        if (!target.is_zero(d.column(j))) return false;
    return true;
}

HomGroup hom_A(const FpModule& source, const FpModule& target) { return hom_impl(source, target, true); }
HomGroup hom_Z(const FpModule& source, const FpModule& target) { return hom_impl(source, target, false); }

std::vector<Matrix> enumerate_homs(const FpModule& source, const FpModule& target,
                                   const HomGroup& group) {
    std::vector<Integer> orders;
    Integer total = 1;
    for (const auto& o : group.orders) {
        if (!o) throw DomainError("hom group is infinite");
        orders.push_back(ipow(source.p(), static_cast<unsigned long>(*o)));
        total *= orders.back();
    }
    if (total > 2000000) throw DomainError("hom group too large to enumerate");
    std::vector<Matrix> out;
    std::vector<Integer> digit(orders.size(), 0);
    Matrix zero(target.dimension(), source.dimension());
    for (Integer n = 0; n < total; ++n) {
        Matrix s = zero;
        for (std::size_t g = 0; g < orders.size(); ++g)
            if (digit[g] != 0) s = s + Rational(digit[g]) * group.generators[g];
        out.push_back(reduce_hom(target, s));
        for (std::size_t g = 0; g < orders.size(); ++g) {
            if (++digit[g] < orders[g]) break;
            digit[g] = 0;
        }
    }
    return out;
}

}  // namespace kop
