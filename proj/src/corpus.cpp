#include "kop/corpus.hpp"

#include <random>

namespace kop {

namespace {

class Builder {
public:
    Builder(const RingConfig& cfg, const CorpusOptions& opts, std::uint64_t seed)
        : cfg_(cfg), opts_(opts), rng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    std::vector<unsigned> exponents(std::size_t count) {
        std::vector<unsigned> e;
        for (std::size_t i = 0; i < count; ++i) e.push_back(static_cast<unsigned>(uniform(1, opts_.max_exponent)));
        return e;
    }

    // Unit residue mod p, drawn to be congruent to a power of base so the
    // torsion block stays discrete in either variant.
    Rational unit_residue() {
        const long k = uniform(0, static_cast<long>(cfg_.residue_order()) - 1);
        Integer v = 1;
        for (long i = 0; i < k; ++i) v *= cfg_.base;
        return Rational(v + Integer(static_cast<long>(cfg_.p)) * uniform(-2, 2));
    }

    // Upper triangular mod p with unit diagonal residues in the node classes.
    Matrix discrete_torsion(const std::vector<unsigned>& e) {
        const std::size_t s = e.size();
        Matrix t(s, s);
        const long p = static_cast<long>(cfg_.p);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                const long need = std::max(0L, static_cast<long>(e[i]) - static_cast<long>(e[j]));
                if (i == j) t(i, j) = unit_residue();
                else if (i < j) t(i, j) = Rational(ipow(cfg_.p, need)) * uniform(-p, p);
                else t(i, j) = Rational(ipow(cfg_.p, std::max(1L, need))) * uniform(-p, p);
            }
        return t;
    }

    Rational node_value(long e) { return rpow(Rational(cfg_.base), e); }

    // P D P^{-1} with P unimodular upper triangular over Z.
    Matrix diagonalisable(const std::vector<Rational>& eig) {
        const std::size_t r = eig.size();
        Matrix pm = Matrix::identity(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) pm(i, j) = uniform(-2, 2);
        Matrix pinv = Matrix::identity(r);
        // Back substitution for the unit upper triangular inverse.
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = j; i-- > 0;) {
                Rational acc = 0;
                for (std::size_t k = i + 1; k <= j; ++k) acc += pm(i, k) * pinv(k, j);
                pinv(i, j) = -acc;
            }
        Matrix d(r, r);
        for (std::size_t i = 0; i < r; ++i) d(i, i) = eig[i];
        return pm * d * pinv;
    }

    std::vector<Rational> node_eigenvalues(std::size_t r) {
        std::vector<Rational> eig;
        for (std::size_t i = 0; i < r; ++i) eig.push_back(node_value(uniform(-opts_.max_eigen_exponent, opts_.max_eigen_exponent)));
        return eig;
    }

    Rational non_node_value() {
        const long p = static_cast<long>(cfg_.p);
        const Rational choices[] = {Rational(p), Rational(0), Rational(-1), Rational(p * p + p),
                                    Rational(-2 * p), Rational(1 - p), Rational(p, 1 + p)};
        for (;;) {
            Rational v = choices[uniform(0, 6)];
            bool node = false;
            for (long e = -12; e <= 12; ++e)
                if (node_value(e) == v) node = true;
            if (!node) return v;
        }
    }

    FpModule assemble(const std::vector<unsigned>& exps, const Matrix& tt, const Matrix& ff, bool mix) {
        const std::size_t s = exps.size(), r = ff.rows();
        Matrix t(s + r, s + r);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) t(i, j) = tt(i, j);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) t(s + i, s + j) = ff(i, j);
        if (mix)
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < r; ++j) t(i, s + j) = uniform(-3, 3);
        return make_module(cfg_, exps, r, t);
    }

    CorpusEntry make(std::size_t slot) {
        const std::size_t max_rank = opts_.max_rank;
        switch (slot % 10) {
            case 0:
            case 1: {  // discrete torsion
                auto e = exponents(static_cast<std::size_t>(uniform(1, std::min<long>(3, static_cast<long>(max_rank)))));
                return {"torsion_discrete", assemble(e, discrete_torsion(e), Matrix(0, 0), false)};
            }
            case 2:
            case 3: {  // diagonalisable free part with node eigenvalues
                const auto r = static_cast<std::size_t>(uniform(1, std::min<long>(3, static_cast<long>(max_rank))));
                return {"free_diagonal", assemble({}, Matrix(0, 0), diagonalisable(node_eigenvalues(r)), false)};
            }
            case 4:
            case 5: {  // mixed discrete
                const auto s = static_cast<std::size_t>(uniform(1, 2));
                const auto r = static_cast<std::size_t>(uniform(1, static_cast<long>(max_rank - s)));
                auto e = exponents(s);
                return {"mixed_discrete", assemble(e, discrete_torsion(e), diagonalisable(node_eigenvalues(r)), true)};
            }
            case 6: {  // Jordan block on a node eigenvalue, possibly with torsion
                Rational lam = node_value(uniform(-2, 2));
                Matrix ff(2, 2);
                ff(0, 0) = lam;
                ff(1, 1) = lam;
                ff(0, 1) = uniform(0, 1) ? Rational(1) : Rational(static_cast<long>(cfg_.p));
                auto e = exponents(static_cast<std::size_t>(uniform(0, 1)));
                return {"free_jordan", assemble(e, discrete_torsion(e), ff, !e.empty())};
            }
            case 7: {  // eigenvalue outside the node set
                const auto r = static_cast<std::size_t>(uniform(1, 2));
                auto eig = node_eigenvalues(r);
                eig[static_cast<std::size_t>(uniform(0, static_cast<long>(r) - 1))] = non_node_value();
                auto e = exponents(static_cast<std::size_t>(uniform(0, 1)));
                return {"free_non_node", assemble(e, discrete_torsion(e), diagonalisable(eig), !e.empty())};
            }
            case 8: {  // torsion action singular mod p
                auto e = exponents(static_cast<std::size_t>(uniform(1, 2)));
                Matrix tt = discrete_torsion(e);
                const auto i = static_cast<std::size_t>(uniform(0, static_cast<long>(e.size()) - 1));
                tt(i, i) = Rational(static_cast<long>(cfg_.p)) * uniform(0, 2);
                const auto r = static_cast<std::size_t>(uniform(0, 1));
                return {"torsion_singular", assemble(e, tt, diagonalisable(node_eigenvalues(r)), r > 0)};
            }
            default: {  // torsion eigenvalues outside F_p (or outside the base classes)
                std::vector<unsigned> e(2, static_cast<unsigned>(uniform(1, opts_.max_exponent)));
                const long p = static_cast<long>(cfg_.p);
                Matrix tt(2, 2);
                // Companion matrix of X^2 + c1 X + c0, irreducible mod p.
                for (long c0 = 1; c0 < p; ++c0)
                    for (long c1 = 0; c1 < p; ++c1) {
                        bool root = false;
                        for (long x = 0; x < p; ++x)
                            if ((x * x + c1 * x + c0) % p == 0) root = true;
                        if (!root) {
                            tt(0, 1) = -c0;
                            tt(1, 0) = 1;
                            tt(1, 1) = -c1;
                            return {"torsion_irreducible", assemble(e, tt, Matrix(0, 0), false)};
                        }
                    }
                throw ConsistencyError("no irreducible quadratic mod p");
            }
        }
    }

private:
    RingConfig cfg_;
    CorpusOptions opts_;
    std::mt19937_64 rng_;
};

}  // namespace

std::vector<CorpusEntry> generate_corpus(const RingConfig& cfg, const CorpusOptions& opts,
                                         std::uint64_t seed) {
    Builder b(cfg, opts, seed);
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < opts.size; ++i) out.push_back(b.make(i));
    return out;
}

}  // namespace kop
