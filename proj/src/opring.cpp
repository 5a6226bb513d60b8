#include "kop/opring.hpp"

#include "kop/kernels.hpp"

#include <mutex>

namespace kop {

// ---------------------------------------------------------------- nodes

long NodeSequence::exponent(std::size_t i) {
    const long half = static_cast<long>(i / 2);
    return (i % 2 == 0) ? half : -half;
}

Rational NodeSequence::node(std::size_t i) const {
    if (i == 0) throw DomainError("node indices start at 1");
    return rpow(Rational(base_), exponent(i));
}

std::vector<Rational> NodeSequence::first(std::size_t count) const {
    std::vector<Rational> q(count + 1);
    for (std::size_t i = 1; i <= count; ++i) q[i] = node(i);
    return q;
}

std::size_t NodeSequence::index_of_exponent(long e) {
    return e > 0 ? static_cast<std::size_t>(2 * e) : static_cast<std::size_t>(-2 * e + 1);
}

// ---------------------------------------------------------------- PhiVector

PhiVector PhiVector::zero(std::size_t truncation) {
    return PhiVector(std::vector<Rational>(truncation));
}

PhiVector PhiVector::basis(std::size_t k, std::size_t truncation) {
    PhiVector v = zero(truncation);
    if (k < truncation) v.coeffs_[k] = 1;
    return v;
}

bool PhiVector::is_p_local(unsigned long p) const {
    for (const auto& c : coeffs_)
        if (!kop::is_p_local(c, p)) return false;
    return true;
}

PhiVector PhiVector::truncate(std::size_t m) const {
    if (m > coeffs_.size()) throw DomainError("cannot refine a coset to a larger truncation");
    return PhiVector(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(m)));
}

PhiVector& PhiVector::operator+=(const PhiVector& o) {
    if (o.truncation() != truncation()) throw DomainError("PhiVector truncation mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

PhiVector& PhiVector::operator-=(const PhiVector& o) {
    if (o.truncation() != truncation()) throw DomainError("PhiVector truncation mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

PhiVector operator*(const Rational& c, PhiVector a) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
}

// ---------------------------------------------------------------- ring

OperationRing::OperationRing(RingConfig cfg) : cfg_(std::move(cfg)), nodes_(cfg_.base) {}

OperationPoly OperationRing::theta(std::size_t n) const {
    OperationPoly f = OperationPoly::constant(1);
    for (std::size_t i = 1; i <= n; ++i) f = f * OperationPoly::linear(nodes_.node(i));
    return f;
}

OperationPoly OperationRing::theta_punctured(std::size_t n, std::size_t j) const {
    if (j < 1 || j > n) {
        throw DomainError("theta_punctured: j = " + std::to_string(j) + " outside 1.." +
                          std::to_string(n));
    }
    OperationPoly f = OperationPoly::constant(1);
    for (std::size_t i = 1; i <= n; ++i)
        if (i != j) f = f * OperationPoly::linear(nodes_.node(i));
    return f;
}

Rational OperationRing::theta_at(std::size_t n, const Rational& x) const {
    Rational acc = 1;
    for (std::size_t i = 1; i <= n && acc != 0; ++i) acc *= x - nodes_.node(i);
    return acc;
}

Rational OperationRing::theta_punctured_at_node(std::size_t n, std::size_t j) const {
    const Rational qj = nodes_.node(j);
    Rational acc = 1;
    for (std::size_t i = 1; i <= n; ++i)
        if (i != j) acc *= qj - nodes_.node(i);
    return acc;
}

PhiVector OperationRing::poly_to_phi(const OperationPoly& f) const {
    if (f.is_zero()) return PhiVector::zero(1);
    std::vector<Rational> rest = f.coeffs();
    std::vector<Rational> out;
    out.reserve(rest.size());
    for (std::size_t i = 1; !rest.empty(); ++i) {
        // Synthetic division by (X - q_i): remainder is the next Phi coefficient.
        const Rational qi = nodes_.node(i);
        Rational acc = 0;
        std::vector<Rational> quotient(rest.size() - 1);
        for (std::size_t k = rest.size(); k-- > 0;) {
            acc = acc * qi + rest[k];
            if (k > 0) quotient[k - 1] = acc;
        }
        out.push_back(acc);
        rest = std::move(quotient);
    }
    return PhiVector(std::move(out));
}

OperationPoly OperationRing::phi_to_poly(const PhiVector& a) const {
    OperationPoly result;
    OperationPoly basis = OperationPoly::constant(1);
    for (std::size_t k = 0; k < a.truncation(); ++k) {
        if (a[k] != 0) result += a[k] * basis;
        basis = basis * OperationPoly::linear(nodes_.node(k + 1));
    }
    return result;
}

const std::vector<Rational>& OperationRing::constant_row(std::size_t j, std::size_t n) const {
    const auto key = std::make_pair(j, n);
    {
        std::shared_lock lock(row_mutex_);
        auto it = rows_.find(key);
        if (it != rows_.end()) return it->second;
    }
    std::vector<Rational> row;
    if (n == 0) {
        row = {Rational(1)};
    } else {
        const auto& prev = constant_row(j, n - 1);
        const std::size_t prev_lo = std::max(j, n - 1);
        const std::size_t lo = std::max(j, n);
        auto prev_at = [&](std::size_t k) -> Rational {
            if (k < prev_lo || k > j + n - 1) return Rational(0);
            return prev[k - prev_lo];
        };
        const Rational qn = nodes_.node(n);
        for (std::size_t k = lo; k <= j + n; ++k) {
            Rational v = (nodes_.node(k + 1) - qn) * prev_at(k);
            if (k > 0) v += prev_at(k - 1);
            row.push_back(std::move(v));
        }
    }
    std::unique_lock lock(row_mutex_);
    auto [it, inserted] = rows_.emplace(key, std::move(row));
    return it->second;
}

Rational OperationRing::structure_constant(std::size_t j, std::size_t n, std::size_t k) const {
    const std::size_t lo = std::max(j, n);
    if (k < lo || k > j + n) return Rational(0);
    return constant_row(j, n)[k - lo];
}

std::shared_ptr<const StructureTable> OperationRing::structure_table(std::size_t truncation) const {
    {
        std::shared_lock lock(table_mutex_);
        auto it = tables_.find(truncation);
        if (it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const StructureTable>(
        kernels::structure_table_parallel(nodes_, truncation));
    std::unique_lock lock(table_mutex_);
    auto [it, inserted] = tables_.emplace(truncation, std::move(table));
    return it->second;
}

void OperationRing::check_config_match(const PhiVector& a, const PhiVector& b) const {
    if (a.truncation() != b.truncation()) {
        throw DomainError("truncation mismatch: " + std::to_string(a.truncation()) + " vs " +
                          std::to_string(b.truncation()));
    }
    if (!a.is_p_local(cfg_.p) || !b.is_p_local(cfg_.p)) {
        throw DomainError("PhiVector coefficients must be p-local");
    }
}

PhiVector OperationRing::multiply(const PhiVector& a, const PhiVector& b) const {
    check_config_match(a, b);
    if (a.truncation() == 0) return a;
    auto table = structure_table(a.truncation());
    return PhiVector(kernels::phi_product_parallel(*table, a.coeffs(), b.coeffs()));
}

PhiVector OperationRing::multiply_by_generator(const PhiVector& a) const {
    const std::size_t N = a.truncation();
    PhiVector out = PhiVector::zero(N);
    for (std::size_t k = 0; k < N; ++k) {
        out[k] = nodes_.node(k + 1) * a[k];
        if (k > 0) out[k] += a[k - 1];
    }
    return out;
}

PhiVector OperationRing::adams_expansion(const Rational& j, std::size_t truncation) const {
    if (j == 0 || vp(j, cfg_.p) != Valuation(0)) {
        throw DomainError("adams_expansion: " + to_string(j) + " is not a p-local unit");
    }
    std::vector<Rational> g;
    g.reserve(truncation);
    // Row m of the triangular system sum_{i<m} g_i Theta_i(q_m) = j^{e_m}.
    for (std::size_t m = 1; m <= truncation; ++m) {
        const Rational qm = nodes_.node(m);
        Rational rhs = rpow(j, NodeSequence::exponent(m));
        Rational theta_i = 1;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            rhs -= g[i] * theta_i;
            theta_i *= qm - nodes_.node(i + 1);
        }
        Rational gi = rhs / theta_i;
        if (!is_p_local(gi, cfg_.p)) {
            throw ConsistencyError("adams_expansion: g_" + std::to_string(m - 1) + "(" +
                                   to_string(j) + ") = " + to_string(gi) + " is not p-integral");
        }
        g.push_back(std::move(gi));
    }
    return PhiVector(std::move(g));
}

OperationPoly OperationRing::divide_phi(std::size_t n, std::size_t m) const {
    if (n <= m) {
        throw DomainError("divide_phi requires n > m (got n = " + std::to_string(n) +
                          ", m = " + std::to_string(m) + ")");
    }
    auto [quotient, remainder] = theta(n).divmod(theta(m));
    if (!remainder.is_zero()) throw ConsistencyError("Theta_m does not divide Theta_n");
    return quotient;
}

bool OperationRing::units_at_nodes(const OperationPoly& f, std::size_t count) const {
    for (std::size_t i = 1; i <= count; ++i) {
        Rational v = f.evaluate(nodes_.node(i));
        if (v == 0 || vp(v, cfg_.p) != Valuation(0)) return false;
    }
    return true;
}

bool OperationRing::is_unit(const OperationPoly& f) const {
    return units_at_nodes(f, cfg_.period());
}

Rational OperationRing::augmentation(const PhiVector& a) {
    return a.truncation() == 0 ? Rational(0) : a[0];
}

std::size_t OperationRing::filtration_order(const PhiVector& a) {
    for (std::size_t k = 0; k < a.truncation(); ++k)
        if (a[k] != 0) return k;
    return a.truncation();
}

namespace {

long mod_inverse(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        long quotient = r / new_r;
        t = t - quotient * new_t;
        std::swap(t, new_t);
        r = r - quotient * new_r;
        std::swap(r, new_r);
    }
    return t < 0 ? t + p : t;
}

}  // namespace

AbcongSolution OperationRing::solve_abcongs(const std::vector<Rational>& a, std::size_t n) const {
    if (a.empty()) throw DomainError("solve_abcongs: empty coefficient window");
    const long p = static_cast<long>(cfg_.p);
    const std::size_t K = n + a.size() - 1;
    const std::size_t rows = a.size();
    const std::size_t cols = K + 1;

    // Augmented system over F_p; column `cols` is the right-hand side.
    std::vector<std::vector<long>> m(rows, std::vector<long>(cols + 1, 0));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t k = n + r;
        if (!is_p_local(a[r], cfg_.p)) throw DomainError("solve_abcongs: a_k must be p-local");
        for (std::size_t j = k - n; j <= k; ++j) {
            m[r][j] = reduce_mod(structure_constant(j, n, k), cfg_.p, 1).get_si();
        }
        m[r][cols] = reduce_mod(a[r], cfg_.p, 1).get_si();
    }

    std::vector<long> pivot_col_of_row;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const long inv = mod_inverse(m[rank][c], p);
        for (auto& x : m[rank]) x = (x * inv) % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const long f = m[r][c];
            for (std::size_t t = 0; t <= cols; ++t) m[r][t] = ((m[r][t] - f * m[rank][t]) % p + p) % p;
        }
        pivot_col_of_row.push_back(static_cast<long>(c));
        ++rank;
    }

    AbcongSolution sol;
    sol.n = n;
    sol.window = K;
    sol.rank = rank;
    sol.b.assign(cols, 0);
    sol.determined.assign(cols, false);
    for (std::size_t r = rank; r < rows; ++r)
        if (m[r][cols] != 0) sol.consistent = false;

    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;
    for (std::size_t r = 0; r < rank; ++r) {
        const auto c = static_cast<std::size_t>(pivot_col_of_row[r]);
        sol.b[c] = m[r][cols];
        bool touches_free = false;
        for (std::size_t t = 0; t < cols; ++t)
            if (!is_pivot[t] && m[r][t] != 0) touches_free = true;
        sol.determined[c] = !touches_free;
    }

    const std::size_t period = cfg_.period();
    sol.triangular = period * ((K - n + 1) / period);
    for (std::size_t j = 0; j < sol.triangular; ++j)
        if (!sol.determined[j]) sol.pattern_holds = false;
    return sol;
}

std::size_t OperationRing::theta_power_index(unsigned k) const {
    return static_cast<std::size_t>(ipow(cfg_.p, k).get_ui()) * cfg_.residue_order();
}

}  // namespace kop
