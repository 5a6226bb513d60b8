#pragma once

// The operations ring A (or its split analogue B) truncated to A/A_N:
// node sequence, Theta polynomials, Phi-basis change, structure
// constants, Adams expansions, units and quotients.

#include "kop/arith.hpp"
#include "kop/poly.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace kop {

/// i -> q_i = base^{e_i}, e_i = (-1)^i floor(i/2), for i >= 1.
class NodeSequence {
public:
    explicit NodeSequence(const Integer& base) : base_(base) {}

    static long exponent(std::size_t i);
    Rational node(std::size_t i) const;
    /// q_1, ..., q_count packed at indices 1..count (index 0 unused).
    std::vector<Rational> first(std::size_t count) const;
    /// Node index i with q_i = base^e.
    static std::size_t index_of_exponent(long e);
    const Integer& base() const { return base_; }

private:
    Integer base_;
};

/// Coset sum_{k<N} a_k Phi_k + A_N.
class PhiVector {
public:
    PhiVector() = default;
    explicit PhiVector(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

    static PhiVector zero(std::size_t truncation);
    /// Phi_k mod A_N (zero coset when k >= N).
    static PhiVector basis(std::size_t k, std::size_t truncation);

    std::size_t truncation() const { return coeffs_.size(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
    Rational& operator[](std::size_t k) { return coeffs_[k]; }

    bool is_p_local(unsigned long p) const;
    /// Same coset modulo a smaller ideal A_M, M <= N.
    PhiVector truncate(std::size_t m) const;

    PhiVector& operator+=(const PhiVector& o);
    PhiVector& operator-=(const PhiVector& o);
    friend PhiVector operator+(PhiVector a, const PhiVector& b) { return a += b; }
    friend PhiVector operator-(PhiVector a, const PhiVector& b) { return a -= b; }
    friend PhiVector operator*(const Rational& c, PhiVector a);
    friend bool operator==(const PhiVector& a, const PhiVector& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

class StructureTable;

/// Solution of the congruences sum_{j=k-n}^{k} c^k_{j,n} b_j = a_k (mod p),
/// n <= k <= K, over the unknowns b_0..b_K.
struct AbcongSolution {
    std::size_t n = 0;
    std::size_t window = 0;  // K
    /// A particular solution, free unknowns set to 0 (residues in [0, p)).
    std::vector<long> b;
    /// determined[j]: b_j is the same in every solution.
    std::vector<bool> determined;
    /// b_0..b_{triangular-1} are forced by the block-triangular pattern.
    std::size_t triangular = 0;
    std::size_t rank = 0;
    bool consistent = true;
    /// Every unknown in the triangular range was found to be determined.
    bool pattern_holds = true;
};

class OperationRing {
public:
    explicit OperationRing(RingConfig cfg);

    const RingConfig& config() const { return cfg_; }
    const NodeSequence& nodes() const { return nodes_; }
    unsigned long p() const { return cfg_.p; }

    OperationPoly theta(std::size_t n) const;
    /// Theta_n with the factor (X - q_j) removed; 1 <= j <= n.
    OperationPoly theta_punctured(std::size_t n, std::size_t j) const;
    /// Theta_n(x) for a scalar x.
    Rational theta_at(std::size_t n, const Rational& x) const;
    /// Theta^{(j)}_n(q_j).
    Rational theta_punctured_at_node(std::size_t n, std::size_t j) const;

    /// Exact Phi-expansion of a polynomial (Newton form on the nodes).
    PhiVector poly_to_phi(const OperationPoly& f) const;
    /// Canonical degree < N representative sum a_k Theta_k.
    OperationPoly phi_to_poly(const PhiVector& a) const;

    /// Coefficient of Phi_k in Phi_j Phi_n, by the recursion in n.
    Rational structure_constant(std::size_t j, std::size_t n, std::size_t k) const;
    /// Shared table of c^k_{j,n} for j, n, k < N (built once per N).
    std::shared_ptr<const StructureTable> structure_table(std::size_t truncation) const;

    PhiVector multiply(const PhiVector& a, const PhiVector& b) const;
    /// Psi^q Phi_k = Phi_{k+1} + q_{k+1} Phi_k, extended linearly.
    PhiVector multiply_by_generator(const PhiVector& a) const;

    /// Psi^j = sum_i g_i(j) Phi_i mod A_N, for a p-local unit j.
    PhiVector adams_expansion(const Rational& j, std::size_t truncation) const;

    /// Theta_n / Theta_m, exact; requires n > m.
    OperationPoly divide_phi(std::size_t n, std::size_t m) const;

    /// Unit test over one residue period of nodes i = 1..2p-2.
    bool is_unit(const OperationPoly& f) const;
    /// Same criterion over an explicit node range i = 1..count.
    bool units_at_nodes(const OperationPoly& f, std::size_t count) const;

    static Rational augmentation(const PhiVector& a);
    /// Least k with a_k != 0, or N for the zero coset.
    static std::size_t filtration_order(const PhiVector& a);

    /// a holds a_n..a_K (so K = n + a.size() - 1).
    AbcongSolution solve_abcongs(const std::vector<Rational>& a, std::size_t n) const;

    /// Index p^k * ord_p(base) at which Theta is congruent to X^index - 1.
    std::size_t theta_power_index(unsigned k) const;

private:
    void check_config_match(const PhiVector& a, const PhiVector& b) const;
    const std::vector<Rational>& constant_row(std::size_t j, std::size_t n) const;

    RingConfig cfg_;
    NodeSequence nodes_;

    mutable std::shared_mutex row_mutex_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> rows_;
    mutable std::shared_mutex table_mutex_;
    mutable std::map<std::size_t, std::shared_ptr<const StructureTable>> tables_;
};

}  // namespace kop
