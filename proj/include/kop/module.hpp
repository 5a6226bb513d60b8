#pragma once

// Finitely presented discrete A-modules Z/p^{e_1} + ... + Z/p^{e_s} + Z_(p)^r
// with the action of Psi^q given by a matrix T (torsion coordinates first).

#include "kop/linalg.hpp"
#include "kop/opring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kop {

using ModuleElement = Vector;

/// Raised by validate_module; carries every violated constraint.
class ModuleValidationError : public DomainError {
public:
    explicit ModuleValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct ModuleDescription {
    RingConfig config;
    std::vector<unsigned> torsion_exponents;
    std::size_t free_rank = 0;
    Matrix action;
};

class FpModule {
public:
    /// The zero module over the default configuration.
    FpModule() = default;

    const RingConfig& config() const { return cfg_; }
    unsigned long p() const { return cfg_.p; }
    const std::vector<unsigned>& torsion_exponents() const { return exps_; }
    std::size_t torsion_rank() const { return exps_.size(); }
    std::size_t free_rank() const { return free_rank_; }
    std::size_t dimension() const { return exps_.size() + free_rank_; }
    const Matrix& action() const { return action_; }
    /// Largest torsion exponent (0 when torsion-free).
    unsigned max_exponent() const;
    bool is_torsion_coordinate(std::size_t i) const { return i < exps_.size(); }

    /// Canonical representative: torsion coordinates reduced into [0, p^{e_i}).
    ModuleElement reduce(const ModuleElement& x) const;
    bool is_zero(const ModuleElement& x) const;
    bool equal(const ModuleElement& x, const ModuleElement& y) const;
    ModuleElement zero() const { return ModuleElement(dimension()); }
    ModuleElement basis(std::size_t i) const;

    /// T x, reduced.
    ModuleElement act(const ModuleElement& x) const;
    /// f(T) x, reduced.
    ModuleElement apply_poly(const OperationPoly& f, const ModuleElement& x) const;
    /// (T - q_n) ... (T - q_1) x.
    ModuleElement apply_theta(std::size_t n, const ModuleElement& x) const;

    /// Free-free block of T.
    Matrix free_block() const;
    /// Torsion-torsion block of T.
    Matrix torsion_block() const;

    friend bool operator==(const FpModule& a, const FpModule& b) {
        return a.cfg_ == b.cfg_ && a.exps_ == b.exps_ && a.free_rank_ == b.free_rank_ &&
               a.action_ == b.action_;
    }

private:
    friend FpModule validate_module(const ModuleDescription& desc);
    friend FpModule make_module_unchecked(RingConfig cfg, std::vector<unsigned> exps,
                                          std::size_t free_rank, Matrix action);

    RingConfig cfg_;
    std::vector<unsigned> exps_;
    std::size_t free_rank_ = 0;
    Matrix action_;
};

/// Every violated well-definedness constraint, with indices; empty if valid.
std::vector<std::string> module_violations(const ModuleDescription& desc);
/// Checked construction; torsion rows of T are reduced mod p^{e_i}.
FpModule validate_module(const ModuleDescription& desc);
FpModule make_module(const RingConfig& cfg, std::vector<unsigned> torsion_exponents,
                     std::size_t free_rank, const Matrix& action);

/// max(48, 4(2p-2) max(1, E)).
std::size_t default_n_max(const FpModule& m);
/// E + 2.
std::size_t default_k_max(const FpModule& m);

std::optional<std::size_t> element_annihilation_exponent(const FpModule& m, const ModuleElement& x,
                                                         std::size_t n_max);
std::optional<std::size_t> annihilation_exponent(const FpModule& m, std::size_t n_max);
/// Annihilation exponent at the default bound; DomainError when absent.
std::size_t require_discrete(const FpModule& m);

ModuleElement apply_operation(const OperationRing& ring, const FpModule& m, const PhiVector& a,
                              const ModuleElement& x);
ModuleElement adams_action(const OperationRing& ring, const FpModule& m, const Rational& j,
                           const ModuleElement& x);

/// Pairs (n, Theta_n(T) x) with nonzero value, n below the annihilation exponent.
std::vector<std::pair<std::size_t, ModuleElement>> coaction(const FpModule& m,
                                                            const ModuleElement& x);

enum class Verdict { Pass, Fail, Indeterminate };
std::string_view to_string(Verdict v);

struct BousfieldReport {
    bool finitely_generated = true;
    Verdict diagonalisable = Verdict::Pass;
    /// Exponents e with base^e an eigenvalue of the rationalized action.
    std::vector<long> eigenvalue_exponents;
    std::string diagonalisable_witness;
    Verdict continuity = Verdict::Pass;
    std::optional<std::size_t> continuity_k;
    std::string continuity_witness;

    bool pass() const {
        return finitely_generated && diagonalisable == Verdict::Pass && continuity == Verdict::Pass;
    }
};

BousfieldReport bousfield_check(const FpModule& m, std::size_t k_max);

struct RationalizedModule {
    RingConfig config;
    Matrix action;
    std::size_t dimension() const { return action.rows(); }
};

FpModule direct_sum(const FpModule& a, const FpModule& b);
/// M modulo the A-submodule generated by the given elements.
FpModule quotient_by_orbit(const FpModule& m, const std::vector<ModuleElement>& generators);
FpModule torsion_submodule(const FpModule& m);
RationalizedModule rationalize(const FpModule& m);
/// Same module with action base^i T.
FpModule twist(const FpModule& m, long i);

/// Normalizes the module Z_(p)^d / (columns of relations) with induced action
/// T to diagonal form (torsion first). T must preserve the relation lattice.
FpModule present(const RingConfig& cfg, const Matrix& relations, const Matrix& action);

/// Matrices S (dim N x dim M) that define Z_(p)-homs M -> N.
bool is_linear_map(const FpModule& source, const FpModule& target, const Matrix& s);
/// Additionally S T_M = T_N S in N.
bool is_hom(const FpModule& source, const FpModule& target, const Matrix& s);

struct HomGroup {
    std::vector<Matrix> generators;
    /// Order exponent of each generator; nullopt for infinite order.
    std::vector<std::optional<long>> orders;
};

/// Generators of Hom_A(M, N) modulo the zero maps, with their orders.
HomGroup hom_A(const FpModule& source, const FpModule& target);
/// Same for plain Z_(p)-linear maps.
HomGroup hom_Z(const FpModule& source, const FpModule& target);
/// Every element of a finite hom group (throws if some order is infinite).
std::vector<Matrix> enumerate_homs(const FpModule& source, const FpModule& target,
                                   const HomGroup& group);
/// Torsion rows reduced mod p^{f_i}, for comparing hom matrices.
Matrix reduce_hom(const FpModule& target, const Matrix& s);

}  // namespace kop
