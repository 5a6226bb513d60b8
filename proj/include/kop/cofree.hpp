#pragma once

// The cofree functor U = Hom^cts(A, -): finitely supported sequences
// f(Phi_k) = m_k, the maps alpha, beta, gamma of the four-term exact
// sequence, the constructive preimages, and the adjunction.

#include "kop/module.hpp"

#include <map>

namespace kop {

/// f with f(Phi_k) = entries[k]; entries at k >= bound are absent.
/// The module is passed separately to every operation.
struct UElement {
    std::size_t bound = 0;
    std::map<std::size_t, ModuleElement> entries;

    /// m_k, or the zero element when absent.
    ModuleElement at(const FpModule& m, std::size_t k) const;
    /// Unit coefficient element rho_k x.
    static UElement rho(const FpModule& m, std::size_t k, const ModuleElement& x);
};

/// Drops zero entries and reduces the rest.
UElement normalize(const FpModule& m, const UElement& f);
bool u_equal(const FpModule& m, const UElement& f, const UElement& g);
bool u_is_zero(const FpModule& m, const UElement& f);
UElement u_add(const FpModule& m, const UElement& f, const UElement& g);
UElement u_scale(const FpModule& m, const Rational& c, const UElement& f);

/// (theta f)(Phi_k) = f(Phi_k theta).
UElement u_action(const OperationRing& ring, const FpModule& m, const PhiVector& theta,
                  const UElement& f);
/// (Psi^q f)(Phi_k) = m_{k+1} + q_{k+1} m_k.
UElement u_generator(const FpModule& m, const UElement& f);

/// Entries Theta_k(T) x; bound defaults to the annihilation exponent.
UElement alpha(const FpModule& m, const ModuleElement& x, std::size_t bound = 0);
/// (beta f)(Phi_k) = T m_k - m_{k+1} - q_{k+1} m_k.
UElement beta(const FpModule& m, const UElement& f);

/// Smallest admissible n for gamma: max(bound, annihilation exponent, 1).
std::size_t gamma_min_n(const FpModule& m, const UElement& f);
/// gamma f in M (x) Q (free coordinates); n = 0 selects gamma_min_n.
Vector gamma(const OperationRing& ring, const FpModule& m, const UElement& f, std::size_t n = 0);

struct GammaPreimage {
    UElement f;
    Integer d;
};
/// f with gamma f = d x, d a power of p.
GammaPreimage gamma_preimage(const OperationRing& ring, const FpModule& m, const Vector& x);

/// g with gamma(f - p g) = 0.
UElement p_reduce(const OperationRing& ring, const FpModule& m, const UElement& f);

struct BetaPreimage {
    UElement g;
    std::size_t r = 0;
    ModuleElement witness;
};
/// g with beta(g) = -f, for f in Ker gamma.
BetaPreimage beta_preimage(const OperationRing& ring, const FpModule& m, const UElement& f);

/// A-hom N -> UM given by the images of the basis of N.
using UHom = std::vector<UElement>;

/// g |-> (x |-> g(x)(Phi_0)), as a matrix dim M x dim N.
Matrix transpose_to(const FpModule& n, const FpModule& m, const UHom& g);
/// h |-> (x |-> (k |-> h(Theta_k(T_N) x))).
UHom transpose_from(const FpModule& n, const FpModule& m, const Matrix& h);
/// g(T x) = Psi^q g(x) and p^{e_j} g(e_j) = 0.
bool is_u_hom(const FpModule& n, const FpModule& m, const UHom& g);

/// U_S M: sequences supported below S, as a module with the Psi^q action.
FpModule truncated_cofree(const FpModule& m, std::size_t support);
UElement from_truncated(const FpModule& m, std::size_t support, const ModuleElement& v);
ModuleElement to_truncated(const FpModule& m, std::size_t support, const UElement& f);

/// e: L1 -> L2 surjective (checked). Returns h over L1 with e(h) = g.
UElement lift_through_epi(const FpModule& l1, const FpModule& l2, const Matrix& e, const UElement& g);
bool is_surjective(const FpModule& l1, const FpModule& l2, const Matrix& e);

struct ExactnessClause {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct ExactnessReport {
    std::size_t support = 0;
    std::size_t annihilation = 0;
    std::vector<ExactnessClause> clauses;
    bool pass() const;
};

/// Checks the four-term exact sequence on U_S M.
ExactnessReport verify_exact_sequence(const OperationRing& ring, const FpModule& m, std::size_t support);

}  // namespace kop
