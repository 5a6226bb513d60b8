#pragma once

// Sweeps that check the ring congruences instance by instance. Every
// sweep returns a report; failures are findings, not exceptions.

#include "kop/opring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kop {

struct IdentityFailure {
    std::string instance;
    std::string witness;
};

struct IdentityReport {
    std::string kind;
    std::string summary;
    std::size_t checked = 0;
    std::vector<IdentityFailure> failures;

    bool pass() const { return failures.empty(); }
};

/// c^k_{j,n} = 0 mod p for (2p-2)s <= j <= k < (2p-2)s + n, 1 <= s <= s_max, 1 <= n <= n_max.
IdentityReport verify_ccong(const OperationRing& ring, std::size_t s_max, std::size_t n_max);

/// Phi-coefficients of Theta_n/Theta_m - Phi_{n-m} have vp >= 1 + vp(n-m),
/// for all m < n <= n_max with (2p-2) | (n-m).
IdentityReport verify_phi_quotient(const OperationRing& ring, std::size_t n_max);

/// Theta_idx = X^idx - 1 mod p and p | [idx choose j] for 0 < j < idx, where
/// idx = theta_power_index(k) unless an explicit index is given.
IdentityReport verify_theta_power(const OperationRing& ring, unsigned k, std::size_t index = 0);

/// c^k_{j,n} = c^k_{n,j} for j, n <= n_max.
IdentityReport verify_symmetry(const OperationRing& ring, std::size_t n_max);

/// Recursion against polynomial expansion of Theta_j Theta_n, for j, n <= n_max.
IdentityReport verify_structure_oracle(const OperationRing& ring, std::size_t n_max);

/// Random a_k over the window K = n + 2(2p-2) for each 1 <= n <= n_max:
/// consistency, re-substitution and uniqueness on the triangular range.
IdentityReport verify_abcongs(const OperationRing& ring, std::size_t n_max, std::size_t trials,
                              std::uint64_t seed);

/// Rank of a matrix over F_p (entries already reduced to [0, p)).
std::size_t rank_mod_p(std::vector<std::vector<long>> m, long p);

}  // namespace kop
