#pragma once

// Seeded generator of valid modules for the property suites: a mix of
// eigenvalue-structured (discrete) cases and adversarial ones.

#include "kop/module.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kop {

struct CorpusEntry {
    std::string kind;
    FpModule module;
};

struct CorpusOptions {
    std::size_t size = 50;
    unsigned max_exponent = 3;
    std::size_t max_rank = 4;
    /// Free eigenvalues are base^e with |e| <= this.
    long max_eigen_exponent = 3;
};

std::vector<CorpusEntry> generate_corpus(const RingConfig& cfg, const CorpusOptions& opts,
                                         std::uint64_t seed);

}  // namespace kop
