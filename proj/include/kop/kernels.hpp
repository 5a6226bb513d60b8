#pragma once

// Data-parallel kernels over the truncated ring. Each parallel kernel has a
// serial reference with identical output; the tests compare the two and
// bench/ times them.

#include "kop/arith.hpp"

#include <vector>

namespace kop {

class NodeSequence;

/// Dense c^k_{j,n} for j, n, k < N. Entries with k < max(j, n) are zero.
class StructureTable {
public:
    StructureTable(std::size_t truncation, std::vector<Rational> data)
        : n_(truncation), data_(std::move(data)) {}

    std::size_t truncation() const { return n_; }
    const Rational& at(std::size_t j, std::size_t n, std::size_t k) const {
        return data_[(j * n_ + n) * n_ + k];
    }
    friend bool operator==(const StructureTable& a, const StructureTable& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    std::size_t n_;
    std::vector<Rational> data_;
};

namespace kernels {

StructureTable structure_table_serial(const NodeSequence& nodes, std::size_t truncation);
StructureTable structure_table_parallel(const NodeSequence& nodes, std::size_t truncation);

/// out_k = sum_{j,n <= k} a_j b_n c^k_{j,n}, k < N.
std::vector<Rational> phi_product_serial(const StructureTable& table, const std::vector<Rational>& a,
                                         const std::vector<Rational>& b);
std::vector<Rational> phi_product_parallel(const StructureTable& table,
                                           const std::vector<Rational>& a,
                                           const std::vector<Rational>& b);

}  // namespace kernels
}  // namespace kop
