#include "kop/kernels.hpp"

#include "kop/opring.hpp"

#include <omp.h>

namespace kop::kernels {

namespace {

// Fills c^k_{j,n} for one j and all n, k < N from c^k_{j,0} = delta_{jk} and
// c^k_{j,n} = (q_{k+1} - q_n) c^k_{j,n-1} + c^{k-1}_{j,n-1}.
void fill_slice(const std::vector<Rational>& q, std::size_t truncation, std::size_t j,
                std::vector<Rational>& data) {
    const std::size_t N = truncation;
    auto at = [&](std::size_t n, std::size_t k) -> Rational& { return data[(j * N + n) * N + k]; };
    at(0, j) = 1;
    for (std::size_t n = 1; n < N; ++n) {
        for (std::size_t k = std::max(j, n); k < N && k <= j + n; ++k) {
            Rational v = (q[k + 1] - q[n]) * at(n - 1, k);
            if (k > 0) v += at(n - 1, k - 1);
            at(n, k) = v;
        }
    }
}

Rational product_entry(const StructureTable& table, const std::vector<Rational>& a,
                       const std::vector<Rational>& b, std::size_t k) {
    Rational acc = 0;
    for (std::size_t j = 0; j <= k; ++j) {
        if (a[j] == 0) continue;
        for (std::size_t n = (k > j ? k - j : 0); n <= k; ++n) {
            if (b[n] == 0) continue;
            const Rational& c = table.at(j, n, k);
            if (c != 0) acc += a[j] * b[n] * c;
        }
    }
    return acc;
}

}  // namespace

StructureTable structure_table_serial(const NodeSequence& nodes, std::size_t truncation) {
    const std::size_t N = truncation;
    std::vector<Rational> data(N * N * N);
    auto q = nodes.first(N + 1);
    for (std::size_t j = 0; j < N; ++j) fill_slice(q, N, j, data);
    return StructureTable(N, std::move(data));
}

StructureTable structure_table_parallel(const NodeSequence& nodes, std::size_t truncation) {
    const std::size_t N = truncation;
    std::vector<Rational> data(N * N * N);
    const auto q = nodes.first(N + 1);
    const long count = static_cast<long>(N);
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < count; ++j) fill_slice(q, N, static_cast<std::size_t>(j), data);
    return StructureTable(N, std::move(data));
}

std::vector<Rational> phi_product_serial(const StructureTable& table, const std::vector<Rational>& a,
                                         const std::vector<Rational>& b) {
    const std::size_t N = table.truncation();
    std::vector<Rational> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = product_entry(table, a, b, k);
    return out;
}

std::vector<Rational> phi_product_parallel(const StructureTable& table,
                                           const std::vector<Rational>& a,
                                           const std::vector<Rational>& b) {
    const long N = static_cast<long>(table.truncation());
    std::vector<Rational> out(table.truncation());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < N; ++k) {
        out[static_cast<std::size_t>(k)] = product_entry(table, a, b, static_cast<std::size_t>(k));
    }
    return out;
}

}  // namespace kop::kernels
