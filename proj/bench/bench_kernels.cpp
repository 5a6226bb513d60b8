// Serial reference vs OpenMP kernels: structure table and Phi-product.

#include "kop/kernels.hpp"
#include "kop/opring.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
    return d.count() / reps;
}

}  // namespace

int main() {
    using namespace kop;
    OperationRing ring(make_config(3, Variant::NonSplit, 12));
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-14s %5s %12s %12s %8s %s\n", "kernel", "N", "serial ms", "parallel ms", "speedup", "equal");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (std::size_t n : {16, 24, 32, 40}) {
        StructureTable s = kernels::structure_table_serial(ring.nodes(), n);
        StructureTable p = kernels::structure_table_parallel(ring.nodes(), n);
        double ts = time_ms([&] { kernels::structure_table_serial(ring.nodes(), n); }, 3);
        double tp = time_ms([&] { kernels::structure_table_parallel(ring.nodes(), n); }, 3);
        std::printf("%-14s %5zu %12.2f %12.2f %8.2f %s\n", "table", n, ts, tp, ts / tp, s == p ? "yes" : "NO");

        std::vector<Rational> a(n), b(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = coeff(rng);
            b[k] = coeff(rng);
        }
        auto rs = kernels::phi_product_serial(s, a, b);
        auto rp = kernels::phi_product_parallel(s, a, b);
        ts = time_ms([&] { kernels::phi_product_serial(s, a, b); }, 5);
        tp = time_ms([&] { kernels::phi_product_parallel(s, a, b); }, 5);
        std::printf("%-14s %5zu %12.2f %12.2f %8.2f %s\n", "phi_product", n, ts, tp, ts / tp, rs == rp ? "yes" : "NO");
    }
    return 0;
}
