#include "doctest.h"
#include "kop/opring.hpp"

#include <random>

using namespace kop;

namespace {
OperationRing ring3() { return OperationRing(make_config(3, Integer(2), Variant::NonSplit, 12)); }
PhiVector phi(std::initializer_list<long> v) {
    std::vector<Rational> c;
    for (long x : v) c.emplace_back(x);
    return PhiVector(c);
}
}  // namespace

TEST_CASE("node sequence") {
    NodeSequence q(Integer(2));
    CHECK(q.node(1) == 1);
    CHECK(q.node(2) == 2);
    CHECK(q.node(3) == Rational(1, 2));
    CHECK(q.node(4) == 4);
    CHECK(NodeSequence::exponent(5) == -2);
    CHECK(NodeSequence::index_of_exponent(-2) == 5);
    for (std::size_t i = 1; i <= 20; ++i) CHECK(reduce_mod(q.node(i), 3, 1) == reduce_mod(q.node(i + 4), 3, 1));
}

TEST_CASE("theta polynomials") {
    auto r = ring3();
    CHECK(r.theta(0) == OperationPoly::constant(1));
    OperationPoly t4 = OperationPoly::linear(1) * OperationPoly::linear(2) * OperationPoly::linear(Rational(1, 2)) *
                       OperationPoly::linear(4);
    CHECK(r.theta(4) == t4);
    CHECK(r.theta_punctured(1, 1) == OperationPoly::constant(1));
    CHECK(r.theta_punctured(5, 3) * OperationPoly::linear(r.nodes().node(3)) == r.theta(5));
    CHECK_THROWS(r.theta_punctured(3, 4));
}

TEST_CASE("poly <-> phi") {
    auto r = ring3();
    CHECK(r.poly_to_phi(OperationPoly::constant(1)) == phi({1}));
    CHECK(r.poly_to_phi(OperationPoly::x()) == phi({1, 1}));
    OperationPoly sq = OperationPoly::linear(1) * OperationPoly::linear(1);
    CHECK(r.poly_to_phi(sq) == phi({0, 1, 1}));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> c(12);
        for (auto& x : c) x = d(rng);
        PhiVector a(c);
        CHECK(r.poly_to_phi(r.phi_to_poly(a)) == a);
    }
}

TEST_CASE("structure constants") {
    auto r = ring3();
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t n = 0; n < 6; ++n) {
            CHECK(r.structure_constant(j, n, j + n) == 1);
            for (std::size_t k = 0; k < std::max(j, n); ++k) CHECK(r.structure_constant(j, n, k) == 0);
        }
    CHECK(r.structure_constant(1, 1, 1) == 1);
}

TEST_CASE("multiply") {
    auto r = ring3();
    PhiVector a = phi({3, -1, 2, 5});
    CHECK(r.multiply(a, PhiVector::basis(0, 4)) == a);
    CHECK(r.multiply(PhiVector::basis(1, 4), PhiVector::basis(1, 4)) == phi({0, 1, 1, 0}));
    CHECK(r.multiply(PhiVector::basis(2, 3), PhiVector::basis(3, 3)) == phi({0, 0, 0}));
    CHECK_THROWS(r.multiply(PhiVector::basis(0, 3), PhiVector::basis(0, 4)));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> d(-5, 5);
    auto rnd = [&] {
        std::vector<Rational> c(8);
        for (auto& x : c) x = d(rng);
        return PhiVector(c);
    };
    for (int t = 0; t < 10; ++t) {
        PhiVector x = rnd(), y = rnd(), z = rnd();
        CHECK(r.multiply(x, y) == r.multiply(y, x));
        CHECK(r.multiply(r.multiply(x, y), z) == r.multiply(x, r.multiply(y, z)));
    }
    // Psi^q Phi_k = Phi_{k+1} + q_{k+1} Phi_k.
    for (std::size_t k = 0; k + 1 < 8; ++k) {
        PhiVector expect = PhiVector::basis(k + 1, 8) + r.nodes().node(k + 1) * PhiVector::basis(k, 8);
        CHECK(r.multiply_by_generator(PhiVector::basis(k, 8)) == expect);
    }
}

TEST_CASE("adams expansion") {
    auto r = ring3();
    CHECK(r.adams_expansion(1, 6) == phi({1, 0, 0, 0, 0, 0}));
    CHECK(r.adams_expansion(2, 6) == phi({1, 1, 0, 0, 0, 0}));
    PhiVector g = r.adams_expansion(5, 6);
    CHECK(g[0] == 1);
    CHECK(g[1] == 4);
    CHECK(r.adams_expansion(Rational(7, 2), 6)[1] == Rational(5, 2));
    CHECK_THROWS_AS(r.adams_expansion(3, 6), DomainError);
}

TEST_CASE("divide_phi") {
    auto r = ring3();
    CHECK(r.divide_phi(2, 1) == OperationPoly::linear(2));
    CHECK(r.divide_phi(7, 6) == OperationPoly::linear(r.nodes().node(7)));
    PhiVector d = r.poly_to_phi(r.divide_phi(5, 1)) - PhiVector::basis(4, 5);
    for (const auto& c : d.coeffs()) CHECK(vp(c, 3) >= Valuation(1));
    CHECK_THROWS(r.divide_phi(2, 2));
}

TEST_CASE("units") {
    auto r = ring3();
    CHECK(r.is_unit(OperationPoly::constant(1)));
    CHECK_FALSE(r.is_unit(OperationPoly::linear(1)));
    CHECK(r.is_unit(OperationPoly::linear(3)));
    // One period suffices: compare against 6(p-1) nodes.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 30; ++t) {
        OperationPoly f({Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
        CHECK(r.is_unit(f) == r.units_at_nodes(f, 12));
    }
}

TEST_CASE("augmentation and filtration order") {
    CHECK(OperationRing::augmentation(PhiVector::basis(0, 8)) == 1);
    CHECK(OperationRing::filtration_order(PhiVector::basis(0, 8)) == 0);
    CHECK(OperationRing::augmentation(PhiVector::basis(3, 8)) == 0);
    CHECK(OperationRing::filtration_order(PhiVector::basis(3, 8)) == 3);
    CHECK(OperationRing::filtration_order(PhiVector::zero(8)) == 8);
}

TEST_CASE("solve_abcongs") {
    auto r = ring3();
    AbcongSolution z = r.solve_abcongs(std::vector<Rational>(9, 0), 4);
    CHECK(z.consistent);
    for (std::size_t j = 0; j < z.b.size(); ++j)
        if (z.determined[j]) CHECK(z.b[j] == 0);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(0, 2);
    std::vector<Rational> a(9);
    for (auto& x : a) x = d(rng);
    AbcongSolution s = r.solve_abcongs(a, 4);
    CHECK(s.consistent);
    CHECK(s.pattern_holds);
    for (std::size_t k = 4; k <= 12; ++k) {
        Rational sum = 0;
        for (std::size_t j = k - 4; j <= k; ++j) sum += r.structure_constant(j, 4, k) * s.b[j];
        CHECK(reduce_mod(sum - a[k - 4], 3, 1) == 0);
    }
}

TEST_CASE("theta power index") {
    CHECK(ring3().theta_power_index(1) == 6);
    OperationRing split(make_config(3, Integer(2), Variant::Split, 12));
    CHECK(split.theta_power_index(2) == 9);
}
