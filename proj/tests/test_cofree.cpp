#include "doctest.h"
#include "kop/cofree.hpp"

#include <random>

using namespace kop;

namespace {
RingConfig cfg3() { return make_config(3, Integer(2), Variant::NonSplit, 12); }
Matrix mat(std::size_t n, std::initializer_list<Rational> v) { return Matrix(n, n, std::vector<Rational>(v)); }
Vector vec(std::initializer_list<Rational> v) { return Vector(v); }

UElement random_u(const FpModule& m, std::size_t bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-4, 4);
    UElement f;
    f.bound = bound;
    for (std::size_t k = 0; k < bound; ++k) {
        Vector x = m.zero();
        for (auto& c : x) c = d(rng);
        f.entries[k] = x;
    }
    return normalize(m, f);
}
}  // namespace

TEST_CASE("u_action") {
    auto c = cfg3();
    OperationRing r(c);
    FpModule m = make_module(c, {}, 1, mat(1, {2}));
    UElement f = UElement::rho(m, 0, vec({1}));
    f.bound = 4;
    CHECK(u_equal(m, u_action(r, m, PhiVector::basis(0, 8), f), f));
    CHECK(u_is_zero(m, u_action(r, m, PhiVector::basis(1, 8), f)));
    UElement g = UElement::rho(m, 1, vec({1}));
    g.bound = 4;
    UElement h = u_action(r, m, PhiVector::basis(1, 8), g);
    CHECK(h.at(m, 0) == vec({1}));
    CHECK(h.at(m, 1) == vec({1}));  // c^1_{1,1} = q - 1 = 1
    // The generator action agrees with u_action by Psi^q = Phi_0 + Phi_1.
    std::mt19937_64 rng(6);
    UElement x = random_u(m, 5, rng);
    CHECK(u_equal(m, u_generator(m, x), u_action(r, m, r.adams_expansion(2, 8), x)));
}

TEST_CASE("alpha and beta") {
    auto c = cfg3();
    FpModule zp = make_module(c, {1}, 0, mat(1, {1}));
    CHECK(u_is_zero(zp, alpha(zp, vec({0}))));
    UElement a = alpha(zp, vec({1}));
    CHECK(a.entries.size() == 1);
    CHECK(a.at(zp, 0) == vec({1}));
    FpModule f = make_module(c, {}, 1, mat(1, {2}));
    UElement b = alpha(f, vec({1}));
    CHECK(b.at(f, 1) == vec({1}));
    CHECK(u_is_zero(f, beta(f, b)));
    UElement rho1 = UElement::rho(zp, 1, vec({1}));
    rho1.bound = 3;
    UElement br = beta(zp, rho1);
    CHECK(zp.equal(br.at(zp, 0), vec({-1})));
    CHECK(zp.equal(br.at(zp, 1), vec({-1})));  // (1 - q_2) = -1
}

TEST_CASE("gamma") {
    auto c = cfg3();
    OperationRing r(c);
    FpModule triv = make_module(c, {}, 1, mat(1, {1}));
    UElement f = UElement::rho(triv, 0, vec({1}));
    f.bound = 1;
    CHECK(gamma(r, triv, f, 1) == vec({1}));
    FpModule m = make_module(c, {2}, 1, mat(2, {4, 2, 0, Rational(1, 2)}));
    std::mt19937_64 rng(10);
    for (int t = 0; t < 5; ++t) {
        UElement g = random_u(m, 6, rng);
        const std::size_t n = gamma_min_n(m, g);
        Vector v = gamma(r, m, g, n);
        CHECK(v == gamma(r, m, g, n + 1));
        CHECK(v == gamma(r, m, g, n + 4));
        CHECK(gamma(r, m, beta(m, g)) == vec({0}));
    }
    // Torsion-only entries vanish.
    UElement tors = UElement::rho(m, 2, vec({1, 0}));
    tors.bound = 3;
    CHECK(gamma(r, m, tors) == vec({0}));
}

TEST_CASE("gamma_preimage and p_reduce") {
    auto c = cfg3();
    OperationRing r(c);
    FpModule triv = make_module(c, {}, 1, mat(1, {1}));
    GammaPreimage z = gamma_preimage(r, triv, vec({0}));
    CHECK(z.d == 1);
    CHECK(u_is_zero(triv, z.f));
    GammaPreimage one = gamma_preimage(r, triv, vec({1}));
    CHECK(one.d == 1);
    CHECK(gamma(r, triv, one.f) == vec({1}));
    FpModule m = make_module(c, {1}, 2, mat(3, {1, 0, 1, 0, 2, 0, 0, 0, Rational(1, 4)}));
    std::mt19937_64 rng(12);
    for (int t = 0; t < 4; ++t) {
        Vector x = vec({Rational(static_cast<long>(rng() % 7) - 3), Rational(static_cast<long>(rng() % 7) - 3)});
        GammaPreimage g = gamma_preimage(r, m, x);
        CHECK(gamma(r, m, g.f) == vec({g.d * x[0], g.d * x[1]}));
        Vector gr = gamma(r, m, p_reduce(r, m, g.f));
        CHECK(gamma(r, m, g.f) == vec({3 * gr[0], 3 * gr[1]}));
    }
    CHECK(u_is_zero(m, p_reduce(r, m, UElement{})));
    // The desk instance: T = [1], f = rho_0, support at k = 4.
    UElement rho0 = UElement::rho(triv, 0, vec({1}));
    rho0.bound = 1;
    UElement pr = p_reduce(r, triv, rho0);
    REQUIRE(pr.entries.size() == 1);
    CHECK(pr.entries.begin()->first == 4);
}

TEST_CASE("beta_preimage") {
    auto c = cfg3();
    OperationRing r(c);
    std::mt19937_64 rng(13);
    for (const FpModule& m : {make_module(c, {1}, 0, mat(1, {1})), make_module(c, {2}, 1, mat(2, {4, 2, 0, 2})),
                              make_module(c, {}, 1, mat(1, {Rational(1, 2)}))}) {
        for (int t = 0; t < 4; ++t) {
            UElement f = beta(m, random_u(m, 5, rng));
            BetaPreimage b = beta_preimage(r, m, f);
            CHECK(u_equal(m, beta(m, b.g), u_scale(m, -1, f)));
        }
        CHECK(u_is_zero(m, beta_preimage(r, m, UElement{}).g));
    }
    // On Z/p every f lies in Ker gamma.
    FpModule zp = make_module(c, {1}, 0, mat(1, {1}));
    UElement f = random_u(zp, 4, rng);
    CHECK(u_equal(zp, beta(zp, beta_preimage(r, zp, f).g), u_scale(zp, -1, f)));
    // gamma != 0 is rejected.
    FpModule free = make_module(c, {}, 1, mat(1, {1}));
    UElement g = UElement::rho(free, 0, vec({1}));
    g.bound = 1;
    CHECK_THROWS(beta_preimage(r, free, g));
}

TEST_CASE("adjunction") {
    auto c = cfg3();
    FpModule n = make_module(c, {2, 1}, 0, mat(2, {1, 3, 1, 2}));
    FpModule m = make_module(c, {1}, 1, mat(2, {2, 1, 0, 2}));
    // Unit of the adjunction transposes to the identity.
    UHom unit;
    for (std::size_t j = 0; j < m.dimension(); ++j) unit.push_back(alpha(m, m.basis(j)));
    CHECK(reduce_hom(m, transpose_to(m, m, unit)) == Matrix::identity(2));
    for (const auto& h : enumerate_homs(n, m, hom_Z(n, m))) {
        UHom g = transpose_from(n, m, h);
        CHECK(is_u_hom(n, m, g));
        CHECK(reduce_hom(m, transpose_to(n, m, g)) == reduce_hom(m, h));
    }
}

TEST_CASE("truncated cofree and lifting") {
    auto c = cfg3();
    FpModule m = make_module(c, {1}, 0, mat(1, {2}));
    FpModule u = truncated_cofree(m, 4);
    CHECK(u.dimension() == 4);
    std::mt19937_64 rng(14);
    UElement f = random_u(m, 4, rng);
    CHECK(u_equal(m, from_truncated(m, 4, u.act(to_truncated(m, 4, f))), u_generator(m, f)));

    FpModule l1 = make_module(c, {2}, 0, mat(1, {1}));
    FpModule l2 = make_module(c, {1}, 0, mat(1, {1}));
    Matrix e = Matrix::identity(1);
    CHECK(is_surjective(l1, l2, e));
    UElement g = UElement::rho(l2, 0, vec({1}));
    g.bound = 1;
    UElement h = lift_through_epi(l1, l2, e, g);
    CHECK(l2.equal(h.at(l1, 0), vec({1})));
    CHECK(u_is_zero(l1, lift_through_epi(l1, l2, e, UElement{})));
    CHECK(u_equal(l2, lift_through_epi(l2, l2, e, g), g));
    CHECK_FALSE(is_surjective(l1, l2, mat(1, {3})));
    CHECK_THROWS(lift_through_epi(l1, l2, mat(1, {3}), g));
}

TEST_CASE("exact sequence desk cases") {
    auto c = cfg3();
    OperationRing r(c);
    CHECK(verify_exact_sequence(r, make_module(c, {1}, 0, mat(1, {1})), 9).pass());
    CHECK(verify_exact_sequence(r, make_module(c, {}, 1, mat(1, {2})), 10).pass());
    CHECK(verify_exact_sequence(r, make_module(c, {}, 0, Matrix(0, 0)), 8).pass());
}
