#include <doctest.h>

#include <memory>

#include "fell/factor_system.hpp"
#include "fell/fell_bundle.hpp"
#include "fell/rng.hpp"

using namespace fell;

namespace {

AlgebraPtr alg(std::vector<int> sizes) { return std::make_shared<BlockAlgebra>(std::move(sizes)); }

PicardHom z2_swap_hom() {
    return PicardHom(make_cyclic(2), alg({1, 1}),
                     {BlockPermutation::id(2), BlockPermutation({1, 0})});
}

Cochain z4_noncocycle() {
    // lambda(1,1) = 1/4 only; d(lambda)(1,1,2) = -1/4 != 0
    Cochain c(make_cyclic(4), 1, 2);
    c.set({1, 1}, {Angle::of(1, 4)});
    return c;
}

} // namespace

TEST_CASE("PicardHom validates the homomorphism property") {
    CHECK_NOTHROW(z2_swap_hom());
    // swap at the identity is rejected
    CHECK_THROWS_AS(PicardHom(make_cyclic(2), alg({1, 1}),
                              {BlockPermutation({1, 0}), BlockPermutation({1, 0})}),
                    InputError);
    // sigma_1 of order 3 over Z_2 cannot be a homomorphism
    CHECK_THROWS_AS(PicardHom(make_cyclic(2), alg({1, 1, 1}),
                              {BlockPermutation::id(3), BlockPermutation({1, 2, 0})}),
                    InputError);
    CHECK(z2_swap_hom().size_preserving());
    const PicardHom uneven(make_cyclic(2), alg({1, 2}),
                           {BlockPermutation::id(2), BlockPermutation({1, 0})});
    CHECK_FALSE(uneven.size_preserving());
}

TEST_CASE("canonical systems are factor systems") {
    for (const auto& psi :
         {PicardHom::trivial(make_cyclic(4), alg({2, 1})), z2_swap_hom(),
          PicardHom::trivial(make_cyclic(1), alg({2}))}) {
        const auto fs = canonical_system(psi);
        CHECK(fs.twist().is_zero());
        CHECK(is_factor_system(PreFactorSystem(fs.picard(), fs.twist())));
    }
}

TEST_CASE("is_factor_system matches the cocycle condition") {
    const auto z2 = make_cyclic(2);
    const auto klein = direct_product(*z2, *z2);
    const auto psi = PicardHom::trivial(klein, alg({1}));
    Cochain lambda(klein, 1, 2);
    for (int a = 1; a < 4; ++a)
        for (int b = 1; b < 4; ++b) lambda.set({a, b}, {Angle::of((a % 2) * (b / 2), 2)});
    CHECK(is_factor_system(PreFactorSystem(psi, lambda)));

    const auto z3 = make_cyclic(3);
    Cochain bad(z3, 1, 2);
    bad.set({1, 1}, {Angle::of(1, 3)});
    CHECK_FALSE(is_factor_system(PreFactorSystem(PicardHom::trivial(z3, alg({1})), bad)));
}

TEST_CASE("obstruction is an exact 3-cocycle") {
    const auto z4 = make_cyclic(4);
    const auto psi = PicardHom::trivial(z4, alg({1}));

    // associative twists have zero obstruction
    const auto fs = canonical_system(psi);
    CHECK(obstruction(PreFactorSystem(fs.picard(), fs.twist())).is_zero());

    // over Z_2 every normalized 2-cochain is a cocycle
    const auto z2psi = PicardHom::trivial(make_cyclic(2), alg({1}));
    Cochain any(make_cyclic(2), 1, 2);
    any.set({1, 1}, {Angle::of(3, 7)});
    CHECK(obstruction(PreFactorSystem(z2psi, any)).is_zero());

    const PreFactorSystem pre(psi, z4_noncocycle());
    const auto obs = obstruction(pre);
    CHECK_FALSE(obs.is_zero());
    CHECK(is_cocycle(obs, psi.action()));
}

TEST_CASE("the obstruction measures the associativity defect on elements") {
    // s(tu) = e(d lambda(g,h,k)) (st)u under the twisted multiplication
    const auto z4 = make_cyclic(4);
    const auto algebra = alg({1});
    const auto psi = PicardHom::trivial(z4, algebra);
    const auto lambda = z4_noncocycle();
    const auto obs = obstruction(PreFactorSystem(psi, lambda));

    const auto bundle = FellBundle::from_pre_system(PreFactorSystem(psi, lambda));
    Rng rng(9);
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h)
            for (int k = 0; k < 4; ++k) {
                const auto s = bundle.random_in_fiber(g, rng);
                const auto t = bundle.random_in_fiber(h, rng);
                const auto u = bundle.random_in_fiber(k, rng);
                const auto lhs = bundle.mul(s, bundle.mul(t, u));
                const auto rhs = bundle.mul(bundle.mul(s, t), u);
                const auto phase = CentralUnitary::from_angles(obs.value({g, h, k}));
                CHECK((lhs.value - central_aut(phase, rhs.value)).norm() < 1e-12);
            }
}

TEST_CASE("characteristic class vanishes in the block-matrix model") {
    const auto z4 = make_cyclic(4);
    const auto psi = PicardHom::trivial(z4, alg({1}));

    const auto fs = canonical_system(psi);
    const auto cc0 = characteristic_class(PreFactorSystem(fs.picard(), fs.twist()));
    CHECK(cc0.vanishing);
    CHECK(cc0.witness->is_zero());

    const PreFactorSystem pre(psi, z4_noncocycle());
    const auto cc = characteristic_class(pre);
    CHECK(cc.vanishing);
    REQUIRE(cc.witness.has_value());
    // d(witness) = -obstruction, exactly
    CHECK(differential(*cc.witness, psi.action()) == -cc.obstruction_cocycle);
}

TEST_CASE("repair fixes non-associative twists") {
    const auto z4 = make_cyclic(4);
    const auto psi = PicardHom::trivial(z4, alg({1}));
    const PreFactorSystem pre(psi, z4_noncocycle());
    CHECK_FALSE(is_factor_system(pre));

    const auto fixed = repair(pre);
    CHECK(is_factor_system(PreFactorSystem(fixed.picard(), fixed.twist())));
    CHECK(is_cocycle(fixed.twist(), psi.action()));

    // repairing a factor system leaves it unchanged
    const auto fs = canonical_system(psi);
    const auto same = repair(PreFactorSystem(fs.picard(), fs.twist()));
    CHECK(same.twist() == fs.twist());
}

TEST_CASE("repair of random non-cocycles over the Klein group") {
    const auto z2 = make_cyclic(2);
    const auto klein = direct_product(*z2, *z2);
    const auto psi = PicardHom::trivial(klein, alg({1}));
    Rng rng(77);
    int repaired = 0;
    for (int t = 0; t < 10; ++t) {
        Cochain lambda(klein, 1, 2);
        for (std::size_t i = 0; i < lambda.tuples(); ++i)
            lambda.entry(i) = {Angle::of(rng.next_int(0, 7), 8)};
        const PreFactorSystem pre(psi, lambda);
        if (is_cocycle(lambda, psi.action())) continue;
        const auto fixed = repair(pre);
        CHECK(is_cocycle(fixed.twist(), psi.action()));
        ++repaired;
    }
    CHECK(repaired > 0);
}

TEST_CASE("factor system construction rejects non-cocycle twists") {
    const auto z4 = make_cyclic(4);
    const auto psi = PicardHom::trivial(z4, alg({1}));
    CHECK_THROWS_AS(FactorSystem(psi, z4_noncocycle()), InputError);
}
