#include <doctest.h>

#include <memory>

#include "fell/fell_bundle.hpp"
#include "fell/rng.hpp"

using namespace fell;

namespace {

AlgebraPtr alg(std::vector<int> sizes) { return std::make_shared<BlockAlgebra>(std::move(sizes)); }

// Z_2-grading of M_2(C): B = C + C, psi(1) = swap
FellBundle z2_swap_bundle() {
    const PicardHom psi(make_cyclic(2), alg({1, 1}),
                        {BlockPermutation::id(2), BlockPermutation({1, 0})});
    return FellBundle::from_factor_system(canonical_system(psi));
}

BundleElement scalar_elt(const FellBundle& b, int g, cplx x0, cplx x1) {
    auto v = zero_element(b.algebra(), b.sigma(g));
    v.blocks[0].at(0, 0) = x0;
    v.blocks[1].at(0, 0) = x1;
    return b.element(g, std::move(v));
}

} // namespace

TEST_CASE("trivial bundle multiplies like the algebra") {
    const auto g = direct_product(*make_cyclic(2), *make_cyclic(2));
    const auto bundle = trivial_bundle(g, alg({2, 1}));
    Rng rng(15);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const auto x = bundle.random_in_fiber(a, rng);
            const auto y = bundle.random_in_fiber(b, rng);
            const auto prod = bundle.mul(x, y);
            CHECK(prod.base == g->mul(a, b));
            // values multiply blockwise, independent of the base points
            const AlgebraElement ax{bundle.algebra(), x.value.blocks};
            const AlgebraElement ay{bundle.algebra(), y.value.blocks};
            CHECK(distance(AlgebraElement{bundle.algebra(), prod.value.blocks}, mul(ax, ay)) < 1e-12);
        }

    // the unit of B is a unit for the bundle
    const auto one = bundle.embed_unit(identity(bundle.algebra()));
    const auto s = bundle.random_in_fiber(3, rng);
    CHECK((bundle.mul(one, s).value - s.value).norm() == doctest::Approx(0.0));
    CHECK((bundle.mul(s, one).value - s.value).norm() == doctest::Approx(0.0));
}

TEST_CASE("swap-graded bundle reproduces the antidiagonal model of M_2") {
    const auto bundle = z2_swap_bundle();
    // two antidiagonal elements multiply into the diagonal: (x0 y1, x1 y0)
    const auto x = scalar_elt(bundle, 1, 2.0, 5.0);
    const auto y = scalar_elt(bundle, 1, 7.0, 11.0);
    const auto xy = bundle.mul(x, y);
    CHECK(xy.base == 0);
    CHECK(xy.value.blocks[0].at(0, 0) == cplx(22.0, 0.0));
    CHECK(xy.value.blocks[1].at(0, 0) == cplx(35.0, 0.0));

    // fibers have dimension 2 in both degrees
    CHECK(bimodule_dim(*bundle.algebra(), bundle.sigma(0)) == 2);
    CHECK(bimodule_dim(*bundle.algebra(), bundle.sigma(1)) == 2);
}

TEST_CASE("involution") {
    SUBCASE("coincides with the adjoint on the unit fiber") {
        const auto bundle = trivial_bundle(make_cyclic(3), alg({2}));
        Rng rng(21);
        const auto s = bundle.random_in_fiber(0, rng);
        const auto st = bundle.star(s);
        CHECK((st.value.blocks[0] - s.value.blocks[0].adjoint()).max_abs() < 1e-15);
    }

    SUBCASE("swap model with zero twist conjugates across the swap") {
        const auto bundle = z2_swap_bundle();
        const auto s = scalar_elt(bundle, 1, cplx(1.0, 2.0), cplx(3.0, -4.0));
        const auto st = bundle.star(s);
        CHECK(st.base == 1);
        CHECK(st.value.blocks[0].at(0, 0) == cplx(3.0, 4.0));
        CHECK(st.value.blocks[1].at(0, 0) == cplx(1.0, -2.0));
    }

    SUBCASE("central twist enters the involution") {
        // Z_2, B = C, omega(1,1) = 1/2: star of (x) at 1 is (-conj(x))
        const auto z2 = make_cyclic(2);
        const auto psi = PicardHom::trivial(z2, alg({1}));
        Cochain twist(z2, 1, 2);
        twist.set({1, 1}, {Angle::of(1, 2)});
        const auto bundle = FellBundle::from_factor_system(FactorSystem(psi, twist));
        auto v = zero_element(bundle.algebra(), bundle.sigma(1));
        v.blocks[0].at(0, 0) = cplx(2.0, 1.0);
        const auto st = bundle.star(bundle.element(1, std::move(v)));
        CHECK(st.value.blocks[0].at(0, 0).real() == doctest::Approx(-2.0));
        CHECK(st.value.blocks[0].at(0, 0).imag() == doctest::Approx(1.0));
    }

    SUBCASE("defining property: m(s*, s) equals the right inner product") {
        const auto z4 = make_cyclic(4);
        const auto psi = PicardHom(z4, alg({1, 1}),
                                   {BlockPermutation::id(2), BlockPermutation({1, 0}),
                                    BlockPermutation::id(2), BlockPermutation({1, 0})});
        // a twist with nonzero values in every slot: the coboundary of a
        // generic 1-cochain (automatically a cocycle for the swap action)
        Cochain eta(z4, 2, 1);
        eta.set({1}, {Angle::of(1, 3), Angle::of(1, 7)});
        eta.set({2}, {Angle::of(1, 5), Angle()});
        eta.set({3}, {Angle(), Angle::of(1, 2)});
        const Cochain twist = differential(eta, psi.action());
        REQUIRE(is_cocycle(twist, psi.action()));
        REQUIRE_FALSE(twist.is_zero());
        const auto bundle = FellBundle::from_factor_system(FactorSystem(psi, twist));
        Rng rng(33);
        for (int g = 0; g < 4; ++g) {
            const auto s = bundle.random_in_fiber(g, rng);
            const auto prod = bundle.mul(bundle.star(s), s);
            CHECK(prod.base == 0);
            CHECK(distance(bundle.as_algebra(prod), inner_right(s.value, s.value)) < 1e-12);
        }
    }
}

TEST_CASE("verify_axioms passes on well-formed bundles") {
    SUBCASE("trivial bundle over the Klein group with B = M_2 + M_1") {
        const auto g = direct_product(*make_cyclic(2), *make_cyclic(2));
        const auto rep = verify_axioms(trivial_bundle(g, alg({2, 1})), 16, 0, 1e-9);
        CHECK(rep.all_pass());
    }
    SUBCASE("swap-graded model") {
        const auto rep = verify_axioms(z2_swap_bundle(), 32, 0, 1e-9);
        CHECK(rep.all_pass());
    }
    SUBCASE("size-changing Morita fibers (M_1 ~ M_2)") {
        const PicardHom psi(make_cyclic(2), alg({1, 2}),
                            {BlockPermutation::id(2), BlockPermutation({1, 0})});
        const auto rep = verify_axioms(FellBundle::from_factor_system(canonical_system(psi)), 16, 0,
                                       1e-9);
        CHECK(rep.all_pass());
    }
    SUBCASE("twisted line bundle over Z_4") {
        const auto z4 = make_cyclic(4);
        const auto psi = PicardHom::trivial(z4, alg({1}));
        Cochain twist(z4, 1, 2);  // the carry cocycle classifying Z_8 over Z_4
        for (int a = 1; a < 4; ++a)
            for (int b = 1; b < 4; ++b) twist.set({a, b}, {Angle::of((a + b) / 4, 2)});
        REQUIRE(is_cocycle(twist, psi.action()));
        const auto rep = verify_axioms(FellBundle::from_factor_system(FactorSystem(psi, twist)), 16,
                                       0, 1e-9);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("verify_axioms flags a corrupted twist") {
    const auto z4 = make_cyclic(4);
    const auto psi = PicardHom::trivial(z4, alg({1}));
    Cochain bad(z4, 1, 2);
    bad.set({1, 1}, {Angle::of(1, 4)});
    const auto bundle = FellBundle::from_pre_system(PreFactorSystem(psi, bad));
    const auto rep = verify_axioms(bundle, 8, 0, 1e-9);
    CHECK_FALSE(rep.all_pass());
    const auto* assoc = rep.find("associativity");
    REQUIRE(assoc != nullptr);
    CHECK_FALSE(assoc->pass);
    // the defect includes the phase |1 - e^{2 pi i / 4}|
    CHECK(assoc->max_residual > 0.1);
}

TEST_CASE("picard_hom_of recovers psi") {
    const auto bundle = z2_swap_bundle();
    const auto psi = picard_hom_of(bundle);
    CHECK(psi.sigma(0).is_identity());
    CHECK(psi.sigma(1) == BlockPermutation({1, 0}));

    const auto trivial = trivial_bundle(make_cyclic(3), alg({1}));
    for (int g = 0; g < 3; ++g) CHECK(picard_hom_of(trivial).sigma(g).is_identity());
}

TEST_CASE("inverse formula reconstruction is part of the axiom report") {
    const auto rep = verify_axioms(z2_swap_bundle(), 8, 1, 1e-9);
    const auto* inv = rep.find("inverse_formula");
    REQUIRE(inv != nullptr);
    CHECK(inv->pass);
}
