#include <doctest.h>

#include "fell/group.hpp"

using namespace fell;

TEST_CASE("cyclic groups") {
    CHECK(make_cyclic(1)->order() == 1);

    const auto z2 = make_cyclic(2);
    CHECK(z2->cayley() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});

    const auto z4 = make_cyclic(4);
    CHECK(z4->inv(1) == 3);
    CHECK(z4->mul(2, 3) == 1);

    CHECK_THROWS_AS(make_cyclic(0), InputError);
}

TEST_CASE("direct products") {
    const auto z2 = make_cyclic(2);
    const auto klein = direct_product(*z2, *z2);
    CHECK(klein->order() == 4);
    for (int a = 1; a < 4; ++a) CHECK(klein->inv(a) == a);

    const auto z6 = direct_product(*z2, *make_cyclic(3));
    CHECK(z6->order() == 6);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(z6->mul(a, b) == z6->mul(b, a));

    const auto copy = direct_product(*make_cyclic(1), *z6);
    CHECK(copy->cayley() == z6->cayley());
}

TEST_CASE("validate_group") {
    CHECK(validate_group(make_cyclic(3)->cayley()));
    CHECK(validate_group({{0}}));
    // cayley[1][1] = 1 leaves 1 without an inverse
    CHECK_FALSE(validate_group({{0, 1}, {1, 1}}));
    CHECK_THROWS_AS(validate_group({{0, 1}}), InputError);
}

TEST_CASE("explicit tables are normalized so the identity is index 0") {
    // Z_2 written with the identity at index 1
    const FiniteGroup g({{1, 0}, {0, 1}});
    CHECK(g.mul(0, 0) == 0);
    CHECK(g.mul(1, 1) == 0);
    CHECK(g.inv(1) == 1);
}

TEST_CASE("group invariants hold for every constructed group") {
    const auto groups = {make_cyclic(2), make_cyclic(3), make_cyclic(6),
                         direct_product(*make_cyclic(2), *make_cyclic(4))};
    for (const auto& g : groups) {
        CHECK(validate_group(g->cayley()));
        for (int a = 0; a < g->order(); ++a) {
            CHECK(g->mul(a, g->inv(a)) == 0);
            CHECK(g->mul(g->inv(a), a) == 0);
        }
    }
}

TEST_CASE("free abelian arithmetic") {
    const FreeAbelianGroup z2d(2);
    CHECK(z2d.mul({1, -3}, {2, 5}) == FreeAbelianGroup::Elt{3, 2});
    CHECK(z2d.inv({4, -7}) == FreeAbelianGroup::Elt{-4, 7});
    CHECK(z2d.mul({2, 1}, z2d.inv({2, 1})) == z2d.identity());
    CHECK_THROWS_AS(z2d.mul({1}, {2, 3}), InputError);
    CHECK_THROWS_AS(FreeAbelianGroup(0), InputError);
}
