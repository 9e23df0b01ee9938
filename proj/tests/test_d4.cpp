#include <catch2/catch_amalgamated.hpp>

#include "anchormine/d4.hpp"
#include "anchormine/rng.hpp"

using namespace anchormine;

namespace {

Patch random_patch(Rng& rng, int side) {
    Patch p(side);
    for (auto& v : p.rgb) v = std::uint8_t(rng.next_int(0, 255));
    return p;
}

}  // namespace

TEST_CASE("rot180 is an involution") {
    Rng rng(3, "d4");
    const Patch p = random_patch(rng, 6);
    CHECK(d4_apply(d4_apply(p, D4::rot180), D4::rot180) == p);
}

TEST_CASE("flip_h reflects columns") {
    Patch p(4);
    p.px(0, 0)[0] = 255;
    const Patch f = d4_apply(p, D4::flip_h);
    CHECK(f.px(0, 3)[0] == 255);
    CHECK(f.px(0, 0)[0] == 0);
}

TEST_CASE("rot90 follows the documented convention (r,c) -> (c, side-1-r)") {
    Patch p(4);
    p.px(0, 0)[1] = 200;
    const Patch r = d4_apply(p, D4::rot90);
    CHECK(r.px(0, 3)[1] == 200);

    Patch q(5);
    q.px(1, 2)[2] = 99;
    const Patch r2 = d4_apply(q, D4::rot90);
    CHECK(r2.px(2, 3)[2] == 99);  // (1,2) -> (2, 5-1-1)
}

TEST_CASE("group closure and inverses over random patches") {
    Rng rng(5, "d4-group");
    const Patch p = random_patch(rng, 7);
    for (D4 a : kD4All) {
        // inverse undoes the transform
        CHECK(d4_apply(d4_apply(p, a), d4_inverse(a)) == p);
        CHECK(d4_compose(a, d4_inverse(a)) == D4::identity);
        for (D4 b : kD4All) {
            // composition stays in the set and matches sequential application
            const D4 c = d4_compose(a, b);
            CHECK(d4_apply(d4_apply(p, a), b) == d4_apply(p, c));
        }
    }
}

TEST_CASE("names round-trip") {
    for (D4 t : kD4All) {
        const auto back = d4_from_name(d4_name(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK(!d4_from_name("rot45").has_value());
}
