#include <catch2/catch_amalgamated.hpp>

#include "anchormine/mask.hpp"
#include "anchormine/rng.hpp"

using namespace anchormine;

namespace {

BinaryMask random_mask(Rng& rng, int w, int h, double density = 0.4) {
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (rng.next_bool(density)) m.set(r, c);
    return m;
}

BinaryMask rect_mask(int w, int h, int r0, int c0, int rh, int cw) {
    BinaryMask m(w, h);
    for (int r = r0; r < r0 + rh; ++r)
        for (int c = c0; c < c0 + cw; ++c) m.set(r, c);
    return m;
}

}  // namespace

TEST_CASE("iou basics") {
    BinaryMask a = rect_mask(4, 4, 0, 0, 2, 2);
    CHECK(iou(a, a) == 1.0);

    BinaryMask b = rect_mask(4, 4, 2, 2, 2, 2);
    CHECK(iou(a, b) == 0.0);

    // rows 0-1 x cols 0-1 vs rows 0-1 x cols 1-2: overlap 2, union 6
    BinaryMask c = rect_mask(4, 4, 0, 1, 2, 2);
    CHECK(iou(a, c) == Catch::Approx(2.0 / 6.0).epsilon(1e-12));

    BinaryMask e1(4, 4), e2(4, 4);
    CHECK(iou(e1, e2) == 1.0);  // both empty, documented convention

    CHECK_THROWS_AS(iou(a, BinaryMask(3, 3)), DimensionMismatch);
}

TEST_CASE("iou symmetry over random masks") {
    Rng rng(11, "iou-sym");
    for (int i = 0; i < 50; ++i) {
        const int w = int(rng.next_int(1, 20)), h = int(rng.next_int(1, 20));
        BinaryMask a = random_mask(rng, w, h);
        BinaryMask b = random_mask(rng, w, h);
        CHECK(iou(a, b) == iou(b, a));
        if (!a.empty()) CHECK(iou(a, a) == 1.0);
    }
}

TEST_CASE("bbox_of") {
    BinaryMask m(6, 5);
    CHECK(!bbox_of(m).has_value());

    m.set(2, 3);
    const auto single = bbox_of(m);
    REQUIRE(single.has_value());
    CHECK(*single == BBox{3, 2, 1, 1});

    BinaryMask full = rect_mask(7, 4, 0, 0, 4, 7);
    CHECK(*bbox_of(full) == BBox{0, 0, 7, 4});

    BinaryMask two(6, 5);
    two.set(0, 0);
    two.set(4, 5);
    CHECK(*bbox_of(two) == BBox{0, 0, 6, 5});
}

TEST_CASE("boundary") {
    BinaryMask single(5, 5);
    single.set(2, 2);
    CHECK(boundary(single) == single);

    // 4x4 solid square inside an 8x8 frame: 12 perimeter pixels
    BinaryMask square = rect_mask(8, 8, 2, 2, 4, 4);
    CHECK(boundary(square).area() == 12);

    BinaryMask empty(4, 4);
    CHECK(boundary(empty).empty());

    // mask touching the image border is boundary there
    BinaryMask corner = rect_mask(3, 3, 0, 0, 3, 3);
    CHECK(boundary(corner).area() == 8);  // all but the center
}

TEST_CASE("dilate") {
    BinaryMask m(7, 7);
    m.set(3, 3);

    CHECK(dilate(m, 0) == m);

    // radius 1: the 4-neighborhood plus center; diagonals at sqrt(2) excluded
    const BinaryMask d1 = dilate(m, 1);
    CHECK(d1.area() == 5);
    CHECK(d1.at(3, 3));
    CHECK(d1.at(2, 3));
    CHECK(d1.at(4, 3));
    CHECK(d1.at(3, 2));
    CHECK(d1.at(3, 4));
    CHECK(!d1.at(2, 2));

    BinaryMask empty(5, 5);
    CHECK(dilate(empty, 3).empty());
}

TEST_CASE("boundary subset and dilate monotonicity") {
    Rng rng(23, "dil-mono");
    for (int i = 0; i < 30; ++i) {
        const int w = int(rng.next_int(2, 24)), h = int(rng.next_int(2, 24));
        BinaryMask m = random_mask(rng, w, h, 0.3);

        const BinaryMask b = boundary(m);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (b.at(r, c)) CHECK(m.at(r, c));

        const double r1 = rng.next_double(0, 3);
        const double r2 = r1 + rng.next_double(0, 3);
        const BinaryMask d1 = dilate(m, r1);
        const BinaryMask d2 = dilate(m, r2);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                if (m.at(r, c)) CHECK(d1.at(r, c));
                if (d1.at(r, c)) CHECK(d2.at(r, c));
            }
    }
}

TEST_CASE("erode shrinks and inverts dilate on solid shapes") {
    BinaryMask square = rect_mask(9, 9, 2, 2, 5, 5);
    const BinaryMask eroded = erode(square, 1);
    CHECK(eroded.area() == 9);  // 5x5 -> 3x3
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            if (eroded.at(r, c)) CHECK(square.at(r, c));
    CHECK(erode(square, 0) == square);
}
