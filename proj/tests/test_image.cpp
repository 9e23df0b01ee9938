#include <catch2/catch_amalgamated.hpp>

#include "anchormine/image.hpp"

using namespace anchormine;

namespace {

FrameImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return FrameImage(w, h, r, g, b);
}

}  // namespace

TEST_CASE("masked_crop full-frame mask copies the image") {
    FrameImage img(4, 3);
    for (size_t i = 0; i < img.rgb.size(); ++i) img.rgb[i] = std::uint8_t(i * 7);
    BinaryMask mask(4, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) mask.set(r, c);
    CHECK(masked_crop(img, mask, 0.0) == img);
}

TEST_CASE("masked_crop tight object crop") {
    FrameImage img = solid(8, 8, 10, 20, 30);
    BinaryMask mask(8, 8);
    mask.set(3, 3);
    mask.set(3, 4);
    mask.set(4, 3);
    mask.set(4, 4);
    img.px(3, 3)[0] = 200;
    const FrameImage crop = masked_crop(img, mask, 0.0);
    CHECK(crop.width == 2);
    CHECK(crop.height == 2);
    CHECK(crop.px(0, 0)[0] == 200);
    CHECK(crop.px(1, 1)[0] == 10);
}

TEST_CASE("masked_crop fills background with the masked mean color") {
    // red object on blue background, pad 0.5: every out-of-mask pixel in the
    // crop becomes pure red
    FrameImage img = solid(12, 12, 0, 0, 255);
    BinaryMask mask(12, 12);
    for (int r = 4; r < 8; ++r)
        for (int c = 4; c < 8; ++c) {
            mask.set(r, c);
            auto* p = img.px(r, c);
            p[0] = 255;
            p[1] = 0;
            p[2] = 0;
        }
    const FrameImage crop = masked_crop(img, mask, 0.5);
    CHECK(crop.width == 8);  // 4 + 2*2 padding
    for (int r = 0; r < crop.height; ++r)
        for (int c = 0; c < crop.width; ++c) {
            CHECK(crop.px(r, c)[0] == 255);
            CHECK(crop.px(r, c)[1] == 0);
            CHECK(crop.px(r, c)[2] == 0);
        }
}

TEST_CASE("masked_crop errors") {
    FrameImage img = solid(4, 4, 1, 2, 3);
    CHECK_THROWS_AS(masked_crop(img, BinaryMask(4, 4), 0.1), EmptyMask);
    BinaryMask wrong(3, 3);
    wrong.set(0, 0);
    CHECK_THROWS_AS(masked_crop(img, wrong, 0.1), DimensionMismatch);
}

TEST_CASE("resize_patch identity and constant preservation") {
    FrameImage img(5, 5);
    for (size_t i = 0; i < img.rgb.size(); ++i) img.rgb[i] = std::uint8_t(13 * i);
    const Patch same = resize_patch(img, 5);
    CHECK(same.rgb == img.rgb);

    const FrameImage c = solid(7, 3, 42, 99, 7);
    const Patch resized = resize_patch(c, 4);
    for (int r = 0; r < 4; ++r)
        for (int cc = 0; cc < 4; ++cc) {
            CHECK(resized.px(r, cc)[0] == 42);
            CHECK(resized.px(r, cc)[1] == 99);
            CHECK(resized.px(r, cc)[2] == 7);
        }
}

TEST_CASE("resize_patch bilinear hand check") {
    // 2x1 black|white row upsampled to side 4; src_x = (c+0.5)*0.5 - 0.5 gives
    // samples at -0.25, 0.25, 0.75, 1.25 -> 0, 64, 191, 255 per the documented
    // align-corners-false rule with round-half-away-from-zero
    FrameImage img(2, 1);
    img.px(0, 1)[0] = 255;
    img.px(0, 1)[1] = 255;
    img.px(0, 1)[2] = 255;
    const Patch p = resize_patch(img, 4);
    for (int r = 0; r < 4; ++r) {
        CHECK(p.px(r, 0)[0] == 0);
        CHECK(p.px(r, 1)[0] == 64);
        CHECK(p.px(r, 2)[0] == 191);
        CHECK(p.px(r, 3)[0] == 255);
    }
}
