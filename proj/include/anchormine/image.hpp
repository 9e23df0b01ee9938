#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "anchormine/errors.hpp"
#include "anchormine/mask.hpp"

namespace anchormine {

// 8-bit RGB image, row-major interleaved.
struct FrameImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    FrameImage() = default;
    FrameImage(int w, int h) : width(w), height(h), rgb(size_t(w) * h * 3, 0) {}
    FrameImage(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b)
        : width(w), height(h), rgb(size_t(w) * h * 3) {
        for (size_t i = 0; i < rgb.size(); i += 3) {
            rgb[i] = r;
            rgb[i + 1] = g;
            rgb[i + 2] = b;
        }
    }

    std::uint8_t* px(int r, int c) { return &rgb[(size_t(r) * width + c) * 3]; }
    const std::uint8_t* px(int r, int c) const { return &rgb[(size_t(r) * width + c) * 3]; }

    bool operator==(const FrameImage&) const = default;
};

// Square RGB patch (the canonical embedder input).
struct Patch {
    int side = 0;
    std::vector<std::uint8_t> rgb;

    Patch() = default;
    explicit Patch(int s) : side(s), rgb(size_t(s) * s * 3, 0) {}

    std::uint8_t* px(int r, int c) { return &rgb[(size_t(r) * side + c) * 3]; }
    const std::uint8_t* px(int r, int c) const { return &rgb[(size_t(r) * side + c) * 3]; }

    bool operator==(const Patch&) const = default;
};

// Crop the image over the mask's bbox expanded by pad_ratio on each side
// (clamped to the frame). Pixels outside the mask within the crop are replaced
// by the channel-wise mean color of the masked pixels, so the background does
// not leak into downstream descriptors.
inline FrameImage masked_crop(const FrameImage& image, const BinaryMask& mask, double pad_ratio) {
    if (image.width != mask.width() || image.height != mask.height())
        throw DimensionMismatch("masked_crop: image vs mask");
    const auto box = bbox_of(mask);
    if (!box) throw EmptyMask("masked_crop requires a non-empty mask");

    // channel-wise mean over masked pixels, rounded to nearest
    long long sum[3] = {0, 0, 0};
    long long count = 0;
    for (int r = 0; r < mask.height(); ++r)
        for (int c = 0; c < mask.width(); ++c)
            if (mask.at(r, c)) {
                const std::uint8_t* p = image.px(r, c);
                sum[0] += p[0];
                sum[1] += p[1];
                sum[2] += p[2];
                ++count;
            }
    std::uint8_t mean[3];
    for (int ch = 0; ch < 3; ++ch) mean[ch] = std::uint8_t((sum[ch] + count / 2) / count);

    const int pad_x = int(std::llround(box->w * pad_ratio));
    const int pad_y = int(std::llround(box->h * pad_ratio));
    const int x0 = std::max(0, box->x - pad_x);
    const int y0 = std::max(0, box->y - pad_y);
    const int x1 = std::min(image.width, box->x + box->w + pad_x);
    const int y1 = std::min(image.height, box->y + box->h + pad_y);

    FrameImage crop(x1 - x0, y1 - y0);
    for (int r = y0; r < y1; ++r)
        for (int c = x0; c < x1; ++c) {
            std::uint8_t* dst = crop.px(r - y0, c - x0);
            if (mask.at(r, c)) {
                const std::uint8_t* src = image.px(r, c);
                dst[0] = src[0];
                dst[1] = src[1];
                dst[2] = src[2];
            } else {
                dst[0] = mean[0];
                dst[1] = mean[1];
                dst[2] = mean[2];
            }
        }
    return crop;
}

// Deterministic bilinear resize to a square patch, align-corners-false:
//   src = (dst + 0.5) * (in_size / side) - 0.5
// with edge clamping and round-half-away-from-zero on the interpolated value.
inline Patch resize_patch(const FrameImage& crop, int side) {
    if (crop.width < 1 || crop.height < 1) throw Error("resize_patch: degenerate crop");
    if (side < 1) throw Error("resize_patch: side must be >= 1");
    Patch out(side);
    const double sx = double(crop.width) / side;
    const double sy = double(crop.height) / side;
    for (int r = 0; r < side; ++r) {
        const double fy = (r + 0.5) * sy - 0.5;
        int y0 = int(std::floor(fy));
        const double ty = fy - y0;
        const int y1 = std::clamp(y0 + 1, 0, crop.height - 1);
        y0 = std::clamp(y0, 0, crop.height - 1);
        for (int c = 0; c < side; ++c) {
            const double fx = (c + 0.5) * sx - 0.5;
            int x0 = int(std::floor(fx));
            const double tx = fx - x0;
            const int x1 = std::clamp(x0 + 1, 0, crop.width - 1);
            x0 = std::clamp(x0, 0, crop.width - 1);
            const std::uint8_t* p00 = crop.px(y0, x0);
            const std::uint8_t* p01 = crop.px(y0, x1);
            const std::uint8_t* p10 = crop.px(y1, x0);
            const std::uint8_t* p11 = crop.px(y1, x1);
            std::uint8_t* dst = out.px(r, c);
            for (int ch = 0; ch < 3; ++ch) {
                const double top = p00[ch] + (p01[ch] - p00[ch]) * tx;
                const double bot = p10[ch] + (p11[ch] - p10[ch]) * tx;
                const double v = top + (bot - top) * ty;
                dst[ch] = std::uint8_t(std::clamp<long>(std::lround(v), 0, 255));
            }
        }
    }
    return out;
}

}  // namespace anchormine
