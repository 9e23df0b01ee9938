#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anchormine/errors.hpp"

namespace anchormine {

struct BBox {
    int x = 0;  // left
    int y = 0;  // top
    int w = 0;
    int h = 0;

    bool operator==(const BBox&) const = default;

    bool contains(const BBox& inner) const {
        return inner.x >= x && inner.y >= y &&
               inner.x + inner.w <= x + w && inner.y + inner.h <= y + h;
    }
};

// Dense binary mask, row-major, one byte per pixel (0 or 1).
class BinaryMask {
public:
    BinaryMask() = default;

    BinaryMask(int width, int height) : w_(width), h_(height), bits_(size_t(width) * height, 0) {
        if (width < 1 || height < 1)
            throw Error("mask dimensions must be >= 1, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }

    int width() const { return w_; }
    int height() const { return h_; }

    bool at(int r, int c) const { return bits_[size_t(r) * w_ + c] != 0; }
    void set(int r, int c, bool v = true) { bits_[size_t(r) * w_ + c] = v ? 1 : 0; }

    long long area() const {
        long long n = 0;
        for (auto b : bits_) n += b;
        return n;
    }

    bool empty() const {
        for (auto b : bits_)
            if (b) return false;
        return true;
    }

    bool same_size(const BinaryMask& o) const { return w_ == o.w_ && h_ == o.h_; }

    bool operator==(const BinaryMask&) const = default;

    const std::vector<std::uint8_t>& data() const { return bits_; }
    std::vector<std::uint8_t>& data() { return bits_; }

private:
    int w_ = 0, h_ = 0;
    std::vector<std::uint8_t> bits_;
};

inline void require_same_size(const BinaryMask& a, const BinaryMask& b, const char* what) {
    if (!a.same_size(b))
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
}

// |a n b| / |a u b|; both-empty pairs score 1.0 (the metrics layer applies the
// empty-ground-truth convention separately).
inline double iou(const BinaryMask& a, const BinaryMask& b) {
    require_same_size(a, b, "iou");
    long long inter = 0, uni = 0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (size_t i = 0; i < da.size(); ++i) {
        inter += da[i] & db[i];
        uni += da[i] | db[i];
    }
    if (uni == 0) return 1.0;
    return double(inter) / double(uni);
}

// Tight axis-aligned box of the set pixels; nullopt for an empty mask.
inline std::optional<BBox> bbox_of(const BinaryMask& m) {
    int rmin = m.height(), rmax = -1, cmin = m.width(), cmax = -1;
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c)
            if (m.at(r, c)) {
                if (r < rmin) rmin = r;
                if (r > rmax) rmax = r;
                if (c < cmin) cmin = c;
                if (c > cmax) cmax = c;
            }
    if (rmax < 0) return std::nullopt;
    return BBox{cmin, rmin, cmax - cmin + 1, rmax - rmin + 1};
}

// Set pixels with at least one 4-neighbor unset or lying on the image border.
inline BinaryMask boundary(const BinaryMask& m) {
    BinaryMask out(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) {
            if (!m.at(r, c)) continue;
            bool edge = r == 0 || r == m.height() - 1 || c == 0 || c == m.width() - 1;
            if (!edge) {
                edge = !m.at(r - 1, c) || !m.at(r + 1, c) || !m.at(r, c - 1) || !m.at(r, c + 1);
            }
            if (edge) out.set(r, c);
        }
    return out;
}

// Integer offsets (dr, dc) with dr^2 + dc^2 <= radius^2.
inline std::vector<std::pair<int, int>> disk_offsets(double radius) {
    std::vector<std::pair<int, int>> offs;
    if (radius < 0) return offs;
    const int r = int(std::floor(radius));
    const double r2 = radius * radius;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (double(dy) * dy + double(dx) * dx <= r2) offs.emplace_back(dy, dx);
    return offs;
}

// Euclidean-disk dilation: pixels within distance <= radius of any set pixel.
inline BinaryMask dilate(const BinaryMask& m, double radius) {
    if (radius < 0) throw Error("dilate: radius must be >= 0");
    const auto offs = disk_offsets(radius);
    BinaryMask out(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) {
            if (!m.at(r, c)) continue;
            for (auto [dy, dx] : offs) {
                const int rr = r + dy, cc = c + dx;
                if (rr >= 0 && rr < m.height() && cc >= 0 && cc < m.width()) out.set(rr, cc);
            }
        }
    return out;
}

// Euclidean-disk erosion; pixels outside the frame count as unset, so the
// border shrinks. Used by the oracle detector's jitter.
inline BinaryMask erode(const BinaryMask& m, double radius) {
    if (radius < 0) throw Error("erode: radius must be >= 0");
    const auto offs = disk_offsets(radius);
    BinaryMask out(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) {
            if (!m.at(r, c)) continue;
            bool keep = true;
            for (auto [dy, dx] : offs) {
                const int rr = r + dy, cc = c + dx;
                if (rr < 0 || rr >= m.height() || cc < 0 || cc >= m.width() || !m.at(rr, cc)) {
                    keep = false;
                    break;
                }
            }
            if (keep) out.set(r, c);
        }
    return out;
}

}  // namespace anchormine
