#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/errors.hpp"
#include "anchormine/mask.hpp"

namespace anchormine {

// COCO-style uncompressed run-length mask: counts alternate zero-runs and
// one-runs over COLUMN-MAJOR pixel order, first count is the zero-run
// (possibly 0). sum(counts) == height * width.
struct RleMask {
    int height = 0;
    int width = 0;
    std::vector<long long> counts;

    bool operator==(const RleMask&) const = default;
};

inline RleMask rle_encode(const BinaryMask& m) {
    RleMask rle;
    rle.height = m.height();
    rle.width = m.width();
    long long run = 0;
    int cur = 0;  // runs start with zeros
    for (int c = 0; c < m.width(); ++c)
        for (int r = 0; r < m.height(); ++r) {
            const int bit = m.at(r, c) ? 1 : 0;
            if (bit == cur) {
                ++run;
            } else {
                rle.counts.push_back(run);
                cur = bit;
                run = 1;
            }
        }
    rle.counts.push_back(run);
    return rle;
}

inline BinaryMask rle_decode(const RleMask& rle) {
    if (rle.height < 1 || rle.width < 1)
        throw CountsMismatch("mask size must be >= 1x1, got " + std::to_string(rle.width) + "x" +
                             std::to_string(rle.height));
    long long total = 0;
    for (long long c : rle.counts) {
        if (c < 0) throw CountsMismatch("negative run length " + std::to_string(c));
        total += c;
    }
    const long long expected = (long long)rle.height * rle.width;
    if (total != expected)
        throw CountsMismatch("counts sum to " + std::to_string(total) + ", expected " +
                             std::to_string(expected));
    BinaryMask m(rle.width, rle.height);
    long long pos = 0;
    int bit = 0;
    for (long long count : rle.counts) {
        if (bit) {
            for (long long i = 0; i < count; ++i) {
                const long long p = pos + i;
                m.set(int(p % rle.height), int(p / rle.height));
            }
        }
        pos += count;
        bit ^= 1;
    }
    return m;
}

inline long long rle_area(const RleMask& rle) {
    long long area = 0;
    for (size_t i = 1; i < rle.counts.size(); i += 2) area += rle.counts[i];
    return area;
}

// {"size":[H,W],"counts":[...]}
inline nlohmann::json rle_to_json(const RleMask& rle) {
    return nlohmann::json{{"size", {rle.height, rle.width}}, {"counts", rle.counts}};
}

inline RleMask rle_from_json(const nlohmann::json& j) {
    RleMask rle;
    if (!j.is_object() || !j.contains("size") || !j.contains("counts"))
        throw ParseError("rle object must have 'size' and 'counts'");
    const auto& size = j.at("size");
    if (!size.is_array() || size.size() != 2)
        throw ParseError("rle 'size' must be [height, width]");
    rle.height = size.at(0).get<int>();
    rle.width = size.at(1).get<int>();
    rle.counts = j.at("counts").get<std::vector<long long>>();
    return rle;
}

}  // namespace anchormine
