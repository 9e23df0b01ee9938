#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"

namespace anchormine {

// The 8 axis-aligned symmetries of a square. Composite names read
// right-to-left: flip_h_rot90 applies rot90 first, then flip_h.
enum class D4 : int {
    identity = 0,
    rot90,       // (r,c) -> (c, side-1-r)
    rot180,      // (r,c) -> (side-1-r, side-1-c)
    rot270,      // (r,c) -> (side-1-c, r)
    flip_h,      // (r,c) -> (r, side-1-c)
    flip_v,      // (r,c) -> (side-1-r, c)
    flip_h_rot90,  // transpose: (r,c) -> (c, r)
    flip_v_rot90,  // anti-transpose: (r,c) -> (side-1-c, side-1-r)
};

inline constexpr std::array<D4, 8> kD4All = {
    D4::identity, D4::rot90,  D4::rot180,       D4::rot270,
    D4::flip_h,   D4::flip_v, D4::flip_h_rot90, D4::flip_v_rot90,
};

inline constexpr std::array<std::string_view, 8> kD4Names = {
    "identity", "rot90", "rot180", "rot270", "flip_h", "flip_v", "flip_h_rot90", "flip_v_rot90",
};

inline std::string_view d4_name(D4 t) { return kD4Names[size_t(t)]; }

inline std::optional<D4> d4_from_name(std::string_view name) {
    for (size_t i = 0; i < kD4Names.size(); ++i)
        if (kD4Names[i] == name) return D4(i);
    return std::nullopt;
}

// Destination of source pixel (r, c) on a side x side grid.
inline std::pair<int, int> d4_map(D4 t, int r, int c, int side) {
    const int s = side - 1;
    switch (t) {
        case D4::identity: return {r, c};
        case D4::rot90: return {c, s - r};
        case D4::rot180: return {s - r, s - c};
        case D4::rot270: return {s - c, r};
        case D4::flip_h: return {r, s - c};
        case D4::flip_v: return {s - r, c};
        case D4::flip_h_rot90: return {c, r};
        case D4::flip_v_rot90: return {s - c, s - r};
    }
    throw Error("d4_map: bad transform");
}

namespace detail {

// Derive the composition table by probing two points whose images identify an
// element uniquely (no hand-derived algebra to get wrong).
inline const std::array<std::array<D4, 8>, 8>& d4_compose_table() {
    static const std::array<std::array<D4, 8>, 8> table = [] {
        std::array<std::array<D4, 8>, 8> t{};
        constexpr int side = 8;
        constexpr int pr1 = 1, pc1 = 2, pr2 = 2, pc2 = 5;
        for (auto a : kD4All)
            for (auto b : kD4All) {
                auto [r1, c1] = d4_map(a, pr1, pc1, side);
                auto [r2, c2] = d4_map(a, pr2, pc2, side);
                const auto ab1 = d4_map(b, r1, c1, side);
                const auto ab2 = d4_map(b, r2, c2, side);
                bool found = false;
                for (auto cand : kD4All) {
                    if (d4_map(cand, pr1, pc1, side) == ab1 &&
                        d4_map(cand, pr2, pc2, side) == ab2) {
                        t[size_t(a)][size_t(b)] = cand;
                        found = true;
                        break;
                    }
                }
                if (!found) throw Error("d4 composition table: group not closed");
            }
        return t;
    }();
    return table;
}

}  // namespace detail

// c = compose(a, b) acts as: apply a, then b.
inline D4 d4_compose(D4 a, D4 b) { return detail::d4_compose_table()[size_t(a)][size_t(b)]; }

inline D4 d4_inverse(D4 a) {
    for (auto b : kD4All)
        if (d4_compose(a, b) == D4::identity) return b;
    throw Error("d4_inverse: no inverse found");
}

// Exact pixel permutation of a square patch; no interpolation.
inline Patch d4_apply(const Patch& p, D4 t) {
    Patch out(p.side);
    for (int r = 0; r < p.side; ++r)
        for (int c = 0; c < p.side; ++c) {
            const auto [rr, cc] = d4_map(t, r, c, p.side);
            const std::uint8_t* src = p.px(r, c);
            std::uint8_t* dst = out.px(rr, cc);
            dst[0] = src[0];
            dst[1] = src[1];
            dst[2] = src[2];
        }
    return out;
}

// Index permutation induced on a planar (channel-major) flattening of a
// side x side patch; entry i of the result is the destination index of
// source entry i within one channel plane.
inline std::vector<int> d4_plane_permutation(D4 t, int side) {
    std::vector<int> perm(size_t(side) * side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const auto [rr, cc] = d4_map(t, r, c, side);
            perm[size_t(r) * side + c] = rr * side + cc;
        }
    return perm;
}

}  // namespace anchormine
