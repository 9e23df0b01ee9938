#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "anchormine/detect.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"
#include "anchormine/mask.hpp"
#include "anchormine/rng.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

using Color = std::array<std::uint8_t, 3>;

struct NoiseBackground {
    Color base{110, 110, 110};
    int amplitude = 12;  // per-channel uniform noise in [-amplitude, amplitude]
};

struct EllipseShape {
    double rx = 10, ry = 10;
};

// Convex polygon, vertices in object space (x right, y down), centered on the
// object origin.
struct PolygonShape {
    std::vector<std::array<double, 2>> verts;
};

using Shape = std::variant<EllipseShape, PolygonShape>;

// Orientation-carrying fill: pixels on the positive side of the split axis
// take the secondary tone. The split lives in object space, so it rotates
// with the object.
struct TwoTone {
    Color secondary{0, 0, 0};
    double split_angle_deg = 90.0;
};

struct Keyframe {
    int frame = 0;
    double cx = 0, cy = 0;
    double scale = 1.0;
};

enum class EventKind { offscreen, behind_occluder, hue_shift, rotate, scale_change };

// Scripted challenge events. hue_shift/rotate/scale_change ramp linearly from
// zero effect at t0 to full effect at t1 and persist afterwards.
struct Event {
    EventKind kind = EventKind::offscreen;
    int t0 = 0, t1 = 0;
    double value = 0.0;    // degrees (hue_shift, rotate) or end factor (scale_change)
    int occluder_idx = 0;  // behind_occluder only
};

struct ObjectScript {
    std::string id;
    bool is_target = false;
    Shape shape;
    Color base_color{200, 200, 200};
    std::optional<TwoTone> texture;
    std::vector<Keyframe> keyframes;
    std::vector<Event> events;
};

struct Occluder {
    BBox rect;
    Color color{70, 60, 80};
};

struct Scenario {
    std::string video_id;
    std::uint64_t seed = 0;
    int width = 128, height = 128;
    int num_frames = 120;
    NoiseBackground background;
    std::vector<ObjectScript> objects;  // painter's order; later objects on top
    std::vector<Occluder> occluders;    // always drawn on top of objects
};

namespace detail {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// 0 before t0, 1 from t1 on, linear in between.
inline double event_ramp(int f, int t0, int t1) {
    if (f < t0) return 0.0;
    if (f >= t1 || t1 == t0) return 1.0;
    return double(f - t0) / double(t1 - t0);
}

inline Color hue_rotate(Color c, double degrees) {
    double r = c[0] / 255.0, g = c[1] / 255.0, b = c[2] / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;
    double h = 0;
    if (delta > 0) {
        if (mx == r)
            h = 60.0 * std::fmod((g - b) / delta, 6.0);
        else if (mx == g)
            h = 60.0 * ((b - r) / delta + 2.0);
        else
            h = 60.0 * ((r - g) / delta + 4.0);
    }
    const double s = mx <= 0 ? 0.0 : delta / mx;
    const double v = mx;

    h = std::fmod(h + degrees, 360.0);
    if (h < 0) h += 360.0;

    const double cc = v * s;
    const double x = cc * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
    const double m = v - cc;
    double rr = 0, gg = 0, bb = 0;
    if (h < 60) {
        rr = cc; gg = x;
    } else if (h < 120) {
        rr = x; gg = cc;
    } else if (h < 180) {
        gg = cc; bb = x;
    } else if (h < 240) {
        gg = x; bb = cc;
    } else if (h < 300) {
        rr = x; bb = cc;
    } else {
        rr = cc; bb = x;
    }
    auto to8 = [m](double ch) {
        return std::uint8_t(std::clamp<long>(std::lround((ch + m) * 255.0), 0, 255));
    };
    return {to8(rr), to8(gg), to8(bb)};
}

// Even-odd crossing test against pixel centers; vertical spans are half-open
// ([y0, y1)) so shared vertices are counted once.
inline bool point_in_polygon(const std::vector<std::array<double, 2>>& verts, double px,
                             double py) {
    bool inside = false;
    const size_t n = verts.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = verts[i][0], yi = verts[i][1];
        const double xj = verts[j][0], yj = verts[j][1];
        if ((yi > py) != (yj > py)) {
            const double x_cross = xj + (py - yj) / (yi - yj) * (xi - xj);
            if (px < x_cross) inside = !inside;
        }
    }
    return inside;
}

inline double shape_extent(const Shape& shape) {
    if (std::holds_alternative<EllipseShape>(shape)) {
        const auto& e = std::get<EllipseShape>(shape);
        return std::max(e.rx, e.ry);
    }
    double m = 0;
    for (const auto& v : std::get<PolygonShape>(shape).verts)
        m = std::max(m, std::hypot(v[0], v[1]));
    return m;
}

struct ObjectState {
    bool hidden = false;         // offscreen
    bool behind = false;         // teleported behind an occluder
    double cx = 0, cy = 0;
    double scale = 1.0;
    double rotation_deg = 0.0;
    double hue_deg = 0.0;
};

inline ObjectState object_state(const Scenario& sc, const ObjectScript& obj, int f) {
    ObjectState st;

    // trajectory: piecewise linear over keyframes, clamped at the ends
    const auto& kfs = obj.keyframes;
    if (kfs.size() == 1 || f <= kfs.front().frame) {
        st.cx = kfs.front().cx;
        st.cy = kfs.front().cy;
        st.scale = kfs.front().scale;
    } else if (f >= kfs.back().frame) {
        st.cx = kfs.back().cx;
        st.cy = kfs.back().cy;
        st.scale = kfs.back().scale;
    } else {
        for (size_t i = 0; i + 1 < kfs.size(); ++i) {
            if (f >= kfs[i].frame && f < kfs[i + 1].frame) {
                const double t = double(f - kfs[i].frame) / double(kfs[i + 1].frame - kfs[i].frame);
                st.cx = kfs[i].cx + (kfs[i + 1].cx - kfs[i].cx) * t;
                st.cy = kfs[i].cy + (kfs[i + 1].cy - kfs[i].cy) * t;
                st.scale = kfs[i].scale + (kfs[i + 1].scale - kfs[i].scale) * t;
                break;
            }
        }
    }

    double event_scale = 1.0;
    for (const Event& ev : obj.events) {
        switch (ev.kind) {
            case EventKind::offscreen:
                if (f >= ev.t0 && f <= ev.t1) st.hidden = true;
                break;
            case EventKind::behind_occluder:
                if (f >= ev.t0 && f <= ev.t1) {
                    st.behind = true;
                    const auto& rect = sc.occluders.at(size_t(ev.occluder_idx)).rect;
                    st.cx = rect.x + rect.w / 2.0;
                    st.cy = rect.y + rect.h / 2.0;
                }
                break;
            case EventKind::hue_shift:
                st.hue_deg += ev.value * event_ramp(f, ev.t0, ev.t1);
                break;
            case EventKind::rotate:
                st.rotation_deg += ev.value * event_ramp(f, ev.t0, ev.t1);
                break;
            case EventKind::scale_change:
                event_scale *= 1.0 + (ev.value - 1.0) * event_ramp(f, ev.t0, ev.t1);
                break;
        }
    }
    st.scale *= event_scale;

    // keep the shape inside the frame (unless parked behind an occluder)
    if (!st.behind) {
        const double extent = shape_extent(obj.shape) * st.scale + 1.0;
        if (2 * extent < sc.width) st.cx = std::clamp(st.cx, extent, sc.width - extent);
        if (2 * extent < sc.height) st.cy = std::clamp(st.cy, extent, sc.height - extent);
    }
    return st;
}

inline bool disappearance_active(const ObjectScript& obj, int f) {
    for (const Event& ev : obj.events)
        if ((ev.kind == EventKind::offscreen || ev.kind == EventKind::behind_occluder) &&
            f >= ev.t0 && f <= ev.t1)
            return true;
    return false;
}

}  // namespace detail

struct SynthVideo {
    std::vector<FrameImage> frames;
    GroundTruth gt;
};

inline void validate_scenario(const Scenario& sc) {
    if (sc.num_frames < 2)
        throw InvalidScenario("num_frames must be >= 2, got " + std::to_string(sc.num_frames));
    if (sc.width < 8 || sc.height < 8)
        throw InvalidScenario("frame size must be at least 8x8");
    int targets = 0;
    for (const auto& obj : sc.objects) {
        if (obj.id.empty()) throw InvalidScenario("object with empty id");
        if (obj.is_target) ++targets;
        if (obj.keyframes.empty())
            throw InvalidScenario("object '" + obj.id + "' has no keyframes");
        if (std::holds_alternative<PolygonShape>(obj.shape) &&
            std::get<PolygonShape>(obj.shape).verts.size() < 3)
            throw InvalidScenario("object '" + obj.id + "' polygon needs >= 3 vertices");
        for (const Event& ev : obj.events) {
            if (ev.t0 < 0 || ev.t1 < ev.t0 || ev.t1 >= sc.num_frames)
                throw InvalidScenario("object '" + obj.id + "' event interval [" +
                                      std::to_string(ev.t0) + "," + std::to_string(ev.t1) +
                                      "] outside 0.." + std::to_string(sc.num_frames - 1));
            if (ev.kind == EventKind::behind_occluder &&
                (ev.occluder_idx < 0 || size_t(ev.occluder_idx) >= sc.occluders.size()))
                throw InvalidScenario("object '" + obj.id + "' references missing occluder " +
                                      std::to_string(ev.occluder_idx));
        }
    }
    if (targets != 1)
        throw InvalidScenario("exactly one target object required, got " + std::to_string(targets));
    std::map<std::string, int> ids;
    for (const auto& obj : sc.objects)
        if (++ids[obj.id] > 1) throw InvalidScenario("duplicate object id '" + obj.id + "'");
}

// Rasterize the scenario: seeded noise background (static per video), objects
// in painter's order, occluders on top. Ground-truth masks are exactly the
// visible pixels of each instance. Fully deterministic given the scenario.
inline SynthVideo generate(const Scenario& sc) {
    validate_scenario(sc);

    SynthVideo video;
    video.gt.num_frames = sc.num_frames;
    for (const auto& obj : sc.objects) {
        video.gt.masks[obj.id] = {};
        video.gt.masks[obj.id].reserve(size_t(sc.num_frames));
        if (obj.is_target) video.gt.target_id = obj.id;
    }

    // static background, drawn once from its own stream
    FrameImage background(sc.width, sc.height);
    {
        Rng rng(sc.seed, "background");
        for (size_t i = 0; i < background.rgb.size(); i += 3)
            for (int ch = 0; ch < 3; ++ch) {
                const long v = long(sc.background.base[ch]) +
                               long(rng.next_int(-sc.background.amplitude, sc.background.amplitude));
                background.rgb[i + ch] = std::uint8_t(std::clamp(v, 0L, 255L));
            }
    }

    std::vector<int> id_buf;
    for (int f = 0; f < sc.num_frames; ++f) {
        FrameImage frame = background;
        id_buf.assign(size_t(sc.width) * sc.height, -1);

        for (size_t oi = 0; oi < sc.objects.size(); ++oi) {
            const ObjectScript& obj = sc.objects[oi];
            const auto st = detail::object_state(sc, obj, f);
            if (st.hidden) continue;

            const Color base = detail::hue_rotate(obj.base_color, st.hue_deg);
            Color secondary = base;
            double split_x = 0, split_y = 0;
            if (obj.texture) {
                secondary = detail::hue_rotate(obj.texture->secondary, st.hue_deg);
                const double phi = obj.texture->split_angle_deg * std::numbers::pi / 180.0;
                split_x = std::cos(phi);
                split_y = std::sin(phi);
            }

            const double theta = st.rotation_deg * std::numbers::pi / 180.0;
            const double cos_t = std::cos(theta), sin_t = std::sin(theta);
            const double extent = detail::shape_extent(obj.shape) * st.scale + 1.0;
            const int r0 = std::max(0, int(std::floor(st.cy - extent)));
            const int r1 = std::min(sc.height - 1, int(std::ceil(st.cy + extent)));
            const int c0 = std::max(0, int(std::floor(st.cx - extent)));
            const int c1 = std::min(sc.width - 1, int(std::ceil(st.cx + extent)));

            for (int r = r0; r <= r1; ++r)
                for (int c = c0; c <= c1; ++c) {
                    const double dx = (c + 0.5) - st.cx;
                    const double dy = (r + 0.5) - st.cy;
                    // undo rotation, then scale, to land in object space
                    const double ox = (cos_t * dx + sin_t * dy) / st.scale;
                    const double oy = (-sin_t * dx + cos_t * dy) / st.scale;

                    bool inside;
                    if (std::holds_alternative<EllipseShape>(obj.shape)) {
                        const auto& e = std::get<EllipseShape>(obj.shape);
                        inside = (ox / e.rx) * (ox / e.rx) + (oy / e.ry) * (oy / e.ry) <= 1.0;
                    } else {
                        inside = detail::point_in_polygon(std::get<PolygonShape>(obj.shape).verts,
                                                          ox, oy);
                    }
                    if (!inside) continue;

                    const bool tone2 = obj.texture && (ox * split_x + oy * split_y) >= 0.0;
                    const Color& col = tone2 ? secondary : base;
                    std::uint8_t* px = frame.px(r, c);
                    px[0] = col[0];
                    px[1] = col[1];
                    px[2] = col[2];
                    id_buf[size_t(r) * sc.width + c] = int(oi);
                }
        }

        for (const Occluder& occ : sc.occluders) {
            const int rr0 = std::max(0, occ.rect.y);
            const int rr1 = std::min(sc.height, occ.rect.y + occ.rect.h);
            const int cc0 = std::max(0, occ.rect.x);
            const int cc1 = std::min(sc.width, occ.rect.x + occ.rect.w);
            for (int r = rr0; r < rr1; ++r)
                for (int c = cc0; c < cc1; ++c) {
                    std::uint8_t* px = frame.px(r, c);
                    px[0] = occ.color[0];
                    px[1] = occ.color[1];
                    px[2] = occ.color[2];
                    id_buf[size_t(r) * sc.width + c] = -2;
                }
        }

        for (size_t oi = 0; oi < sc.objects.size(); ++oi) {
            BinaryMask m(sc.width, sc.height);
            for (int r = 0; r < sc.height; ++r)
                for (int c = 0; c < sc.width; ++c)
                    if (id_buf[size_t(r) * sc.width + c] == int(oi)) m.set(r, c);
            video.gt.masks[sc.objects[oi].id].push_back(std::move(m));
        }
        video.frames.push_back(std::move(frame));
    }

    // event soundness: the target is empty exactly during disappearance events
    const ObjectScript* target = nullptr;
    for (const auto& obj : sc.objects)
        if (obj.is_target) target = &obj;
    const auto& target_seq = video.gt.masks.at(target->id);
    for (int f = 0; f < sc.num_frames; ++f) {
        const bool should_be_gone = detail::disappearance_active(*target, f);
        const bool is_gone = target_seq[size_t(f)].empty();
        if (should_be_gone && !is_gone)
            throw InvalidScenario("target visible at frame " + std::to_string(f) +
                                  " despite an active disappearance event (occluder too small?)");
        if (!should_be_gone && is_gone)
            throw InvalidScenario("target fully hidden at frame " + std::to_string(f) +
                                  " without a disappearance event");
    }
    return video;
}

}  // namespace anchormine
