#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/errors.hpp"
#include "anchormine/rng.hpp"
#include "anchormine/synth.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

// ---- scenario.json -------------------------------------------------------

namespace detail {

inline nlohmann::json color_to_json(const Color& c) {
    return nlohmann::json::array({c[0], c[1], c[2]});
}

inline Color color_from_json(const nlohmann::json& j) {
    return Color{j.at(0).get<std::uint8_t>(), j.at(1).get<std::uint8_t>(),
                 j.at(2).get<std::uint8_t>()};
}

inline const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::offscreen: return "offscreen";
        case EventKind::behind_occluder: return "behind_occluder";
        case EventKind::hue_shift: return "hue_shift";
        case EventKind::rotate: return "rotate";
        case EventKind::scale_change: return "scale_change";
    }
    return "?";
}

inline EventKind event_kind_from_name(const std::string& s) {
    if (s == "offscreen") return EventKind::offscreen;
    if (s == "behind_occluder") return EventKind::behind_occluder;
    if (s == "hue_shift") return EventKind::hue_shift;
    if (s == "rotate") return EventKind::rotate;
    if (s == "scale_change") return EventKind::scale_change;
    throw ParseError("unknown event kind '" + s + "'");
}

}  // namespace detail

inline nlohmann::json scenario_to_json(const Scenario& sc) {
    nlohmann::json objects = nlohmann::json::array();
    for (const auto& obj : sc.objects) {
        nlohmann::json shape;
        if (std::holds_alternative<EllipseShape>(obj.shape)) {
            const auto& e = std::get<EllipseShape>(obj.shape);
            shape = {{"kind", "ellipse"}, {"rx", e.rx}, {"ry", e.ry}};
        } else {
            const auto& p = std::get<PolygonShape>(obj.shape);
            shape = {{"kind", "polygon"}, {"verts", p.verts}};
        }
        nlohmann::json keyframes = nlohmann::json::array();
        for (const auto& kf : obj.keyframes)
            keyframes.push_back(
                {{"frame", kf.frame}, {"cx", kf.cx}, {"cy", kf.cy}, {"scale", kf.scale}});
        nlohmann::json events = nlohmann::json::array();
        for (const auto& ev : obj.events)
            events.push_back({{"kind", detail::event_kind_name(ev.kind)},
                              {"t0", ev.t0},
                              {"t1", ev.t1},
                              {"value", ev.value},
                              {"occluder", ev.occluder_idx}});
        nlohmann::json jo = {{"id", obj.id},
                             {"is_target", obj.is_target},
                             {"shape", shape},
                             {"base_color", detail::color_to_json(obj.base_color)},
                             {"keyframes", keyframes},
                             {"events", events}};
        if (obj.texture)
            jo["texture"] = {{"secondary", detail::color_to_json(obj.texture->secondary)},
                             {"split_angle_deg", obj.texture->split_angle_deg}};
        objects.push_back(std::move(jo));
    }
    nlohmann::json occluders = nlohmann::json::array();
    for (const auto& occ : sc.occluders)
        occluders.push_back(
            {{"rect", {occ.rect.x, occ.rect.y, occ.rect.w, occ.rect.h}},
             {"color", detail::color_to_json(occ.color)}});
    return nlohmann::json{{"format_version", kFormatVersion},
                          {"video_id", sc.video_id},
                          {"seed", sc.seed},
                          {"width", sc.width},
                          {"height", sc.height},
                          {"num_frames", sc.num_frames},
                          {"background",
                           {{"base", detail::color_to_json(sc.background.base)},
                            {"amplitude", sc.background.amplitude}}},
                          {"objects", objects},
                          {"occluders", occluders}};
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario sc;
    try {
        sc.video_id = j.at("video_id").get<std::string>();
        sc.seed = j.at("seed").get<std::uint64_t>();
        sc.width = j.at("width").get<int>();
        sc.height = j.at("height").get<int>();
        sc.num_frames = j.at("num_frames").get<int>();
        sc.background.base = detail::color_from_json(j.at("background").at("base"));
        sc.background.amplitude = j.at("background").at("amplitude").get<int>();
        for (const auto& jo : j.at("objects")) {
            ObjectScript obj;
            obj.id = jo.at("id").get<std::string>();
            obj.is_target = jo.at("is_target").get<bool>();
            const auto& shape = jo.at("shape");
            if (shape.at("kind") == "ellipse")
                obj.shape = EllipseShape{shape.at("rx").get<double>(), shape.at("ry").get<double>()};
            else
                obj.shape = PolygonShape{
                    shape.at("verts").get<std::vector<std::array<double, 2>>>()};
            obj.base_color = detail::color_from_json(jo.at("base_color"));
            if (jo.contains("texture"))
                obj.texture =
                    TwoTone{detail::color_from_json(jo.at("texture").at("secondary")),
                            jo.at("texture").at("split_angle_deg").get<double>()};
            for (const auto& jk : jo.at("keyframes"))
                obj.keyframes.push_back({jk.at("frame").get<int>(), jk.at("cx").get<double>(),
                                         jk.at("cy").get<double>(), jk.at("scale").get<double>()});
            for (const auto& je : jo.at("events"))
                obj.events.push_back(
                    {detail::event_kind_from_name(je.at("kind").get<std::string>()),
                     je.at("t0").get<int>(), je.at("t1").get<int>(), je.at("value").get<double>(),
                     je.at("occluder").get<int>()});
            sc.objects.push_back(std::move(obj));
        }
        for (const auto& jo : j.at("occluders")) {
            Occluder occ;
            const auto& r = jo.at("rect");
            occ.rect = BBox{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
                            r.at(3).get<int>()};
            occ.color = detail::color_from_json(jo.at("color"));
            sc.occluders.push_back(occ);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario json: ") + e.what());
    }
    return sc;
}

// ---- preset families -------------------------------------------------------
//
// All families render 120 frames at 128x128. Colors are fixed per family;
// seeds vary geometry (shape jitter, lanes, speeds) only, so the similarity
// margins the families are built around hold across seeds.
//
//   baseline           one textured target, gentle drift, no events
//   disappear_reappear target leaves the frame mid-video and returns unchanged
//   transform          in-place 180-degree rotation + 75-degree hue shift
//   distractor         three same-shape same-color clones in parallel lanes
//   combined           every event type: the target exits at frame 20, returns
//                      at frame 50 rotated 180 degrees and hue-shifted 60
//                      degrees, grows 1.25x, and hides behind an occluder for
//                      frames 84..95; three hue-offset same-shape distractors
//                      (+105, -105, +165 degrees) run in lower lanes. The
//                      transformation completes while the target is hidden, so
//                      a post-transformation anchor is the only way to
//                      re-acquire it.

inline const std::vector<std::string>& preset_families() {
    static const std::vector<std::string> families = {
        "baseline", "disappear_reappear", "transform", "distractor", "combined"};
    return families;
}

namespace detail {

inline Color scale_color(Color c, double f) {
    auto s = [f](std::uint8_t v) {
        return std::uint8_t(std::clamp<long>(std::lround(v * f), 0, 255));
    };
    return {s(c[0]), s(c[1]), s(c[2])};
}

// Scalene triangle with seeded vertex jitter; asymmetric by construction so
// orientation is observable.
inline PolygonShape jittered_triangle(Rng& rng) {
    PolygonShape poly;
    auto jitter = [&rng] { return rng.next_double(-1.5, 1.5); };
    poly.verts = {{-12.0 + jitter(), -9.0 + jitter()},
                  {13.0 + jitter(), -4.0 + jitter()},
                  {-4.0 + jitter(), 12.0 + jitter()}};
    return poly;
}

inline ObjectScript drifting_object(const std::string& id, bool is_target, Shape shape,
                                    Color base, double lane_y, double x0, double x1,
                                    int num_frames) {
    ObjectScript obj;
    obj.id = id;
    obj.is_target = is_target;
    obj.shape = std::move(shape);
    obj.base_color = base;
    obj.texture = TwoTone{scale_color(base, 0.45), 90.0};
    obj.keyframes = {{0, x0, lane_y, 1.0}, {num_frames - 1, x1, lane_y, 1.0}};
    return obj;
}

}  // namespace detail

inline Scenario preset(const std::string& family, std::uint64_t seed) {
    const auto& families = preset_families();
    if (std::find(families.begin(), families.end(), family) == families.end())
        throw UnknownFamily(family);

    Scenario sc;
    sc.video_id = family + "_" + std::to_string(seed);
    sc.seed = seed;
    sc.width = 128;
    sc.height = 128;
    sc.num_frames = 120;
    sc.background = NoiseBackground{{110, 110, 110}, 12};

    Rng rng(seed, "preset/" + family);
    const Color target_base{210, 60, 50};
    const int n = sc.num_frames;

    if (family == "baseline") {
        auto target = detail::drifting_object("target", true,
                                              EllipseShape{13 + rng.next_double(-2, 2),
                                                           8 + rng.next_double(-1.5, 1.5)},
                                              target_base, 56 + rng.next_double(-12, 12),
                                              34 + rng.next_double(-6, 6),
                                              94 + rng.next_double(-6, 6), n);
        sc.objects.push_back(std::move(target));
        return sc;
    }

    if (family == "disappear_reappear") {
        auto target = detail::drifting_object("target", true, detail::jittered_triangle(rng),
                                              target_base, 52 + rng.next_double(-10, 10),
                                              30 + rng.next_double(-6, 6),
                                              96 + rng.next_double(-6, 6), n);
        target.events.push_back({EventKind::offscreen, 45, 74, 0.0, 0});
        sc.objects.push_back(std::move(target));
        return sc;
    }

    if (family == "transform") {
        auto target = detail::drifting_object("target", true, detail::jittered_triangle(rng),
                                              target_base, 56 + rng.next_double(-10, 10),
                                              38 + rng.next_double(-6, 6),
                                              90 + rng.next_double(-6, 6), n);
        target.events.push_back({EventKind::rotate, 30, 85, 180.0, 0});
        target.events.push_back({EventKind::hue_shift, 30, 85, 75.0, 0});
        sc.objects.push_back(std::move(target));
        return sc;
    }

    if (family == "distractor") {
        const PolygonShape tri = detail::jittered_triangle(rng);
        const double lanes[4] = {24, 56, 88, 112};
        for (int i = 0; i < 3; ++i) {
            auto d = detail::drifting_object(
                "d" + std::to_string(i + 1), false, tri, target_base,
                lanes[i] + rng.next_double(-4, 4),
                30 + rng.next_double(-8, 8), 90 + rng.next_double(-8, 8), n);
            if (i == 1) std::swap(d.keyframes[0].cx, d.keyframes[1].cx);  // opposite direction
            sc.objects.push_back(std::move(d));
        }
        auto target = detail::drifting_object("target", true, tri, target_base,
                                              lanes[3] - 8 + rng.next_double(-4, 4),
                                              34 + rng.next_double(-8, 8),
                                              92 + rng.next_double(-8, 8), n);
        sc.objects.push_back(std::move(target));
        return sc;
    }

    // combined
    const PolygonShape tri = detail::jittered_triangle(rng);
    const double distractor_hues[3] = {105.0, -105.0, 165.0};
    const double lanes[3] = {76, 96, 114};
    for (int i = 0; i < 3; ++i) {
        auto d = detail::drifting_object(
            "d" + std::to_string(i + 1), false, tri,
            detail::hue_rotate(target_base, distractor_hues[i]),
            lanes[i] + rng.next_double(-2, 2), 30 + rng.next_double(-8, 8),
            90 + rng.next_double(-8, 8), n);
        d.texture->secondary = detail::hue_rotate(
            detail::scale_color(target_base, 0.45), distractor_hues[i]);
        if (i == 1) std::swap(d.keyframes[0].cx, d.keyframes[1].cx);
        sc.objects.push_back(std::move(d));
    }

    sc.occluders.push_back(Occluder{BBox{84, 76, 40, 40}, {70, 60, 80}});

    auto target = detail::drifting_object("target", true, tri, target_base,
                                          36 + rng.next_double(-4, 4),
                                          30 + rng.next_double(-5, 5),
                                          98 + rng.next_double(-5, 5), n);
    target.events.push_back({EventKind::offscreen, 20, 49, 0.0, 0});
    target.events.push_back({EventKind::rotate, 20, 49, 180.0, 0});
    target.events.push_back({EventKind::hue_shift, 20, 49, 60.0, 0});
    target.events.push_back({EventKind::scale_change, 60, 100, 1.25, 0});
    target.events.push_back({EventKind::behind_occluder, 84, 95, 0.0, 0});
    sc.objects.push_back(std::move(target));
    return sc;
}

}  // namespace anchormine
