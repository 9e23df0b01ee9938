#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/errors.hpp"
#include "anchormine/pool.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

struct SelectionParams {
    int k = 3;               // max mined anchors
    double theta_min = 0.5;  // minimum matching score
    int delta = 15;          // temporal suppression radius, frames
};

struct Anchor {
    enum class Source { first_frame, mined };

    int frame_idx = 0;
    RleMask mask;
    double score = 0.0;
    Source source = Source::mined;
};

inline const char* anchor_source_name(Anchor::Source s) {
    return s == Anchor::Source::first_frame ? "first_frame" : "mined";
}

// Greedy top-score scan with temporal suppression: accept a candidate iff its
// score clears theta_min, its frame is not 0, and it sits more than delta
// frames from every accepted anchor (which also rejects a second anchor on the
// same frame). Stops after k acceptances.
inline std::vector<Anchor> select_anchors(std::vector<MatchScore> scored,
                                          const SelectionParams& params) {
    std::stable_sort(scored.begin(), scored.end(), [](const MatchScore& a, const MatchScore& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.candidate.frame_idx != b.candidate.frame_idx)
            return a.candidate.frame_idx < b.candidate.frame_idx;
        return a.candidate.instance_id < b.candidate.instance_id;
    });

    std::vector<Anchor> out;
    for (const MatchScore& m : scored) {
        if (int(out.size()) >= params.k) break;
        if (m.score < params.theta_min) break;  // sorted: nothing later clears it
        const int frame = m.candidate.frame_idx;
        if (frame == 0) continue;
        bool suppressed = false;
        for (const Anchor& a : out)
            if (std::abs(frame - a.frame_idx) <= params.delta) {
                suppressed = true;
                break;
            }
        if (suppressed) continue;
        out.push_back({frame, m.candidate.mask, m.score, Anchor::Source::mined});
    }
    return out;
}

// The re-prompting contract: the first-frame ground truth plus the mined
// anchors, sorted by frame.
struct PromptSchedule {
    std::string video_id;
    std::vector<Anchor> anchors;  // sorted by frame_idx ascending

    const Anchor* anchor_at(int frame) const {
        for (const Anchor& a : anchors)
            if (a.frame_idx == frame) return &a;
        return nullptr;
    }

    int mined_count() const {
        int n = 0;
        for (const Anchor& a : anchors)
            if (a.source == Anchor::Source::mined) ++n;
        return n;
    }
};

inline PromptSchedule build_schedule(std::string video_id, RleMask first_frame_mask,
                                     const std::vector<Anchor>& mined) {
    PromptSchedule schedule;
    schedule.video_id = std::move(video_id);
    schedule.anchors.push_back({0, std::move(first_frame_mask), 1.0, Anchor::Source::first_frame});
    for (const Anchor& a : mined) {
        if (a.frame_idx < 1) throw DuplicateFrame(a.frame_idx);
        schedule.anchors.push_back(a);
    }
    std::stable_sort(schedule.anchors.begin(), schedule.anchors.end(),
                     [](const Anchor& a, const Anchor& b) { return a.frame_idx < b.frame_idx; });
    for (size_t i = 1; i < schedule.anchors.size(); ++i)
        if (schedule.anchors[i].frame_idx == schedule.anchors[i - 1].frame_idx)
            throw DuplicateFrame(schedule.anchors[i].frame_idx);
    return schedule;
}

inline nlohmann::json schedule_to_json(const PromptSchedule& schedule) {
    nlohmann::json anchors = nlohmann::json::array();
    for (const Anchor& a : schedule.anchors)
        anchors.push_back({{"frame", a.frame_idx},
                           {"score", a.score},
                           {"source", anchor_source_name(a.source)},
                           {"rle", rle_to_json(a.mask)}});
    return nlohmann::json{{"format_version", kFormatVersion},
                          {"video", schedule.video_id},
                          {"anchors", anchors}};
}

inline PromptSchedule schedule_from_json(const nlohmann::json& j) {
    PromptSchedule schedule;
    try {
        schedule.video_id = j.at("video").get<std::string>();
        for (const auto& ja : j.at("anchors")) {
            Anchor a;
            a.frame_idx = ja.at("frame").get<int>();
            a.score = ja.at("score").get<double>();
            const std::string src = ja.at("source").get<std::string>();
            if (src == "first_frame")
                a.source = Anchor::Source::first_frame;
            else if (src == "mined")
                a.source = Anchor::Source::mined;
            else
                throw ParseError("unknown anchor source '" + src + "'");
            a.mask = rle_from_json(ja.at("rle"));
            schedule.anchors.push_back(std::move(a));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("schedule json: ") + e.what());
    }
    if (!schedule.anchor_at(0) ||
        schedule.anchor_at(0)->source != Anchor::Source::first_frame)
        throw ParseError("schedule json: missing first_frame anchor at frame 0");
    std::stable_sort(schedule.anchors.begin(), schedule.anchors.end(),
                     [](const Anchor& a, const Anchor& b) { return a.frame_idx < b.frame_idx; });
    for (size_t i = 1; i < schedule.anchors.size(); ++i)
        if (schedule.anchors[i].frame_idx == schedule.anchors[i - 1].frame_idx)
            throw DuplicateFrame(schedule.anchors[i].frame_idx);
    return schedule;
}

}  // namespace anchormine
