#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/detect.hpp"
#include "anchormine/embed.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/pool.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/select.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

struct TrackerParams {
    double tau_track = 0.6;  // accept threshold for emitting a match
    double tau_mem = 0.8;    // admission threshold for rolling memory
    int mem_capacity = 4;    // rolling FIFO size; anchors are never evicted
    CropParams crop;

    void validate() const {
        if (tau_mem < tau_track) throw Error("tracker params: tau_mem must be >= tau_track");
        if (mem_capacity < 0) throw Error("tracker params: mem_capacity must be >= 0");
    }
};

enum class FrameTag { anchor, matched, absent };

inline const char* frame_tag_name(FrameTag t) {
    switch (t) {
        case FrameTag::anchor: return "anchor";
        case FrameTag::matched: return "matched";
        case FrameTag::absent: return "absent";
    }
    return "?";
}

struct TrackResult {
    std::vector<RleMask> masks;            // per frame; empty mask when absent
    std::vector<double> scores;            // accepted (or best rejected) score
    std::vector<FrameTag> tags;
    std::vector<std::string> instance_ids;  // matched candidate id; "" otherwise
    int max_rolling_size = 0;              // high-water mark of the rolling FIFO
};

namespace detail {

struct MemoryEntry {
    int frame_idx = 0;
    Embedding vec;
    bool is_anchor = false;
};

}  // namespace detail

// Multi-anchor memory propagation. All schedule anchors are embedded and
// installed as permanent memory before the sweep, so they guide every frame,
// including frames before their own index. Unprompted frames are resolved by
// matching detector candidates against memory: best cosine >= tau_track emits
// the candidate's mask; >= tau_mem additionally admits it to a FIFO rolling
// memory of capacity mem_capacity. Anchor frames emit their anchor mask
// verbatim.
inline TrackResult propagate(const std::vector<FrameImage>& frames, const PromptSchedule& schedule,
                             const Detector& detector, const Embedder& embedder,
                             const TrackerParams& params) {
    params.validate();
    if (frames.empty()) throw LengthMismatch("propagate: no frames");
    if (!embedder.can_embed())
        throw Error("propagate requires a patch-capable embedder (candidate crops are embedded "
                    "from pixels)");
    if (schedule.anchors.empty() || schedule.anchors.front().frame_idx != 0)
        throw Error("propagate: schedule must contain the first-frame anchor");

    const int num_frames = int(frames.size());
    for (const Anchor& a : schedule.anchors)
        if (a.frame_idx < 0 || a.frame_idx >= num_frames)
            throw LengthMismatch("schedule anchor at frame " + std::to_string(a.frame_idx) +
                                 " outside clip of " + std::to_string(num_frames) + " frames");

    // anchors become permanent memory before the temporal sweep
    std::vector<detail::MemoryEntry> anchor_memory;
    for (const Anchor& a : schedule.anchors) {
        const BinaryMask dense = rle_decode(a.mask);
        if (dense.empty())
            throw EmptyMask("schedule anchor at frame " + std::to_string(a.frame_idx));
        anchor_memory.push_back(
            {a.frame_idx,
             embedder.embed(target_patch(frames[size_t(a.frame_idx)], dense, params.crop)),
             true});
    }

    const BinaryMask first_mask = rle_decode(schedule.anchors.front().mask);
    const auto candidates = detector.detect(frames, first_mask, /*include_frame0=*/false);

    TrackResult result;
    result.masks.resize(size_t(num_frames));
    result.scores.assign(size_t(num_frames), 0.0);
    result.tags.assign(size_t(num_frames), FrameTag::absent);
    result.instance_ids.assign(size_t(num_frames), "");

    std::deque<detail::MemoryEntry> rolling;

    for (int f = 0; f < num_frames; ++f) {
        if (const Anchor* anchor = schedule.anchor_at(f)) {
            result.masks[size_t(f)] = anchor->mask;
            result.scores[size_t(f)] = anchor->score;
            result.tags[size_t(f)] = FrameTag::anchor;
            continue;
        }

        const RleMask empty = rle_encode(BinaryMask(frames[size_t(f)].width,
                                                    frames[size_t(f)].height));
        double best_score = 0.0;
        const Candidate* best_cand = nullptr;
        Embedding best_vec;
        bool have_any = false;

        for (const Candidate& cand : candidates[size_t(f)]) {
            const BinaryMask dense = rle_decode(cand.mask);
            if (dense.empty()) continue;
            const Embedding vec =
                embedder.embed(target_patch(frames[size_t(f)], dense, params.crop));
            double s = -1.0;
            for (const auto& entry : anchor_memory) s = std::max(s, cosine(vec, entry.vec));
            for (const auto& entry : rolling) s = std::max(s, cosine(vec, entry.vec));
            // deterministic winner: higher score, then lower instance id
            if (!have_any || s > best_score ||
                (s == best_score && cand.instance_id < best_cand->instance_id)) {
                best_score = s;
                best_cand = &cand;
                best_vec = vec;
                have_any = true;
            }
        }

        if (have_any && best_score >= params.tau_track) {
            result.masks[size_t(f)] = best_cand->mask;
            result.scores[size_t(f)] = best_score;
            result.tags[size_t(f)] = FrameTag::matched;
            result.instance_ids[size_t(f)] = best_cand->instance_id;
            if (best_score >= params.tau_mem && params.mem_capacity > 0) {
                rolling.push_back({f, best_vec, false});
                if (int(rolling.size()) > params.mem_capacity) rolling.pop_front();
                result.max_rolling_size =
                    std::max(result.max_rolling_size, int(rolling.size()));
            }
        } else {
            result.masks[size_t(f)] = empty;
            result.scores[size_t(f)] = have_any ? best_score : 0.0;
            result.tags[size_t(f)] = FrameTag::absent;
        }
    }
    return result;
}

// First-frame-only propagation: identical to propagate with a schedule holding
// just the frame-0 anchor.
inline TrackResult propagate_baseline(const std::vector<FrameImage>& frames,
                                      const BinaryMask& first_frame_mask,
                                      const Detector& detector, const Embedder& embedder,
                                      const TrackerParams& params) {
    PromptSchedule schedule = build_schedule("baseline", rle_encode(first_frame_mask), {});
    return propagate(frames, schedule, detector, embedder, params);
}

inline nlohmann::json track_to_json(const TrackResult& result) {
    nlohmann::json frames = nlohmann::json::array();
    for (size_t f = 0; f < result.masks.size(); ++f) {
        nlohmann::json jf = {{"frame", f},
                             {"tag", frame_tag_name(result.tags[f])},
                             {"score", result.scores[f]}};
        if (result.instance_ids[f].empty())
            jf["instance_id"] = nullptr;
        else
            jf["instance_id"] = result.instance_ids[f];
        frames.push_back(std::move(jf));
    }
    return nlohmann::json{{"format_version", kFormatVersion}, {"frames", frames}};
}

}  // namespace anchormine
