#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/d4.hpp"
#include "anchormine/detect.hpp"
#include "anchormine/embed.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

struct CropParams {
    double pad_ratio = 0.1;
    int patch_side = 16;
};

struct PoolEntry {
    D4 transform = D4::identity;
    Embedding vec;
};

// Embeddings of the first-frame target under its configured transform set.
struct TargetFeaturePool {
    int source_frame = 0;
    int patch_side = 16;
    std::vector<PoolEntry> entries;
};

inline Patch target_patch(const FrameImage& frame, const BinaryMask& mask, CropParams params) {
    return resize_patch(masked_crop(frame, mask, params.pad_ratio), params.patch_side);
}

// Build the transformation-aware pool from the first-frame target. The crop is
// resized once and then permuted, so every variant is an exact pixel
// permutation of the base patch. The identity transform is always included.
// A lookup-only embedder resolves entries from its frame -1 records, keyed by
// transform name.
inline TargetFeaturePool build_pool(const FrameImage& first_frame, const BinaryMask& target_mask,
                                    const Embedder& embedder, const std::vector<D4>& transforms,
                                    CropParams params) {
    TargetFeaturePool pool;
    pool.source_frame = 0;
    pool.patch_side = params.patch_side;

    std::vector<D4> wanted;
    for (D4 t : kD4All) {
        const bool requested = std::find(transforms.begin(), transforms.end(), t) != transforms.end();
        if (t == D4::identity || requested) wanted.push_back(t);
    }

    if (embedder.can_embed()) {
        const Patch base = target_patch(first_frame, target_mask, params);
        for (D4 t : wanted)
            pool.entries.push_back({t, embedder.embed(d4_apply(base, t))});
    } else {
        for (D4 t : wanted)
            pool.entries.push_back({t, embedder.lookup(-1, std::string(d4_name(t)))});
    }
    return pool;
}

// A candidate scored against the pool.
struct MatchScore {
    Candidate candidate;
    double score = -1.0;
    D4 best_transform = D4::identity;
};

struct PoolMatch {
    double score = -1.0;
    D4 best_transform = D4::identity;
};

// Max cosine over pool entries; ties resolve to the earliest entry in the
// pool's canonical transform order.
inline PoolMatch score_candidate(const Embedding& vec, const TargetFeaturePool& pool) {
    if (pool.entries.empty()) throw Error("cannot score against an empty pool");
    PoolMatch best;
    bool first = true;
    for (const auto& entry : pool.entries) {
        const double s = cosine(vec, entry.vec);
        if (first || s > best.score) {
            best.score = s;
            best.best_transform = entry.transform;
            first = false;
        }
    }
    return best;
}

struct ScoreAllResult {
    std::vector<MatchScore> scores;  // sorted: score desc, frame asc, id asc
    std::vector<std::string> warnings;
};

// Score every candidate against the pool. Candidate patches are built from the
// candidate's own frame and mask with the same crop parameters as the pool; no
// transform is applied to candidates. Candidates whose mask decodes empty are
// skipped with a warning.
inline ScoreAllResult score_all(const std::vector<FrameImage>& frames,
                                const std::vector<std::vector<Candidate>>& candidates_per_frame,
                                const TargetFeaturePool& pool, const Embedder& embedder,
                                CropParams params) {
    ScoreAllResult result;
    for (size_t f = 0; f < candidates_per_frame.size(); ++f) {
        for (const Candidate& cand : candidates_per_frame[f]) {
            const BinaryMask dense = rle_decode(cand.mask);
            if (dense.empty()) {
                result.warnings.push_back("skipped empty-mask candidate frame " +
                                          std::to_string(cand.frame_idx) + " id '" +
                                          cand.instance_id + "'");
                continue;
            }
            Embedding vec;
            if (embedder.can_embed()) {
                if (size_t(cand.frame_idx) >= frames.size())
                    throw LengthMismatch("candidate frame " + std::to_string(cand.frame_idx) +
                                         " outside clip of " + std::to_string(frames.size()) +
                                         " frames");
                vec = embedder.embed(
                    target_patch(frames[cand.frame_idx], dense, params));
            } else {
                vec = embedder.lookup(cand.frame_idx, cand.instance_id);
            }
            const PoolMatch match = score_candidate(vec, pool);
            result.scores.push_back({cand, match.score, match.best_transform});
        }
    }
    std::stable_sort(result.scores.begin(), result.scores.end(),
                     [](const MatchScore& a, const MatchScore& b) {
                         if (a.score != b.score) return a.score > b.score;
                         if (a.candidate.frame_idx != b.candidate.frame_idx)
                             return a.candidate.frame_idx < b.candidate.frame_idx;
                         return a.candidate.instance_id < b.candidate.instance_id;
                     });
    return result;
}

inline nlohmann::json pool_to_json(const TargetFeaturePool& pool) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : pool.entries)
        entries.push_back({{"transform", d4_name(e.transform)}, {"vec", e.vec}});
    return nlohmann::json{{"format_version", kFormatVersion},
                          {"source_frame", pool.source_frame},
                          {"patch_side", pool.patch_side},
                          {"entries", entries}};
}

inline TargetFeaturePool pool_from_json(const nlohmann::json& j) {
    TargetFeaturePool pool;
    try {
        pool.source_frame = j.at("source_frame").get<int>();
        pool.patch_side = j.at("patch_side").get<int>();
        for (const auto& e : j.at("entries")) {
            const auto t = d4_from_name(e.at("transform").get<std::string>());
            if (!t) throw ParseError("unknown transform '" + e.at("transform").get<std::string>() + "'");
            pool.entries.push_back({*t, normalized(e.at("vec").get<Embedding>())});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pool json: ") + e.what());
    }
    return pool;
}

}  // namespace anchormine
