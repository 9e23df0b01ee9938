#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"
#include "anchormine/mask.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/rng.hpp"

namespace anchormine {

// A detected same-category object in one frame.
struct Candidate {
    int frame_idx = 0;
    std::string instance_id;
    BBox bbox;
    RleMask mask;
    double det_score = 0.0;
};

// Per-frame same-category candidates for a whole clip. Frame 0 stays empty
// unless explicitly requested (its ground truth already anchors it).
class Detector {
public:
    virtual ~Detector() = default;

    virtual std::vector<std::vector<Candidate>> detect(const std::vector<FrameImage>& frames,
                                                       const BinaryMask& first_frame_target,
                                                       bool include_frame0 = false) const = 0;
};

// Replays candidates recorded by a real detector. JSON Lines, one per line:
//   {"frame": int, "id": str, "bbox": [x,y,w,h],
//    "rle": {"size":[H,W],"counts":[...]}, "det_score": float}
class FileDetector final : public Detector {
public:
    static FileDetector load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open detections file '" + path.string() + "'");
        FileDetector fd;
        std::string line;
        long long line_num = 0;
        while (std::getline(in, line)) {
            ++line_num;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(line_num, e.what());
            }
            Candidate cand;
            try {
                cand.frame_idx = j.at("frame").get<int>();
                cand.instance_id = j.at("id").get<std::string>();
                const auto& box = j.at("bbox");
                if (!box.is_array() || box.size() != 4)
                    throw ParseError(line_num, "bbox must be [x,y,w,h]");
                cand.bbox = BBox{box.at(0).get<int>(), box.at(1).get<int>(), box.at(2).get<int>(),
                                 box.at(3).get<int>()};
                cand.mask = rle_from_json(j.at("rle"));
                cand.det_score = j.at("det_score").get<double>();
            } catch (const ParseError&) {
                throw;
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(line_num, e.what());
            }
            validate(cand, line_num);
            fd.by_frame_[cand.frame_idx].push_back(std::move(cand));
        }
        // replay order: det_score descending, id ascending within a frame
        for (auto& [frame, list] : fd.by_frame_) {
            std::stable_sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
                if (a.det_score != b.det_score) return a.det_score > b.det_score;
                return a.instance_id < b.instance_id;
            });
        }
        return fd;
    }

    std::vector<std::vector<Candidate>> detect(const std::vector<FrameImage>& frames,
                                               const BinaryMask& /*first_frame_target*/,
                                               bool include_frame0 = false) const override {
        std::vector<std::vector<Candidate>> out(frames.size());
        for (const auto& [frame, list] : by_frame_) {
            if (frame < 0 || size_t(frame) >= out.size()) continue;
            if (frame == 0 && !include_frame0) continue;
            out[frame] = list;
        }
        return out;
    }

    size_t record_count() const {
        size_t n = 0;
        for (const auto& [frame, list] : by_frame_) n += list.size();
        return n;
    }

private:
    static void validate(const Candidate& cand, long long line_num) {
        if (cand.frame_idx < 0) throw ParseError(line_num, "negative frame index");
        if (cand.det_score < 0.0 || cand.det_score > 1.0)
            throw ParseError(line_num, "det_score outside [0,1]");
        BinaryMask dense;
        try {
            dense = rle_decode(cand.mask);
        } catch (const CountsMismatch& e) {
            throw ParseError(line_num, e.what());
        }
        const auto box = bbox_of(dense);
        if (!box) throw ParseError(line_num, "candidate mask is empty");
        if (!cand.bbox.contains(*box))
            throw ParseError(line_num, "bbox does not contain the mask's tight box");
        if (cand.bbox.x < 0 || cand.bbox.y < 0 || cand.bbox.x + cand.bbox.w > dense.width() ||
            cand.bbox.y + cand.bbox.h > dense.height())
            throw ParseError(line_num, "bbox outside frame bounds");
    }

    std::map<int, std::vector<Candidate>> by_frame_;
};

struct JitterParams {
    double radius = 0.0;     // max erosion/dilation radius, pixels
    double drop_prob = 0.0;  // probability a candidate is dropped entirely
    std::uint64_t seed = 0;
};

// Ground-truth instance masks for a synthetic clip, one sequence per object.
struct GroundTruth {
    std::map<std::string, std::vector<BinaryMask>> masks;
    std::string target_id;
    int num_frames = 0;

    const std::vector<BinaryMask>& target_sequence() const {
        const auto it = masks.find(target_id);
        if (it == masks.end()) throw Error("ground truth has no target '" + target_id + "'");
        return it->second;
    }
};

// Desk-scale detector stand-in: emits every instance's ground-truth mask,
// optionally perturbed by seeded jitter (erode/dilate by a random radius
// <= jitter.radius, dropped with probability drop_prob). det_score is the
// IoU of the jittered mask against the clean one, so jitter strength stays
// observable downstream. Jitter that empties a mask drops the candidate.
class OracleDetector final : public Detector {
public:
    OracleDetector(GroundTruth gt, JitterParams jitter)
        : gt_(std::move(gt)), jitter_(jitter) {}

    std::vector<std::vector<Candidate>> detect(const std::vector<FrameImage>& frames,
                                               const BinaryMask& /*first_frame_target*/,
                                               bool include_frame0 = false) const override {
        std::vector<std::vector<Candidate>> out(frames.size());
        for (size_t f = 0; f < frames.size(); ++f) {
            if (f == 0 && !include_frame0) continue;
            for (const auto& [id, seq] : gt_.masks) {
                if (f >= seq.size()) continue;
                const BinaryMask& clean = seq[f];
                if (clean.empty()) continue;
                // one stream per (frame, instance): iteration order never
                // changes the draws another candidate sees
                Rng rng(jitter_.seed, "jitter/" + std::to_string(f) + "/" + id);
                if (jitter_.drop_prob > 0 && rng.next_bool(jitter_.drop_prob)) continue;
                BinaryMask noisy = clean;
                if (jitter_.radius > 0) {
                    const auto r = double(rng.next_int(0, std::int64_t(jitter_.radius)));
                    const bool grow = rng.next_bool(0.5);
                    noisy = grow ? dilate(clean, r) : erode(clean, r);
                    if (noisy.empty()) continue;
                }
                Candidate cand;
                cand.frame_idx = int(f);
                cand.instance_id = id;
                cand.bbox = *bbox_of(noisy);
                cand.mask = rle_encode(noisy);
                cand.det_score = iou(noisy, clean);
                out[f].push_back(std::move(cand));
            }
            std::stable_sort(out[f].begin(), out[f].end(),
                             [](const Candidate& a, const Candidate& b) {
                                 if (a.det_score != b.det_score) return a.det_score > b.det_score;
                                 return a.instance_id < b.instance_id;
                             });
        }
        return out;
    }

private:
    GroundTruth gt_;
    JitterParams jitter_;
};

}  // namespace anchormine
