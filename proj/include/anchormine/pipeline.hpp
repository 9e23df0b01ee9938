#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/config.hpp"
#include "anchormine/dataset.hpp"
#include "anchormine/detect.hpp"
#include "anchormine/embed.hpp"
#include "anchormine/metrics.hpp"
#include "anchormine/pool.hpp"
#include "anchormine/select.hpp"
#include "anchormine/synth.hpp"
#include "anchormine/track.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

// Stage-1 mining: pool -> scores -> temporally diverse anchors -> schedule.
// Returns everything the CLI wants to persist (schedule, audit scores, pool,
// warnings).
struct MineResult {
    PromptSchedule schedule;
    std::vector<MatchScore> scores;
    TargetFeaturePool pool;
    std::vector<std::string> warnings;
};

inline MineResult mine(const std::vector<FrameImage>& frames, const BinaryMask& first_frame_mask,
                       const Detector& detector, const Embedder& embedder,
                       const PipelineConfig& cfg, const std::string& video_id) {
    if (first_frame_mask.empty()) throw EmptyMask("first-frame target mask");
    MineResult result;
    result.pool = build_pool(frames.at(0), first_frame_mask, embedder, cfg.transforms, cfg.crop);
    const auto candidates = detector.detect(frames, first_frame_mask);
    auto scored = score_all(frames, candidates, result.pool, embedder, cfg.crop);
    result.warnings = std::move(scored.warnings);
    result.scores = std::move(scored.scores);
    const auto mined = select_anchors(result.scores, cfg.select);
    if (mined.empty())
        result.warnings.push_back(
            "no candidate cleared theta; schedule degenerates to first-frame-only");
    result.schedule = build_schedule(video_id, rle_encode(first_frame_mask), mined);
    return result;
}

inline std::string scores_to_csv(const std::vector<MatchScore>& scores) {
    std::string out = "frame,id,score,best_transform\n";
    for (const auto& m : scores) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(6);
        os << m.candidate.frame_idx << ',' << m.candidate.instance_id << ',' << m.score << ','
           << d4_name(m.best_transform) << '\n';
        out += os.str();
    }
    return out;
}

// One full synthetic experiment: generate (or accept) a dataset, mine anchors,
// track with both the mined schedule and the first-frame-only baseline, and
// evaluate both against the target's ground truth.
struct ExperimentResult {
    PromptSchedule schedule;
    TrackResult mined_track;
    TrackResult baseline_track;
    VideoMetrics mined_metrics;
    VideoMetrics baseline_metrics;
    std::vector<std::string> warnings;
};

inline ExperimentResult run_experiment(const std::vector<FrameImage>& frames,
                                       const GroundTruth& gt, const Detector& detector,
                                       const Embedder& embedder, const PipelineConfig& cfg,
                                       const std::string& video_id) {
    const auto& target_seq = gt.target_sequence();
    if (target_seq.size() != frames.size())
        throw LengthMismatch("ground truth frames vs video frames");

    ExperimentResult result;
    auto mined = mine(frames, target_seq.at(0), detector, embedder, cfg, video_id);
    result.schedule = std::move(mined.schedule);
    result.warnings = std::move(mined.warnings);

    const TrackerParams tracker = cfg.tracker_params();
    result.mined_track = propagate(frames, result.schedule, detector, embedder, tracker);
    result.baseline_track =
        propagate_baseline(frames, target_seq.at(0), detector, embedder, tracker);

    result.mined_metrics =
        evaluate_video(result.mined_track, target_seq, cfg.eval_params(), video_id, gt.target_id);
    result.baseline_metrics = evaluate_video(result.baseline_track, target_seq, cfg.eval_params(),
                                             video_id, gt.target_id);
    return result;
}

// Convenience wrapper for preset-family experiments (used by the acceptance
// suite and `run --family ...`).
inline ExperimentResult run_family_experiment(const std::string& family, std::uint64_t seed,
                                              const PipelineConfig& cfg,
                                              const JitterParams& jitter = {}) {
    const Scenario scenario = preset(family, seed);
    const SynthVideo video = generate(scenario);
    const OracleDetector detector(video.gt, jitter);
    const PatchEmbedder embedder;
    return run_experiment(video.frames, video.gt, detector, embedder, cfg, scenario.video_id);
}

// Wall-clock stage timer for run manifests.
class StageTimer {
public:
    void start(const std::string& stage) {
        stage_ = stage;
        t0_ = std::chrono::steady_clock::now();
    }
    void stop() {
        const auto dt = std::chrono::steady_clock::now() - t0_;
        timings_[stage_] +=
            double(std::chrono::duration_cast<std::chrono::microseconds>(dt).count()) / 1000.0;
    }
    const std::map<std::string, double>& timings_ms() const { return timings_; }

private:
    std::string stage_;
    std::chrono::steady_clock::time_point t0_;
    std::map<std::string, double> timings_;
};

// Written at the end of every CLI run: config echo, inputs, timings, warnings.
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::map<std::string, std::string> inputs;
    std::map<std::string, double> timings_ms;
    std::vector<std::string> warnings;
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
    return nlohmann::json{{"format_version", kFormatVersion},
                          {"tool_version", kToolVersion},
                          {"command", m.command},
                          {"config", m.config},
                          {"inputs", m.inputs},
                          {"timings_ms", m.timings_ms},
                          {"warnings", m.warnings}};
}

}  // namespace anchormine
