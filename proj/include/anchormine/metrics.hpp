#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/errors.hpp"
#include "anchormine/mask.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/track.hpp"
#include "anchormine/version.hpp"

namespace anchormine {

// Region similarity J. Empty ground truth scores 1 for an empty prediction
// and 0 otherwise.
inline double region_j(const BinaryMask& pred, const BinaryMask& gt) {
    require_same_size(pred, gt, "region_j");
    if (gt.empty()) return pred.empty() ? 1.0 : 0.0;
    if (pred.empty()) return 0.0;
    return iou(pred, gt);
}

struct BoundaryF {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

// Dilated-boundary F-measure: precision is the fraction of predicted boundary
// pixels within `tolerance` (Euclidean) of the ground-truth boundary, recall
// is symmetric. Both masks empty scores 1; exactly one empty scores 0.
inline BoundaryF boundary_f(const BinaryMask& pred, const BinaryMask& gt, double tolerance) {
    require_same_size(pred, gt, "boundary_f");
    if (tolerance < 0) throw Error("boundary_f: tolerance must be >= 0");
    if (pred.empty() && gt.empty()) return {1.0, 1.0, 1.0};
    if (pred.empty() || gt.empty()) return {0.0, 0.0, 0.0};

    const BinaryMask bp = boundary(pred);
    const BinaryMask bg = boundary(gt);
    const BinaryMask bg_zone = dilate(bg, tolerance);
    const BinaryMask bp_zone = dilate(bp, tolerance);

    long long bp_total = 0, bp_hit = 0, bg_total = 0, bg_hit = 0;
    for (int r = 0; r < pred.height(); ++r)
        for (int c = 0; c < pred.width(); ++c) {
            if (bp.at(r, c)) {
                ++bp_total;
                if (bg_zone.at(r, c)) ++bp_hit;
            }
            if (bg.at(r, c)) {
                ++bg_total;
                if (bp_zone.at(r, c)) ++bg_hit;
            }
        }
    BoundaryF out;
    out.precision = double(bp_hit) / double(bp_total);
    out.recall = double(bg_hit) / double(bg_total);
    out.f = (out.precision + out.recall) > 0
                ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                : 0.0;
    return out;
}

// Long-standing VOS convention for the boundary tolerance.
inline double default_boundary_tol(int width, int height) {
    return std::ceil(0.008 * std::hypot(double(width), double(height)));
}

struct EvalParams {
    std::optional<double> boundary_tol;  // unset: ceil(0.8% of the image diagonal)
};

struct FrameEval {
    int frame_idx = 0;
    double j = 0.0;
    double f = 0.0;
    bool gt_empty = false;
    bool reappearance = false;
};

struct VideoMetrics {
    std::string video_id;
    std::string object_id;
    double j_mean = 0.0;
    double f_mean = 0.0;
    double jf = 0.0;
    std::optional<double> jf_d;  // mean over empty-GT frames; unset if none
    std::optional<double> jf_r;  // mean over reappearance frames; unset if none
    int n_frames = 0;            // evaluated frames (frame 0 excluded)
    int n_disappear = 0;
    int n_reappear = 0;
    std::vector<FrameEval> frames;
};

// Frame 0 is the prompt and is excluded from every mean. A reappearance frame
// is any non-empty-GT frame that follows at least one empty-GT frame.
inline VideoMetrics evaluate_video(const std::vector<BinaryMask>& pred,
                                   const std::vector<BinaryMask>& gt, EvalParams params,
                                   std::string video_id = "", std::string object_id = "") {
    if (pred.size() != gt.size())
        throw LengthMismatch("evaluate_video: " + std::to_string(pred.size()) + " predictions vs " +
                             std::to_string(gt.size()) + " ground-truth frames");
    if (pred.size() < 2) throw LengthMismatch("evaluate_video: need at least 2 frames");

    VideoMetrics vm;
    vm.video_id = std::move(video_id);
    vm.object_id = std::move(object_id);

    const double tol = params.boundary_tol
                           ? *params.boundary_tol
                           : default_boundary_tol(gt[0].width(), gt[0].height());

    double j_sum = 0, f_sum = 0, d_sum = 0, r_sum = 0;
    bool seen_empty = false;
    for (size_t f = 1; f < pred.size(); ++f) {
        FrameEval fe;
        fe.frame_idx = int(f);
        fe.gt_empty = gt[f].empty();
        fe.reappearance = !fe.gt_empty && seen_empty;
        if (fe.gt_empty) seen_empty = true;
        fe.j = region_j(pred[f], gt[f]);
        fe.f = boundary_f(pred[f], gt[f], tol).f;
        j_sum += fe.j;
        f_sum += fe.f;
        if (fe.gt_empty) {
            ++vm.n_disappear;
            d_sum += (fe.j + fe.f) / 2.0;
        }
        if (fe.reappearance) {
            ++vm.n_reappear;
            r_sum += (fe.j + fe.f) / 2.0;
        }
        ++vm.n_frames;
        vm.frames.push_back(fe);
    }
    vm.j_mean = j_sum / vm.n_frames;
    vm.f_mean = f_sum / vm.n_frames;
    vm.jf = (vm.j_mean + vm.f_mean) / 2.0;
    if (vm.n_disappear > 0) vm.jf_d = d_sum / vm.n_disappear;
    if (vm.n_reappear > 0) vm.jf_r = r_sum / vm.n_reappear;
    return vm;
}

inline VideoMetrics evaluate_video(const TrackResult& track, const std::vector<BinaryMask>& gt,
                                   EvalParams params, std::string video_id = "",
                                   std::string object_id = "") {
    std::vector<BinaryMask> pred;
    pred.reserve(track.masks.size());
    for (const RleMask& m : track.masks) pred.push_back(rle_decode(m));
    return evaluate_video(pred, gt, params, std::move(video_id), std::move(object_id));
}

// Dataset-level unweighted means over (video, object) rows; empty subsets are
// excluded from their column's mean.
struct DatasetReport {
    std::vector<VideoMetrics> videos;
    double j_mean = 0.0;
    double f_mean = 0.0;
    double jf = 0.0;
    std::optional<double> jf_d;
    std::optional<double> jf_r;
};

inline DatasetReport aggregate(const std::vector<VideoMetrics>& videos) {
    if (videos.empty()) throw EmptyDataset();
    DatasetReport report;
    report.videos = videos;
    double j = 0, f = 0, jf = 0, d = 0, r = 0;
    int nd = 0, nr = 0;
    for (const auto& vm : videos) {
        j += vm.j_mean;
        f += vm.f_mean;
        jf += vm.jf;
        if (vm.jf_d) {
            d += *vm.jf_d;
            ++nd;
        }
        if (vm.jf_r) {
            r += *vm.jf_r;
            ++nr;
        }
    }
    const double n = double(videos.size());
    report.j_mean = j / n;
    report.f_mean = f / n;
    report.jf = jf / n;
    if (nd > 0) report.jf_d = d / nd;
    if (nr > 0) report.jf_r = r / nr;
    return report;
}

namespace detail {

inline nlohmann::json opt_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace detail

inline nlohmann::json video_metrics_to_json(const VideoMetrics& vm) {
    return nlohmann::json{{"video", vm.video_id},
                          {"object", vm.object_id},
                          {"J", vm.j_mean},
                          {"F", vm.f_mean},
                          {"J&F", vm.jf},
                          {"J&F_d", detail::opt_to_json(vm.jf_d)},
                          {"J&F_r", detail::opt_to_json(vm.jf_r)},
                          {"n_frames", vm.n_frames},
                          {"n_disappear", vm.n_disappear},
                          {"n_reappear", vm.n_reappear}};
}

// JSON report. The F column is the dilated-boundary F-measure; the report
// says so explicitly so downstream consumers cannot mistake it for a
// benchmark-specific variant.
inline nlohmann::json report_to_json(const DatasetReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& vm : report.videos) rows.push_back(video_metrics_to_json(vm));
    return nlohmann::json{{"format_version", kFormatVersion},
                          {"boundary_f_definition", "F (dilated-boundary)"},
                          {"videos", rows},
                          {"dataset",
                           {{"J", report.j_mean},
                            {"F", report.f_mean},
                            {"J&F", report.jf},
                            {"J&F_d", detail::opt_to_json(report.jf_d)},
                            {"J&F_r", detail::opt_to_json(report.jf_r)},
                            {"n_videos", report.videos.size()}}}};
}

namespace detail {

inline std::string csv_num(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << v;
    return os.str();
}

inline std::string csv_opt(const std::optional<double>& v) { return v ? csv_num(*v) : ""; }

}  // namespace detail

// CSV report: one row per (video, object), dataset summary row last. Undefined
// subset columns are left empty.
inline std::string report_to_csv(const DatasetReport& report) {
    std::string out = "video,object,J,F,J&F,J&F_d,J&F_r,n_frames,n_disappear,n_reappear\n";
    int n_frames = 0, n_dis = 0, n_re = 0;
    for (const auto& vm : report.videos) {
        out += vm.video_id + "," + vm.object_id + "," + detail::csv_num(vm.j_mean) + "," +
               detail::csv_num(vm.f_mean) + "," + detail::csv_num(vm.jf) + "," +
               detail::csv_opt(vm.jf_d) + "," + detail::csv_opt(vm.jf_r) + "," +
               std::to_string(vm.n_frames) + "," + std::to_string(vm.n_disappear) + "," +
               std::to_string(vm.n_reappear) + "\n";
        n_frames += vm.n_frames;
        n_dis += vm.n_disappear;
        n_re += vm.n_reappear;
    }
    out += "dataset,," + detail::csv_num(report.j_mean) + "," + detail::csv_num(report.f_mean) +
           "," + detail::csv_num(report.jf) + "," + detail::csv_opt(report.jf_d) + "," +
           detail::csv_opt(report.jf_r) + "," + std::to_string(n_frames) + "," +
           std::to_string(n_dis) + "," + std::to_string(n_re) + "\n";
    return out;
}

}  // namespace anchormine
