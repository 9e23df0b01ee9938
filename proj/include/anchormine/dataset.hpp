#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/detect.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/png_io.hpp"
#include "anchormine/presets.hpp"
#include "anchormine/synth.hpp"

namespace anchormine {

namespace fs = std::filesystem;

inline std::string frame_filename(int idx) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%05d.png", idx);
    return buf;
}

// Atomic-ish text write: temp file in the same directory, then rename.
inline void write_text_file(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("failed to move '" + tmp.string() + "' to '" + path.string() + "'");
}

inline void write_json_file(const fs::path& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(path.string()) + ": " + e.what());
    }
}

// Sorted %05d.png sequence in a directory; indices must be contiguous from 0.
inline std::vector<fs::path> list_frame_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (size_t i = 0; i < files.size(); ++i) {
        if (files[i].filename().string() != frame_filename(int(i)))
            throw IoError("missing frame file '" + (dir / frame_filename(int(i))).string() +
                          "' (found '" + files[i].filename().string() + "')");
    }
    if (files.empty()) throw IoError("no .png frames in '" + dir.string() + "'");
    return files;
}

inline std::vector<FrameImage> read_frame_dir(const fs::path& dir) {
    std::vector<FrameImage> frames;
    for (const auto& p : list_frame_files(dir)) frames.push_back(read_png_rgb(p));
    return frames;
}

inline std::vector<BinaryMask> read_mask_dir(const fs::path& dir) {
    std::vector<BinaryMask> masks;
    for (const auto& p : list_frame_files(dir)) masks.push_back(read_png_mask(p));
    return masks;
}

// Synthetic dataset layout:
//   <out>/frames/%05d.png
//   <out>/gt/<instance_id>/%05d.png
//   <out>/scenario.json
inline void write_dataset(const fs::path& out, const Scenario& scenario, const SynthVideo& video) {
    fs::create_directories(out / "frames");
    for (size_t f = 0; f < video.frames.size(); ++f)
        write_png_rgb(out / "frames" / frame_filename(int(f)), video.frames[f]);
    for (const auto& [id, seq] : video.gt.masks) {
        fs::create_directories(out / "gt" / id);
        for (size_t f = 0; f < seq.size(); ++f)
            write_png_mask(out / "gt" / id / frame_filename(int(f)), seq[f]);
    }
    write_json_file(out / "scenario.json", scenario_to_json(scenario));
}

struct Dataset {
    std::vector<FrameImage> frames;
    GroundTruth gt;
    Scenario scenario;
};

inline Dataset read_dataset(const fs::path& dir) {
    Dataset ds;
    ds.scenario = scenario_from_json(read_json_file(dir / "scenario.json"));
    ds.frames = read_frame_dir(dir / "frames");
    ds.gt.num_frames = int(ds.frames.size());
    const fs::path gt_dir = dir / "gt";
    if (!fs::is_directory(gt_dir)) throw IoError("'" + gt_dir.string() + "' is not a directory");
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(gt_dir))
        if (entry.is_directory()) ids.push_back(entry.path().filename().string());
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) ds.gt.masks[id] = read_mask_dir(gt_dir / id);
    for (const auto& obj : ds.scenario.objects)
        if (obj.is_target) ds.gt.target_id = obj.id;
    if (ds.gt.target_id.empty() || !ds.gt.masks.count(ds.gt.target_id))
        throw IoError("dataset '" + dir.string() + "' has no ground truth for its target");
    return ds;
}

}  // namespace anchormine
