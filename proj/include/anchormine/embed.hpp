#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anchormine/d4.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"

namespace anchormine {

using Embedding = std::vector<double>;

inline double l2_norm(const Embedding& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline Embedding normalized(Embedding v) {
    const double n = l2_norm(v);
    if (n <= 0) throw Error("cannot normalize a zero vector");
    for (double& x : v) x /= n;
    return v;
}

// Dot product of pre-normalized vectors, clamped against rounding.
inline double cosine(const Embedding& u, const Embedding& v) {
    if (u.size() != v.size())
        throw DimensionMismatch("cosine: " + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()));
    double s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return std::clamp(s, -1.0, 1.0);
}

// Desk-scale object descriptor: flatten RGB channel-planar to 3*S^2 reals,
// subtract the per-channel mean, L2-normalize. Mean and norm are computed
// from integer pixel sums, so the result is exactly equivariant under D4
// pixel permutations: embed(d4_apply(p, t)) is embed(p) with entries permuted.
// Zero-variance patches map to the unit vector e1.
inline Embedding patch_embed(const Patch& patch) {
    const int s = patch.side;
    const size_t plane = size_t(s) * s;
    Embedding v(3 * plane);

    long long sum[3] = {0, 0, 0};
    long long sumsq[3] = {0, 0, 0};
    for (size_t i = 0; i < plane; ++i)
        for (int ch = 0; ch < 3; ++ch) {
            const long long x = patch.rgb[i * 3 + ch];
            sum[ch] += x;
            sumsq[ch] += x * x;
        }

    double norm_sq = 0;
    double mean[3];
    for (int ch = 0; ch < 3; ++ch) {
        mean[ch] = double(sum[ch]) / double(plane);
        norm_sq += double(sumsq[ch]) - double(sum[ch]) * double(sum[ch]) / double(plane);
    }
    if (norm_sq <= 1e-12) {
        Embedding e1(3 * plane, 0.0);
        e1[0] = 1.0;
        return e1;
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (size_t i = 0; i < plane; ++i)
        for (int ch = 0; ch < 3; ++ch)
            v[ch * plane + i] = (double(patch.rgb[i * 3 + ch]) - mean[ch]) * inv_norm;
    return v;
}

// Embedding source: either computes descriptors from pixels (embed) or replays
// stored vectors keyed by (frame, instance id) (lookup). Implementations are
// immutable after construction.
class Embedder {
public:
    virtual ~Embedder() = default;

    virtual bool can_embed() const { return false; }
    virtual bool can_lookup() const { return false; }

    virtual Embedding embed(const Patch&) const {
        throw Error("this embedder cannot embed patches");
    }
    virtual Embedding lookup(int frame, const std::string& id) const {
        (void)frame;
        (void)id;
        throw Error("this embedder cannot look up stored vectors");
    }
};

class PatchEmbedder final : public Embedder {
public:
    bool can_embed() const override { return true; }
    Embedding embed(const Patch& p) const override { return patch_embed(p); }
};

// Replays vectors exported by a real model. JSON Lines, one record per line:
//   {"frame": int, "id": str, "vec": [float, ...]}
// frame -1 is reserved for first-frame target pool exports (keyed by transform
// name). Vectors are L2-normalized at load; duplicate keys: last record wins.
class FileEmbedder final : public Embedder {
public:
    static FileEmbedder load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open embeddings file '" + path.string() + "'");
        FileEmbedder fe;
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
            try {
                const int frame = j.at("frame").get<int>();
                const std::string id = j.at("id").get<std::string>();
                Embedding vec = j.at("vec").get<Embedding>();
                if (vec.empty()) throw ParseError(line_num, "empty vector");
                if (l2_norm(vec) <= 0) throw ParseError(line_num, "zero vector");
                if (fe.dim_ == 0) fe.dim_ = vec.size();
                if (vec.size() != fe.dim_)
                    throw ParseError(line_num, "vector dim " + std::to_string(vec.size()) +
                                                   " differs from earlier dim " +
                                                   std::to_string(fe.dim_));
                fe.table_[{frame, id}] = normalized(std::move(vec));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(line_num, e.what());
            }
        }
        return fe;
    }

    bool can_lookup() const override { return true; }

    Embedding lookup(int frame, const std::string& id) const override {
        const auto it = table_.find({frame, id});
        if (it == table_.end()) throw MissingEmbedding(frame, id);
        return it->second;
    }

    size_t dim() const { return dim_; }
    size_t size() const { return table_.size(); }

private:
    std::map<std::pair<int, std::string>, Embedding> table_;
    size_t dim_ = 0;
};

}  // namespace anchormine
