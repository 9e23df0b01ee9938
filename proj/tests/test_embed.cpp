#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "anchormine/embed.hpp"
#include "anchormine/rng.hpp"

using namespace anchormine;
namespace fs = std::filesystem;

namespace {

Patch random_patch(Rng& rng, int side) {
    Patch p(side);
    for (auto& v : p.rgb) v = std::uint8_t(rng.next_int(0, 255));
    return p;
}

}  // namespace

TEST_CASE("cosine basics") {
    const Embedding u = {1.0, 0.0};
    CHECK(cosine(u, u) == 1.0);
    CHECK(cosine(u, Embedding{0.0, 1.0}) == 0.0);
    const Embedding v = normalized({1.0, 1.0});
    CHECK(cosine(u, v) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK_THROWS_AS(cosine(u, Embedding{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("patch_embed determinism and unit norm") {
    Rng rng(1, "embed");
    const Patch p = random_patch(rng, 16);
    const Embedding a = patch_embed(p);
    const Embedding b = patch_embed(p);
    CHECK(a == b);
    CHECK(l2_norm(a) == Catch::Approx(1.0).margin(1e-9));
    CHECK(a.size() == 3u * 16u * 16u);
}

TEST_CASE("patch_embed of a negated patch is anti-parallel") {
    Rng rng(2, "embed-neg");
    const Patch p = random_patch(rng, 8);
    Patch neg = p;
    for (auto& v : neg.rgb) v = std::uint8_t(255 - v);
    CHECK(cosine(patch_embed(p), patch_embed(neg)) == Catch::Approx(-1.0).margin(1e-9));
}

TEST_CASE("constant patch falls back to e1") {
    Patch p(4);
    for (auto& v : p.rgb) v = 77;
    const Embedding e = patch_embed(p);
    CHECK(e[0] == 1.0);
    for (size_t i = 1; i < e.size(); ++i) CHECK(e[i] == 0.0);
}

TEST_CASE("patch_embed is exactly D4-equivariant") {
    Rng rng(3, "embed-equiv");
    for (int trial = 0; trial < 10; ++trial) {
        const int side = int(rng.next_int(2, 12));
        const Patch p = random_patch(rng, side);
        const Embedding base = patch_embed(p);
        const size_t plane = size_t(side) * side;
        for (D4 t : kD4All) {
            const Embedding moved = patch_embed(d4_apply(p, t));
            const auto perm = d4_plane_permutation(t, side);
            // entries are permuted bit-exactly within each channel plane
            for (int ch = 0; ch < 3; ++ch)
                for (size_t i = 0; i < plane; ++i)
                    CHECK(moved[ch * plane + size_t(perm[i])] == base[ch * plane + i]);
        }
    }
}

TEST_CASE("cosine is invariant under a shared D4 transform") {
    Rng rng(4, "embed-cos-equiv");
    const Patch p = random_patch(rng, 10);
    const Patch q = random_patch(rng, 10);
    const double ref = cosine(patch_embed(p), patch_embed(q));
    for (D4 t : kD4All) {
        const double moved = cosine(patch_embed(d4_apply(p, t)), patch_embed(d4_apply(q, t)));
        CHECK(moved == Catch::Approx(ref).margin(1e-12));
    }
}

TEST_CASE("file embedder load, normalize, and lookup") {
    const fs::path path = fs::temp_directory_path() / "anchormine_embed_test.jsonl";
    {
        std::ofstream out(path);
        out << R"({"frame": 3, "id": "a", "vec": [3.0, 4.0]})" << "\n";
        out << R"({"frame": 3, "id": "b", "vec": [1.0, 0.0]})" << "\n";
        out << R"({"frame": 3, "id": "b", "vec": [0.0, 2.0]})" << "\n";  // duplicate: last wins
    }
    const FileEmbedder fe = FileEmbedder::load(path);
    CHECK(fe.can_lookup());
    CHECK(!fe.can_embed());

    const Embedding a = fe.lookup(3, "a");
    CHECK(a[0] == Catch::Approx(0.6).margin(1e-12));
    CHECK(a[1] == Catch::Approx(0.8).margin(1e-12));

    const Embedding b = fe.lookup(3, "b");
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 1.0);

    CHECK_THROWS_AS(fe.lookup(4, "a"), MissingEmbedding);
    CHECK_THROWS_AS(fe.lookup(3, "zz"), MissingEmbedding);
}

TEST_CASE("file embedder parse errors carry line numbers") {
    const fs::path path = fs::temp_directory_path() / "anchormine_embed_bad.jsonl";
    {
        std::ofstream out(path);
        out << R"({"frame": 0, "id": "a", "vec": [1.0]})" << "\n";
        out << "not json\n";
    }
    try {
        FileEmbedder::load(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    {
        std::ofstream out(path);
        out << R"({"frame": 0, "id": "a", "vec": [0.0, 0.0]})" << "\n";
    }
    CHECK_THROWS_AS(FileEmbedder::load(path), ParseError);

    {
        std::ofstream out(path);
        out << R"({"frame": 0, "id": "a", "vec": [1.0, 0.0]})" << "\n";
        out << R"({"frame": 1, "id": "a", "vec": [1.0, 0.0, 0.0]})" << "\n";  // dim change
    }
    CHECK_THROWS_AS(FileEmbedder::load(path), ParseError);
}
