#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "anchormine/png_io.hpp"
#include "anchormine/rng.hpp"

using namespace anchormine;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "anchormine_png_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("rgb png roundtrip") {
    Rng rng(99, "png");
    FrameImage img(17, 9);
    for (auto& v : img.rgb) v = std::uint8_t(rng.next_int(0, 255));
    const fs::path path = temp_dir() / "rgb.png";
    write_png_rgb(path, img);
    const FrameImage back = read_png_rgb(path);
    CHECK(back == img);
}

TEST_CASE("mask png roundtrip") {
    Rng rng(100, "png-mask");
    BinaryMask m(13, 21);
    for (int r = 0; r < 21; ++r)
        for (int c = 0; c < 13; ++c)
            if (rng.next_bool(0.35)) m.set(r, c);
    const fs::path path = temp_dir() / "mask.png";
    write_png_mask(path, m);
    CHECK(read_png_mask(path) == m);
}

TEST_CASE("png writes are byte-identical across runs") {
    FrameImage img(8, 8, 120, 10, 200);
    const fs::path a = temp_dir() / "det_a.png";
    const fs::path b = temp_dir() / "det_b.png";
    write_png_rgb(a, img);
    write_png_rgb(b, img);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(!sa.empty());
}

TEST_CASE("read errors on missing file") {
    CHECK_THROWS_AS(read_png_rgb(temp_dir() / "nope.png"), IoError);
    CHECK_THROWS_AS(read_png_mask(temp_dir() / "nope.png"), IoError);
}
