#include <catch2/catch_amalgamated.hpp>

#include "anchormine/rle.hpp"
#include "anchormine/rng.hpp"

using namespace anchormine;

TEST_CASE("rle_encode worked examples") {
    // diagonal pixels of a 2x2 mask, column-major order
    BinaryMask diag(2, 2);
    diag.set(0, 0);
    diag.set(1, 1);
    CHECK(rle_encode(diag).counts == std::vector<long long>{0, 1, 2, 1});

    BinaryMask zeros(3, 3);
    CHECK(rle_encode(zeros).counts == std::vector<long long>{9});

    BinaryMask ones(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) ones.set(r, c);
    CHECK(rle_encode(ones).counts == std::vector<long long>{0, 4});
}

TEST_CASE("rle_decode worked examples") {
    BinaryMask ones = rle_decode(RleMask{2, 2, {0, 4}});
    CHECK(ones.area() == 4);

    BinaryMask zeros = rle_decode(RleMask{3, 3, {9}});
    CHECK(zeros.empty());

    BinaryMask diag = rle_decode(RleMask{2, 2, {0, 1, 2, 1}});
    CHECK(diag.at(0, 0));
    CHECK(diag.at(1, 1));
    CHECK(diag.area() == 2);
}

TEST_CASE("rle_decode rejects malformed counts") {
    CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {0, 5}}), CountsMismatch);
    CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {3}}), CountsMismatch);
    CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {-1, 5}}), CountsMismatch);
    CHECK_THROWS_AS(rle_decode(RleMask{0, 4, {0}}), CountsMismatch);
}

TEST_CASE("rle roundtrip on 1000 random masks") {
    Rng rng(7, "rle-roundtrip");
    for (int i = 0; i < 1000; ++i) {
        const int w = int(rng.next_int(1, 64));
        const int h = int(rng.next_int(1, 64));
        BinaryMask m(w, h);
        const double density = rng.next_double();
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (rng.next_bool(density)) m.set(r, c);

        const RleMask rle = rle_encode(m);
        // counts invariants: non-negative, no interior zeros, sum matches
        long long sum = 0;
        for (size_t k = 0; k < rle.counts.size(); ++k) {
            CHECK(rle.counts[k] >= 0);
            if (k > 0) CHECK(rle.counts[k] > 0);
            sum += rle.counts[k];
        }
        CHECK(sum == (long long)w * h);
        CHECK(rle_decode(rle) == m);
        CHECK(rle_area(rle) == m.area());
    }
}

TEST_CASE("rle json roundtrip") {
    BinaryMask m(3, 2);
    m.set(0, 1);
    m.set(1, 2);
    const RleMask rle = rle_encode(m);
    const auto j = rle_to_json(rle);
    CHECK(j.at("size").at(0) == 2);
    CHECK(j.at("size").at(1) == 3);
    CHECK(rle_from_json(j) == rle);

    CHECK_THROWS_AS(rle_from_json(nlohmann::json{{"counts", {1, 2}}}), ParseError);
}
