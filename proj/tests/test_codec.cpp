#include <doctest.h>

#include <cwac/channel.hpp>
#include <cwac/codec.hpp>
#include <cwac/error.hpp>
#include <cwac/word.hpp>

#include <string>
#include <vector>

using namespace cwac;

namespace {

ConcatenatedCode desk_code() { return {build_inner_lexicode(6, 3, 2), 3, 1}; }

}  // namespace

TEST_SUITE("codec") {

TEST_CASE("inner lexicodes: pinned contents") {
    InnerCode plain = build_inner_lexicode(4, 2, 1);
    CHECK(plain.size() == 4);
    CHECK(plain.bits() == 2);
    CHECK(plain.codeword(0).support() == std::vector<int>{0, 1});
    CHECK(plain.codeword(1).support() == std::vector<int>{0, 2});
    CHECK(plain.codeword(2).support() == std::vector<int>{1, 2});
    CHECK(plain.codeword(3).support() == std::vector<int>{0, 3});

    InnerCode pair = build_inner_lexicode(4, 2, 2);
    CHECK(pair.size() == 2);
    CHECK(pair.codeword(0).support() == std::vector<int>{0, 1});
    CHECK(pair.codeword(1).support() == std::vector<int>{2, 3});

    InnerCode desk = build_inner_lexicode(6, 3, 2);
    CHECK(desk.size() == 4);
    CHECK(desk.bits() == 2);
    CHECK(desk.codeword(0).support() == std::vector<int>{0, 1, 2});
    CHECK(desk.codeword(1).support() == std::vector<int>{0, 3, 4});
    CHECK(desk.codeword(2).support() == std::vector<int>{1, 3, 5});
    CHECK(desk.codeword(3).support() == std::vector<int>{2, 4, 5});
    for (int i = 0; i < 4; ++i) {
        CHECK(desk.index_of(desk.codeword(i).bits()) == i);
        for (int j = i + 1; j < 4; ++j)
            CHECK(hamming_distance(desk.codeword(i), desk.codeword(j)) >= 4);
    }
    CHECK(desk.index_of(BitWord(6, {0, 1, 3})) == -1);

    CHECK_THROWS_AS(build_inner_lexicode(3, 2, 2), ParamError);  // nothing at distance 4
    CHECK_THROWS_AS(build_inner_lexicode(4, 2, 3), ParamError);  // f > w
}

TEST_CASE("inner decoding: exact hits, correctable flips, erasures") {
    InnerCode desk = build_inner_lexicode(6, 3, 2);
    for (int i = 0; i < desk.size(); ++i) {
        InnerDecodeResult r = inner_decode(desk.codeword(i).bits(), desk);
        CHECK_FALSE(r.erased);
        CHECK(r.symbol == i);
        CHECK(r.distance == 0);
        // one flip stays within f - 1 = 1 of the sent word
        BitWord flipped = desk.codeword(i).bits();
        flipped.flip(0);
        r = inner_decode(flipped, desk);
        CHECK_FALSE(r.erased);
        CHECK(r.symbol == i);
        CHECK(r.distance == 1);
    }
    // two flips reach distance 2 from everything: erasure
    BitWord far = desk.codeword(0).bits();
    far.flip(0);
    far.flip(3);
    InnerDecodeResult r = inner_decode(far, desk);
    CHECK(r.erased);
    CHECK(r.distance == 2);
}

TEST_CASE("concatenated blocks keep the designed distance") {
    ConcatenatedCode code = desk_code();
    CHECK(code.n() == 3);
    CHECK(code.k() == 1);
    CHECK(code.e() == 3);
    CHECK(code.designed_half_distance() == 6);
    CHECK(code.guarantee_bits() == 5);
    std::vector<ArrayWord> words;
    for (int a = 0; a < 4; ++a) words.push_back(code.encode({a}));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            CHECK(hamming_distance(words[i], words[j]) >= 12);
}

TEST_CASE("decoding survives every pattern within the bit guarantee") {
    ConcatenatedCode code = desk_code();
    ArrayWord sent = code.encode({2});
    // exhaustive over all two-bit corruptions of the 18 transmitted bits
    std::vector<BitWord> base;
    for (const ColumnWord& c : sent.columns()) base.push_back(c.bits());
    long tried = 0;
    for (int p = 0; p < 18; ++p)
        for (int q = p; q < 18; ++q) {
            std::vector<BitWord> rx = base;
            rx[static_cast<std::size_t>(p / 6)].flip(p % 6);
            rx[static_cast<std::size_t>(q / 6)].flip(q % 6);
            DecodeOutcome out = code.decode(rx);
            CAPTURE(p);
            CAPTURE(q);
            REQUIRE(out.decoded);
            CHECK(out.message == std::vector<int>{2});
            CHECK_FALSE(out.beyond_guarantee);
            ++tried;
        }
    CHECK(tried == 18 * 19 / 2);
    // a larger randomized batch at the full guarantee of 5 bit flips
    SplitMix64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<BitWord> rx = base;
        for (int flips = 0; flips < 5; ++flips) {
            int pos = static_cast<int>(rng.below(18));
            rx[static_cast<std::size_t>(pos / 6)].flip(pos % 6);
        }
        DecodeOutcome out = code.decode(rx);
        REQUIRE(out.decoded);
        CHECK(out.message == std::vector<int>{2});
    }
}

TEST_CASE("swapping a whole block of columns lands on the other codeword") {
    ConcatenatedCode code = desk_code();
    ArrayWord other = code.encode({3});
    std::vector<BitWord> rx;
    for (const ColumnWord& c : other.columns()) rx.push_back(c.bits());
    DecodeOutcome out = code.decode(rx);
    REQUIRE(out.decoded);
    CHECK(out.message == std::vector<int>{3});
    CHECK(out.reencode_distance == 0);
    CHECK_FALSE(out.beyond_guarantee);
}

TEST_CASE("descriptions round-trip through json and reject tampering") {
    ConcatenatedCode code = desk_code();
    std::string text = code.to_json_string();
    ConcatenatedCode back = ConcatenatedCode::from_json_string(text);
    for (int a = 0; a < 4; ++a) CHECK(back.encode({a}) == code.encode({a}));
    std::string forged = text;
    auto pos = forged.find("\"primitive_poly_hex\": \"7\"");
    REQUIRE(pos != std::string::npos);
    forged.replace(pos, std::string("\"primitive_poly_hex\": \"7\"").size(),
                   "\"primitive_poly_hex\": \"b\"");
    CHECK_THROWS_AS(ConcatenatedCode::from_json_string(forged), ParamError);
    CHECK_THROWS_AS(ConcatenatedCode::from_json_string("{\"m\": 6}"), ParamError);
    CHECK_THROWS_AS(ConcatenatedCode::from_json_string("not json"), ParamError);
}

TEST_CASE("parameter planning explains infeasible requests") {
    CodePlan good = plan_params(6, 3, 2, 3, 1);
    CHECK(good.feasible);
    CHECK(good.inner_size == 4);
    CHECK(good.bits == 2);
    CHECK(good.max_n == 3);
    CHECK(good.e == 3);
    CHECK(good.guarantee == 5);
    CHECK(good.rate_num == 2);
    CHECK(good.rate_den == 18);
    CHECK_FALSE(good.lifting);
    CHECK(good.inner_upper >= good.inner_size);

    CodePlan long_n = plan_params(6, 3, 2, 9, 1);
    CHECK_FALSE(long_n.feasible);
    CHECK(long_n.message.find("exceeds n_max") != std::string::npos);

    CodePlan big_k = plan_params(6, 3, 2, 3, 5);
    CHECK_FALSE(big_k.feasible);
    CHECK(big_k.message.find("exceeds block length") != std::string::npos);

    CodePlan lifted = plan_params(4, 1, 1, 3, 1);
    CHECK(lifted.feasible);
    CHECK(lifted.lifting);
    CHECK(lifted.bits == 2);
}

}  // TEST_SUITE
