#include <doctest.h>

#include <cwac/error.hpp>
#include <cwac/gf.hpp>
#include <cwac/rs.hpp>

#include <vector>

using namespace cwac;

TEST_SUITE("rs") {

TEST_CASE("constant polynomials give the repetition code") {
    ReedSolomon rs(Field(2), 3, 1);
    CHECK(rs.e() == 3);
    for (int a = 0; a < 4; ++a) {
        std::vector<int> cw = rs.encode({a});
        CHECK(cw == std::vector<int>{a, a, a});
    }
}

TEST_CASE("codewords are systematic in the first k positions") {
    ReedSolomon rs(Field(3), 6, 3);
    std::vector<int> msg = {5, 0, 3};
    std::vector<int> cw = rs.encode(msg);
    REQUIRE(cw.size() == 6);
    CHECK(cw[0] == 5);
    CHECK(cw[1] == 0);
    CHECK(cw[2] == 3);
}

TEST_CASE("every single error is corrected in the length-3 code") {
    ReedSolomon rs(Field(2), 3, 1);
    std::vector<bool> none(3, false);
    for (int a = 0; a < 4; ++a) {
        std::vector<int> cw = rs.encode({a});
        for (int pos = 0; pos < 3; ++pos)
            for (int wrong = 0; wrong < 4; ++wrong) {
                if (wrong == cw[pos]) continue;
                std::vector<int> rx = cw;
                rx[pos] = wrong;
                RsDecodeResult r = rs.decode(rx, none);
                CAPTURE(a);
                CAPTURE(pos);
                CAPTURE(wrong);
                REQUIRE(r.ok);
                CHECK(r.message == std::vector<int>{a});
                CHECK(r.errors_corrected == 1);
            }
    }
}

TEST_CASE("erasures up to the distance minus one are filled") {
    ReedSolomon rs(Field(2), 3, 1);
    std::vector<int> cw = rs.encode({2});
    std::vector<bool> erased(3, false);
    erased[0] = erased[2] = true;
    std::vector<int> rx = {0, cw[1], 0};
    RsDecodeResult r = rs.decode(rx, erased);
    REQUIRE(r.ok);
    CHECK(r.message == std::vector<int>{2});
    // one more erasure exceeds the distance
    erased[1] = true;
    CHECK_FALSE(rs.decode({0, 0, 0}, erased).ok);
}

TEST_CASE("a zero correction budget rejects any error") {
    ReedSolomon rs(Field(2), 3, 1);
    std::vector<int> rx = rs.encode({1});
    std::vector<bool> none(3, false);
    CHECK(rs.decode(rx, none, 0).ok);
    rx[2] ^= 3;
    CHECK_FALSE(rs.decode(rx, none, 0).ok);
    CHECK(rs.decode(rx, none, 1).ok);
}

TEST_CASE("shortened length stays decodable") {
    // GF(8) natural length is 7; use n = 5
    ReedSolomon rs(Field(3), 5, 2);
    std::vector<bool> none(5, false);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            std::vector<int> cw = rs.encode({a, b});
            RsDecodeResult r = rs.decode(cw, none);
            REQUIRE(r.ok);
            CHECK(r.message == std::vector<int>{a, b});
        }
    // e = n - k + 1 = 4, so one error plus one erasure is within reach
    std::vector<int> cw = rs.encode({6, 1});
    std::vector<int> rx = cw;
    rx[0] ^= 5;
    std::vector<bool> erased(5, false);
    erased[3] = true;
    rx[3] = 0;
    RsDecodeResult r = rs.decode(rx, erased);
    REQUIRE(r.ok);
    CHECK(r.message == std::vector<int>{6, 1});
}

TEST_CASE("mixed errors and erasures across the whole budget") {
    ReedSolomon rs(Field(3), 6, 2);  // distance 5: corrects 2 errors, or 1 + 2 erasures
    std::vector<int> msg = {4, 7};
    std::vector<int> cw = rs.encode(msg);
    for (int e1 = 0; e1 < 6; ++e1)
        for (int e2 = e1 + 1; e2 < 6; ++e2) {
            std::vector<int> rx = cw;
            rx[e1] ^= 3;
            rx[e2] ^= 6;
            std::vector<bool> none(6, false);
            RsDecodeResult r = rs.decode(rx, none);
            CAPTURE(e1);
            CAPTURE(e2);
            REQUIRE(r.ok);
            CHECK(r.message == msg);
            // same two positions as erasures instead
            std::vector<bool> erased(6, false);
            erased[e1] = erased[e2] = true;
            r = rs.decode(rx, erased);
            REQUIRE(r.ok);
            CHECK(r.message == msg);
        }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ReedSolomon(Field(2), 4, 1), ParamError);  // n > 2^b - 1
    CHECK_THROWS_AS(ReedSolomon(Field(2), 3, 4), ParamError);  // k > n
    CHECK_THROWS_AS(ReedSolomon(Field(2), 3, 0), ParamError);
    ReedSolomon rs(Field(2), 3, 1);
    CHECK_THROWS_AS(rs.encode({1, 2}), ParamError);     // wrong message length
    CHECK_THROWS_AS(rs.encode({9}), ParamError);        // symbol outside the field
    std::vector<bool> short_mask(2, false);
    CHECK_THROWS_AS(rs.decode({0, 0, 0}, short_mask), ParamError);
}

}  // TEST_SUITE
