#include <doctest.h>

#include <cwac/bigint.hpp>
#include <cwac/counting.hpp>
#include <cwac/enumerate.hpp>
#include <cwac/error.hpp>
#include <cwac/word.hpp>

#include <set>
#include <string>
#include <vector>

using namespace cwac;

TEST_SUITE("core") {

TEST_CASE("binomials and big integers") {
    CHECK(binom(8, 2) == 28);
    CHECK(binom(20, 10) == 184756);
    CHECK(binom(5, 0) == 1);
    CHECK(binom(4, 7) == 0);
    CHECK(binom(-1, 0) == 0);
    CHECK(to_string(big_pow(BigInt(2), 64)) == "18446744073709551616");
    CHECK(binom_rational(6, 4, 2) == 15);   // C(6, 2)
    CHECK(binom_rational(6, 3, 2) == 0);    // non-integer second argument
}

TEST_CASE("bit word basics and hex convention") {
    BitWord b(6);
    CHECK(b.weight() == 0);
    b.set(0, true);
    b.set(5, true);
    CHECK(b.weight() == 2);
    CHECK(b.test(0));
    CHECK_FALSE(b.test(3));
    // position 0 is the most significant bit of the first digit
    CHECK(b.to_hex() == "84");
    CHECK(BitWord::from_hex(6, "84") == b);
    CHECK(BitWord(4, {0, 1}).to_hex() == "c");
    CHECK(BitWord::from_hex(4, "c").support() == std::vector<int>{0, 1});
    b.flip(5);
    CHECK(b.to_hex() == "80");
    CHECK(b.complemented().support() == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(hamming_distance(BitWord(4, {0, 1}), BitWord(4, {2, 3})) == 4);
    CHECK_THROWS_AS(BitWord::from_hex(4, "zz"), ParamError);
    CHECK_THROWS_AS(BitWord::from_hex(4, "ff"), ParamError);  // pad bits must be zero
}

TEST_CASE("column words stay in the weight class") {
    ColumnWord c(5, {1, 3});
    CHECK(c.weight() == 2);
    CHECK(c.length() == 5);
    CHECK(c.test(3));
    CHECK(c.complemented().support() == std::vector<int>{0, 2, 4});
    CHECK(hamming_distance(c, ColumnWord(5, {1, 4})) == 2);
    CHECK(ColumnWord::from_hex(5, c.to_hex()) == c);
    CHECK_THROWS_AS(ColumnWord(5, std::vector<int>{3, 1}), ParamError);  // unsorted
    CHECK_THROWS_AS(ColumnWord(5, std::vector<int>{1, 5}), ParamError);  // out of range
}

TEST_CASE("array words round-trip through hex and json") {
    ArrayWord a(4, 2, {ColumnWord(4, {0, 1}), ColumnWord(4, {2, 3})});
    CHECK(a.n() == 2);
    CHECK(a.to_hex() == "c3");
    CHECK(ArrayWord::from_hex(4, 2, 2, "c3") == a);
    CHECK(ArrayWord::from_json_string(a.to_json_string()) == a);
    CHECK(a.complemented().column(0).support() == std::vector<int>{2, 3});
    ArrayWord b(4, 2, {ColumnWord(4, {0, 2}), ColumnWord(4, {2, 3})});
    CHECK(hamming_distance(a, b) == 2);
    // wrong column weight is rejected
    CHECK_THROWS_AS(ArrayWord(4, 2, {ColumnWord(4, {0, 1}), ColumnWord(4, {0, 2, 3})}), ParamError);
}

TEST_CASE("colex enumeration order and ranking") {
    std::vector<std::vector<int>> seen;
    for_each_subset(4, 2, [&](const std::vector<int>& s) { seen.push_back(s); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == std::vector<int>{0, 1});
    CHECK(seen[1] == std::vector<int>{0, 2});
    CHECK(seen.back() == std::vector<int>{2, 3});
    for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(colex_rank(seen[i]) == BigInt(static_cast<long>(i)));
        CHECK(colex_unrank(4, 2, BigInt(static_cast<long>(i))) == seen[i]);
    }
    CHECK(enumerate_constant_weight(6, 3).size() == 20);
}

TEST_CASE("ball enumeration visits each word once with exact distances") {
    BitWord center(5, {0, 1});
    std::set<std::string> visited;
    long total = 0;
    ball_enumerate(center, 2, 2, [&](const ColumnWord& c, int dist) {
        CHECK(hamming_distance(c.bits(), center) == dist);
        CHECK(c.weight() == 2);
        visited.insert(c.to_hex());
        ++total;
    });
    CHECK(total == static_cast<long>(visited.size()));
    CHECK(ball_size(5, 2, 2, 2) == total);
    // radius 2 in plain Hamming units reaches distance <= 2: the word
    // itself plus every word sharing one point
    CHECK(total == 7);
}

}  // TEST_SUITE
