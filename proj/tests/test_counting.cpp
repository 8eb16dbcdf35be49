#include <doctest.h>

#include <cwac/counting.hpp>
#include <cwac/enumerate.hpp>
#include <cwac/error.hpp>
#include <cwac/word.hpp>

#include <vector>

using namespace cwac;

TEST_SUITE("counting") {

TEST_CASE("single-column distance counts match enumeration") {
    // nu(m,w,u,i): weight-u words at plain distance i from a weight-w word
    BitWord center(5, {0, 1});
    std::vector<long> direct(6, 0);
    for_each_subset(5, 2, [&](const std::vector<int>& s) {
        direct[static_cast<std::size_t>(hamming_distance(BitWord(5, s), center))]++;
    });
    for (int i = 0; i <= 5; ++i) CHECK(nu(5, 2, 2, i) == direct[static_cast<std::size_t>(i)]);
    CHECK(nu(4, 2, 2, 0) == 1);
    CHECK(nu(4, 2, 2, 2) == 4);
    CHECK(nu(4, 2, 2, 4) == 1);
    CHECK(nu(4, 2, 2, 1) == 0);  // equal weights force even distances
}

TEST_CASE("array distance counts: exact values and row sums") {
    // count_N indexes by plain Hamming distance; equal weights make the
    // per-column distances even
    CHECK(count_N(4, 1, 2, 2, 0) == 1);
    CHECK(count_N(4, 1, 2, 2, 1) == 0);
    CHECK(count_N(4, 1, 2, 2, 2) == 4);
    CHECK(count_N(4, 1, 2, 2, 4) == 1);
    BigInt total = 0;
    for (int d = 0; d <= 8; ++d) total += count_N(4, 2, 2, 2, d);
    CHECK(total == binom(4, 2) * binom(4, 2));
    total = 0;
    for (int d = 0; d <= 9; ++d) total += count_N(5, 3, 2, 1, d);
    CHECK(total == big_pow(binom(5, 1), 3));
    // cross-weight counts against direct enumeration (odd distances here)
    BitWord center(5, {0, 2});
    std::vector<long> direct(9, 0);
    for_each_subset(5, 3, [&](const std::vector<int>& s) {
        direct[static_cast<std::size_t>(hamming_distance(BitWord(5, s), center))]++;
    });
    for (int d = 0; d <= 8; ++d) CHECK(count_N(5, 1, 2, 3, d) == direct[static_cast<std::size_t>(d)]);
    // two-column convolution against enumeration
    std::vector<long> direct2(9, 0);
    for_each_subset(4, 2, [&](const std::vector<int>& s) {
        long d1 = hamming_distance(BitWord(4, s), BitWord(4, {0, 1}));
        for_each_subset(4, 2, [&](const std::vector<int>& t) {
            direct2[static_cast<std::size_t>(
                d1 + hamming_distance(BitWord(4, t), BitWord(4, {2, 3})))]++;
        });
    });
    for (int d = 0; d <= 8; ++d) CHECK(count_N(4, 2, 2, 2, d) == direct2[static_cast<std::size_t>(d)]);
}

TEST_CASE("anticode lower bound: pinned values and shape") {
    CHECK(beta_lower(4, 2, 1) == 3);      // triangle through a kernel pair
    CHECK(beta_lower(3, 3, 2) == 1);      // J(3,3) is a single word
    CHECK(beta_lower(5, 2, 2) == binom(5, 2));  // full diameter reaches everything
    CHECK(beta_lower(6, 3, 3) == binom(6, 3));
    CHECK(beta_lower(6, 2, 2) >= binom(4, 2));  // intersecting-family floor
    BigInt prev = 0;
    for (int delta = 0; delta <= 3; ++delta) {
        BigInt cur = beta_lower(6, 3, delta);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(beta_lower(6, 3, 0) == 1);
    CHECK_THROWS_AS(beta_lower(3, 4, 1), ParamError);
    CHECK_THROWS_AS(beta_lower(5, 2, 3), ParamError);
}

TEST_CASE("q-ary anticode maxima: closed form") {
    // even diameter over the binary alphabet: ball volumes
    CHECK(gamma_exact(BigInt(2), 6, 2) == 7);
    CHECK(gamma_exact(BigInt(2), 6, 4) == 22);
    CHECK(gamma_exact(BigInt(2), 8, 2) == 9);
    // degenerate corners
    CHECK(gamma_exact(BigInt(3), 2, 0) == 1);
    CHECK(gamma_exact(BigInt(3), 2, 2) == 9);
    CHECK(gamma_exact(BigInt(3), 2, 1) == 3);
    CHECK(gamma_exact(BigInt(5), 3, 5) == 125);
    // alphabet size beyond machine range stays exact
    BigInt q = big_pow(BigInt(10), 30);
    CHECK(gamma_exact(q, 2, 1) == q);
}

TEST_CASE("array anticode lower bound composes soundly") {
    CHECK(alpha_lower(4, 1, 2, 1) >= 3);
    CHECK(alpha_lower(4, 1, 2, 1) <= binom(4, 2));
    CHECK(alpha_lower(4, 2, 2, 0) == 1);
    // full half-diameter nw covers the whole space
    CHECK(alpha_lower(4, 2, 2, 4) == binom(4, 2) * binom(4, 2));
    BigInt prev = 0;
    for (int delta = 0; delta <= 4; ++delta) {
        BigInt cur = alpha_lower(4, 2, 2, delta);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("unit sphere packing sizes at nonpositive inner product") {
    CHECK(spherical_max(3, BigRat(0)).value() == 6);
    CHECK(spherical_max(7, BigRat(0)).value() == 14);
    CHECK(spherical_max(5, BigRat(-1, 3)).value() == 4);
    CHECK(spherical_max(9, BigRat(-1)).value() == 2);
    CHECK_FALSE(spherical_max(4, BigRat(1, 2)).has_value());
}

}  // TEST_SUITE
