#include <doctest.h>

#include <cwac/counting.hpp>
#include <cwac/error.hpp>
#include <cwac/oracle.hpp>
#include <cwac/word.hpp>

#include <vector>

using namespace cwac;

namespace {

long plain_distance(const ArrayWord& a, const ArrayWord& b) { return hamming_distance(a, b); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("exact code maxima with verified witnesses") {
    OracleResult r = exact_max_code(4, 2, 2, 2);
    CHECK(r.size == 12);
    REQUIRE(r.witness.size() == 12);
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
            CHECK(plain_distance(r.witness[i], r.witness[j]) >= 4);

    r = exact_max_code(4, 1, 2, 2);
    CHECK(r.size == 2);
    REQUIRE(r.witness.size() == 2);
    CHECK(plain_distance(r.witness[0], r.witness[1]) == 4);

    // d = 1 only requires distinctness
    CHECK(exact_max_code(4, 1, 2, 1).size == 6);
    // no two weight-2 words of length 3 reach plain distance 4
    CHECK(exact_max_code(3, 1, 2, 2).size == 1);
}

TEST_CASE("exact anticode maxima") {
    OracleResult r = exact_max_anticode(4, 1, 2, 1);
    CHECK(r.size == 3);
    REQUIRE(r.witness.size() == 3);
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
            CHECK(plain_distance(r.witness[i], r.witness[j]) <= 2);
    CHECK(exact_max_anticode(4, 1, 2, 2).size == 6);
    CHECK(exact_max_anticode(4, 1, 2, 0).size == 1);
    // the constructive bound never beats the oracle here
    CHECK(BigInt(exact_max_anticode(5, 1, 2, 1).size) >= beta_lower(5, 2, 1));
}

TEST_CASE("cap refusal reports the needed size") {
    OracleOptions small;
    small.universe_cap = 10;
    CHECK_THROWS_AS(exact_max_code(4, 2, 2, 2, small), CapExceeded);
    try {
        exact_max_code(4, 2, 2, 2, small);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.required_cap == "36");
    }
}

TEST_CASE("witness flag changes only the payload") {
    OracleOptions bare;
    bare.want_witness = false;
    OracleResult quiet = exact_max_code(4, 2, 2, 2, bare);
    CHECK(quiet.size == 12);
    CHECK(quiet.witness.empty());
    // repeated calls (memoized or not) agree
    CHECK(exact_max_code(4, 2, 2, 2, bare).size == 12);
}

TEST_CASE("q-ary diameter oracle agrees with the closed form") {
    CHECK(exact_gamma(2, 3, 2) == 4);
    CHECK(exact_gamma(3, 2, 1) == 3);
    CHECK(exact_gamma(2, 4, 2) == gamma_exact(BigInt(2), 4, 2));
    CHECK(exact_gamma(3, 3, 2) == gamma_exact(BigInt(3), 3, 2));
    CHECK(exact_gamma(2, 3, 0) == 1);
    CHECK(exact_gamma(2, 3, 3) == 8);
}

TEST_CASE("branch-and-bound matches plain backtracking") {
    // triangle plus a pendant vertex: maximum clique 3
    std::vector<std::vector<bool>> adj(4, std::vector<bool>(4, false));
    auto link = [&](int a, int b) { adj[a][b] = adj[b][a] = true; };
    link(0, 1);
    link(0, 2);
    link(1, 2);
    link(2, 3);
    CHECK(max_clique_size(adj) == 3);
    CHECK(naive_max_clique(adj) == 3);
    // empty graph and complete graph corners
    std::vector<std::vector<bool>> none(5, std::vector<bool>(5, false));
    CHECK(max_clique_size(none) == 1);
    std::vector<std::vector<bool>> all(5, std::vector<bool>(5, true));
    for (int i = 0; i < 5; ++i) all[i][i] = false;
    CHECK(max_clique_size(all) == 5);
    CHECK(naive_max_clique(all) == 5);
    // the two searches agree on every small circulant graph
    for (int skip = 1; skip <= 3; ++skip) {
        std::vector<std::vector<bool>> g(7, std::vector<bool>(7, false));
        for (int i = 0; i < 7; ++i) {
            g[i][(i + skip) % 7] = true;
            g[(i + skip) % 7][i] = true;
            g[i][(i + 1) % 7] = true;
            g[(i + 1) % 7][i] = true;
        }
        CHECK(max_clique_size(g) == naive_max_clique(g));
    }
}

}  // TEST_SUITE
