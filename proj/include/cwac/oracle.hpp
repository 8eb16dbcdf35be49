#pragma once

#include <cstddef>
#include <vector>

#include "cwac/bigint.hpp"
#include "cwac/word.hpp"

namespace cwac {

struct OracleOptions {
    // largest universe the search will materialize; beyond it the call
    // refuses with CapExceeded carrying the size that would be needed
    std::size_t universe_cap = 5000;
    bool want_witness = true;
};

struct OracleResult {
    long size = 0;
    // the lexicographically least maximum set under the fixed vertex
    // order (colex per column, first column most significant); empty
    // when want_witness is false
    std::vector<ArrayWord> witness;
};

// Exact A(m,n,w,d): largest subset of J(m,w)^n with pairwise Hamming
// distance >= 2d.  Sequential and deterministic.
OracleResult exact_max_code(int m, int n, int w, int d, const OracleOptions& opts = {});

// Exact alpha(m,n,w,delta): largest subset with pairwise Hamming
// distance <= 2*delta.
OracleResult exact_max_anticode(int m, int n, int w, int delta, const OracleOptions& opts = {});

// Exact gamma(q,n,delta): largest subset of [q]^n with plain Hamming
// diameter <= delta.
long exact_gamma(int q, int n, int delta, const OracleOptions& opts = {});

// Maximum clique via branch-and-bound: greedy clique seed, greedy
// coloring upper bound, fixed vertex order.  Exposed so tests can rerun
// the search under permuted vertex orders.
long max_clique_size(const std::vector<std::vector<bool>>& adj);

// Plain backtracking with only the cardinality bound.  Independent
// cross-check for the branch-and-bound on tiny instances.
long naive_max_clique(const std::vector<std::vector<bool>>& adj);

}  // namespace cwac
