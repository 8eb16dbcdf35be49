#pragma once

#include <functional>
#include <vector>

#include "cwac/bigint.hpp"
#include "cwac/word.hpp"

namespace cwac {

// Colexicographic order on w-subsets of {0..m-1}: S < T iff the largest
// element of the symmetric difference lies in T.  First subset is
// {0..w-1}, last is {m-w..m-1}.

// Visits every w-subset once, in colex order.  The callback receives the
// sorted support; it must not retain the reference.
void for_each_subset(int m, int w, const std::function<void(const std::vector<int>&)>& fn);

// Materializes J(m, w) in colex order.
std::vector<ColumnWord> enumerate_constant_weight(int m, int w);

// Combinatorial number system: rank in [0, C(m,w)) of a sorted support,
// and its inverse.  Exact at any size.
BigInt colex_rank(const std::vector<int>& support);
std::vector<int> colex_unrank(int m, int w, const BigInt& rank);

// Visits every weight-w word at distance <= radius from center (any
// weight), each exactly once, by modifying the center's support: keep a
// ones, drop the rest, add w-a fresh ones.  Distance descends in a, so
// words arrive in order of increasing distance; within one distance the
// order is colex on (kept, added) index subsets.  The int argument is the
// exact distance.
void ball_enumerate(const BitWord& center, int w, int radius,
                    const std::function<void(const ColumnWord&, int)>& fn);

// Number of words ball_enumerate would visit.
BigInt ball_size(int m, int center_weight, int w, int radius);

}  // namespace cwac
