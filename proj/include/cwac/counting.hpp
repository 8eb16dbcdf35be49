#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>

#include "cwac/bigint.hpp"

namespace cwac {

// Distance unit convention, used everywhere in this library:
//   * binary constant-weight objects (codes and anticodes over J(m,w),
//     and arrays of them) measure d / delta in HALF Hamming distance:
//     a code of minimum distance 2d is said to have distance d;
//   * q-ary unrestricted words measure distance in plain Hamming units.
// Distances between equal-weight binary words are always even, so the
// half counts are integers.

// C(n, k): 0 unless 0 <= k <= n.
BigInt binom(long n, long k);
// C(n, num/den): 0 when den does not divide num.
BigInt binom_rational(long n, long num, long den);

// Number of weight-u words at Hamming distance exactly i from a fixed
// weight-w word of length m.
BigInt nu(int m, int w, int u, int i);

// Number of arrays in J(m,u)^n at Hamming distance exactly d from a
// fixed array in J(m,w)^n.  Computed by convolving the single-column
// counts; results are memoized process-wide.
BigInt count_N(int m, int n, int w, int u, int d);

// Shared memo behind count_N.  Concurrent callers may duplicate work but
// never observe a partially computed entry.
class CountTable {
public:
    BigInt get(int m, int n, int w, int u, int d);
    void clear();

private:
    std::mutex mu_;
    std::map<std::array<int, 5>, BigInt> memo_;
};

// Constructive lower bound on the largest anticode in J(n,w) of
// half-diameter delta: best over i of the number of w-subsets meeting a
// fixed (w - delta + 2i)-subset in at least w - delta + i points.
// Attains C(n,w) at delta = w and the exact value in many small cases.
BigInt beta_lower(int n, int w, int delta);

// Exact largest q-ary anticode in [q]^n of (plain Hamming) diameter
// delta.  q may exceed machine range.  Degenerate corners: delta >= n
// gives q^n; for q = 2 the second radius constraint is vacuous whenever
// n - delta - 1 >= 0; the radius never goes below 0.
BigInt gamma_exact(const BigInt& q, int n, int delta);

// Constructive lower bound on the largest anticode in J(m,w)^n of
// half-diameter delta: concatenate an inner constant-weight anticode of
// half-diameter phi with an outer q-ary anticode of diameter
// floor(delta/phi), maximized over phi.  Never exceeds the true maximum.
BigInt alpha_lower(int m, int n, int w, int delta);

// Largest number of unit vectors in R^dim with pairwise inner products
// <= s.  Known exactly for s <= 0; empty for s < -1.  Returns nullopt
// for s > 0 (no closed form is implemented).
std::optional<BigInt> spherical_max(long dim, const BigRat& s);

}  // namespace cwac
