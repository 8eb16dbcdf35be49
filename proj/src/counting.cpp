#include "cwac/counting.hpp"

#include <algorithm>
#include <array>

#include "cwac/error.hpp"

namespace cwac {

BigInt binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt binom_rational(long n, long num, long den) {
    if (den == 0) throw ParamError("binomial index denominator is zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num % den != 0) return 0;
    return binom(n, num / den);
}

BigInt nu(int m, int w, int u, int i) {
    if (m < 0 || w < 0 || w > m || u < 0 || u > m)
        throw ParamError("nu needs weights within [0, m]");
    if (i < 0) return 0;
    // keep a = (u+w-i)/2 of the w ones, add (u+i-w)/2 fresh ones
    if ((u + w - i) % 2 != 0) return 0;
    long a = (static_cast<long>(u) + w - i) / 2;
    return binom(w, a) * binom(m - w, u - a);
}

static CountTable g_count_table;

BigInt CountTable::get(int m, int n, int w, int u, int d) {
    if (m < 1 || n < 1 || w < 0 || w > m || u < 0 || u > m)
        throw ParamError("count_N needs m >= 1, n >= 1, weights within [0, m]");
    if (d < 0) return 0;
    std::array<int, 5> key{m, n, w, u, d};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    BigInt val;
    if (n == 1) {
        val = nu(m, w, u, d);
    } else {
        val = 0;
        for (int e = 0; e <= d; ++e) {
            BigInt tail = nu(m, w, u, d - e);
            if (tail != 0) val += get(m, n - 1, w, u, e) * tail;
        }
    }
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.emplace(key, std::move(val)).first->second;
}

void CountTable::clear() {
    std::lock_guard<std::mutex> lk(mu_);
    memo_.clear();
}

BigInt count_N(int m, int n, int w, int u, int d) { return g_count_table.get(m, n, w, u, d); }

BigInt beta_lower(int n, int w, int delta) {
    if (!(0 <= delta && delta <= w && w <= n))
        throw ParamError("beta_lower needs 0 <= delta <= w <= n");
    // family i: weight-w words meeting a fixed kernel of size w - delta + 2i
    // in at least w - delta + i points.  Every member is within plain
    // distance delta of the kernel word, so pairwise distances stay
    // within 2*delta by the triangle inequality.  i = 0 is the ball
    // around a weight-(w - delta) word, i = delta the w-subsets of a
    // (w + delta)-set.
    BigInt best = 0;
    for (int i = 0; i <= delta; ++i) {
        long kernel = static_cast<long>(w) - delta + 2L * i;
        if (kernel > n) break;
        BigInt total = 0;
        for (long s = static_cast<long>(w) - delta + i; s <= std::min<long>(kernel, w); ++s)
            total += binom(kernel, s) * binom(n - kernel, w - s);
        best = std::max(best, total);
    }
    return best;
}

BigInt gamma_exact(const BigInt& q, int n, int delta) {
    if (q < 1 || n < 1 || delta < 0) throw ParamError("gamma_exact needs q >= 1, n >= 1, delta >= 0");
    if (q == 1) return 1;
    if (delta >= n) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    // largest r with 2r < min(delta + 1, 2(n - delta - 1)/(q - 2));
    // the second constraint is vacuous at q = 2 (here n - delta - 1 >= 0)
    long r = delta / 2;
    if (q != 2) {
        BigInt num = n - delta - 1;
        BigInt den = q - 2;
        BigInt fl = floor_div(num, den);
        BigInt r2 = (fl * den == num) ? fl - 1 : fl;
        if (r2 < r) r = std::max(0L, r2.get_si());
    }
    BigInt sum = 0;
    BigInt qm1 = q - 1;
    for (long i = 0; i <= r; ++i) sum += binom(n, i) * big_pow(qm1, static_cast<unsigned long>(i));
    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(delta - 2 * r));
    return scale * sum;
}

BigInt alpha_lower(int m, int n, int w, int delta) {
    if (m < 1 || n < 1 || w < 0 || w > m || delta < 0)
        throw ParamError("alpha_lower needs m >= 1, n >= 1, 0 <= w <= m, delta >= 0");
    int wn = std::min(w, m - w);  // complementing columns preserves distances
    if (delta >= static_cast<long>(n) * wn) return big_pow(binom(m, w), static_cast<unsigned long>(n));
    if (delta == 0 || wn == 0) return 1;
    BigInt best = 1;
    for (int phi = 1; phi <= std::min(delta, wn); ++phi) {
        BigInt q = beta_lower(m, wn, phi);
        if (q < 1) continue;
        // outer diameter floor(delta/phi) keeps the concatenated
        // half-diameter at most delta
        best = std::max(best, gamma_exact(q, n, delta / phi));
    }
    return best;
}

std::optional<BigInt> spherical_max(long dim, const BigRat& s) {
    if (dim < 1) throw ParamError("spherical_max needs dim >= 1");
    if (s > 0) return std::nullopt;
    if (s == 0) return BigInt(2 * dim);
    BigRat threshold(-1, dim);
    threshold.canonicalize();
    if (s <= threshold) {
        BigRat v = 1 - BigRat(1) / s;
        return floor_rat(v);
    }
    return BigInt(dim + 1);
}

}  // namespace cwac
