#include "cwac/enumerate.hpp"

#include <algorithm>

namespace cwac {

static BigInt binom_big(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

void for_each_subset(int m, int w, const std::function<void(const std::vector<int>&)>& fn) {
    if (m < 0 || w < 0 || w > m) throw ParamError("subset enumeration needs 0 <= w <= m");
    std::vector<int> s(w);
    for (int i = 0; i < w; ++i) s[i] = i;
    if (w == 0) {
        fn(s);
        return;
    }
    for (;;) {
        fn(s);
        // colex successor: bump the lowest element that has room, reset below
        int i = 0;
        while (i < w) {
            int limit = (i + 1 < w) ? s[i + 1] : m;
            if (s[i] + 1 < limit) break;
            ++i;
        }
        if (i == w) return;
        ++s[i];
        for (int j = 0; j < i; ++j) s[j] = j;
    }
}

std::vector<ColumnWord> enumerate_constant_weight(int m, int w) {
    std::vector<ColumnWord> out;
    for_each_subset(m, w, [&](const std::vector<int>& s) { out.emplace_back(m, s); });
    return out;
}

BigInt colex_rank(const std::vector<int>& support) {
    BigInt r = 0;
    for (size_t i = 0; i < support.size(); ++i)
        r += binom_big(support[i], static_cast<long>(i) + 1);
    return r;
}

std::vector<int> colex_unrank(int m, int w, const BigInt& rank) {
    if (w < 0 || w > m) throw ParamError("unrank needs 0 <= w <= m");
    if (rank < 0 || rank >= binom_big(m, w)) throw ParamError("rank out of range");
    std::vector<int> s(w);
    BigInt r = rank;
    int hi = m;
    for (int i = w; i >= 1; --i) {
        // largest v with C(v, i) <= r; v < hi keeps the result sorted
        int v = i - 1;
        for (int c = hi - 1; c >= i - 1; --c) {
            if (binom_big(c, i) <= r) {
                v = c;
                break;
            }
        }
        s[i - 1] = v;
        r -= binom_big(v, i);
        hi = v;
    }
    return s;
}

void ball_enumerate(const BitWord& center, int w, int radius,
                    const std::function<void(const ColumnWord&, int)>& fn) {
    int m = center.length();
    if (w < 0 || w > m) throw ParamError("ball enumeration needs 0 <= w <= m");
    if (radius < 0) throw ParamError("ball radius must be nonnegative");
    std::vector<int> ones = center.support();
    std::vector<int> zeros;
    zeros.reserve(m - ones.size());
    for (int p = 0; p < m; ++p)
        if (!center.test(p)) zeros.push_back(p);
    int wc = static_cast<int>(ones.size());

    // keep a of the center's ones: distance is wc + w - 2a
    int a_max = std::min(w, wc);
    for (int a = a_max; a >= 0; --a) {
        int dist = wc + w - 2 * a;
        if (dist > radius) break;
        if (w - a > static_cast<int>(zeros.size())) continue;
        for_each_subset(wc, a, [&](const std::vector<int>& keep_idx) {
            std::vector<int> base(a);
            for (int i = 0; i < a; ++i) base[i] = ones[keep_idx[i]];
            for_each_subset(static_cast<int>(zeros.size()), w - a,
                            [&](const std::vector<int>& add_idx) {
                                std::vector<int> sup = base;
                                for (int idx : add_idx) sup.push_back(zeros[idx]);
                                std::sort(sup.begin(), sup.end());
                                fn(ColumnWord(m, sup), dist);
                            });
        });
    }
}

BigInt ball_size(int m, int center_weight, int w, int radius) {
    if (center_weight < 0 || center_weight > m || w < 0 || w > m)
        throw ParamError("ball size needs weights within [0, m]");
    BigInt total = 0;
    for (int a = std::min(w, center_weight); a >= 0; --a) {
        int dist = center_weight + w - 2 * a;
        if (dist > radius) break;
        total += binom_big(center_weight, a) * binom_big(m - center_weight, w - a);
    }
    return total;
}

}  // namespace cwac
