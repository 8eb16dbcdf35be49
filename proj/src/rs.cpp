#include "cwac/rs.hpp"

#include <algorithm>
#include <utility>

#include "cwac/error.hpp"

namespace cwac {

namespace {

int poly_deg(const std::vector<int>& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && p[d] == 0) --d;
    return d;
}

std::vector<int> poly_mul(const Field& f, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] ^= f.mul(a[i], b[j]);
    }
    return out;
}

}  // namespace

ReedSolomon::ReedSolomon(Field field, int n, int k) : field_(std::move(field)), n_(n), k_(k) {
    if (n < 1 || n > field_.order())
        throw ParamError("code length must be in [1, 2^b - 1] for the chosen field");
    if (k < 1 || k > n) throw ParamError("dimension must be in [1, n]");
}

int ReedSolomon::eval(const std::vector<int>& poly, int x) const {
    int acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = field_.mul(acc, x) ^ *it;
    return acc;
}

std::vector<int> ReedSolomon::interpolate(const std::vector<int>& xs,
                                          const std::vector<int>& ys) const {
    const int k = static_cast<int>(xs.size());
    // master = prod (x + x_l); char 2, so subtraction is addition
    std::vector<int> master{1};
    for (int x : xs) master = poly_mul(field_, master, {x, 1});
    std::vector<int> q(k, 0);
    std::vector<int> nj(k, 0);
    for (int j = 0; j < k; ++j) {
        // synthetic division of master by its root xs[j]
        nj[k - 1] = master[k];
        for (int i = k - 1; i >= 1; --i) nj[i - 1] = master[i] ^ field_.mul(xs[j], nj[i]);
        int den = eval(nj, xs[j]);
        int coef = field_.div(ys[j], den);
        for (int i = 0; i < k; ++i) q[i] ^= field_.mul(coef, nj[i]);
    }
    return q;
}

std::vector<int> ReedSolomon::encode(const std::vector<int>& message) const {
    if (static_cast<int>(message.size()) != k_)
        throw ParamError("message must carry exactly k symbols");
    for (int s : message)
        if (s < 0 || s >= field_.size()) throw ParamError("symbol outside the field");
    std::vector<int> xs(k_);
    for (int i = 0; i < k_; ++i) xs[i] = field_.pow_alpha(i);
    std::vector<int> q = interpolate(xs, message);
    std::vector<int> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = eval(q, field_.pow_alpha(i));
    return out;
}

RsDecodeResult ReedSolomon::decode(const std::vector<int>& received,
                                   const std::vector<bool>& erased, int t_budget) const {
    if (static_cast<int>(received.size()) != n_ || static_cast<int>(erased.size()) != n_)
        throw ParamError("received word must carry exactly n symbols with erasure marks");
    RsDecodeResult out;
    const int N = field_.order();
    const int twoT = N - k_;

    std::vector<int> full(N, 0);
    std::vector<bool> miss(N, true);  // erased or shortened-away
    int u = 0;
    for (int i = 0; i < n_; ++i) {
        if (erased[i]) continue;
        if (received[i] < 0 || received[i] >= field_.size())
            throw ParamError("symbol outside the field");
        full[i] = received[i];
        miss[i] = false;
    }
    for (int i = 0; i < N; ++i)
        if (miss[i]) ++u;
    if (N - u < k_) return out;  // not enough trusted positions even error-free

    std::vector<int> syn(twoT + 1, 0);  // syn[j] = S_j, 1-indexed
    for (int j = 1; j <= twoT; ++j) {
        const int aj = field_.pow_alpha(j);
        int s = 0, power = 1;
        for (int i = 0; i < N; ++i) {
            if (full[i]) s ^= field_.mul(full[i], power);
            power = field_.mul(power, aj);
        }
        syn[j] = s;
    }

    std::vector<int> gamma{1};
    for (int i = 0; i < N; ++i)
        if (miss[i]) gamma = poly_mul(field_, gamma, {1, field_.pow_alpha(i)});

    // Forney syndromes: coefficients u+1 .. 2T of S(x) * gamma(x), with
    // S(x) carrying S_j at degree j
    const int flen = twoT - u;
    std::vector<int> fsyn(std::max(flen, 0), 0);
    for (int r = 1; r <= flen; ++r) {
        int v = 0;
        for (int l = 0; l < static_cast<int>(gamma.size()); ++l) {
            const int j = u + r - l;
            if (j >= 1 && j <= twoT) v ^= field_.mul(gamma[l], syn[j]);
        }
        fsyn[r - 1] = v;
    }

    // Berlekamp-Massey on the Forney syndromes
    std::vector<int> lambda{1}, prev{1};
    int L = 0, gap = 1, prev_delta = 1;
    for (int r = 0; r < flen; ++r) {
        int delta = 0;
        for (int i = 0; i < static_cast<int>(lambda.size()) && i <= r; ++i)
            delta ^= field_.mul(lambda[i], fsyn[r - i]);
        if (delta == 0) {
            ++gap;
            continue;
        }
        std::vector<int> next = lambda;
        const int coef = field_.div(delta, prev_delta);
        if (next.size() < prev.size() + gap) next.resize(prev.size() + gap, 0);
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i + gap] ^= field_.mul(coef, prev[i]);
        if (2 * L <= r) {
            prev = lambda;
            prev_delta = delta;
            L = r + 1 - L;
            gap = 1;
        } else {
            ++gap;
        }
        lambda = std::move(next);
    }

    std::vector<int> psi = poly_mul(field_, lambda, gamma);
    const int locator_deg = poly_deg(psi);
    std::vector<bool> suspect(N, false);
    int roots = 0;
    for (int i = 0; i < N; ++i) {
        if (eval(psi, field_.pow_alpha(-i)) == 0) {
            suspect[i] = true;
            ++roots;
        }
    }
    if (roots != locator_deg) return out;  // locator does not split: undecodable

    std::vector<int> xs, ys;
    for (int i = 0; i < N && static_cast<int>(xs.size()) < k_; ++i) {
        if (suspect[i]) continue;
        xs.push_back(field_.pow_alpha(i));
        ys.push_back(full[i]);
    }
    if (static_cast<int>(xs.size()) < k_) return out;
    std::vector<int> q = interpolate(xs, ys);
    for (int i = 0; i < N; ++i) {
        if (suspect[i]) continue;
        if (eval(q, field_.pow_alpha(i)) != full[i]) return out;  // inconsistent candidate
    }

    int fixed = 0;
    for (int i = 0; i < n_; ++i)
        if (!erased[i] && eval(q, field_.pow_alpha(i)) != received[i]) ++fixed;
    if (t_budget >= 0 && fixed > t_budget) return out;

    out.ok = true;
    out.errors_corrected = fixed;
    out.message.resize(k_);
    for (int i = 0; i < k_; ++i) out.message[i] = eval(q, field_.pow_alpha(i));
    return out;
}

}  // namespace cwac
