#include "cwac/bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "cwac/counting.hpp"
#include "cwac/error.hpp"
#include "cwac/oracle.hpp"

namespace cwac {

namespace {

bool fits_int(long v) { return v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max(); }

void validate(const CodeParams& p, const char* who) {
    if (p.m < 1 || p.n < 1 || p.w < 0 || p.w > p.m || p.d < 1)
        throw ParamError(std::string(who) + " needs m >= 1, n >= 1, 0 <= w <= m, d >= 1");
}

Prov leaf(RuleId r, bool up, const CodeParams& p, BigInt v,
          std::map<std::string, std::string> args = {}) {
    Prov n;
    n.rule = r;
    n.is_upper = up;
    n.params = p;
    n.value = std::move(v);
    n.args = std::move(args);
    return n;
}

Prov node(RuleId r, bool up, const CodeParams& p, BigInt v, std::vector<Prov> kids,
          std::map<std::string, std::string> args = {}) {
    Prov n = leaf(r, up, p, std::move(v), std::move(args));
    n.children = std::move(kids);
    return n;
}

// the loosened Bassalygo-Elias factor; doubles are fine here because the
// result is never used on a certified path
double loose_bassalygo_factor(int w, int n) {
    return std::sqrt(M_PI * w * n) *
           std::pow(2.0, -0.5 * n * (3.0 + std::log2(static_cast<double>(w))));
}

std::string join_seq(const std::vector<int>& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(seq[i]);
    }
    return out;
}

// shared by the engine driver, the explicit operation, and replay
void check_partition_sequence(int m, int n, int w, int d, const std::vector<int>& seq) {
    if (m < 1 || n < 1 || w < 1 || w > m || d < 1)
        throw ParamError("partition packing needs m >= 1, n >= 1, 1 <= w <= m, d >= 1");
    if (seq.empty() || seq[0] != n) throw ParamError("sequence must start at n_0 = n");
    const long nw = static_cast<long>(n) * w;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const long ni = seq[i];
        if (ni < 1) throw ParamError("violated constraint: n_i >= 1");
        if (nw % ni != 0) throw ParamError("violated constraint: n_i | nw");
        if (i > 0) {
            if (ni * m < nw) throw ParamError("violated constraint: nw/m <= n_i");
            if (ni * nw > (nw - d) * seq[i - 1])
                throw ParamError("violated constraint: n_i <= (1 - d/nw) n_{i-1}");
        }
    }
}

}  // namespace

const char* rule_name(RuleId id) {
    switch (id) {
        case RuleId::Trivial: return "trivial";
        case RuleId::Symmetry: return "symmetry";
        case RuleId::Singleton: return "singleton";
        case RuleId::JohnsonII: return "johnson2";
        case RuleId::Gilbert: return "gilbert";
        case RuleId::Hamming: return "hamming";
        case RuleId::Sandwich: return "sandwich";
        case RuleId::PartitionPacking: return "partition_packing";
        case RuleId::Stacking: return "stacking";
        case RuleId::HighDistance: return "high_distance";
        case RuleId::Alphabet: return "alphabet";
        case RuleId::BassalygoElias: return "bassalygo_elias";
        case RuleId::BassalygoLog: return "bassalygo_log";
        case RuleId::Spherical: return "spherical";
        case RuleId::Monotonicity: return "monotonicity";
        case RuleId::OracleExact: return "oracle_exact";
        case RuleId::Concatenation: return "concatenation";
        case RuleId::QarySingleton: return "qary_singleton";
    }
    return "unknown";
}

std::optional<BigInt> trivial_value(const CodeParams& p) {
    validate(p, "trivial_value");
    const int wn = std::min(p.w, p.m - p.w);
    const long nw = static_cast<long>(p.n) * wn;
    if (p.d > nw) return BigInt(1);  // covers wn == 0 as well
    if (p.d == nw) return BigInt(p.m / wn);
    if (p.d == 1) return big_pow(binom(p.m, wn), static_cast<unsigned long>(p.n));
    return std::nullopt;
}

BigInt gilbert_lower(const CodeParams& p) {
    validate(p, "gilbert_lower");
    BigInt den = 0;
    for (int i = 0; i < p.d; ++i) den += count_N(p.m, p.n, p.w, p.w, 2 * i);
    return ceil_div(big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)), den);
}

BigInt hamming_upper(const CodeParams& p, int* u_used) {
    validate(p, "hamming_upper");
    // a weight-u array within distance d-1 of a weight-w codeword needs
    // n |u - w| <= d - 1, so only nearby column weights give a packing
    const int spread = (p.d - 1) / p.n;
    std::optional<BigInt> best;
    int best_u = p.w;
    for (int u = std::max(0, p.w - spread); u <= std::min(p.m, p.w + spread); ++u) {
        BigInt den = 0;
        for (int i = 0; i < p.d; ++i) den += count_N(p.m, p.n, p.w, u, i);
        if (den == 0) continue;
        BigInt val = floor_div(big_pow(binom(p.m, u), static_cast<unsigned long>(p.n)), den);
        if (!best || val < *best) {
            best = std::move(val);
            best_u = u;
        }
    }
    if (u_used) *u_used = best_u;
    return *best;
}

std::optional<BigInt> spherical_upper(const CodeParams& p) {
    validate(p, "spherical_upper");
    if (p.w == 0 || p.w == p.m) return std::nullopt;
    const long dim = static_cast<long>(p.n) * (p.m - 1);
    BigRat delta(BigInt(p.n) * p.w * (p.m - p.w), BigInt(p.m));
    delta.canonicalize();
    BigRat s = 1 - BigRat(p.d) / delta;
    s.canonicalize();
    return spherical_max(dim, s);
}

Engine::Engine(EngineOptions opts) : opts_(opts) {
    if (opts_.budget < 0) throw ParamError("engine budget must be >= 0");
}

void Engine::clear() {
    std::lock_guard<std::mutex> lk(mu_);
    lower_memo_.clear();
    upper_memo_.clear();
    oracle_memo_.clear();
}

BoundReport Engine::best_bounds(const CodeParams& p) { return best_bounds(p, opts_.budget); }

BoundReport Engine::best_bounds(const CodeParams& p, int budget) {
    if (p.m < 1 || p.n < 1 || p.w < 1 || p.w > p.m || p.d < 1)
        throw ParamError("best_bounds needs m >= 1, n >= 1, 1 <= w <= m, d >= 1");
    if (budget < 0) throw ParamError("budget must be >= 0");
    Entry lo = lower(p, budget);
    Entry hi = upper(p, budget);
    if (lo.value > hi.value)
        throw std::logic_error("bound rules crossed on " + to_string(lo.value) + " > " +
                               to_string(hi.value) + "; some rule is unsound");
    BoundReport rep;
    rep.params = p;
    rep.lower = lo.value;
    rep.upper = hi.value;
    rep.lower_prov = std::move(lo.prov);
    rep.upper_prov = std::move(hi.prov);
    if (opts_.fast_bassalygo && p.n >= 2 && 2 * p.w <= p.m &&
        fits_int(static_cast<long>(p.m) * p.n) && fits_int(static_cast<long>(p.n) * p.w)) {
        Entry b = lower({p.m * p.n, 1, p.n * p.w, p.d}, budget > 0 ? budget - 1 : 0);
        double approx = loose_bassalygo_factor(p.w, p.n) * mpz_get_d(b.value.get_mpz_t());
        if (std::isfinite(approx) && approx >= 1.0) {
            BigInt val(std::floor(approx));
            // an uncertified float estimate must never cross the certified
            // interval; drop it silently if it does
            if (val > rep.lower && val <= rep.upper) {
                rep.lower = val;
                rep.lower_prov =
                    node(RuleId::BassalygoLog, false, p, val, {std::move(b.prov)});
            }
        }
    }
    return rep;
}

bool Engine::oracle_seed(const CodeParams& p, Entry& out, bool is_upper) {
    if (opts_.oracle_cap == 0) return false;
    BigInt universe = big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n));
    if (universe > static_cast<unsigned long>(opts_.oracle_cap)) return false;
    std::array<int, 4> key{p.m, p.n, p.w, p.d};
    long size = -1;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = oracle_memo_.find(key);
        if (it != oracle_memo_.end()) size = it->second;
    }
    if (size < 0) {
        OracleOptions oo;
        oo.universe_cap = opts_.oracle_cap;
        oo.want_witness = false;
        size = exact_max_code(p.m, p.n, p.w, p.d, oo).size;
        std::lock_guard<std::mutex> lk(mu_);
        oracle_memo_[key] = size;
    }
    out.value = size;
    out.prov = leaf(RuleId::OracleExact, is_upper, p, out.value,
                    {{"universe", to_string(universe)}});
    return true;
}

Engine::Entry Engine::lower(CodeParams p, int budget) {
    if (p.m < 1 || p.n < 1 || p.w < 0 || p.w > p.m || p.d < 1)
        throw std::logic_error("internal lower-bound query out of range");
    if (2 * p.w > p.m) {
        Entry e = lower({p.m, p.n, p.m - p.w, p.d}, budget);
        Prov wrap = node(RuleId::Symmetry, false, p, e.value, {std::move(e.prov)});
        return {std::move(e.value), std::move(wrap)};
    }
    if (auto tv = trivial_value(p)) return {*tv, leaf(RuleId::Trivial, false, p, *tv)};
    Key key{p.m, p.n, p.w, p.d, budget};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = lower_memo_.find(key);
        if (it != lower_memo_.end()) return it->second;
    }
    Entry e;
    if (!oracle_seed(p, e, false)) e = lower_rules(p, budget);
    std::lock_guard<std::mutex> lk(mu_);
    return lower_memo_.emplace(key, std::move(e)).first->second;
}

Engine::Entry Engine::upper(CodeParams p, int budget) {
    if (p.m < 1 || p.n < 1 || p.w < 0 || p.w > p.m || p.d < 1)
        throw std::logic_error("internal upper-bound query out of range");
    if (2 * p.w > p.m) {
        Entry e = upper({p.m, p.n, p.m - p.w, p.d}, budget);
        Prov wrap = node(RuleId::Symmetry, true, p, e.value, {std::move(e.prov)});
        return {std::move(e.value), std::move(wrap)};
    }
    if (auto tv = trivial_value(p)) return {*tv, leaf(RuleId::Trivial, true, p, *tv)};
    Key key{p.m, p.n, p.w, p.d, budget};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = upper_memo_.find(key);
        if (it != upper_memo_.end()) return it->second;
    }
    Entry e;
    if (!oracle_seed(p, e, true)) e = upper_rules(p, budget);
    std::lock_guard<std::mutex> lk(mu_);
    return upper_memo_.emplace(key, std::move(e)).first->second;
}

Engine::Entry Engine::lower_rules(const CodeParams& p, int budget) {
    std::vector<Entry> cands;

    {
        BigInt g = gilbert_lower(p);
        cands.push_back({g, leaf(RuleId::Gilbert, false, p, g)});
    }
    {
        // inner code of 2^bits words of J(m,w) at pairwise distance >= 2,
        // outer Reed-Solomon [n, n-d+1, d] over GF(2^bits)
        BigInt q = binom(p.m, p.w);
        if (q >= 2) {
            long bits = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
            BigInt alphabet = big_pow(BigInt(2), static_cast<unsigned long>(bits));
            if (p.d <= p.n && alphabet - 1 >= p.n) {
                BigInt v =
                    big_pow(BigInt(2), static_cast<unsigned long>(bits * (p.n - p.d + 1)));
                cands.push_back({v, leaf(RuleId::Concatenation, false, p, v,
                                         {{"bits", std::to_string(bits)}})});
            }
        }
    }

    if (budget > 0) {
        const int sub = budget - 1;
        const long nw = static_cast<long>(p.n) * p.w;

        // distance-preserving re-slicing: a columns of J(m',w') packed
        // into one column of J(m,w), padded with fixed bits
        for (int a = 1; a <= std::min(p.w, 6); ++a) {
            std::vector<int> wps{p.w / a};
            if (p.w / a != 1) wps.push_back(1);
            for (int wp : wps) {
                if (a == 1 && wp == p.w) continue;
                long mp = (p.m - p.w + static_cast<long>(a) * wp) / a;
                if (wp > mp || !fits_int(mp) || !fits_int(static_cast<long>(a) * p.n)) continue;
                Entry s = lower({static_cast<int>(mp), a * p.n, wp, p.d}, sub);
                BigInt v = s.value;
                cands.push_back({v, node(RuleId::Sandwich, false, p, v, {std::move(s.prov)},
                                         {{"a", std::to_string(a)},
                                          {"mprime", std::to_string(mp)},
                                          {"wprime", std::to_string(wp)}})});
            }
        }

        // spread an (m/a, n, w, d) code over a stacked slots driven by a
        // q-ary code on the slot indices
        for (int a = 2; a < p.m; ++a) {
            if (p.m % a) continue;
            const int m0 = p.m / a;
            if (p.w > m0) continue;
            const int dprime = (p.d + p.w - 1) / p.w;
            Entry c = lower({a, p.n, 1, dprime}, sub);
            Entry base = lower({m0, p.n, p.w, p.d}, sub);
            BigInt v = c.value * base.value;
            std::vector<Prov> kids;
            kids.push_back(std::move(c.prov));
            kids.push_back(std::move(base.prov));
            if (p.w % a == 0 && static_cast<long>(a) * p.d <= nw * (a - 1) &&
                fits_int(static_cast<long>(a) * p.n)) {
                Entry ext = lower({m0, a * p.n, p.w / a, p.d}, sub);
                v += ext.value;
                kids.push_back(std::move(ext.prov));
            }
            cands.push_back({v, node(RuleId::Stacking, false, p, v, std::move(kids),
                                     {{"a", std::to_string(a)}})});
        }

        // partition packing applies to constant-weight targets B(M, W, d)
        if (p.n == 1 && p.d <= p.w) {
            const int M = p.m, W = p.w;
            std::optional<Entry> best;
            for (int n2 = 2; n2 <= W; ++n2) {
                if (M % n2 || W % n2) continue;
                const int m2 = M / n2, w2 = W / n2;
                std::vector<int> seq;
                std::vector<Prov> kids;
                BigInt sum = 0;
                auto add_term = [&](int ni) {
                    Entry b = lower({n2, 1, ni, p.d}, sub);
                    Entry a = lower({m2, ni, W / ni, p.d}, sub);
                    sum += b.value * a.value;
                    kids.push_back(std::move(b.prov));
                    kids.push_back(std::move(a.prov));
                };
                std::function<void()> dfs = [&]() {
                    if (!best || sum > best->value) {
                        Prov pr = node(RuleId::PartitionPacking, false, p, sum, kids,
                                       {{"inner_m", std::to_string(m2)},
                                        {"inner_n", std::to_string(n2)},
                                        {"inner_w", std::to_string(w2)},
                                        {"seq", join_seq(seq)}});
                        best = Entry{sum, std::move(pr)};
                    }
                    if (seq.size() >= 4) return;
                    const long prev = seq.back();
                    for (int ni = static_cast<int>(prev) - 1; ni >= 1; --ni) {
                        if (W % ni) continue;
                        if (static_cast<long>(ni) * m2 < W) break;
                        if (static_cast<long>(ni) * W > (static_cast<long>(W) - p.d) * prev)
                            continue;
                        const std::size_t mark = kids.size();
                        BigInt keep = sum;
                        seq.push_back(ni);
                        add_term(ni);
                        dfs();
                        seq.pop_back();
                        kids.resize(mark);
                        sum = std::move(keep);
                    }
                };
                seq.push_back(n2);
                add_term(n2);
                dfs();
            }
            if (best) cands.push_back(std::move(*best));
        }

        if (p.n >= 2 && fits_int(static_cast<long>(p.m) * p.n) && fits_int(nw)) {
            Entry b = lower({p.m * p.n, 1, static_cast<int>(nw), p.d}, sub);
            BigInt num = big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * b.value;
            BigInt den = binom(static_cast<long>(p.m) * p.n, nw);
            BigInt v = ceil_div(num, den);
            cands.push_back(
                {v, node(RuleId::BassalygoElias, false, p, v, {std::move(b.prov)})});
        }

        if (p.m >= 2 && p.w <= p.m - 1) {
            Entry s = lower({p.m - 1, p.n, p.w, p.d}, sub);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Monotonicity, false, p, v, {std::move(s.prov)},
                                     {{"from", "m-1"}})});
        }
        if (p.n >= 2) {
            Entry s = lower({p.m, p.n - 1, p.w, p.d}, sub);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Monotonicity, false, p, v, {std::move(s.prov)},
                                     {{"from", "n-1"}})});
        }
        // same-budget chain keeps lower(d) >= lower(d+1) exact; the length
        // guard bounds stack depth for very large weights
        if (p.d + 1 <= nw && nw - p.d <= 512) {
            Entry s = lower({p.m, p.n, p.w, p.d + 1}, budget);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Monotonicity, false, p, v, {std::move(s.prov)},
                                     {{"from", "d+1"}})});
        }
    }

    Entry* best = &cands.front();
    for (auto& c : cands)
        if (c.value > best->value) best = &c;
    return std::move(*best);
}

Engine::Entry Engine::upper_rules(const CodeParams& p, int budget) {
    std::vector<Entry> cands;
    const long nw = static_cast<long>(p.n) * p.w;

    if (p.w == 1 && p.d <= p.n) {
        BigInt v = big_pow(BigInt(p.m), static_cast<unsigned long>(p.n - p.d + 1));
        cands.push_back({v, leaf(RuleId::QarySingleton, true, p, v)});
    }
    {
        int u = p.w;
        BigInt h = hamming_upper(p, &u);
        cands.push_back({h, leaf(RuleId::Hamming, true, p, h, {{"u", std::to_string(u)}})});
    }
    if (auto s = spherical_upper(p))
        cands.push_back({*s, leaf(RuleId::Spherical, true, p, *s)});

    if (budget > 0) {
        const int sub = budget - 1;

        if (p.n >= 2 && p.d >= p.w + 1) {
            Entry s = upper({p.m, p.n - 1, p.w, p.d - p.w}, sub);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Singleton, true, p, v, {std::move(s.prov)})});
        }

        if (p.m >= 2 && p.w >= 1) {
            std::optional<Entry> best;
            std::map<std::string, std::string> best_args;
            for (int l = 1; l <= std::min(p.n, 4); ++l) {
                if (p.n % l || !fits_int(static_cast<long>(p.m - 1) * l)) continue;
                const int reps = p.n / l;
                for (int v = 0; v <= l; ++v) {
                    const int wsub = l * p.w - v;
                    if (wsub < 0 || wsub > (p.m - 1) * l) continue;
                    const int dmax = reps * std::min(v, l - v);
                    for (int delta = 0; delta <= dmax; ++delta) {
                        Entry s = upper({(p.m - 1) * l, reps, wsub, std::max(1, p.d - delta)},
                                        sub);
                        BigInt alpha = alpha_lower(l, reps, v, delta);
                        BigInt num = big_pow(BigInt(p.m), static_cast<unsigned long>(p.n)) *
                                     s.value;
                        BigInt den =
                            alpha *
                            big_pow(BigInt(p.w), static_cast<unsigned long>(v) * reps) *
                            big_pow(BigInt(p.m - p.w),
                                    static_cast<unsigned long>(l - v) * reps);
                        BigInt val = floor_div(num, den);
                        if (!best || val < best->value) {
                            best = Entry{val, std::move(s.prov)};
                            best_args = {{"l", std::to_string(l)},
                                         {"v", std::to_string(v)},
                                         {"delta", std::to_string(delta)}};
                            best->prov = node(RuleId::JohnsonII, true, p, val,
                                              {std::move(best->prov)}, best_args);
                        }
                    }
                }
            }
            if (best) cands.push_back(std::move(*best));
        }

        if (p.n >= 2 && fits_int(static_cast<long>(p.m) * p.n) && fits_int(nw)) {
            Entry s = upper({p.m * p.n, 1, static_cast<int>(nw), p.d}, sub);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Sandwich, true, p, v, {std::move(s.prov)})});
        }

        if (p.n >= 2 && p.d > static_cast<long>(p.n - 1) * p.w) {
            const int r = p.d - (p.n - 1) * p.w;
            Entry s = upper({p.m, 1, p.w, r}, sub);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::HighDistance, true, p, v, {std::move(s.prov)},
                                     {{"r", std::to_string(r)}})});
        }

        if (p.w >= 2) {
            const int dprime = (p.d + p.w - 1) / p.w;
            BigInt q = binom(p.m, p.w);
            if (q <= opts_.alphabet_cap && q <= std::numeric_limits<int>::max()) {
                Entry s = upper({static_cast<int>(q.get_si()), p.n, 1, dprime}, sub);
                BigInt v = s.value;
                cands.push_back({v, node(RuleId::Alphabet, true, p, v, {std::move(s.prov)},
                                         {{"dprime", std::to_string(dprime)}})});
            } else if (dprime <= p.n) {
                BigInt v = big_pow(q, static_cast<unsigned long>(p.n - dprime + 1));
                cands.push_back({v, leaf(RuleId::Alphabet, true, p, v,
                                         {{"q", to_string(q)},
                                          {"dprime", std::to_string(dprime)}})});
            }
        }

        if (p.w >= 2 && p.m % p.w == 0 && fits_int(nw)) {
            const int q = p.m / p.w;
            Entry s = upper({q, static_cast<int>(nw), 1, p.d}, sub);
            BigInt num = big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * s.value;
            BigInt den = big_pow(BigInt(q), static_cast<unsigned long>(nw));
            BigInt v = floor_div(num, den);
            cands.push_back(
                {v, node(RuleId::BassalygoElias, true, p, v, {std::move(s.prov)})});
        }

        // same-budget chain keeps upper(d) <= upper(d-1) exact
        if (p.d >= 2 && p.d <= 512) {
            Entry s = upper({p.m, p.n, p.w, p.d - 1}, budget);
            BigInt v = s.value;
            cands.push_back({v, node(RuleId::Monotonicity, true, p, v, {std::move(s.prov)},
                                     {{"from", "d-1"}})});
        }
    }

    Entry* best = &cands.front();
    for (auto& c : cands)
        if (c.value < best->value) best = &c;
    return std::move(*best);
}

BigInt partition_packing_lower(Engine& eng, int m, int n, int w, int d,
                               const std::vector<int>& seq) {
    check_partition_sequence(m, n, w, d, seq);
    const long nw = static_cast<long>(n) * w;
    const int budget = eng.options().budget;
    BigInt sum = 0;
    for (int ni : seq) {
        BigInt block = eng.lower({n, 1, ni, d}, budget).value;
        BigInt fill = eng.lower({m, ni, static_cast<int>(nw / ni), d}, budget).value;
        sum += block * fill;
    }
    return sum;
}

BigInt stacking_lower(Engine& eng, int a, int m, int n, int w, int d) {
    if (a < 1) throw ParamError("stacking needs a >= 1");
    CodeParams base{m, n, w, d};
    validate(base, "stacking_lower");
    if (w < 1) throw ParamError("stacking needs w >= 1");
    const int budget = eng.options().budget;
    const int dprime = (d + w - 1) / w;
    BigInt val =
        eng.lower({a, n, 1, dprime}, budget).value * eng.lower(base, budget).value;
    if (w % a == 0 && static_cast<long>(a) * d <= static_cast<long>(n) * w * (a - 1) &&
        fits_int(static_cast<long>(a) * n))
        val += eng.lower({m, a * n, w / a, d}, budget).value;
    return val;
}

BigInt bassalygo_transfer_lower(Engine& eng, int m, int n, int w2, int w1, int d) {
    if (w1 < 1 || w2 < w1 || w2 % w1 != 0 || m % w2 != 0)
        throw ParamError("bassalygo transfer needs w1 | w2 | m");
    CodeParams source{m, n, w2, d};
    validate(source, "bassalygo_transfer_lower");
    const long mt = static_cast<long>(m) / w2 * w1;
    const long nt = static_cast<long>(n) * w2 / w1;
    BigInt num = big_pow(binom(mt, w1), static_cast<unsigned long>(nt)) *
                 eng.lower(source, eng.options().budget).value;
    BigInt den = big_pow(binom(m, w2), static_cast<unsigned long>(n));
    return ceil_div(num, den);
}

std::optional<BigInt> singleton_upper(Engine& eng, const CodeParams& p) {
    validate(p, "singleton_upper");
    if (p.w < 1 || p.n < 2 || p.d < p.w + 1) return std::nullopt;
    return eng.upper({p.m, p.n - 1, p.w, p.d - p.w}, eng.options().budget).value;
}

std::optional<BigInt> johnson_upper(Engine& eng, const CodeParams& p, int l, int v, int delta) {
    validate(p, "johnson_upper");
    CodeParams q = p;
    if (2 * q.w > q.m) q.w = q.m - q.w;
    if (q.m < 2 || q.w < 1) return std::nullopt;
    if (l < 1 || q.n % l || v < 0 || v > l || delta < 0) return std::nullopt;
    const int reps = q.n / l;
    if (delta > reps * std::min(v, l - v)) return std::nullopt;
    const long wsub = static_cast<long>(l) * q.w - v;
    if (wsub < 0 || wsub > static_cast<long>(q.m - 1) * l) return std::nullopt;
    if (!fits_int(static_cast<long>(q.m - 1) * l)) return std::nullopt;
    BigInt child = eng.upper({(q.m - 1) * l, reps, static_cast<int>(wsub),
                              std::max(1, q.d - delta)},
                             eng.options().budget)
                       .value;
    BigInt den = alpha_lower(l, reps, v, delta) *
                 big_pow(BigInt(q.w), static_cast<unsigned long>(v) * reps) *
                 big_pow(BigInt(q.m - q.w), static_cast<unsigned long>(l - v) * reps);
    return floor_div(big_pow(BigInt(q.m), static_cast<unsigned long>(q.n)) * child, den);
}

std::pair<BigInt, BigInt> sandwich_bounds(Engine& eng, const CodeParams& p) {
    validate(p, "sandwich_bounds");
    if (p.w < 1) throw ParamError("sandwich_bounds needs w >= 1");
    const long nw = static_cast<long>(p.n) * p.w;
    const long mn = static_cast<long>(p.m) * p.n;
    if (!fits_int(nw) || !fits_int(mn)) throw ParamError("sandwich_bounds dimensions overflow");
    const int budget = eng.options().budget;
    BigInt lo = eng.lower({p.m / p.w, static_cast<int>(nw), 1, p.d}, budget).value;
    BigInt hi = eng.upper({static_cast<int>(mn), 1, static_cast<int>(nw), p.d}, budget).value;
    return {std::move(lo), std::move(hi)};
}

std::optional<BigInt> high_distance_upper(Engine& eng, const CodeParams& p) {
    validate(p, "high_distance_upper");
    if (p.w < 1) return std::nullopt;
    const long nw = static_cast<long>(p.n) * p.w;
    if (p.d <= static_cast<long>(p.n - 1) * p.w || p.d > nw) return std::nullopt;
    const int r = static_cast<int>(p.d - static_cast<long>(p.n - 1) * p.w);
    return eng.upper({p.m, 1, p.w, r}, eng.options().budget).value;
}

BigInt alphabet_upper(Engine& eng, const CodeParams& p) {
    validate(p, "alphabet_upper");
    if (p.w < 1) throw ParamError("alphabet_upper needs w >= 1");
    const int dprime = (p.d + p.w - 1) / p.w;
    BigInt q = binom(p.m, p.w);
    if (q <= eng.options().alphabet_cap && q <= std::numeric_limits<int>::max())
        return eng.upper({static_cast<int>(q.get_si()), p.n, 1, dprime}, eng.options().budget)
            .value;
    if (dprime > p.n) return BigInt(1);
    return big_pow(q, static_cast<unsigned long>(p.n - dprime + 1));
}

BassalygoBounds bassalygo_bounds(Engine& eng, const CodeParams& p) {
    validate(p, "bassalygo_bounds");
    if (p.w < 1) throw ParamError("bassalygo_bounds needs w >= 1");
    const long nw = static_cast<long>(p.n) * p.w;
    const long mn = static_cast<long>(p.m) * p.n;
    if (!fits_int(nw) || !fits_int(mn)) throw ParamError("bassalygo_bounds dimensions overflow");
    const int budget = eng.options().budget;
    BassalygoBounds out;
    {
        BigInt b = eng.lower({static_cast<int>(mn), 1, static_cast<int>(nw), p.d}, budget).value;
        out.lower = ceil_div(big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * b,
                             binom(mn, nw));
    }
    if (p.m % p.w == 0) {
        const int q = p.m / p.w;
        BigInt c = eng.upper({q, static_cast<int>(nw), 1, p.d}, budget).value;
        out.upper = floor_div(big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * c,
                              big_pow(BigInt(q), static_cast<unsigned long>(nw)));
    }
    return out;
}

namespace {

bool arg_long(const Prov& nd, const char* key, long& out) {
    auto it = nd.args.find(key);
    if (it == nd.args.end()) return false;
    try {
        std::size_t pos = 0;
        out = std::stol(it->second, &pos);
        return pos == it->second.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

bool replay(const Prov& nd, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = std::string(rule_name(nd.rule)) + " node at (" +
                   std::to_string(nd.params.m) + "," + std::to_string(nd.params.n) + "," +
                   std::to_string(nd.params.w) + "," + std::to_string(nd.params.d) +
                   "): " + msg;
        return false;
    };
    const CodeParams& p = nd.params;
    if (p.m < 1 || p.n < 1 || p.w < 0 || p.w > p.m || p.d < 1)
        return fail("parameters out of range");
    const auto& kids = nd.children;
    auto child_ok = [&](std::size_t i, const CodeParams& want) {
        return kids.size() > i && kids[i].params == want && kids[i].is_upper == nd.is_upper;
    };
    const long nw = static_cast<long>(p.n) * p.w;

    switch (nd.rule) {
        case RuleId::Trivial: {
            if (!kids.empty()) return fail("unexpected children");
            auto tv = trivial_value(p);
            if (!tv) return fail("no closed form applies here");
            if (*tv != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::Symmetry: {
            if (kids.size() != 1 || !child_ok(0, {p.m, p.n, p.m - p.w, p.d}))
                return fail("child must be the complemented instance");
            if (nd.value != kids[0].value) return fail("value mismatch");
            break;
        }
        case RuleId::Singleton: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (p.n < 2 || p.d < p.w + 1) return fail("needs n >= 2 and d >= w + 1");
            if (kids.size() != 1 || !child_ok(0, {p.m, p.n - 1, p.w, p.d - p.w}))
                return fail("child must drop one column and w from d");
            if (nd.value != kids[0].value) return fail("value mismatch");
            break;
        }
        case RuleId::JohnsonII: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (p.m < 2 || p.w < 1 || p.w >= p.m) return fail("needs m >= 2 and 1 <= w < m");
            long l = 0, v = 0, delta = 0;
            if (!arg_long(nd, "l", l) || !arg_long(nd, "v", v) || !arg_long(nd, "delta", delta))
                return fail("missing l, v, or delta");
            if (l < 1 || p.n % l || v < 0 || v > l || delta < 0) return fail("bad l, v, or delta");
            const long reps = p.n / l;
            if (delta > reps * std::min(v, l - v))
                return fail("delta exceeds the anticode diameter limit");
            const long wsub = l * p.w - v;
            if (wsub < 0 || wsub > static_cast<long>(p.m - 1) * l)
                return fail("sub-instance weight out of range");
            CodeParams want{static_cast<int>((p.m - 1) * l), static_cast<int>(reps),
                            static_cast<int>(wsub),
                            std::max(1, p.d - static_cast<int>(delta))};
            if (kids.size() != 1 || !child_ok(0, want)) return fail("child mismatch");
            BigInt den = alpha_lower(static_cast<int>(l), static_cast<int>(reps),
                                     static_cast<int>(v), static_cast<int>(delta)) *
                         big_pow(BigInt(p.w), static_cast<unsigned long>(v * reps)) *
                         big_pow(BigInt(p.m - p.w), static_cast<unsigned long>((l - v) * reps));
            BigInt val = floor_div(
                big_pow(BigInt(p.m), static_cast<unsigned long>(p.n)) * kids[0].value, den);
            if (val != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::Gilbert: {
            if (!kids.empty()) return fail("unexpected children");
            if (gilbert_lower(p) != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::Hamming: {
            if (!kids.empty()) return fail("unexpected children");
            long u = 0;
            if (!arg_long(nd, "u", u)) return fail("missing u");
            if (u < 0 || u > p.m) return fail("u out of range");
            BigInt den = 0;
            for (int i = 0; i < p.d; ++i)
                den += count_N(p.m, p.n, p.w, static_cast<int>(u), i);
            if (den == 0) return fail("empty ball cannot pack");
            BigInt val =
                floor_div(big_pow(binom(p.m, u), static_cast<unsigned long>(p.n)), den);
            if (val != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::Sandwich: {
            if (nd.is_upper) {
                if (p.n < 2 || !fits_int(static_cast<long>(p.m) * p.n) || !fits_int(nw))
                    return fail("needs n >= 2");
                if (kids.size() != 1 ||
                    !child_ok(0, {p.m * p.n, 1, static_cast<int>(nw), p.d}))
                    return fail("child must be the flattened binary instance");
            } else {
                long a = 0, mp = 0, wp = 0;
                if (!arg_long(nd, "a", a) || !arg_long(nd, "mprime", mp) ||
                    !arg_long(nd, "wprime", wp))
                    return fail("missing a, mprime, or wprime");
                if (a < 1 || wp < 1 || mp < wp || !fits_int(mp) || !fits_int(a * p.n))
                    return fail("bad a, mprime, or wprime");
                if (a * wp > p.w) return fail("violated constraint: a w' <= w");
                if (a * mp > p.m - p.w + a * wp)
                    return fail("violated constraint: a m' <= m - w + a w'");
                if (kids.size() != 1 ||
                    !child_ok(0, {static_cast<int>(mp), static_cast<int>(a) * p.n,
                                  static_cast<int>(wp), p.d}))
                    return fail("child mismatch");
            }
            if (nd.value != kids[0].value) return fail("value mismatch");
            break;
        }
        case RuleId::PartitionPacking: {
            if (nd.is_upper) return fail("this rule gives a lower bound");
            if (p.n != 1) return fail("applies to single-column targets");
            long m2 = 0, n2 = 0, w2 = 0;
            if (!arg_long(nd, "inner_m", m2) || !arg_long(nd, "inner_n", n2) ||
                !arg_long(nd, "inner_w", w2))
                return fail("missing inner shape");
            if (m2 < 1 || n2 < 1 || w2 < 1 || m2 * n2 != p.m || n2 * w2 != p.w)
                return fail("inner shape does not factor the target");
            std::vector<int> seq;
            {
                auto its = nd.args.find("seq");
                if (its == nd.args.end()) return fail("missing seq");
                const std::string& s = its->second;
                std::size_t pos = 0;
                while (pos <= s.size()) {
                    std::size_t next = s.find(',', pos);
                    if (next == std::string::npos) next = s.size();
                    try {
                        std::size_t used = 0;
                        const std::string tok = s.substr(pos, next - pos);
                        seq.push_back(std::stoi(tok, &used));
                        if (used != tok.size()) return fail("bad seq entry");
                    } catch (const std::exception&) {
                        return fail("bad seq entry");
                    }
                    pos = next + 1;
                }
            }
            try {
                check_partition_sequence(static_cast<int>(m2), static_cast<int>(n2),
                                         static_cast<int>(w2), p.d, seq);
            } catch (const ParamError& e) {
                return fail(e.what());
            }
            if (kids.size() != 2 * seq.size())
                return fail("expected one block/fill pair per sequence entry");
            BigInt sum = 0;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                CodeParams block{static_cast<int>(n2), 1, seq[i], p.d};
                CodeParams fill{static_cast<int>(m2), seq[i], p.w / seq[i], p.d};
                if (!child_ok(2 * i, block) || !child_ok(2 * i + 1, fill))
                    return fail("child pair mismatch");
                sum += kids[2 * i].value * kids[2 * i + 1].value;
            }
            if (sum != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::Stacking: {
            if (nd.is_upper) return fail("this rule gives a lower bound");
            long a = 0;
            if (!arg_long(nd, "a", a)) return fail("missing a");
            if (a < 2 || p.m % a) return fail("a must divide m with a >= 2");
            const int m0 = p.m / static_cast<int>(a);
            if (p.w < 1 || p.w > m0) return fail("needs 1 <= w <= m / a");
            const int dprime = (p.d + p.w - 1) / p.w;
            if (kids.size() != 2 && kids.size() != 3)
                return fail("expected two or three children");
            if (!child_ok(0, {static_cast<int>(a), p.n, 1, dprime}))
                return fail("slot-code child mismatch");
            if (!child_ok(1, {m0, p.n, p.w, p.d})) return fail("base-code child mismatch");
            BigInt val = kids[0].value * kids[1].value;
            if (kids.size() == 3) {
                if (p.w % a || a * static_cast<long>(p.d) > nw * (a - 1) ||
                    !fits_int(a * static_cast<long>(p.n)))
                    return fail("split term needs a | w and a d <= n w (a - 1)");
                if (!child_ok(2, {m0, static_cast<int>(a) * p.n,
                                  p.w / static_cast<int>(a), p.d}))
                    return fail("split child mismatch");
                val += kids[2].value;
            }
            if (val != nd.value) return fail("value mismatch");
            break;
        }
        case RuleId::HighDistance: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (p.n < 2 || p.d <= static_cast<long>(p.n - 1) * p.w)
                return fail("needs n >= 2 and d > (n - 1) w");
            const int r = p.d - (p.n - 1) * p.w;
            if (kids.size() != 1 || !child_ok(0, {p.m, 1, p.w, r})) return fail("child mismatch");
            if (nd.value != kids[0].value) return fail("value mismatch");
            break;
        }
        case RuleId::Alphabet: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (p.w < 2) return fail("needs w >= 2");
            long dp = 0;
            if (!arg_long(nd, "dprime", dp)) return fail("missing dprime");
            if (dp != (p.d + p.w - 1) / p.w) return fail("dprime must be ceil(d / w)");
            BigInt q = binom(p.m, p.w);
            if (kids.empty()) {
                auto itq = nd.args.find("q");
                if (itq == nd.args.end()) return fail("missing q");
                BigInt qa;
                try {
                    qa = BigInt(itq->second);
                } catch (const std::exception&) {
                    return fail("bad q");
                }
                if (qa != q) return fail("q must be the column-space size");
                if (dp > p.n) return fail("dprime above n");
                if (nd.value != big_pow(q, static_cast<unsigned long>(p.n - dp + 1)))
                    return fail("value mismatch");
            } else {
                if (kids.size() != 1) return fail("expected one child");
                if (!fits_long(q) || q.get_si() > std::numeric_limits<int>::max())
                    return fail("column space too large to recurse");
                if (!child_ok(0, {static_cast<int>(q.get_si()), p.n, 1, static_cast<int>(dp)}))
                    return fail("child mismatch");
                if (nd.value != kids[0].value) return fail("value mismatch");
            }
            break;
        }
        case RuleId::BassalygoElias: {
            if (nd.is_upper) {
                if (p.w < 2 || p.m % p.w || !fits_int(nw))
                    return fail("needs w >= 2 and w | m");
                const int q = p.m / p.w;
                if (kids.size() != 1 || !child_ok(0, {q, static_cast<int>(nw), 1, p.d}))
                    return fail("child mismatch");
                BigInt val = floor_div(
                    big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * kids[0].value,
                    big_pow(BigInt(q), static_cast<unsigned long>(nw)));
                if (val != nd.value) return fail("value mismatch");
            } else {
                if (p.n < 2 || !fits_int(static_cast<long>(p.m) * p.n) || !fits_int(nw))
                    return fail("needs n >= 2");
                if (kids.size() != 1 ||
                    !child_ok(0, {p.m * p.n, 1, static_cast<int>(nw), p.d}))
                    return fail("child mismatch");
                BigInt val = ceil_div(
                    big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)) * kids[0].value,
                    binom(static_cast<long>(p.m) * p.n, nw));
                if (val != nd.value) return fail("value mismatch");
            }
            break;
        }
        case RuleId::BassalygoLog: {
            if (nd.is_upper) return fail("this rule gives a lower bound");
            if (p.n < 2 || p.w < 1 || 2 * p.w > p.m || !fits_int(static_cast<long>(p.m) * p.n) ||
                !fits_int(nw))
                return fail("needs n >= 2 and 2 w <= m");
            if (kids.size() != 1 || !child_ok(0, {p.m * p.n, 1, static_cast<int>(nw), p.d}))
                return fail("child mismatch");
            double approx = loose_bassalygo_factor(p.w, p.n) * kids[0].value.get_d();
            if (!(std::isfinite(approx) && approx >= 1.0)) return fail("estimate collapsed");
            if (nd.value != BigInt(std::floor(approx))) return fail("value mismatch");
            break;
        }
        case RuleId::Monotonicity: {
            auto itf = nd.args.find("from");
            if (itf == nd.args.end()) return fail("missing from");
            CodeParams want = p;
            if (itf->second == "m-1") {
                if (nd.is_upper || p.m < 2 || p.w > p.m - 1)
                    return fail("m-1 step is a lower bound with w <= m - 1");
                want.m = p.m - 1;
            } else if (itf->second == "n-1") {
                if (nd.is_upper || p.n < 2) return fail("n-1 step is a lower bound with n >= 2");
                want.n = p.n - 1;
            } else if (itf->second == "d+1") {
                if (nd.is_upper || p.d + 1 > nw)
                    return fail("d+1 step is a lower bound below n w");
                want.d = p.d + 1;
            } else if (itf->second == "d-1") {
                if (!nd.is_upper || p.d < 2) return fail("d-1 step is an upper bound with d >= 2");
                want.d = p.d - 1;
            } else {
                return fail("unknown step");
            }
            if (kids.size() != 1 || !child_ok(0, want)) return fail("child mismatch");
            if (nd.value != kids[0].value) return fail("value mismatch");
            break;
        }
        case RuleId::OracleExact: {
            if (!kids.empty()) return fail("unexpected children");
            auto itu = nd.args.find("universe");
            if (itu == nd.args.end()) return fail("missing universe");
            BigInt uni;
            try {
                uni = BigInt(itu->second);
            } catch (const std::exception&) {
                return fail("bad universe");
            }
            if (uni != big_pow(binom(p.m, p.w), static_cast<unsigned long>(p.n)))
                return fail("universe mismatch");
            if (!uni.fits_ulong_p()) return fail("universe too large to re-run");
            OracleOptions oo;
            oo.universe_cap = uni.get_ui();
            oo.want_witness = false;
            if (nd.value != exact_max_code(p.m, p.n, p.w, p.d, oo).size)
                return fail("value mismatch");
            break;
        }
        case RuleId::Concatenation: {
            if (nd.is_upper) return fail("this rule gives a lower bound");
            if (!kids.empty()) return fail("unexpected children");
            long bits = 0;
            if (!arg_long(nd, "bits", bits)) return fail("missing bits");
            // C(m,w) < 2^m, so an honest inner code never needs m bits
            if (bits < 1 || bits >= p.m) return fail("bits out of range");
            BigInt alphabet = big_pow(BigInt(2), static_cast<unsigned long>(bits));
            if (alphabet > binom(p.m, p.w)) return fail("inner code larger than the column space");
            if (p.d > p.n || alphabet - 1 < p.n) return fail("outer code infeasible");
            if (nd.value !=
                big_pow(BigInt(2), static_cast<unsigned long>(bits * (p.n - p.d + 1))))
                return fail("value mismatch");
            break;
        }
        case RuleId::QarySingleton: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (!kids.empty()) return fail("unexpected children");
            if (p.w != 1 || p.d > p.n) return fail("needs w == 1 and d <= n");
            if (nd.value != big_pow(BigInt(p.m), static_cast<unsigned long>(p.n - p.d + 1)))
                return fail("value mismatch");
            break;
        }
        case RuleId::Spherical: {
            if (!nd.is_upper) return fail("this rule gives an upper bound");
            if (!kids.empty()) return fail("unexpected children");
            auto s = spherical_upper(p);
            if (!s) return fail("no bound at this distance");
            if (*s != nd.value) return fail("value mismatch");
            break;
        }
    }

    for (const auto& k : kids)
        if (!replay(k, why)) return false;
    return true;
}

namespace {

nlohmann::json prov_json(const Prov& pr) {
    nlohmann::json j;
    j["rule"] = rule_name(pr.rule);
    j["side"] = pr.is_upper ? "upper" : "lower";
    j["m"] = pr.params.m;
    j["n"] = pr.params.n;
    j["w"] = pr.params.w;
    j["d"] = pr.params.d;
    j["value"] = to_string(pr.value);
    j["args"] = nlohmann::json::object();
    for (const auto& [k, v] : pr.args) j["args"][k] = v;
    j["children"] = nlohmann::json::array();
    for (const auto& c : pr.children) j["children"].push_back(prov_json(c));
    return j;
}

}  // namespace

std::string BoundReport::to_json_string() const {
    nlohmann::json j;
    j["m"] = params.m;
    j["n"] = params.n;
    j["w"] = params.w;
    j["d"] = params.d;
    j["lower"] = cwac::to_string(lower);
    j["upper"] = cwac::to_string(upper);
    j["rule"] = {{"lower", rule_name(lower_prov.rule)}, {"upper", rule_name(upper_prov.rule)}};
    j["children"] = nlohmann::json::array({prov_json(lower_prov), prov_json(upper_prov)});
    return j.dump(2);
}

std::string bounds_table_csv(Engine& eng, int m_lo, int m_hi, int n_lo, int n_hi, int w_lo,
                             int w_hi, int d_lo, int d_hi) {
    if (m_lo < 1 || n_lo < 1 || w_lo < 1 || d_lo < 1 || m_hi < m_lo || n_hi < n_lo ||
        w_hi < w_lo || d_hi < d_lo)
        throw ParamError("table ranges must be nonempty with lower ends >= 1");
    std::string out = "m,n,w,d,lower,upper,lower_rule,upper_rule\n";
    for (int m = m_lo; m <= m_hi; ++m)
        for (int n = n_lo; n <= n_hi; ++n)
            for (int w = w_lo; w <= w_hi; ++w) {
                if (w > m) continue;
                for (int d = d_lo; d <= d_hi; ++d) {
                    BoundReport rep = eng.best_bounds({m, n, w, d});
                    out += std::to_string(m) + ',' + std::to_string(n) + ',' +
                           std::to_string(w) + ',' + std::to_string(d) + ',' +
                           to_string(rep.lower) + ',' + to_string(rep.upper) + ',' +
                           rule_name(rep.lower_prov.rule) + ',' +
                           rule_name(rep.upper_prov.rule) + '\n';
                }
            }
    return out;
}

}  // namespace cwac
