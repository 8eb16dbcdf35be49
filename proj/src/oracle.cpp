#include "cwac/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "cwac/counting.hpp"
#include "cwac/enumerate.hpp"
#include "cwac/error.hpp"

namespace cwac {

namespace {

// Tomita-style max clique: candidates kept as vectors sorted by greedy
// color, branch on the highest-colored vertex, prune when depth plus its
// color cannot beat the incumbent.  Adjacency rows are packed into
// 64-bit limbs so coloring and candidate filtering run word-at-a-time.
class CliqueSolver {
public:
    explicit CliqueSolver(const std::vector<std::vector<bool>>& adj)
        : n_(static_cast<int>(adj.size())),
          words_(static_cast<std::size_t>(n_ + 63) / 64),
          rows_(static_cast<std::size_t>(n_) * words_, 0) {
        for (int v = 0; v < n_; ++v)
            for (int u = 0; u < n_; ++u)
                if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
                    row(v)[static_cast<std::size_t>(u) / 64] |= 1ULL << (u % 64);
    }

    long solve(const std::vector<int>& vertices) {
        best_ = 0;
        if (vertices.empty()) return 0;
        // densest-core-first order sharpens the root coloring; greedy
        // cliques grown from many starts give a strong incumbent, and
        // both are deterministic (ties break toward lower index)
        std::vector<int> order = core_first_order(vertices);
        std::vector<std::uint64_t> inset(words_, 0), pool(words_);
        for (int v : vertices)
            inset[static_cast<std::size_t>(v) / 64] |= 1ULL << (v % 64);
        int starts = 0;
        for (int s : order) {
            if (++starts > 256) break;
            const std::uint64_t* ns = row(s);
            for (std::size_t i = 0; i < words_; ++i) pool[i] = inset[i] & ns[i];
            long size = 1;
            for (std::size_t word = 0; word < words_;) {
                if (!pool[word]) {
                    ++word;
                    continue;
                }
                int v = static_cast<int>(word * 64) + std::countr_zero(pool[word]);
                ++size;
                const std::uint64_t* nv = row(v);  // no self-loops, so v drops out
                for (std::size_t i = word; i < words_; ++i) pool[i] &= nv[i];
            }
            if (size > best_) best_ = size;
        }
        std::vector<int> ordered, colors;
        color_sort(order, ordered, colors);
        if (colors.back() <= best_) return best_;  // seed already meets the coloring bound
        expand(ordered, colors, 0);
        return best_;
    }

private:
    std::uint64_t* row(int v) { return rows_.data() + static_cast<std::size_t>(v) * words_; }
    const std::uint64_t* row(int v) const {
        return rows_.data() + static_cast<std::size_t>(v) * words_;
    }
    bool edge(int u, int v) const {
        return (row(u)[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1ULL;
    }

    // repeatedly strip a minimum-degree vertex, then reverse, so the
    // densest core comes first
    std::vector<int> core_first_order(const std::vector<int>& vertices) const {
        std::vector<std::uint64_t> present(words_, 0);
        for (int v : vertices)
            present[static_cast<std::size_t>(v) / 64] |= 1ULL << (v % 64);
        std::vector<long> deg(static_cast<std::size_t>(n_), 0);
        std::vector<char> alive(static_cast<std::size_t>(n_), 0);
        for (int v : vertices) {
            alive[static_cast<std::size_t>(v)] = 1;
            long d = 0;
            const std::uint64_t* nv = row(v);
            for (std::size_t i = 0; i < words_; ++i)
                d += std::popcount(nv[i] & present[i]);
            deg[static_cast<std::size_t>(v)] = d;
        }
        std::vector<int> out;
        out.reserve(vertices.size());
        for (std::size_t step = 0; step < vertices.size(); ++step) {
            int pick = -1;
            for (int v : vertices)
                if (alive[static_cast<std::size_t>(v)] &&
                    (pick < 0 || deg[static_cast<std::size_t>(v)] <
                                     deg[static_cast<std::size_t>(pick)]))
                    pick = v;
            alive[static_cast<std::size_t>(pick)] = 0;
            present[static_cast<std::size_t>(pick) / 64] &= ~(1ULL << (pick % 64));
            out.push_back(pick);
            const std::uint64_t* np = row(pick);
            for (std::size_t word = 0; word < words_; ++word) {
                std::uint64_t live = np[word] & present[word];
                while (live) {
                    int u = static_cast<int>(word * 64) + std::countr_zero(live);
                    live &= live - 1;
                    --deg[static_cast<std::size_t>(u)];
                }
            }
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    // greedy color classes; output sorted by color (ascending index within
    // a class), so the back of the vectors holds a vertex of maximum color
    void color_sort(const std::vector<int>& cand, std::vector<int>& ordered,
                    std::vector<int>& colors) const {
        std::vector<std::uint64_t> uncolored(words_, 0), avail(words_);
        for (int v : cand)
            uncolored[static_cast<std::size_t>(v) / 64] |= 1ULL << (v % 64);
        ordered.clear();
        colors.clear();
        std::size_t left = cand.size();
        int color = 0;
        while (left > 0) {
            ++color;
            avail = uncolored;
            for (std::size_t word = 0; word < words_; ++word) {
                while (avail[word]) {
                    int v = static_cast<int>(word * 64) +
                            std::countr_zero(avail[word]);
                    std::uint64_t bit = 1ULL << (v % 64);
                    avail[word] &= ~bit;
                    uncolored[word] &= ~bit;
                    --left;
                    ordered.push_back(v);
                    colors.push_back(color);
                    const std::uint64_t* nb = row(v);
                    for (std::size_t i = word; i < words_; ++i) avail[i] &= ~nb[i];
                }
            }
        }
    }

    void expand(std::vector<int>& cand, std::vector<int>& colors, long depth) {
        while (!cand.empty()) {
            int v = cand.back();
            if (depth + colors.back() <= best_) return;
            cand.pop_back();
            colors.pop_back();
            std::vector<int> next;
            for (int u : cand)
                if (edge(u, v)) next.push_back(u);
            if (next.empty()) {
                if (depth + 1 > best_) best_ = depth + 1;
            } else {
                std::vector<int> no, nc;
                color_sort(next, no, nc);
                if (depth + 1 + nc.back() > best_) expand(no, nc, depth + 1);
            }
        }
    }

    int n_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
    long best_ = 0;
};

// Rebuild the lexicographically least maximum clique by fixing one vertex
// at a time: the smallest v whose forward neighborhood still supports a
// clique of the remaining size.
std::vector<int> lex_least_witness(const std::vector<std::vector<bool>>& adj, long opt) {
    CliqueSolver solver(adj);
    std::vector<int> witness;
    std::vector<int> cand(adj.size());
    std::iota(cand.begin(), cand.end(), 0);
    long need = opt;
    while (need > 0) {
        bool advanced = false;
        for (int v : cand) {
            std::vector<int> sub;
            for (int u : cand)
                if (u > v && adj[v][u]) sub.push_back(u);
            if (1 + solver.solve(sub) >= need) {
                witness.push_back(v);
                cand = std::move(sub);
                --need;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::logic_error("witness reconstruction lost the optimum");
    }
    return witness;
}

void check_cap(const BigInt& universe, std::size_t cap) {
    if (universe > static_cast<unsigned long>(cap))
        throw CapExceeded("exact search needs a universe of size " + to_string(universe) +
                              ", above the cap of " + std::to_string(cap),
                          to_string(universe));
}

// all of J(m,w)^n; vertex index is lexicographic over per-column colex
// ranks with the first column most significant
std::vector<ArrayWord> build_universe(int m, int n, int w) {
    std::vector<ColumnWord> cols = enumerate_constant_weight(m, w);
    std::vector<ArrayWord> out;
    std::vector<int> digit(n, 0);
    const int radix = static_cast<int>(cols.size());
    while (true) {
        std::vector<ColumnWord> cs;
        cs.reserve(n);
        for (int i = 0; i < n; ++i) cs.push_back(cols[digit[i]]);
        out.emplace_back(m, w, std::move(cs));
        int i = n - 1;
        while (i >= 0 && digit[i] == radix - 1) digit[i--] = 0;
        if (i < 0) break;
        ++digit[i];
    }
    return out;
}

template <typename Keep>
OracleResult solve_array_instance(int m, int n, int w, const OracleOptions& opts, Keep keep) {
    BigInt size = big_pow(binom(m, w), static_cast<unsigned long>(n));
    check_cap(size, opts.universe_cap);
    std::vector<ArrayWord> universe = build_universe(m, n, w);
    const std::size_t N = universe.size();
    std::vector<std::vector<bool>> adj(N, std::vector<bool>(N, false));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (keep(hamming_distance(universe[i], universe[j]))) adj[i][j] = adj[j][i] = true;
    OracleResult res;
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 0);
    res.size = CliqueSolver(adj).solve(all);
    if (opts.want_witness) {
        for (int v : lex_least_witness(adj, res.size)) res.witness.push_back(universe[v]);
        for (std::size_t i = 0; i < res.witness.size(); ++i)
            for (std::size_t j = i + 1; j < res.witness.size(); ++j)
                if (!keep(hamming_distance(res.witness[i], res.witness[j])))
                    throw std::logic_error("witness violates the pairwise distance predicate");
    }
    return res;
}

}  // namespace

namespace {

// completed search sizes, shared process-wide; the cap check always runs
// first so refusals behave as if nothing were cached
std::mutex size_memo_mu;
std::map<std::array<int, 5>, long> size_memo;

std::optional<long> memo_find(const std::array<int, 5>& key) {
    std::lock_guard<std::mutex> lock(size_memo_mu);
    auto it = size_memo.find(key);
    if (it == size_memo.end()) return std::nullopt;
    return it->second;
}

void memo_store(const std::array<int, 5>& key, long value) {
    std::lock_guard<std::mutex> lock(size_memo_mu);
    size_memo.emplace(key, value);
}

}  // namespace

OracleResult exact_max_code(int m, int n, int w, int d, const OracleOptions& opts) {
    if (m < 1 || n < 1 || w < 0 || w > m || d < 0)
        throw ParamError("exact_max_code needs m >= 1, n >= 1, 0 <= w <= m, d >= 0");
    check_cap(big_pow(binom(m, w), static_cast<unsigned long>(n)), opts.universe_cap);
    std::array<int, 5> key = {0, m, n, w, d};
    if (!opts.want_witness) {
        if (auto hit = memo_find(key)) return {*hit, {}};
    }
    OracleResult res =
        solve_array_instance(m, n, w, opts, [d](long dist) { return dist >= 2L * d; });
    memo_store(key, res.size);
    return res;
}

OracleResult exact_max_anticode(int m, int n, int w, int delta, const OracleOptions& opts) {
    if (m < 1 || n < 1 || w < 0 || w > m || delta < 0)
        throw ParamError("exact_max_anticode needs m >= 1, n >= 1, 0 <= w <= m, delta >= 0");
    check_cap(big_pow(binom(m, w), static_cast<unsigned long>(n)), opts.universe_cap);
    std::array<int, 5> key = {1, m, n, w, delta};
    if (!opts.want_witness) {
        if (auto hit = memo_find(key)) return {*hit, {}};
    }
    OracleResult res = solve_array_instance(m, n, w, opts,
                                            [delta](long dist) { return dist <= 2L * delta; });
    memo_store(key, res.size);
    return res;
}

long exact_gamma(int q, int n, int delta, const OracleOptions& opts) {
    if (q < 2 || n < 1 || delta < 0)
        throw ParamError("exact_gamma needs q >= 2, n >= 1, delta >= 0");
    BigInt size = big_pow(BigInt(q), static_cast<unsigned long>(n));
    check_cap(size, opts.universe_cap);
    const std::size_t N = size.get_ui();
    std::vector<std::vector<int>> words(N, std::vector<int>(n, 0));
    for (std::size_t k = 1; k < N; ++k) {
        words[k] = words[k - 1];
        int i = n - 1;
        while (words[k][i] == q - 1) words[k][i--] = 0;
        ++words[k][i];
    }
    std::vector<std::vector<bool>> adj(N, std::vector<bool>(N, false));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            int dist = 0;
            for (int p = 0; p < n; ++p) dist += words[i][p] != words[j][p];
            if (dist <= delta) adj[i][j] = adj[j][i] = true;
        }
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 0);
    return CliqueSolver(adj).solve(all);
}

long max_clique_size(const std::vector<std::vector<bool>>& adj) {
    std::vector<int> all(adj.size());
    std::iota(all.begin(), all.end(), 0);
    if (all.empty()) return 0;
    return CliqueSolver(adj).solve(all);
}

long naive_max_clique(const std::vector<std::vector<bool>>& adj) {
    const std::size_t N = adj.size();
    if (N > 64) throw ParamError("naive_max_clique is limited to 64 vertices");
    long best = 0;
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 0);
    auto rec = [&](auto&& self, const std::vector<int>& cand, long size) -> void {
        if (size > best) best = size;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (size + static_cast<long>(cand.size() - i) <= best) break;
            std::vector<int> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (adj[cand[i]][cand[j]]) next.push_back(cand[j]);
            self(self, next, size + 1);
        }
    };
    rec(rec, all, 0);
    return best;
}

}  // namespace cwac
