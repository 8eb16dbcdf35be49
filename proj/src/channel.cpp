#include "cwac/channel.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "cwac/error.hpp"

namespace cwac {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw ParamError("below(0) is undefined");
    std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t r;
    do {
        r = next();
    } while (r < min);
    return r % bound;
}

namespace {

struct Spot {
    int col;
    int row;
};

// draws `count` spots without replacement (partial Fisher-Yates prefix)
void draw(std::vector<Spot>& pool, int count, SplitMix64& rng, std::vector<Spot>& out) {
    for (int i = 0; i < count; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
    }
}

// per-column quotas: base share everywhere, the remainder spread over a
// randomly drawn set of columns
std::vector<int> quotas(int n, int total, SplitMix64& rng) {
    std::vector<int> q(static_cast<std::size_t>(n), total / n);
    int extra = total % n;
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < extra; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(cols.size() - static_cast<std::size_t>(i)));
        std::swap(cols[static_cast<std::size_t>(i)], cols[j]);
        ++q[static_cast<std::size_t>(cols[static_cast<std::size_t>(i)])];
    }
    return q;
}

void flip_spots(std::vector<BitWord>& cols, const std::vector<Spot>& spots) {
    for (const Spot& s : spots) cols[static_cast<std::size_t>(s.col)].flip(s.row);
}

std::vector<BitWord> corrupt_with(const ArrayWord& word, const ChannelSpec& spec,
                                  SplitMix64& rng) {
    int n = word.n(), m = word.m(), w = word.w();
    long ones = static_cast<long>(n) * w;
    long zeros = static_cast<long>(n) * (m - w);
    if (spec.losses < 0 || spec.injections < 0 || spec.losses > ones ||
        spec.injections > zeros) {
        std::ostringstream os;
        os << "channel wants " << spec.losses << " losses and " << spec.injections
           << " injections, but the word carries " << ones << " ones and " << zeros
           << " zeros";
        throw ParamError(os.str());
    }

    std::vector<BitWord> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cols.push_back(word.column(i).bits());

    // position pools in column-major order; losses and injections touch
    // disjoint bits of the original word, so the flip order is immaterial
    std::vector<Spot> picked;
    if (spec.policy == Placement::Uniform) {
        std::vector<Spot> one_pool, zero_pool;
        for (int i = 0; i < n; ++i) {
            for (int r = 0; r < m; ++r) {
                (cols[static_cast<std::size_t>(i)].test(r) ? one_pool : zero_pool)
                    .push_back({i, r});
            }
        }
        draw(one_pool, spec.losses, rng, picked);
        draw(zero_pool, spec.injections, rng, picked);
    } else {
        std::vector<int> lose = quotas(n, spec.losses, rng);
        std::vector<int> add = quotas(n, spec.injections, rng);
        for (int i = 0; i < n; ++i) {
            std::vector<Spot> one_pool, zero_pool;
            for (int r = 0; r < m; ++r) {
                (cols[static_cast<std::size_t>(i)].test(r) ? one_pool : zero_pool)
                    .push_back({i, r});
            }
            draw(one_pool, lose[static_cast<std::size_t>(i)], rng, picked);
            draw(zero_pool, add[static_cast<std::size_t>(i)], rng, picked);
        }
    }
    flip_spots(cols, picked);
    return cols;
}

}  // namespace

std::vector<BitWord> corrupt(const ArrayWord& word, const ChannelSpec& spec) {
    SplitMix64 rng(spec.seed);
    return corrupt_with(word, spec, rng);
}

SimStats simulate(const ConcatenatedCode& code, const ChannelSpec& spec, long trials,
                  int threads) {
    if (trials < 1) throw ParamError("trials must be at least 1");
    int n = code.n(), m = code.inner().m(), w = code.inner().w();
    long ones = static_cast<long>(n) * w;
    long zeros = static_cast<long>(n) * (m - w);
    if (spec.losses < 0 || spec.injections < 0 || spec.losses > ones ||
        spec.injections > zeros) {
        std::ostringstream os;
        os << "channel wants " << spec.losses << " losses and " << spec.injections
           << " injections, but codewords carry " << ones << " ones and " << zeros
           << " zeros";
        throw ParamError(os.str());
    }

    long q = code.inner().size();
    int k = code.k();
    auto run_range = [&](long lo, long hi, SimStats& acc) {
        std::vector<int> msg(static_cast<std::size_t>(k));
        for (long t = lo; t < hi; ++t) {
            // one generator per trial: results cannot depend on who runs it
            SplitMix64 rng(spec.seed + static_cast<std::uint64_t>(t));
            for (int i = 0; i < k; ++i)
                msg[static_cast<std::size_t>(i)] =
                    static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
            ArrayWord sent = code.encode(msg);
            std::vector<BitWord> recv = corrupt_with(sent, spec, rng);
            DecodeOutcome out = code.decode(recv);
            ++acc.trials;
            for (const ColumnDiagnostic& cd : out.columns)
                if (cd.erased) ++acc.inner_erasures_total;
            if (!out.decoded) {
                ++acc.failure;
            } else if (out.message == msg) {
                ++acc.success;
            } else {
                ++acc.wrong;
            }
        }
    };

    int workers = static_cast<int>(std::min<long>(std::max(threads, 1), trials));
    if (workers == 1) {
        SimStats stats;
        run_range(0, trials, stats);
        return stats;
    }
    std::vector<SimStats> parts(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    long chunk = trials / workers, rem = trials % workers;
    long lo = 0;
    for (int i = 0; i < workers; ++i) {
        long hi = lo + chunk + (i < rem ? 1 : 0);
        pool.emplace_back(run_range, lo, hi, std::ref(parts[static_cast<std::size_t>(i)]));
        lo = hi;
    }
    for (std::thread& th : pool) th.join();
    SimStats stats;
    for (const SimStats& part : parts) {
        stats.trials += part.trials;
        stats.success += part.success;
        stats.wrong += part.wrong;
        stats.failure += part.failure;
        stats.inner_erasures_total += part.inner_erasures_total;
    }
    return stats;
}

std::string results_json(const ConcatenatedCode& code, const ChannelSpec& spec,
                         const SimStats& stats) {
    nlohmann::json j;
    j["code"] = nlohmann::json::parse(code.to_json_string());
    j["spec"] = {
        {"losses", spec.losses},
        {"injections", spec.injections},
        {"seed", spec.seed},
        {"policy", spec.policy == Placement::Uniform ? "uniform" : "per-column-capped"},
        {"generator", "splitmix64"},
    };
    j["trials"] = stats.trials;
    j["success"] = stats.success;
    j["wrong"] = stats.wrong;
    j["failure"] = stats.failure;
    j["success_rate"] = stats.success_rate();
    j["wrong_decode_rate"] = stats.wrong_decode_rate();
    j["failure_rate"] = stats.failure_rate();
    j["mean_inner_erasures"] = stats.mean_inner_erasures();
    return j.dump(2);
}

}  // namespace cwac
