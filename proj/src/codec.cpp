#include "cwac/codec.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "cwac/bounds.hpp"
#include "cwac/counting.hpp"
#include "cwac/enumerate.hpp"
#include "cwac/error.hpp"
#include "cwac/gf.hpp"

namespace cwac {

namespace {

// symbols must fit the table-driven field
constexpr int kMaxBits = 16;

// candidates scanned by the greedy construction before giving up
constexpr long kLexicodeScanCap = 1000000;

int floor_log2(long x) {
    int b = -1;
    while (x > 0) {
        x >>= 1;
        ++b;
    }
    return b;
}

}  // namespace

InnerCode::InnerCode(int m, int w, int f, std::vector<ColumnWord> codewords)
    : m_(m), w_(w), f_(f), codewords_(std::move(codewords)) {
    if (m < 1 || w < 1 || w > m || f < 1 || f > w) {
        std::ostringstream os;
        os << "inner code needs 1 <= f <= w <= m, got (m, w, f) = (" << m << ", " << w
           << ", " << f << ")";
        throw ParamError(os.str());
    }
    auto size = codewords_.size();
    if (size < 2 || (size & (size - 1)) != 0) {
        std::ostringstream os;
        os << "inner alphabet must hold a power of two >= 2 codewords, got " << size;
        throw ParamError(os.str());
    }
    bits_ = floor_log2(static_cast<long>(size));
    for (int i = 0; i < static_cast<int>(size); ++i) {
        const ColumnWord& cw = codewords_[i];
        if (cw.length() != m_ || cw.weight() != w_) {
            std::ostringstream os;
            os << "inner codeword " << i << " is not a weight-" << w_ << " word of length "
               << m_;
            throw ParamError(os.str());
        }
        if (!index_.emplace(cw.to_hex(), i).second) {
            throw ParamError("inner codeword list contains a duplicate: " + cw.to_hex());
        }
    }
    // distinct constant-weight words always differ in >= 2 positions, so
    // only f >= 2 needs the quadratic check
    if (f_ >= 2) {
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = i + 1; j < size; ++j) {
                long dist = hamming_distance(codewords_[i], codewords_[j]);
                if (dist < 2L * f_) {
                    std::ostringstream os;
                    os << "inner codewords " << i << " and " << j << " are at distance "
                       << dist << " < " << 2 * f_;
                    throw ParamError(os.str());
                }
            }
        }
    }
}

int InnerCode::index_of(const BitWord& column) const {
    if (column.length() != m_) {
        std::ostringstream os;
        os << "column length " << column.length() << " does not match m = " << m_;
        throw ParamError(os.str());
    }
    if (column.weight() != w_) return -1;
    auto it = index_.find(column.to_hex());
    return it == index_.end() ? -1 : it->second;
}

InnerCode build_inner_lexicode(int m, int w, int f) {
    if (m < 1 || w < 1 || w > m || f < 1 || f > w) {
        std::ostringstream os;
        os << "lexicode needs 1 <= f <= w <= m, got (m, w, f) = (" << m << ", " << w
           << ", " << f << ")";
        throw ParamError(os.str());
    }
    BigInt universe = binom(m, w);

    std::vector<ColumnWord> kept;
    if (f == 1) {
        // every pair of distinct weight-w words is already at distance >= 2,
        // so the lexicode is simply a colex prefix of J(m, w)
        if (universe < 2) {
            std::ostringstream os;
            os << "inner alphabet too small: J(" << m << ", " << w << ") holds " << universe
               << " word(s), need at least 2";
            throw ParamError(os.str());
        }
        int bits = kMaxBits;
        if (universe.fits_slong_p()) {
            bits = std::min(kMaxBits, floor_log2(universe.get_si()));
        }
        long target = 1L << bits;
        kept.reserve(static_cast<std::size_t>(target));
        for (long r = 0; r < target; ++r) {
            kept.emplace_back(m, colex_unrank(m, w, BigInt(r)));
        }
    } else {
        if (universe > kLexicodeScanCap) {
            std::ostringstream os;
            os << "greedy scan of J(" << m << ", " << w << ") would visit " << universe
               << " candidates";
            throw CapExceeded(os.str(), universe.get_str());
        }
        for_each_subset(m, w, [&](const std::vector<int>& support) {
            ColumnWord cand(m, support);
            for (const ColumnWord& prev : kept) {
                if (hamming_distance(prev, cand) < 2L * f) return;
            }
            kept.push_back(std::move(cand));
        });
        if (kept.size() < 2) {
            std::ostringstream os;
            os << "inner alphabet too small: the greedy scan kept " << kept.size()
               << " word(s) at (m, w, f) = (" << m << ", " << w << ", " << f
               << "), need at least 2";
            throw ParamError(os.str());
        }
        int bits = std::min(kMaxBits, floor_log2(static_cast<long>(kept.size())));
        kept.erase(kept.begin() + (static_cast<long>(1) << bits), kept.end());
    }
    return InnerCode(m, w, f, std::move(kept));
}

InnerDecodeResult inner_decode(const BitWord& column, const InnerCode& inner) {
    if (column.length() != inner.m()) {
        std::ostringstream os;
        os << "column length " << column.length() << " does not match m = " << inner.m();
        throw ParamError(os.str());
    }
    // nearest codeword by full scan; within radius f-1 it is unique
    // because any two codewords are >= 2f apart
    long best = std::numeric_limits<long>::max();
    int best_idx = -1;
    for (int i = 0; i < inner.size(); ++i) {
        long dist = hamming_distance(column, inner.codeword(i).bits());
        if (dist < best) {
            best = dist;
            best_idx = i;
        }
    }
    InnerDecodeResult res;
    res.distance = static_cast<int>(best);
    if (best <= inner.f() - 1) {
        res.symbol = best_idx;
        res.erased = false;
    }
    return res;
}

ConcatenatedCode::ConcatenatedCode(InnerCode inner, int n, int k)
    : inner_(std::move(inner)), rs_(Field(inner_.bits()), n, k) {
    // exhaustively confirm the designed distance while the message space
    // is small; a violation would be a construction bug, not bad input
    long q = inner_.size();
    long total = 1;
    for (int i = 0; i < k; ++i) {
        total *= q;
        if (total > 10000) return;
    }
    std::vector<ArrayWord> words;
    words.reserve(static_cast<std::size_t>(total));
    std::vector<int> msg(static_cast<std::size_t>(k), 0);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (int i = 0; i < k; ++i) {
            msg[static_cast<std::size_t>(i)] = static_cast<int>(rem % q);
            rem /= q;
        }
        words.push_back(encode(msg));
    }
    long floor_dist = 2L * e() * inner_.f();
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            long dist = hamming_distance(words[i], words[j]);
            if (dist < floor_dist) {
                std::ostringstream os;
                os << "designed distance violated: codewords " << i << " and " << j
                   << " are at bit distance " << dist << " < " << floor_dist;
                throw std::logic_error(os.str());
            }
        }
    }
}

ArrayWord ConcatenatedCode::encode(const std::vector<int>& message) const {
    std::vector<int> symbols = rs_.encode(message);
    std::vector<ColumnWord> columns;
    columns.reserve(symbols.size());
    for (int s : symbols) columns.push_back(inner_.codeword(s));
    return ArrayWord(inner_.m(), inner_.w(), std::move(columns));
}

DecodeOutcome ConcatenatedCode::decode(const std::vector<BitWord>& received) const {
    int nn = n();
    if (static_cast<int>(received.size()) != nn) {
        std::ostringstream os;
        os << "received " << received.size() << " columns, expected " << nn;
        throw ParamError(os.str());
    }

    DecodeOutcome out;
    out.columns.resize(static_cast<std::size_t>(nn));
    std::vector<int> symbols(static_cast<std::size_t>(nn), 0);
    std::vector<bool> base(static_cast<std::size_t>(nn), false);
    std::vector<int> decoded_cols;
    for (int i = 0; i < nn; ++i) {
        InnerDecodeResult r = inner_decode(received[static_cast<std::size_t>(i)], inner_);
        out.columns[static_cast<std::size_t>(i)] = {r.distance, r.erased};
        if (r.erased) {
            base[static_cast<std::size_t>(i)] = true;
        } else {
            symbols[static_cast<std::size_t>(i)] = r.symbol;
            decoded_cols.push_back(i);
        }
    }

    // least reliable first: ties broken by position so runs are reproducible
    std::sort(decoded_cols.begin(), decoded_cols.end(), [&](int a, int b) {
        int da = out.columns[static_cast<std::size_t>(a)].distance;
        int db = out.columns[static_cast<std::size_t>(b)].distance;
        if (da != db) return da > db;
        return a < b;
    });

    // erasure schedule: distance thresholds theta = f..1 (erase every
    // decoded column at inner distance >= theta), then prefixes of the
    // reliability order two columns at a time; duplicates collapse
    std::vector<std::vector<bool>> trials;
    std::set<std::vector<bool>> seen;
    auto push_trial = [&](std::vector<bool> set) {
        if (seen.insert(set).second) trials.push_back(std::move(set));
    };
    int f = inner_.f();
    for (int theta = f; theta >= 1; --theta) {
        std::vector<bool> set = base;
        for (int i : decoded_cols) {
            if (out.columns[static_cast<std::size_t>(i)].distance >= theta)
                set[static_cast<std::size_t>(i)] = true;
        }
        push_trial(std::move(set));
    }
    for (int j = 1; j <= f - 1; ++j) {
        if (2 * j > static_cast<int>(decoded_cols.size())) break;
        std::vector<bool> set = base;
        for (int idx = 0; idx < 2 * j; ++idx)
            set[static_cast<std::size_t>(decoded_cols[static_cast<std::size_t>(idx)])] = true;
        push_trial(std::move(set));
    }

    long radius = guarantee_bits();
    long best_dist = std::numeric_limits<long>::max();
    std::vector<int> best_msg;
    for (const std::vector<bool>& erased : trials) {
        RsDecodeResult r = rs_.decode(symbols, erased);
        ++out.trials_used;
        if (!r.ok) continue;
        ArrayWord cand = encode(r.message);
        long dist = hamming_distance(cand, received);
        if (dist <= radius) {
            out.decoded = true;
            out.message = std::move(r.message);
            out.reencode_distance = dist;
            out.beyond_guarantee = false;
            return out;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best_msg = std::move(r.message);
        }
    }
    if (!best_msg.empty() || best_dist != std::numeric_limits<long>::max()) {
        out.decoded = true;
        out.message = std::move(best_msg);
        out.reencode_distance = best_dist;
        out.beyond_guarantee = true;
    }
    return out;
}

std::string ConcatenatedCode::to_json_string() const {
    char poly_hex[16];
    std::snprintf(poly_hex, sizeof poly_hex, "%x", primitive_poly(inner_.bits()));
    nlohmann::json j;
    j["m"] = inner_.m();
    j["w"] = inner_.w();
    j["f"] = inner_.f();
    j["b"] = inner_.bits();
    j["n"] = n();
    j["k"] = k();
    j["primitive_poly_hex"] = poly_hex;
    nlohmann::json words = nlohmann::json::array();
    for (const ColumnWord& cw : inner_.codewords()) words.push_back(cw.to_hex());
    j["inner_codewords"] = std::move(words);
    return j.dump(2);
}

ConcatenatedCode ConcatenatedCode::from_json_string(const std::string& text) {
    int m = 0, w = 0, f = 0, b = 0, n = 0, k = 0;
    std::string poly_hex;
    std::vector<std::string> word_hex;
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        m = j.at("m").get<int>();
        w = j.at("w").get<int>();
        f = j.at("f").get<int>();
        b = j.at("b").get<int>();
        n = j.at("n").get<int>();
        k = j.at("k").get<int>();
        poly_hex = j.at("primitive_poly_hex").get<std::string>();
        word_hex = j.at("inner_codewords").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("malformed code description: ") + e.what());
    }
    if (b < 1 || b > kMaxBits) {
        std::ostringstream os;
        os << "symbol width b = " << b << " outside [1, " << kMaxBits << "]";
        throw ParamError(os.str());
    }
    char expect[16];
    std::snprintf(expect, sizeof expect, "%x", primitive_poly(b));
    if (poly_hex != expect) {
        throw ParamError("unsupported primitive polynomial " + poly_hex + " for b = " +
                         std::to_string(b) + ", expected " + expect);
    }
    std::vector<ColumnWord> cws;
    cws.reserve(word_hex.size());
    for (const std::string& h : word_hex) cws.push_back(ColumnWord::from_hex(m, h));
    InnerCode inner(m, w, f, std::move(cws));
    if (inner.bits() != b) {
        std::ostringstream os;
        os << "inner alphabet holds 2^" << inner.bits() << " codewords but declares b = "
           << b;
        throw ParamError(os.str());
    }
    return ConcatenatedCode(std::move(inner), n, k);
}

ArrayWord cwac_encode(const ConcatenatedCode& code, const std::vector<int>& message) {
    return code.encode(message);
}

DecodeOutcome cwac_decode(const ConcatenatedCode& code, const std::vector<BitWord>& received) {
    return code.decode(received);
}

CodePlan plan_params(int m, int w, int f, int n, int k) {
    InnerCode inner = build_inner_lexicode(m, w, f);

    CodePlan plan;
    plan.m = m;
    plan.w = w;
    plan.f = f;
    plan.n = n;
    plan.k = k;
    plan.inner_size = inner.size();
    plan.bits = inner.bits();
    plan.max_n = (1 << inner.bits()) - 1;
    plan.lifting = (w == 1);
    Engine eng;
    plan.inner_upper = eng.best_bounds({m, 1, w, f}).upper;

    std::ostringstream os;
    if (n < 1 || k < 1) {
        os << "n and k must be at least 1, got n = " << n << ", k = " << k;
    } else if (k > n) {
        os << "message length k = " << k << " exceeds block length n = " << n;
    } else if (n > plan.max_n) {
        os << "block length n = " << n << " exceeds n_max = " << plan.max_n
           << " supported by the " << plan.inner_size << "-word inner alphabet (b = "
           << plan.bits << ")";
    } else {
        plan.feasible = true;
        plan.e = n - k + 1;
        plan.guarantee = static_cast<long>(plan.e) * f - 1;
        plan.rate_num = static_cast<long>(k) * plan.bits;
        plan.rate_den = static_cast<long>(n) * m;
    }
    plan.message = os.str();
    return plan;
}

}  // namespace cwac
