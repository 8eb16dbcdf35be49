#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwac/bigint.hpp"

namespace cwac {

// Parameters of A(m,n,w,d): arrays in J(m,w)^n with minimum Hamming
// distance 2d.  B(n,w,d) is A(n,1,w,d) and the q-ary C(q,n,d) is
// A(q,n,1,d); one engine serves all three.
struct CodeParams {
    int m = 1;
    int n = 1;
    int w = 1;
    int d = 1;

    bool operator==(const CodeParams& o) const {
        return m == o.m && n == o.n && w == o.w && d == o.d;
    }
};

enum class RuleId {
    Trivial,
    Symmetry,
    Singleton,
    JohnsonII,
    Gilbert,
    Hamming,
    Sandwich,
    PartitionPacking,
    Stacking,
    HighDistance,
    Alphabet,
    BassalygoElias,
    BassalygoLog,
    Spherical,
    Monotonicity,
    OracleExact,
    Concatenation,
    QarySingleton,
};

const char* rule_name(RuleId id);

// One node of a provenance tree.  args holds the rule's sub-parameters
// as decimal strings; children are the sub-bounds the value was built
// from.  replay() recomputes every node from params, args, and child
// values alone.
struct Prov {
    RuleId rule = RuleId::Trivial;
    bool is_upper = false;
    CodeParams params;
    std::map<std::string, std::string> args;
    BigInt value;
    std::vector<Prov> children;
};

struct BoundReport {
    CodeParams params;
    BigInt lower;
    BigInt upper;
    Prov lower_prov;
    Prov upper_prov;

    std::string to_json_string() const;
};

struct EngineOptions {
    int budget = 4;  // recursion depth for cross-parameter rules
    // when > 0, parameter tuples whose universe fits are answered by the
    // exhaustive search and reported as exact
    std::size_t oracle_cap = 0;
    // largest alphabet C(m,w) the alphabet relation recurses into; above
    // it the classical q-ary Singleton value is used directly
    long alphabet_cap = 1000000;
    // floating-point variant of the Bassalygo-Elias lower bound; never
    // replaces a certified bound it cannot beat and never crosses the
    // certified upper bound
    bool fast_bassalygo = false;
};

struct BassalygoBounds {
    BigInt lower;
    std::optional<BigInt> upper;  // present only when w divides m
};

class Engine {
public:
    explicit Engine(EngineOptions opts = {});

    const EngineOptions& options() const { return opts_; }

    BoundReport best_bounds(const CodeParams& p);
    BoundReport best_bounds(const CodeParams& p, int budget);

    void clear();

private:
    friend BigInt partition_packing_lower(Engine&, int, int, int, int, const std::vector<int>&);
    friend BigInt stacking_lower(Engine&, int, int, int, int, int);
    friend BigInt bassalygo_transfer_lower(Engine&, int, int, int, int, int);
    friend std::optional<BigInt> singleton_upper(Engine&, const CodeParams&);
    friend std::optional<BigInt> johnson_upper(Engine&, const CodeParams&, int, int, int);
    friend std::pair<BigInt, BigInt> sandwich_bounds(Engine&, const CodeParams&);
    friend std::optional<BigInt> high_distance_upper(Engine&, const CodeParams&);
    friend BigInt alphabet_upper(Engine&, const CodeParams&);
    friend BassalygoBounds bassalygo_bounds(Engine&, const CodeParams&);

    struct Entry {
        BigInt value;
        Prov prov;
    };
    using Key = std::array<int, 5>;  // m, n, w, d, budget

    Entry lower(CodeParams p, int budget);
    Entry upper(CodeParams p, int budget);
    Entry lower_rules(const CodeParams& p, int budget);
    Entry upper_rules(const CodeParams& p, int budget);
    bool oracle_seed(const CodeParams& p, Entry& out, bool is_upper);

    EngineOptions opts_;
    std::mutex mu_;
    std::map<Key, Entry> lower_memo_;
    std::map<Key, Entry> upper_memo_;
    std::map<std::array<int, 4>, long> oracle_memo_;
};

// Exact value when d pins one: d = 1 gives the whole space, d = nw gives
// floor(m/w), d > nw gives 1 (weights taken at min(w, m-w)).
std::optional<BigInt> trivial_value(const CodeParams& p);

// ceil(C(m,w)^n / (number of arrays within distance 2(d-1) of a center)).
BigInt gilbert_lower(const CodeParams& p);

// min over per-column weights u of C(m,u)^n / (arrays of J(m,u)^n within
// distance d-1 of a codeword); the minimizing u is written to *u_used
// when non-null.
BigInt hamming_upper(const CodeParams& p, int* u_used = nullptr);

// Embedding into the n(m-1)-sphere; exact for d >= nw(m-w)/m, otherwise
// no bound (nullopt).
std::optional<BigInt> spherical_upper(const CodeParams& p);

// Lower bound on B(m*n, n*w, d) from a partition into CWACs of shrinking
// column counts n_i (seq[0] must equal n).  Throws ParamError naming the
// violated sequence constraint.
BigInt partition_packing_lower(Engine& eng, int m, int n, int w, int d,
                               const std::vector<int>& seq);

// Lower bound on A(a*m, n, w, d) by spreading an (m,n,w,d) code over a
// stacked columns, plus the disjoint flattened code when a | w.
BigInt stacking_lower(Engine& eng, int a, int m, int n, int w, int d);

// Lower bound on A(m*w1/w2, n*w2/w1, w1, d) transferred from (m,n,w2,d);
// requires w1 | w2 and w2 | m.
BigInt bassalygo_transfer_lower(Engine& eng, int m, int n, int w2, int w1, int d);

// Upper bound by dropping one column and w from d; nullopt unless n >= 2
// and d >= w + 1.
std::optional<BigInt> singleton_upper(Engine& eng, const CodeParams& p);

// Upper bound from one (l, v, delta) choice of the puncturing family;
// w is first normalized to min(w, m-w).  nullopt when l does not divide
// n, v is outside [0, l], or delta exceeds (n/l) min(v, l-v).
std::optional<BigInt> johnson_upper(Engine& eng, const CodeParams& p, int l, int v, int delta);

// lower: the q-ary relaxation over floor(m/w) symbols and nw columns;
// upper: the flattened binary instance A(mn, 1, nw, d).
std::pair<BigInt, BigInt> sandwich_bounds(Engine& eng, const CodeParams& p);

// A(m,n,w,d) <= B(m,w,r) when d = (n-1)w + r with 0 < r <= w; nullopt
// outside that distance range.
std::optional<BigInt> high_distance_upper(Engine& eng, const CodeParams& p);

// A(m,n,w,d) <= C(C(m,w), n, ceil(d/w)), evaluated through the engine
// when the alphabet fits and by the q-ary Singleton value otherwise.
BigInt alphabet_upper(Engine& eng, const CodeParams& p);

// Flattening transfer in both directions; the upper branch needs w | m.
BassalygoBounds bassalygo_bounds(Engine& eng, const CodeParams& p);

// Recomputes every node of a provenance tree from its recorded
// sub-parameters and child values.  On mismatch returns false and, when
// why is non-null, describes the offending node.
bool replay(const Prov& node, std::string* why = nullptr);

// CSV table over inclusive ranges, columns
// m,n,w,d,lower,upper,lower_rule,upper_rule.  Tuples with w > m are
// skipped.
std::string bounds_table_csv(Engine& eng, int m_lo, int m_hi, int n_lo, int n_hi, int w_lo,
                             int w_hi, int d_lo, int d_hi);

}  // namespace cwac
