#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwac/bigint.hpp"
#include "cwac/rs.hpp"
#include "cwac/word.hpp"

namespace cwac {

// Constant-weight code over J(m,w) with pairwise distance >= 2f, sized
// to a power of two so its words can carry field symbols.  Symbol value
// = index into the kept colex-ordered list.
class InnerCode {
public:
    InnerCode(int m, int w, int f, std::vector<ColumnWord> codewords);

    int m() const { return m_; }
    int w() const { return w_; }
    int f() const { return f_; }
    int bits() const { return bits_; }
    int size() const { return static_cast<int>(codewords_.size()); }
    const std::vector<ColumnWord>& codewords() const { return codewords_; }
    const ColumnWord& codeword(int symbol) const { return codewords_.at(symbol); }

    // exact-match symbol lookup; -1 when the column is not a codeword
    int index_of(const BitWord& column) const;

private:
    int m_, w_, f_, bits_;
    std::vector<ColumnWord> codewords_;
    std::map<std::string, int> index_;
};

// Greedy colex scan of J(m,w) keeping words at distance >= 2f from all
// kept words, truncated to the largest power of two (at most 2^16 so
// symbols fit a table-driven field).  Throws when fewer than two words
// survive.
InnerCode build_inner_lexicode(int m, int w, int f);

struct InnerDecodeResult {
    int symbol = -1;   // -1 when erased
    int distance = 0;  // to the decoded codeword, or to the nearest one when erased
    bool erased = true;
};

// Nearest-codeword decoding with radius f-1: inside the radius the
// nearest codeword is unique; outside, an erasure carrying the best
// distance found (used to order reliabilities).
InnerDecodeResult inner_decode(const BitWord& column, const InnerCode& inner);

struct ColumnDiagnostic {
    int distance = 0;
    bool erased = false;
};

struct DecodeOutcome {
    bool decoded = false;
    std::vector<int> message;  // k outer symbols when decoded
    std::vector<ColumnDiagnostic> columns;
    int trials_used = 0;
    long reencode_distance = -1;  // bit distance from the accepted word to the input
    bool beyond_guarantee = false;
};

// Reed-Solomon outer code over GF(2^bits) whose symbols are transmitted
// as inner codewords; pairwise distance >= 2 e f with e = n - k + 1.
class ConcatenatedCode {
public:
    ConcatenatedCode(InnerCode inner, int n, int k);

    const InnerCode& inner() const { return inner_; }
    const ReedSolomon& outer() const { return rs_; }
    const Field& field() const { return rs_.field(); }
    int n() const { return rs_.n(); }
    int k() const { return rs_.k(); }
    int e() const { return rs_.e(); }
    int designed_half_distance() const { return e() * inner_.f(); }
    // every corruption of at most this many bit flips decodes correctly
    long guarantee_bits() const { return static_cast<long>(e()) * inner_.f() - 1; }

    ArrayWord encode(const std::vector<int>& message) const;

    // generalized minimum-distance decoding: inner decode each column,
    // then try outer decoding under a schedule of erasure sets ordered
    // from fewest to most erasures; the first candidate within
    // guarantee_bits() of the input wins.  A candidate found only beyond
    // that radius is returned flagged beyond_guarantee.
    DecodeOutcome decode(const std::vector<BitWord>& received) const;

    std::string to_json_string() const;
    static ConcatenatedCode from_json_string(const std::string& text);

private:
    InnerCode inner_;
    ReedSolomon rs_;
};

ArrayWord cwac_encode(const ConcatenatedCode& code, const std::vector<int>& message);
DecodeOutcome cwac_decode(const ConcatenatedCode& code, const std::vector<BitWord>& received);

struct CodePlan {
    int m = 0, w = 0, f = 0, n = 0, k = 0;
    bool feasible = false;
    std::string message;  // why not, naming the largest usable n
    int inner_size = 0;
    int bits = 0;
    int max_n = 0;  // largest outer length the inner alphabet supports
    int e = 0;
    long guarantee = -1;
    long rate_num = 0, rate_den = 0;  // message bits per transmitted bit
    bool lifting = false;             // w == 1: columns carry one symbol index each
    BigInt inner_upper;               // upper bound on any inner code's size at (m,w,f)
};

// Builds the inner lexicode and reports feasibility, rate k*bits/(n*m),
// the bit-flip correction guarantee e*f - 1, and the gap between the
// achieved inner size and the best provable bound.
CodePlan plan_params(int m, int w, int f, int n, int k);

}  // namespace cwac
