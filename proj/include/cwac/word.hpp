#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwac/error.hpp"

namespace cwac {

// Binary word of fixed length m.  Bit positions run 0..m-1; position j is
// stored in limb j/64 at bit j%64.
//
// Hex form: the word read as a bitstring with position 0 first, so
// position 0 is the most significant bit of the first hex digit.  The
// string always has exactly ceil(m/4) lowercase digits; pad bits past
// position m-1 are zero.  Example: m=6, support {0,5} -> "84".
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(int m);
    BitWord(int m, const std::vector<int>& ones);

    int length() const { return m_; }
    int weight() const;
    bool test(int pos) const;
    void set(int pos, bool value);
    void flip(int pos);
    BitWord complemented() const;
    std::vector<int> support() const;

    std::string to_hex() const;
    static BitWord from_hex(int m, const std::string& hex);

    const std::vector<std::uint64_t>& limbs() const { return limbs_; }

    bool operator==(const BitWord& o) const { return m_ == o.m_ && limbs_ == o.limbs_; }
    bool operator!=(const BitWord& o) const { return !(*this == o); }

private:
    void check_pos(int pos) const;

    int m_ = 0;
    std::vector<std::uint64_t> limbs_;
};

// Number of positions where a and b differ.  Lengths must match.
long hamming_distance(const BitWord& a, const BitWord& b);

// A BitWord with exactly w ones.  Keeps the sorted support alongside the
// packed bits; the two views are constructed together and never diverge.
class ColumnWord {
public:
    // support must be strictly increasing, in range [0, m)
    ColumnWord(int m, std::vector<int> support);
    explicit ColumnWord(const BitWord& bits);

    int length() const { return bits_.length(); }
    int weight() const { return static_cast<int>(support_.size()); }
    const std::vector<int>& support() const { return support_; }
    const BitWord& bits() const { return bits_; }
    bool test(int pos) const { return bits_.test(pos); }

    // same length, support replaced by its complement
    ColumnWord complemented() const;

    std::string to_hex() const { return bits_.to_hex(); }
    static ColumnWord from_hex(int m, const std::string& hex);

    bool operator==(const ColumnWord& o) const { return bits_ == o.bits_; }
    bool operator!=(const ColumnWord& o) const { return !(*this == o); }

private:
    BitWord bits_;
    std::vector<int> support_;
};

long hamming_distance(const ColumnWord& a, const ColumnWord& b);

// n columns over J(m, w): every column has length m and weight w.
class ArrayWord {
public:
    ArrayWord(int m, int w, std::vector<ColumnWord> columns);

    int m() const { return m_; }
    int w() const { return w_; }
    int n() const { return static_cast<int>(columns_.size()); }
    const std::vector<ColumnWord>& columns() const { return columns_; }
    const ColumnWord& column(int i) const { return columns_.at(i); }

    // columns complemented entrywise; weight becomes m - w
    ArrayWord complemented() const;

    // concatenated column hex digits, n * ceil(m/4) characters
    std::string to_hex() const;
    static ArrayWord from_hex(int m, int n, int w, const std::string& hex);

    std::string to_json_string() const;
    static ArrayWord from_json_string(const std::string& text);

    bool operator==(const ArrayWord& o) const;
    bool operator!=(const ArrayWord& o) const { return !(*this == o); }

private:
    int m_;
    int w_;
    std::vector<ColumnWord> columns_;
};

// Sum of columnwise distances.  Shapes must match.
long hamming_distance(const ArrayWord& a, const ArrayWord& b);
// Same, against raw received columns of arbitrary weight.
long hamming_distance(const ArrayWord& a, const std::vector<BitWord>& received);

}  // namespace cwac
