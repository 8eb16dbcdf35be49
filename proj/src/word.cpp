#include "cwac/word.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>

namespace cwac {

static int hex_digits_for(int m) { return (m + 3) / 4; }

BitWord::BitWord(int m) : m_(m) {
    if (m < 0) throw ParamError("word length must be nonnegative");
    limbs_.assign((m + 63) / 64, 0);
}

BitWord::BitWord(int m, const std::vector<int>& ones) : BitWord(m) {
    for (int p : ones) set(p, true);
}

void BitWord::check_pos(int pos) const {
    if (pos < 0 || pos >= m_) throw ParamError("bit position out of range");
}

int BitWord::weight() const {
    int w = 0;
    for (std::uint64_t limb : limbs_) w += std::popcount(limb);
    return w;
}

bool BitWord::test(int pos) const {
    check_pos(pos);
    return (limbs_[pos / 64] >> (pos % 64)) & 1u;
}

void BitWord::set(int pos, bool value) {
    check_pos(pos);
    std::uint64_t mask = std::uint64_t{1} << (pos % 64);
    if (value)
        limbs_[pos / 64] |= mask;
    else
        limbs_[pos / 64] &= ~mask;
}

void BitWord::flip(int pos) { set(pos, !test(pos)); }

BitWord BitWord::complemented() const {
    BitWord r(m_);
    for (size_t i = 0; i < limbs_.size(); ++i) r.limbs_[i] = ~limbs_[i];
    int tail = m_ % 64;
    if (tail != 0 && !limbs_.empty())
        r.limbs_.back() &= (std::uint64_t{1} << tail) - 1;
    return r;
}

std::vector<int> BitWord::support() const {
    std::vector<int> s;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t limb = limbs_[i];
        while (limb) {
            int b = std::countr_zero(limb);
            s.push_back(static_cast<int>(i) * 64 + b);
            limb &= limb - 1;
        }
    }
    return s;
}

std::string BitWord::to_hex() const {
    int digits = hex_digits_for(m_);
    std::string out(digits, '0');
    for (int j = 0; j < m_; ++j) {
        if (!test(j)) continue;
        int digit = j / 4;
        int bit = 3 - (j % 4);  // position j is the MSB-side bit of its nibble
        int val = out[digit] <= '9' ? out[digit] - '0' : out[digit] - 'a' + 10;
        val |= 1 << bit;
        out[digit] = static_cast<char>(val < 10 ? '0' + val : 'a' + val - 10);
    }
    return out;
}

BitWord BitWord::from_hex(int m, const std::string& hex) {
    int digits = hex_digits_for(m);
    if (static_cast<int>(hex.size()) != digits)
        throw ParamError("hex word must have exactly ceil(m/4) digits, got \"" + hex + "\"");
    BitWord w(m);
    for (int i = 0; i < digits; ++i) {
        char c = hex[i];
        int val;
        if (c >= '0' && c <= '9')
            val = c - '0';
        else if (c >= 'a' && c <= 'f')
            val = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            val = c - 'A' + 10;
        else
            throw ParamError("invalid hex digit in word");
        for (int b = 0; b < 4; ++b) {
            if (!((val >> (3 - b)) & 1)) continue;
            int pos = i * 4 + b;
            if (pos >= m) throw ParamError("hex word has ones past position m-1");
            w.set(pos, true);
        }
    }
    return w;
}

long hamming_distance(const BitWord& a, const BitWord& b) {
    if (a.length() != b.length()) throw ParamError("word length mismatch in distance");
    long d = 0;
    for (size_t i = 0; i < a.limbs().size(); ++i)
        d += std::popcount(a.limbs()[i] ^ b.limbs()[i]);
    return d;
}

ColumnWord::ColumnWord(int m, std::vector<int> support)
    : bits_(m), support_(std::move(support)) {
    for (size_t i = 0; i < support_.size(); ++i) {
        if (i > 0 && support_[i] <= support_[i - 1])
            throw ParamError("column support must be strictly increasing");
        bits_.set(support_[i], true);  // range checked there
    }
}

ColumnWord::ColumnWord(const BitWord& bits) : bits_(bits), support_(bits.support()) {}

ColumnWord ColumnWord::complemented() const { return ColumnWord(bits_.complemented()); }

ColumnWord ColumnWord::from_hex(int m, const std::string& hex) {
    return ColumnWord(BitWord::from_hex(m, hex));
}

long hamming_distance(const ColumnWord& a, const ColumnWord& b) {
    return hamming_distance(a.bits(), b.bits());
}

ArrayWord::ArrayWord(int m, int w, std::vector<ColumnWord> columns)
    : m_(m), w_(w), columns_(std::move(columns)) {
    if (m < 1 || w < 0 || w > m) throw ParamError("array word needs 0 <= w <= m, m >= 1");
    if (columns_.empty()) throw ParamError("array word needs at least one column");
    for (const ColumnWord& c : columns_) {
        if (c.length() != m_ || c.weight() != w_)
            throw ParamError("array word column has wrong shape");
    }
}

ArrayWord ArrayWord::complemented() const {
    std::vector<ColumnWord> cols;
    cols.reserve(columns_.size());
    for (const ColumnWord& c : columns_) cols.push_back(c.complemented());
    return ArrayWord(m_, m_ - w_, std::move(cols));
}

std::string ArrayWord::to_hex() const {
    std::string out;
    for (const ColumnWord& c : columns_) out += c.to_hex();
    return out;
}

ArrayWord ArrayWord::from_hex(int m, int n, int w, const std::string& hex) {
    int per = hex_digits_for(m);
    if (static_cast<int>(hex.size()) != per * n)
        throw ParamError("array hex must have n*ceil(m/4) digits");
    std::vector<ColumnWord> cols;
    cols.reserve(n);
    for (int i = 0; i < n; ++i)
        cols.push_back(ColumnWord::from_hex(m, hex.substr(static_cast<size_t>(i) * per, per)));
    return ArrayWord(m, w, std::move(cols));
}

std::string ArrayWord::to_json_string() const {
    nlohmann::json j;
    j["m"] = m_;
    j["n"] = n();
    j["w"] = w_;
    nlohmann::json cols = nlohmann::json::array();
    for (const ColumnWord& c : columns_) cols.push_back(c.to_hex());
    j["columns"] = std::move(cols);
    return j.dump();
}

ArrayWord ArrayWord::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("bad array word JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("w") ||
        !j.contains("columns") || !j["columns"].is_array())
        throw ParamError("array word JSON needs m, n, w, columns");
    int m = j["m"].get<int>();
    int n = j["n"].get<int>();
    int w = j["w"].get<int>();
    if (static_cast<int>(j["columns"].size()) != n)
        throw ParamError("array word JSON column count differs from n");
    std::vector<ColumnWord> cols;
    cols.reserve(n);
    for (const auto& c : j["columns"]) cols.push_back(ColumnWord::from_hex(m, c.get<std::string>()));
    return ArrayWord(m, w, std::move(cols));
}

bool ArrayWord::operator==(const ArrayWord& o) const {
    return m_ == o.m_ && w_ == o.w_ && columns_ == o.columns_;
}

long hamming_distance(const ArrayWord& a, const ArrayWord& b) {
    if (a.m() != b.m() || a.n() != b.n()) throw ParamError("array shape mismatch in distance");
    long d = 0;
    for (int i = 0; i < a.n(); ++i) d += hamming_distance(a.column(i), b.column(i));
    return d;
}

long hamming_distance(const ArrayWord& a, const std::vector<BitWord>& received) {
    if (static_cast<int>(received.size()) != a.n())
        throw ParamError("array shape mismatch in distance");
    long d = 0;
    for (int i = 0; i < a.n(); ++i) d += hamming_distance(a.column(i).bits(), received[i]);
    return d;
}

}  // namespace cwac
