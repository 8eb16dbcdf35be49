#pragma once

#include <vector>

namespace cwac {

// Fixed primitive polynomial for GF(2^b), 1 <= b <= 16, as the bit
// pattern of the monic polynomial (high bit included, e.g. b=4 gives
// 0x13 = x^4 + x + 1).  Fixed so encodings are bit-exact everywhere.
unsigned primitive_poly(int b);

// GF(2^b) arithmetic through log/antilog tables over the generator
// alpha = x.  Elements are ints in [0, 2^b).
class Field {
public:
    explicit Field(int b);

    int bits() const { return b_; }
    int size() const { return size_; }
    int order() const { return size_ - 1; }
    unsigned poly() const { return poly_; }

    int add(int a, int c) const { return a ^ c; }
    int mul(int a, int c) const;
    int inv(int a) const;
    int div(int a, int c) const;
    int pow_alpha(long e) const;  // alpha^e for any integer e
    int log_alpha(int a) const;   // discrete log, a != 0

private:
    int b_ = 0;
    int size_ = 0;
    unsigned poly_ = 0;
    std::vector<int> exp_;
    std::vector<int> log_;
};

}  // namespace cwac
