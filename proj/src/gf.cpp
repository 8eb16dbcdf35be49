#include "cwac/gf.hpp"

#include <stdexcept>

#include "cwac/error.hpp"

namespace cwac {

unsigned primitive_poly(int b) {
    // conventional lowest-weight primitive polynomials per degree
    static const unsigned table[17] = {
        0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
        0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};
    if (b < 1 || b > 16) throw ParamError("field degree must be in [1, 16]");
    return table[b];
}

Field::Field(int b) : b_(b), size_(1 << b), poly_(primitive_poly(b)) {
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, -1);
    unsigned x = 1;
    for (int i = 0; i < size_ - 1; ++i) {
        exp_[i] = static_cast<int>(x);
        log_[x] = i;
        x <<= 1;
        if (x & static_cast<unsigned>(size_)) x ^= poly_;
    }
    if (x != 1) throw std::logic_error("generator did not return to 1; polynomial not primitive");
}

int Field::mul(int a, int c) const {
    if (a == 0 || c == 0) return 0;
    return exp_[(log_[a] + log_[c]) % order()];
}

int Field::inv(int a) const {
    if (a == 0) throw ParamError("zero has no inverse");
    return exp_[(order() - log_[a]) % order()];
}

int Field::div(int a, int c) const { return mul(a, inv(c)); }

int Field::pow_alpha(long e) const {
    long r = e % order();
    if (r < 0) r += order();
    return exp_[r];
}

int Field::log_alpha(int a) const {
    if (a == 0) throw ParamError("zero has no discrete log");
    return log_[a];
}

}  // namespace cwac
