#pragma once

#include <vector>

#include "cwac/gf.hpp"

namespace cwac {

struct RsDecodeResult {
    bool ok = false;
    std::vector<int> message;    // k symbols when ok
    int errors_corrected = 0;    // corrections outside the erasure marks
};

// Reed-Solomon code of length n <= 2^b - 1 over GF(2^b), systematic in
// the first k positions.  Codewords are evaluations of a degree-< k
// polynomial at alpha^0 .. alpha^{n-1}; shortening treats the missing
// tail positions as erasures during decoding.
class ReedSolomon {
public:
    ReedSolomon(Field field, int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int e() const { return n_ - k_ + 1; }  // minimum distance
    const Field& field() const { return field_; }

    std::vector<int> encode(const std::vector<int>& message) const;

    // erased[i] marks received[i] as unreliable (its value is ignored).
    // t_budget < 0 means "as many errors as the syndromes allow".
    RsDecodeResult decode(const std::vector<int>& received, const std::vector<bool>& erased,
                          int t_budget = -1) const;

private:
    // interpolate the degree-< k polynomial through the given k points
    std::vector<int> interpolate(const std::vector<int>& xs, const std::vector<int>& ys) const;
    int eval(const std::vector<int>& poly, int x) const;

    Field field_;
    int n_ = 0;
    int k_ = 0;
};

}  // namespace cwac
