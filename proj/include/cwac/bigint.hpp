#pragma once

#include <gmpxx.h>

#include <string>

namespace cwac {

// Arbitrary-precision integers and rationals.  Every certified numeric
// path in the library goes through these; no floating point is involved
// in any bound that claims soundness.
using BigInt = mpz_class;
using BigRat = mpq_class;

BigInt big_pow(const BigInt& base, unsigned long exp);

// floor/ceil of an exact rational
BigInt floor_rat(const BigRat& q);
BigInt ceil_rat(const BigRat& q);

// floor(a/b) and ceil(a/b), b > 0
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);

bool fits_long(const BigInt& v);

std::string to_string(const BigInt& v);

}  // namespace cwac
