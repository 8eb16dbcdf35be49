#include "cwac/bigint.hpp"

namespace cwac {

BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt floor_rat(const BigRat& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

BigInt ceil_rat(const BigRat& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool fits_long(const BigInt& v) { return v.fits_slong_p(); }

std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace cwac
