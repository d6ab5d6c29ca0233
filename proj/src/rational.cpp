#include "ait/rational.hpp"

#include "ait/errors.hpp"

namespace ait {

Rat pow2(long k) {
    mpz_class shifted(1);
    mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(k >= 0 ? k : -k));
    if (k >= 0)
        return Rat(shifted);
    Rat r(mpz_class(1), shifted);
    r.canonicalize();
    return r;
}

long floor_log2(const Rat& q) {
    if (sgn(q) <= 0)
        throw Error(Error::Kind::ZeroMass, "floor_log2 requires a positive rational");
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    // First guess from bit lengths, then adjust; the guess is off by at most one.
    long k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    auto le_pow2_q = [&](long e) {
        // 2^e <= num/den, via den * 2^e <= num with the shift on the short side
        mpz_class lhs, rhs;
        if (e >= 0) {
            mpz_mul_2exp(lhs.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
            rhs = num;
        } else {
            lhs = den;
            mpz_mul_2exp(rhs.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        }
        return lhs <= rhs;
    };
    while (!le_pow2_q(k)) --k;
    while (le_pow2_q(k + 1)) ++k;
    return k;
}

long ceil_log2(const Rat& q) {
    long f = floor_log2(q);
    return q == pow2(f) ? f : f + 1;
}

long ceil_neg_log2(const Rat& q) {
    // ceil(-x) == -floor(x) exactly.
    return -floor_log2(q);
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_parse(const std::string& s) {
    if (s.empty())
        throw Error(Error::Kind::Io, "empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw Error(Error::Kind::Io, "bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace ait
