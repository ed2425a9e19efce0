#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hilmod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact rational num/den; canonicalized, denominator positive.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& x) {
    return x.get_den() == 1;
}

/// floor(x) as an Integer.
inline Integer rational_floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline long to_long(const Integer& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return x.get_si();
}

/// Legendre symbol (n/p) for an odd prime p.
inline int legendre(long n, long p) {
    long r = n % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    // Euler criterion via square-and-multiply mod p
    unsigned long base = static_cast<unsigned long>(r);
    unsigned long e = static_cast<unsigned long>((p - 1) / 2);
    unsigned long acc = 1, b = base, mod = static_cast<unsigned long>(p);
    while (e > 0) {
        if (e & 1) acc = static_cast<unsigned long>((__uint128_t)acc * b % mod);
        b = static_cast<unsigned long>((__uint128_t)b * b % mod);
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// s(n) = 2 if p | n, else 1.
inline int plus_space_s(long n, long p) {
    long r = n % p;
    return r == 0 ? 2 : 1;
}

inline std::string to_string(const Rational& x) {
    return x.get_str();
}

}  // namespace hilmod
