#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace stiff {

/// Arbitrary-precision signed integer. Backed by GMP.
using BigInt = mpz_class;

inline BigInt big(std::int64_t v) {
    BigInt r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

inline BigInt big_from_string(const std::string& s) {
    BigInt r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("not an integer: " + s);
    }
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline int sign(const BigInt& v) { return sgn(v); }

inline bool fits_int64(const BigInt& v) { return v.fits_slong_p(); }

inline std::int64_t to_int64(const BigInt& v) {
    if (!v.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
    }
    return v.get_si();
}

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt floor_sqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("floor_sqrt of negative integer");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact integer square root when `n` is a perfect square.
inline std::optional<BigInt> is_perfect_square(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return floor_sqrt(n);
}

/// Largest e with p^e | n; n must be nonzero.
inline unsigned long valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    BigInt t = n;
    return mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
}

/// n with every factor of p removed.
inline BigInt strip_factor(const BigInt& n, const BigInt& p) {
    if (n == 0) return n;
    BigInt t;
    mpz_remove(t.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return t;
}

inline BigInt odd_part(const BigInt& n) {
    if (n == 0) return n;
    BigInt t = n;
    mpz_tdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), mpz_scan1(n.get_mpz_t(), 0));
    return t;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const BigInt& d, const BigInt& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Floor division (rounds toward negative infinity).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Strong probable-prime test (GMP runs Baillie-PSW plus Miller-Rabin rounds).
inline bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

}  // namespace stiff
