#pragma once

#include "stiff/bigint.hpp"

#include <cmath>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace stiff {

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Every constructor and arithmetic result is canonicalized, so two equal
/// values always share the same numerator/denominator representation.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Exact value of a finite long double (a dyadic rational).
    static Rational from_long_double(long double v) {
        if (!std::isfinite(v)) throw std::domain_error("non-finite value");
        if (v == 0) return Rational();
        int exp = 0;
        const long double mant = std::frexp(std::fabs(v), &exp);
        // 64 fractional bits hold the full x87 extended mantissa exactly.
        const auto bits = static_cast<unsigned long>(std::ldexp(mant, 64));
        BigInt m = bits;
        if (v < 0) m = -m;
        const int shift = exp - 64;
        if (shift >= 0) return Rational(BigInt(m << static_cast<unsigned long>(shift)));
        BigInt den = 1;
        den <<= static_cast<unsigned long>(-shift);
        return Rational(m, den);
    }

    static Rational parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(big_from_string(s));
        return Rational(big_from_string(s.substr(0, slash)), big_from_string(s.substr(slash + 1)));
    }

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(den(), num());
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    BigInt floor() const { return floor_div(num(), den()); }
    BigInt ceil() const { return ceil_div(num(), den()); }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(r);
    }

    long double to_long_double() const {
        // mpq -> double loses range for huge values; go through mpf.
        mpf_class f(q_, 256);
        long exp = 0;
        const double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
        return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    /// Decimal expansion truncated toward zero after `digits` fractional digits.
    std::string to_decimal(int digits) const {
        BigInt scale = stiff::pow(BigInt(10), static_cast<unsigned long>(digits));
        BigInt a = ::abs(num()) * scale;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), den().get_mpz_t());
        std::string s = q.get_str();
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
        std::string out = (sign() < 0 ? "-" : "") + s.substr(0, s.size() - static_cast<size_t>(digits));
        if (digits > 0) out += "." + s.substr(s.size() - static_cast<size_t>(digits));
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.abs(); }

/// 10^(-digits) as an exact rational.
inline Rational ten_pow_neg(int digits) {
    return Rational(BigInt(1), stiff::pow(BigInt(10), static_cast<unsigned long>(digits)));
}

}  // namespace stiff
