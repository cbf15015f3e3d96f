#pragma once

#include "stiff/bigint.hpp"
#include "stiff/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stiff {

/// Dense univariate polynomial with rational coefficients, ascending degree.
/// The leading coefficient is nonzero unless the polynomial is zero (empty).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static RatPoly constant(const Rational& v) { return RatPoly({v}); }
    static RatPoly monomial(const Rational& v, std::size_t degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = v;
        return RatPoly(std::move(c));
    }
    static RatPoly x() { return monomial(Rational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(); }
    Rational leading() const { return is_zero() ? Rational() : c_.back(); }
    bool is_monic() const { return !is_zero() && c_.back() == Rational(1); }

    Rational operator()(const Rational& x) const {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    RatPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return RatPoly(std::move(d));
    }

    RatPoly& operator+=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    RatPoly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return RatPoly(std::move(r));
    }
    RatPoly operator-() const { return *this * Rational(-1); }

    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> rem = c_;
        const long dd = divisor.degree();
        if (degree() < dd) return {RatPoly{}, *this};
        std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1));
        const Rational lead_inv = divisor.leading().inverse();
        for (long i = degree(); i >= dd; --i) {
            const Rational q = rem[static_cast<std::size_t>(i)] * lead_inv;
            quo[static_cast<std::size_t>(i - dd)] = q;
            if (q.is_zero()) continue;
            for (long j = 0; j <= dd; ++j) {
                rem[static_cast<std::size_t>(i - dd + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
            }
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
    }

    /// p(x) -> p(x^2).
    RatPoly substitute_square() const {
        if (is_zero()) return {};
        std::vector<Rational> r(2 * c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
        return RatPoly(std::move(r));
    }

    /// For an even polynomial p(x) returns q with p(x) = q(x^2).
    RatPoly even_part_in_square() const {
        std::vector<Rational> r;
        for (std::size_t i = 0; i < c_.size(); i += 2) r.push_back(c_[i]);
        return RatPoly(std::move(r));
    }

    /// p(x) = x * q(x^2) for an odd polynomial; returns q.
    RatPoly odd_part_in_square() const {
        std::vector<Rational> r;
        for (std::size_t i = 1; i < c_.size(); i += 2) r.push_back(c_[i]);
        return RatPoly(std::move(r));
    }

    /// Positive rational multiple with coprime integer coefficients.
    std::vector<BigInt> primitive_integer() const {
        if (is_zero()) return {};
        BigInt l = 1;
        for (const auto& v : c_) l = lcm(l, v.den());
        std::vector<BigInt> out;
        out.reserve(c_.size());
        BigInt g = 0;
        for (const auto& v : c_) {
            out.push_back(v.num() * (l / v.den()));
            g = gcd(g, out.back());
        }
        if (g > 1) {
            for (auto& v : out) v /= g;
        }
        return out;
    }

    std::string str(const char* var = "X") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            const Rational& v = c_[static_cast<std::size_t>(i)];
            if (v.is_zero()) continue;
            const Rational a = v.abs();
            if (first) {
                if (v.sign() < 0) os << "-";
            } else {
                os << (v.sign() < 0 ? " - " : " + ");
            }
            first = false;
            const bool unit = a == Rational(1);
            if (!unit || i == 0) os << a.str();
            if (i > 0) {
                if (!unit) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.str(); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Integer polynomial helpers used on hot paths (ascending coefficients).
namespace intpoly {

/// Sign of sum c_i x^i at x = a/b (b > 0), evaluated homogeneously in integers.
inline int sign_at(const std::vector<BigInt>& c, const BigInt& a, const BigInt& b) {
    if (c.empty()) return 0;
    BigInt acc = c.back();
    BigInt bpow = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        bpow *= b;
        acc = acc * a + c[i] * bpow;
    }
    return sgn(acc);
}

inline int sign_at(const std::vector<BigInt>& c, const Rational& x) { return sign_at(c, x.num(), x.den()); }

inline BigInt eval(const std::vector<BigInt>& c, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace intpoly

}  // namespace stiff
