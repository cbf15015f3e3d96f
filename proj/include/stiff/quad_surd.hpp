#pragma once

#include "stiff/factor.hpp"
#include "stiff/rational.hpp"

#include <stdexcept>
#include <string>

namespace stiff {

/// Squarefree part c and square root s of the square part: n = s^2 * c.
struct SquarefreeSplit {
    BigInt square_root;
    BigInt squarefree;
};

inline SquarefreeSplit split_square(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("split_square needs a positive integer");
    BigInt s = 1, c = 1;
    for (const auto& [p, e] : FactoredInteger::factor(n).factors()) {
        s *= stiff::pow(p, e / 2);
        if (e % 2 == 1) c *= p;
    }
    return {s, c};
}

/// Element a + b*sqrt(c) of a real quadratic field, c squarefree.
/// c = 1 (and b = 0) for rational values.
class QuadSurd {
public:
    QuadSurd() = default;
    QuadSurd(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    /// a + b*sqrt(radicand) for any positive integer radicand.
    QuadSurd(const Rational& a, const Rational& b, const BigInt& radicand) : a_(a), b_(b) {
        if (radicand <= 0) throw std::invalid_argument("QuadSurd radicand must be positive");
        const auto sp = split_square(radicand);
        b_ *= Rational(sp.square_root);
        c_ = sp.squarefree;
        normalize();
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const BigInt& c() const { return c_; }
    bool is_rational() const { return b_.is_zero(); }
    Rational rational() const {
        if (!is_rational()) throw std::domain_error("QuadSurd is irrational");
        return a_;
    }

    QuadSurd conjugate() const { return make(a_, -b_, c_); }
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(c_); }

    int sign() const {
        // sign(a + b sqrt c) without approximation.
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 with b^2 c.
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * Rational(c_);
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    QuadSurd operator-() const { return make(-a_, -b_, c_); }
    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
        const BigInt c = common(x, y);
        return make(x.a_ + y.a_, x.b_ + y.b_, c);
    }
    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }
    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
        const BigInt c = common(x, y);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(c), x.a_ * y.b_ + x.b_ * y.a_, c);
    }
    friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
        const Rational n = y.norm();
        if (n.is_zero()) throw std::domain_error("QuadSurd division by zero");
        const QuadSurd t = x * y.conjugate();
        return make(t.a_ / n, t.b_ / n, t.c_);
    }
    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    }
    friend bool operator<(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() < 0; }

    /// Rational within 10^-digits of the value.
    Rational approx(int digits) const {
        if (is_rational()) return a_;
        // floor(sqrt(c) * 10^k) / 10^k with enough guard digits for |b|.
        const int guard = static_cast<int>(b_.abs().num().get_str().size()) + 2;
        const unsigned long k = static_cast<unsigned long>(digits + guard);
        const BigInt scale = stiff::pow(BigInt(10), k);
        const BigInt root = floor_sqrt(BigInt(c_ * scale * scale));
        return a_ + b_ * Rational(root, scale);
    }

    long double to_long_double() const { return approx(30).to_long_double(); }

    /// "a", "b*sqrt(c)", or "a+b*sqrt(c)".
    std::string str() const {
        if (is_rational()) return a_.str();
        const Rational ab = b_.abs();
        std::string surd = (ab == Rational(1) ? std::string() : ab.str() + "*") + "sqrt(" + c_.get_str() + ")";
        if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + surd;
        return a_.str() + (b_.sign() < 0 ? "-" : "+") + surd;
    }

private:
    static QuadSurd make(const Rational& a, const Rational& b, const BigInt& c) {
        QuadSurd q;
        q.a_ = a;
        q.b_ = b;
        q.c_ = c;
        q.normalize();
        return q;
    }
    static BigInt common(const QuadSurd& x, const QuadSurd& y) {
        if (x.is_rational()) return y.c_;
        if (y.is_rational()) return x.c_;
        if (x.c_ != y.c_) throw std::domain_error("QuadSurd values from different fields");
        return x.c_;
    }
    void normalize() {
        if (c_ == 1) {
            a_ += b_;
            b_ = Rational();
        }
        if (b_.is_zero()) c_ = 1;
    }

    Rational a_;
    Rational b_;
    BigInt c_ = 1;
};

}  // namespace stiff
