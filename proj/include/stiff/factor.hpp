#pragma once

#include "stiff/bigint.hpp"
#include "stiff/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stiff {

/// p-adic valuation of a rational; std::nullopt stands for +infinity (q = 0).
inline std::optional<long> ord_p(const Rational& q, const BigInt& p) {
    if (!is_probable_prime(p)) throw std::invalid_argument("ord_p: " + p.get_str() + " is not prime");
    if (q.is_zero()) return std::nullopt;
    return static_cast<long>(valuation(q.num(), p)) - static_cast<long>(valuation(q.den(), p));
}

namespace detail {

inline BigInt pollard_brent(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto f = [&](const BigInt& v) {
            BigInt t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt diff = x - y;
                    q = q * ::abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(::abs(BigInt(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

}  // namespace detail

/// Signed integer stored as a sign and a prime -> exponent map.
class FactoredInteger {
public:
    FactoredInteger() = default;

    /// Factor |n| by trial division up to `trial_bound`, then split any
    /// composite cofactor with Pollard-Brent. n = 0 is rejected.
    static FactoredInteger factor(const BigInt& n, unsigned long trial_bound = 1000000) {
        if (n == 0) throw std::invalid_argument("cannot factor zero");
        FactoredInteger f;
        f.sign_ = n < 0 ? -1 : 1;
        BigInt m = ::abs(n);
        for (unsigned long p = 2; p <= trial_bound; p += (p == 2 ? 1 : 2)) {
            const BigInt pp = p;
            if (pp * pp > m) break;
            if (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
                f.factors_[pp] += static_cast<unsigned>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
            }
        }
        if (m > 1) f.split_cofactor(m);
        return f;
    }

    static FactoredInteger factor(std::int64_t n) { return factor(big(n)); }

    /// Product of explicitly small factors, each factored independently.
    static FactoredInteger product(const std::vector<BigInt>& terms) {
        FactoredInteger f;
        for (const auto& t : terms) f *= factor(t);
        return f;
    }

    static FactoredInteger from_map(int sign, std::map<BigInt, unsigned> factors) {
        FactoredInteger f;
        f.sign_ = sign < 0 ? -1 : 1;
        for (auto& [p, e] : factors) {
            if (e > 0) f.factors_[p] = e;
        }
        return f;
    }

    int sign() const { return sign_; }
    const std::map<BigInt, unsigned>& factors() const& { return factors_; }
    std::map<BigInt, unsigned> factors() && { return std::move(factors_); }

    unsigned exponent(const BigInt& p) const {
        auto it = factors_.find(p);
        return it == factors_.end() ? 0U : it->second;
    }

    BigInt value() const {
        BigInt v = 1;
        for (const auto& [p, e] : factors_) v *= stiff::pow(p, e);
        return sign_ < 0 ? BigInt(-v) : v;
    }

    FactoredInteger& operator*=(const FactoredInteger& o) {
        sign_ *= o.sign_;
        for (const auto& [p, e] : o.factors_) factors_[p] += e;
        return *this;
    }
    friend FactoredInteger operator*(FactoredInteger a, const FactoredInteger& b) { return a *= b; }

    /// Number of positive divisors, prod (e_i + 1).
    BigInt divisor_count() const {
        BigInt c = 1;
        for (const auto& [p, e] : factors_) c *= (e + 1);
        return c;
    }

    /// Calls `visit` once per positive divisor, in no particular order.
    /// Returning false from `visit` stops the enumeration early.
    void for_each_divisor(const std::function<bool(const BigInt&)>& visit) const {
        std::vector<std::pair<BigInt, unsigned>> pe(factors_.begin(), factors_.end());
        bool stop = false;
        std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t i, const BigInt& acc) {
            if (stop) return;
            if (i == pe.size()) {
                if (!visit(acc)) stop = true;
                return;
            }
            BigInt cur = acc;
            for (unsigned e = 0; e <= pe[i].second && !stop; ++e) {
                rec(i + 1, cur);
                cur *= pe[i].first;
            }
        };
        rec(0, BigInt(1));
    }

    /// All positive divisors in ascending order.
    std::vector<BigInt> divisors() const {
        std::vector<BigInt> out;
        for_each_divisor([&](const BigInt& d) {
            out.push_back(d);
            return true;
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

private:
    void split_cofactor(const BigInt& m) {
        if (m == 1) return;
        if (is_probable_prime(m)) {
            factors_[m] += 1;
            return;
        }
        if (auto r = is_perfect_square(m)) {
            split_cofactor(*r);
            split_cofactor(*r);
            return;
        }
        const BigInt d = detail::pollard_brent(m);
        split_cofactor(d);
        split_cofactor(BigInt(m / d));
    }

    int sign_ = 1;
    std::map<BigInt, unsigned> factors_;
};

/// Positive divisors of n (n != 0) in ascending order.
inline std::vector<BigInt> divisors(const FactoredInteger& n) { return n.divisors(); }

}  // namespace stiff

namespace stiff {

/// Smallest-prime-factor table for fast factoring of small machine integers.
class SmallPrimeSieve {
public:
    static constexpr std::uint32_t kLimit = 1U << 22;

    static const SmallPrimeSieve& instance() {
        static const SmallPrimeSieve sieve;
        return sieve;
    }

    /// Calls visit(p, e) for each prime power p^e exactly dividing v (0 < v < kLimit).
    template <typename Visit>
    void for_each_prime_power(std::uint32_t v, Visit&& visit) const {
        while (v > 1) {
            const std::uint32_t p = spf_[v];
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            visit(p, e);
        }
    }

private:
    SmallPrimeSieve() : spf_(kLimit, 0) {
        for (std::uint32_t i = 2; i < kLimit; ++i) {
            if (spf_[i] != 0) continue;
            for (std::uint64_t j = i; j < kLimit; j += i) {
                if (spf_[j] == 0) spf_[j] = i;
            }
        }
    }

    std::vector<std::uint32_t> spf_;
};

}  // namespace stiff
