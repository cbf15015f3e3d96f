#pragma once

#include "stiff/polynomial.hpp"
#include "stiff/quad_surd.hpp"
#include "stiff/rational.hpp"
#include "stiff/roots.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiff {

/// alpha = (D - 3) / 2 for sphere dimension D.
inline Rational gegenbauer_alpha(long sphere_dim) { return Rational(BigInt(sphere_dim - 3), BigInt(2)); }

inline void require_sphere_dim(long sphere_dim) {
    if (sphere_dim < 3) throw std::invalid_argument("sphere dimension must be at least 3, got " + std::to_string(sphere_dim));
}

/// P_0 .. P_n of the Jacobi family P^(alpha,alpha), normalized by
/// P_i(1) = binom(i + alpha, i), built with the three-term recurrence.
inline std::vector<RatPoly> jacobi_polys(long n, long sphere_dim) {
    require_sphere_dim(sphere_dim);
    if (n < 0) throw std::invalid_argument("jacobi_polys: negative degree");
    const Rational a = gegenbauer_alpha(sphere_dim);
    std::vector<RatPoly> p;
    p.push_back(RatPoly::constant(Rational(1)));
    if (n >= 1) p.push_back(RatPoly::monomial(a + Rational(1), 1));
    for (long k = 2; k <= n; ++k) {
        const Rational kk(k);
        // 2k(k+2a)(2k+2a-2) P_k = (2k+2a-1)(2k+2a)(2k+2a-2) x P_{k-1} - 2(k+a-1)^2 (2k+2a) P_{k-2}
        const Rational s = Rational(2) * kk + Rational(2) * a;  // 2k + 2a
        const Rational lhs = Rational(2) * kk * (kk + Rational(2) * a) * (s - Rational(2));
        const Rational cx = (s - Rational(1)) * s * (s - Rational(2)) / lhs;
        const Rational cm = Rational(2) * (kk + a - Rational(1)) * (kk + a - Rational(1)) * s / lhs;
        p.push_back(RatPoly::x() * p[static_cast<std::size_t>(k - 1)] * cx - p[static_cast<std::size_t>(k - 2)] * cm);
    }
    return p;
}

inline RatPoly jacobi_poly(long n, long sphere_dim) { return jacobi_polys(n, sphere_dim).back(); }

/// h_0 / h_i, telescoped from h_j / h_{j-1} = (2j+2a-1)/(2j+2a+1) * (j+a)^2 / (j (j+2a)).
inline Rational norm_ratio(long i, long sphere_dim) {
    require_sphere_dim(sphere_dim);
    if (i < 0) throw std::invalid_argument("norm_ratio: negative index");
    const Rational a = gegenbauer_alpha(sphere_dim);
    Rational r(1);
    for (long j = 1; j <= i; ++j) {
        const Rational jj(j);
        const Rational two_ja = Rational(2) * jj + Rational(2) * a;
        r *= (two_ja + Rational(1)) / (two_ja - Rational(1));
        r *= jj * (jj + Rational(2) * a) / ((jj + a) * (jj + a));
    }
    return r;
}

/// Normalized even moment (1/h_0) int x^(2j) (1-x^2)^alpha dx = (2j-1)!! / (D (D+2) ... (D+2j-2)).
inline Rational moment(long j, long sphere_dim) {
    require_sphere_dim(sphere_dim);
    if (j < 0) throw std::invalid_argument("moment: negative index");
    Rational r(1);
    for (long i = 1; i <= j; ++i) r *= Rational(BigInt(2 * i - 1), BigInt(sphere_dim + 2 * i - 2));
    return r;
}

/// Even polynomials Q_i with Q_i(x^2) = (h_0/h_i) P_i(x)^2, summed for i < n:
/// the Christoffel function K_n(x, x) as a polynomial in x^2.
inline RatPoly christoffel_function_in_square(long n, long sphere_dim) {
    if (n < 1) throw std::invalid_argument("christoffel function needs n >= 1");
    const auto p = jacobi_polys(n - 1, sphere_dim);
    RatPoly k;
    for (long i = 0; i < n; ++i) {
        const RatPoly& pi = p[static_cast<std::size_t>(i)];
        k += (pi * pi).even_part_in_square() * norm_ratio(i, sphere_dim);
    }
    return k;
}

/// lambda^-1 = sum_{i<n} (h_0/h_i) P_i(x)^2 evaluated through x^2 = xsq.
/// Equals the inverse Christoffel number when xsq is a squared zero of P_n.
inline Rational christoffel_inverse_at_xsq(long n, long sphere_dim, const Rational& xsq) {
    if (xsq.sign() < 0) throw std::invalid_argument("christoffel_inverse_at_xsq: negative x^2");
    return christoffel_function_in_square(n, sphere_dim)(xsq);
}

/// One Gauss-Gegenbauer node with its Christoffel number.
struct ChristoffelEntry {
    Rational node;                     // exact, or within the requested precision
    std::optional<Rational> node_sq;   // exact square when known
    Rational lambda;                   // exact when `exact`, otherwise approximate
    bool exact = false;
};

struct ChristoffelSet {
    long degree = 0;
    long sphere_dim = 0;
    int precision = 0;
    std::vector<ChristoffelEntry> entries;  // ascending nodes

    Rational sum() const {
        Rational s;
        for (const auto& e : entries) s += e.lambda;
        return s;
    }
};

/// Christoffel numbers of P_n from Sturm-isolated, bisection-refined nodes.
/// Values carry roughly `precision` correct decimal digits.
inline ChristoffelSet christoffel_numbers_numeric(long n, long sphere_dim, int precision = 50) {
    require_sphere_dim(sphere_dim);
    if (n < 1) throw std::invalid_argument("christoffel_numbers_numeric: n must be >= 1");
    ChristoffelSet out;
    out.degree = n;
    out.sphere_dim = sphere_dim;
    out.precision = precision;
    const auto polys = jacobi_polys(n, sphere_dim);
    const RatPoly kfun = christoffel_function_in_square(n, sphere_dim);
    const auto nodes = isolate_real_roots(polys.back(), ten_pow_neg(precision + 12));
    for (const auto& iv : nodes) {
        ChristoffelEntry e;
        e.node = iv.midpoint();
        e.exact = iv.exact();
        if (e.exact) e.node_sq = e.node * e.node;
        e.lambda = kfun(e.node * e.node).inverse();
        out.entries.push_back(e);
    }
    return out;
}

/// Strictly increasing up to the middle, strictly decreasing after it, with
/// the two central values equal when the count is even.
inline bool is_unimodal(const std::vector<Rational>& v, const Rational& tolerance = Rational()) {
    const std::size_t n = v.size();
    if (n <= 1) return true;
    auto less = [&](const Rational& a, const Rational& b) { return b - a > tolerance; };
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i + 1 < half; ++i) {
        if (!less(v[i], v[i + 1])) return false;
    }
    if (n % 2 == 0) {
        if ((v[half - 1] - v[half]).abs() > tolerance) return false;
    } else {
        if (!less(v[half - 1], v[half]) || !less(v[half + 1], v[half])) return false;
    }
    for (std::size_t i = (n % 2 == 0 ? half : half + 1); i + 1 < n; ++i) {
        if (!less(v[i + 1], v[i])) return false;
    }
    return true;
}

/// Squared zeros of P_m for m <= 5 in closed form.
struct ClosedZeros {
    std::vector<QuadSurd> node_sq;  // positive nodes, outermost (largest) first
    bool has_zero_node = false;
};

inline ClosedZeros gegenbauer_zeros_closed(long m, long sphere_dim) {
    require_sphere_dim(sphere_dim);
    const BigInt d = sphere_dim;
    ClosedZeros z;
    switch (m) {
        case 1:
            z.has_zero_node = true;
            break;
        case 2:
            z.node_sq.emplace_back(Rational(BigInt(1), d));
            break;
        case 3:
            z.node_sq.emplace_back(Rational(BigInt(3), d + 2));
            z.has_zero_node = true;
            break;
        case 4: {
            // (3(d+2) +- sqrt(6(d+1)(d+2))) / ((d+2)(d+4))
            const Rational den(BigInt((d + 2) * (d + 4)));
            const BigInt disc = 6 * (d + 1) * (d + 2);
            z.node_sq.push_back(QuadSurd(Rational(BigInt(3 * (d + 2))) / den, Rational(1) / den, disc));
            z.node_sq.push_back(QuadSurd(Rational(BigInt(3 * (d + 2))) / den, Rational(-1) / den, disc));
            break;
        }
        case 5: {
            // (5(d+4) +- sqrt(10(d+1)(d+4))) / ((d+4)(d+6))
            const Rational den(BigInt((d + 4) * (d + 6)));
            const BigInt disc = 10 * (d + 1) * (d + 4);
            z.node_sq.push_back(QuadSurd(Rational(BigInt(5 * (d + 4))) / den, Rational(1) / den, disc));
            z.node_sq.push_back(QuadSurd(Rational(BigInt(5 * (d + 4))) / den, Rational(-1) / den, disc));
            z.has_zero_node = true;
            break;
        }
        default:
            throw std::invalid_argument("closed-form zeros are only available for 1 <= m <= 5");
    }
    return z;
}

/// Christoffel numbers of P_m, m in {2,3,4,5}, in ascending node order.
inline std::vector<QuadSurd> closed_form_christoffel(long m, long sphere_dim) {
    require_sphere_dim(sphere_dim);
    const BigInt d = sphere_dim;
    const auto q = [](const BigInt& v) { return Rational(v); };
    switch (m) {
        case 2:
            return {Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(2))};
        case 3: {
            const QuadSurd outer(Rational(d + 2, 6 * d));
            const QuadSurd mid(Rational(2 * (d - 1), 3 * d));
            return {outer, mid, outer};
        }
        case 4: {
            const Rational den = q(12 * d * (d + 1));
            const BigInt disc = 6 * (d + 1) * (d + 2);
            const QuadSurd outer(q(3 * d * (d + 1)) / den, q(-(d - 2)) / den, disc);
            const QuadSurd inner(q(3 * d * (d + 1)) / den, q(d - 2) / den, disc);
            return {outer, inner, inner, outer};
        }
        case 5: {
            const Rational den = q(60 * d * (d + 1) * (d + 2));
            const BigInt disc = 10 * (d + 1) * (d + 4);
            const Rational base = q((d + 1) * (d + 4) * (7 * d + 2)) / den;
            const Rational tilt = q((d - 2) * (2 * d + 7)) / den;
            const QuadSurd outer(base, -tilt, disc);
            const QuadSurd inner(base, tilt, disc);
            const QuadSurd mid(Rational(8 * (d + 1) * (d - 1), 15 * d * (d + 2)));
            return {outer, inner, mid, inner, outer};
        }
        default:
            throw std::invalid_argument("closed-form Christoffel numbers exist only for m in {2,3,4,5}");
    }
}

/// Floating-point zeros of P_m, ascending, from bisection on the Sturm count
/// of the monic recurrence p_k = x p_{k-1} - beta_k p_{k-2}. Used only to
/// locate roots that are then certified in exact arithmetic.
class GegenbauerZerosApprox {
public:
    GegenbauerZerosApprox(long m, long sphere_dim) : m_(m) {
        require_sphere_dim(sphere_dim);
        const long double d = static_cast<long double>(sphere_dim);
        beta_.resize(static_cast<std::size_t>(std::max<long>(m, 1)));
        for (long k = 1; k < m; ++k) {
            const long double kk = static_cast<long double>(k);
            beta_[static_cast<std::size_t>(k)] = kk * (kk + d - 3) / ((2 * kk + d - 2) * (2 * kk + d - 4));
        }
    }

    /// Number of zeros strictly below x.
    long count_below(long double x) const {
        long neg = 0;
        long double q = x;
        for (long k = 0; k < m_; ++k) {
            if (k > 0) {
                const long double prev = q == 0 ? 1e-4000L : q;
                q = x - beta_[static_cast<std::size_t>(k)] / prev;
            }
            if (q < 0) ++neg;
        }
        return m_ - neg;
    }

    /// The k-th smallest zero (0-based).
    long double zero(long k) const {
        long double lo = -1, hi = 1;
        for (int it = 0; it < 200 && hi - lo > 0; ++it) {
            const long double mid = (lo + hi) / 2;
            if (mid == lo || mid == hi) break;
            if (count_below(mid) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return (lo + hi) / 2;
    }

    long degree() const { return m_; }

private:
    long m_;
    std::vector<long double> beta_;
};

}  // namespace stiff
