#pragma once

#include "stiff/bigint.hpp"
#include "stiff/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stiff {

/// Element a + b*sqrt(D) of Z[sqrt(D)].
struct QuadInt {
    BigInt a;
    BigInt b;
    BigInt D;

    BigInt norm() const { return a * a - D * b * b; }
    QuadInt conjugate() const { return {a, -b, D}; }
    QuadInt operator-() const { return {-a, -b, D}; }

    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        if (x.D != y.D) throw std::invalid_argument("QuadInt: mixed radicands");
        return {x.a * y.a + x.D * x.b * y.b, x.a * y.b + x.b * y.a, x.D};
    }
    friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a == y.a && x.b == y.b && x.D == y.D; }

    QuadInt pow(unsigned long e) const {
        QuadInt result{1, 0, D}, base = *this;
        while (e > 0) {
            if (e & 1UL) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    /// x / y when the quotient lies in Z[sqrt(D)].
    static std::optional<QuadInt> divide(const QuadInt& x, const QuadInt& y) {
        const BigInt n = y.norm();
        if (n == 0) throw std::domain_error("QuadInt: division by zero");
        const QuadInt t = x * y.conjugate();
        if (!divides(n, t.a) || !divides(n, t.b)) return std::nullopt;
        return QuadInt{BigInt(t.a / n), BigInt(t.b / n), x.D};
    }

    std::string str() const {
        if (b == 0) return a.get_str();
        std::string s = a == 0 ? "" : a.get_str();
        const BigInt ab = abs(b);
        if (a == 0) {
            s += b < 0 ? "-" : "";
        } else {
            s += b < 0 ? "-" : "+";
        }
        if (ab != 1) s += ab.get_str() + "*";
        return s + "sqrt(" + D.get_str() + ")";
    }
};

struct UnitElement {
    BigInt a;
    BigInt b;
    BigInt D;
    int norm = 1;

    QuadInt value() const { return {a, b, D}; }
    std::string str() const { return value().str(); }
};

struct PellSolution {
    BigInt x;
    BigInt y;
    BigInt D;
    BigInt M;

    QuadInt value() const { return {x, y, D}; }
    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

/// Smallest unit > 1 of Z[sqrt(D)], from the continued fraction of sqrt(D).
inline UnitElement fundamental_unit(const BigInt& D) {
    if (D <= 1) throw std::invalid_argument("fundamental_unit: D must exceed 1");
    const BigInt a0 = floor_sqrt(D);
    if (a0 * a0 == D) throw std::invalid_argument("fundamental_unit: D is a perfect square");
    BigInt m = 0, d = 1, a = a0;
    BigInt p_prev = 1, p = a0, q_prev = 0, q = 1;
    for (;;) {
        const BigInt nrm = p * p - D * q * q;
        if (nrm == 1 || nrm == -1) return {p, q, D, nrm == 1 ? 1 : -1};
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        BigInt pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
}

/// Smallest norm-one unit > 1: the fundamental unit, or its square when its norm is -1.
inline QuadInt norm_one_generator(const UnitElement& u) {
    const QuadInt v = u.value();
    return u.norm == 1 ? v : v * v;
}

/// Two solutions of x^2 - D y^2 = M are associated when one is a unit multiple of the other.
inline bool associated(const QuadInt& x, const QuadInt& y) { return QuadInt::divide(x, y).has_value(); }

struct PellBox {
    BigInt x_bound;
    BigInt y_bound;
};

/// Search box covering one solution in every association class: the larger of the
/// unit-size box |x| <= (u_1 + |M|)/2 and the classical fundamental-solution bound.
inline PellBox pell_box(const UnitElement& unit, const BigInt& M) {
    const BigInt absM = abs(M);
    const BigInt u1_up = unit.a + floor_sqrt(unit.b * unit.b * unit.D) + 1;
    PellBox box;
    box.x_bound = (u1_up + absM) / 2;
    box.y_bound = floor_sqrt(box.x_bound * box.x_bound / unit.D) + 1;
    const QuadInt g = norm_one_generator(unit);
    const BigInt denom = M > 0 ? BigInt(2 * (g.a + 1)) : BigInt(2 * (g.a - 1));
    if (denom > 0) {
        const BigInt classical = floor_sqrt(g.b * g.b * absM / denom) + 1;
        box.y_bound = std::max<BigInt>(box.y_bound, classical);
        box.x_bound = std::max<BigInt>(box.x_bound, floor_sqrt(absM + unit.D * classical * classical) + 1);
    }
    return box;
}

/// One solution of x^2 - D y^2 = M per association class, with x >= 0 and the
/// smallest |y| found in the search box.
inline std::vector<PellSolution> pell_representatives(const BigInt& D, const BigInt& M) {
    if (M == 0) throw std::invalid_argument("pell_representatives: M must be nonzero");
    const UnitElement unit = fundamental_unit(D);
    const PellBox box = pell_box(unit, M);

    std::vector<QuadInt> found;
    for (BigInt y = -box.y_bound; y <= box.y_bound; ++y) {
        const BigInt t = M + D * y * y;
        if (t < 0) continue;
        const auto r = is_perfect_square(t);
        if (!r) continue;
        found.push_back({*r, y, D});
        if (*r != 0) found.push_back({BigInt(-*r), y, D});
    }
    auto better = [](const QuadInt& u, const QuadInt& v) {
        if ((u.a >= 0) != (v.a >= 0)) return u.a >= 0;
        const BigInt au = abs(u.b), av = abs(v.b);
        if (au != av) return au < av;
        return u.b > v.b;
    };
    std::vector<QuadInt> reps;
    for (const auto& s : found) {
        bool placed = false;
        for (auto& r : reps) {
            if (associated(s, r)) {
                if (better(s, r)) r = s;
                placed = true;
                break;
            }
        }
        if (!placed) reps.push_back(s);
    }
    std::sort(reps.begin(), reps.end(), [](const QuadInt& u, const QuadInt& v) {
        if (u.a != v.a) return u.a < v.a;
        return u.b > v.b;
    });
    std::vector<PellSolution> out;
    for (const auto& r : reps) out.push_back({r.a, r.b, D, M});
    return out;
}

/// First `count` elements rep * g^k, k = 0, 1, ..., of an orbit under the norm-one generator.
inline std::vector<QuadInt> pell_orbit(const PellSolution& rep, const UnitElement& unit, std::size_t count) {
    const QuadInt g = norm_one_generator(unit);
    std::vector<QuadInt> out;
    QuadInt cur = rep.value();
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(cur);
        cur = cur * g;
    }
    return out;
}

namespace detail {

inline void check_m4_dim(const BigInt& d) {
    if (!is_perfect_square(6 * (d + 1) * (d + 2))) throw std::logic_error("m = 4 stream produced a non-square");
}

inline void check_m5_dim(const BigInt& d) {
    if (!is_perfect_square(10 * (d + 1) * (d + 4))) throw std::logic_error("m = 5 stream produced a non-square");
}

// x = 6d + 9 runs over the traces of 3 (5 + 2 sqrt 6)^l.
template <typename Stop>
std::vector<BigInt> m4_stream(Stop&& stop) {
    const QuadInt u{5, 2, 6};
    std::vector<BigInt> out;
    QuadInt cur = u * u;
    for (;;) {
        const BigInt d = (cur.a - 3) / 2;
        if (stop(d, out.size())) break;
        check_m4_dim(d);
        out.push_back(d);
        cur = cur * u;
    }
    return out;
}

// x~ = 2d + 5 over three orbits of x^2 - 10 y^2 = 9.
template <typename Stop>
std::vector<BigInt> m5_stream(Stop&& stop) {
    const QuadInt g{19, 6, 10};
    const QuadInt starts[3] = {QuadInt{3, 0, 10} * g, QuadInt{7, 2, 10}, QuadInt{7, -2, 10}};
    QuadInt cur[3] = {starts[0], starts[1], starts[2]};
    auto dim = [](const QuadInt& q) { return BigInt((q.a - 5) / 2); };
    for (auto& c : cur) {
        while (dim(c) < 3) c = c * g;
    }
    std::vector<BigInt> out;
    for (;;) {
        int best = 0;
        for (int i = 1; i < 3; ++i) {
            if (dim(cur[i]) < dim(cur[best])) best = i;
        }
        const BigInt d = dim(cur[best]);
        if (stop(d, out.size())) break;
        check_m5_dim(d);
        out.push_back(d);
        cur[best] = cur[best] * g;
    }
    return out;
}

}  // namespace detail

/// Sphere dimensions D >= 3 with 6(D+1)(D+2) a square, ascending.
inline std::vector<BigInt> dims_for_m4(std::size_t count) {
    return detail::m4_stream([&](const BigInt&, std::size_t have) { return have >= count; });
}

inline std::vector<BigInt> dims_for_m4_up_to(const BigInt& limit) {
    return detail::m4_stream([&](const BigInt& d, std::size_t) { return d > limit; });
}

/// Sphere dimensions D >= 3 with 10(D+1)(D+4) a square, ascending.
inline std::vector<BigInt> dims_for_m5(std::size_t count) {
    return detail::m5_stream([&](const BigInt&, std::size_t have) { return have >= count; });
}

inline std::vector<BigInt> dims_for_m5_up_to(const BigInt& limit) {
    return detail::m5_stream([&](const BigInt& d, std::size_t) { return d > limit; });
}

// Bounded search for A y^2 - B x^3 = 2

struct MordellCandidate {
    long A = 0;
    long B = 0;
    long m = 0;
    long x_bound = 0;
    std::vector<std::pair<BigInt, BigInt>> solutions;  // (x, y), y >= 0
    /// d = A y^2 - 4n + 3 + (-1)^(m-1), kept when d >= 3.
    std::vector<BigInt> derived_dims;
    /// Sphere dimensions handed to the existence test: the formula above, the value
    /// obtained from h + 2(n - 2) = A y^2 with h = d' + 2n + 2*eps, and both shifted by 2.
    std::vector<BigInt> dims_to_check;
    bool incomplete_beyond_bound = true;
};

inline std::vector<long> mordell_a_values() {
    std::vector<long> out;
    for (int mask = 0; mask < 16; ++mask) {
        long v = 1;
        const long primes[4] = {2, 3, 5, 7};
        for (int i = 0; i < 4; ++i) {
            if (mask & (1 << i)) v *= primes[i];
        }
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<long> mordell_b_values() {
    std::vector<long> out;
    for (int e2 = 0; e2 <= 2; ++e2)
        for (int e3 = 0; e3 <= 2; ++e3)
            for (int e5 = 0; e5 <= 2; ++e5)
                for (int e7 = 0; e7 <= 2; ++e7) {
                    long v = 1;
                    for (int i = 0; i < e2; ++i) v *= 2;
                    for (int i = 0; i < e3; ++i) v *= 3;
                    for (int i = 0; i < e5; ++i) v *= 5;
                    for (int i = 0; i < e7; ++i) v *= 7;
                    out.push_back(v);
                }
    std::sort(out.begin(), out.end());
    return out;
}

struct ABPair {
    long A;
    long B;
    friend bool operator==(const ABPair&, const ABPair&) = default;
};

struct ABCandidates {
    std::vector<ABPair> pairs;
    std::vector<long> a_values;
    std::vector<long> b_values;
    std::optional<std::string> warning;
};

/// Every (A, B) pair for m in 6..11; for m = 11 the prime bound 2n + 1 = 11 exceeds 7
/// and the grid is no longer exhaustive.
inline ABCandidates mordell_ab_candidates(long m) {
    if (m < 6 || m > 11) throw std::invalid_argument("mordell_ab_candidates: m must lie in 6..11");
    ABCandidates c;
    c.a_values = mordell_a_values();
    c.b_values = mordell_b_values();
    for (long a : c.a_values)
        for (long b : c.b_values) c.pairs.push_back({a, b});
    if (m == 11) c.warning = "m = 11 admits the prime 11 in A and B; the {2,3,5,7} grid is not exhaustive";
    return c;
}

namespace detail {

using u128 = unsigned __int128;

inline bool u128_square_root(u128 v, u128& root) {
    // Quadratic-residue filters before the exact check.
    const unsigned r64 = static_cast<unsigned>(v & 63U);
    if (!((0x0202021202030213ULL >> r64) & 1ULL)) return false;
    long double s = std::sqrt(static_cast<long double>(v));
    u128 r = static_cast<u128>(s);
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    root = r;
    return r * r == v;
}

inline BigInt to_big(u128 v) {
    BigInt hi = static_cast<unsigned long>(v >> 64), lo = static_cast<unsigned long>(v);
    return (hi << 64) + lo;
}

}  // namespace detail

/// All solutions of A y^2 - B x^3 = 2 with -x_bound <= x <= x_bound (y >= 0).
inline MordellCandidate bounded_mordell_search(long A, long B, long m, long x_bound) {
    if (x_bound < 1) throw std::invalid_argument("bounded_mordell_search: x_bound must be positive");
    if (A < 1 || B < 1) throw std::invalid_argument("bounded_mordell_search: A and B must be positive");
    if (x_bound > 1000000000L) throw std::invalid_argument("bounded_mordell_search: x_bound too large");
    MordellCandidate c;
    c.A = A;
    c.B = B;
    c.m = m;
    c.x_bound = x_bound;
    using detail::u128;
    // A y^2 = 2 + B x^3 >= 0 rules out every x <= -2.
    for (long x = -1; x <= x_bound; ++x) {
        u128 v = 0;
        if (x < 0) {
            if (B > 2) continue;
            v = static_cast<u128>(2 - B);
        } else {
            const u128 ux = static_cast<u128>(x);
            v = static_cast<u128>(B) * ux * ux * ux + 2;
        }
        if (v % static_cast<u128>(A) != 0) continue;
        u128 root = 0;
        if (!detail::u128_square_root(v / static_cast<u128>(A), root)) continue;
        c.solutions.emplace_back(BigInt(x), detail::to_big(root));
    }
    const long n = m / 2;
    const long sgn = (m - 1) % 2 == 0 ? 1 : -1;
    std::vector<BigInt> check;
    for (const auto& [x, y] : c.solutions) {
        const BigInt ay2 = BigInt(A) * y * y;
        const BigInt d_formula = ay2 - 4 * n + 3 + sgn;
        const BigInt bd = ay2 - 4 * n + 3 - sgn;  // d' from h + 2(n - 2) = A y^2
        if (d_formula >= 3) c.derived_dims.push_back(d_formula);
        for (const BigInt& cand : {d_formula, BigInt(d_formula + 2), bd, BigInt(bd + 2)}) {
            if (cand >= 3) check.push_back(cand);
        }
    }
    std::sort(c.derived_dims.begin(), c.derived_dims.end());
    c.derived_dims.erase(std::unique(c.derived_dims.begin(), c.derived_dims.end()), c.derived_dims.end());
    std::sort(check.begin(), check.end());
    check.erase(std::unique(check.begin(), check.end()), check.end());
    c.dims_to_check = std::move(check);
    return c;
}

/// Runs the bounded search over every (A, B) pair of the grid; the result is
/// ordered by (A, B) regardless of the worker count.
inline std::vector<MordellCandidate> mordell_sweep(long m, long x_bound, unsigned workers) {
    const auto grid = mordell_ab_candidates(m);
    return parallel_map<MordellCandidate>(grid.pairs.size(), workers, [&](std::size_t i) {
        return bounded_mordell_search(grid.pairs[i].A, grid.pairs[i].B, m, x_bound);
    });
}

}  // namespace stiff
