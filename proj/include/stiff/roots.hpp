#pragma once

#include "stiff/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stiff {

/// Closed interval [lo, hi]; lo == hi marks an exactly located root.
struct RootInterval {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// Sturm chain of a polynomial, each member scaled to a primitive integer
/// polynomial by a positive factor (which leaves every sign unchanged).
class SturmChain {
public:
    explicit SturmChain(const RatPoly& p) {
        if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
        RatPoly a = p;
        RatPoly b = p.derivative();
        push(a);
        while (!b.is_zero()) {
            push(b);
            RatPoly r = -a.divmod(b).second;
            a = std::move(b);
            b = normalized(r);
        }
    }

    /// Sign variations of the chain at x.
    int variations(const Rational& x) const {
        int count = 0;
        int prev = 0;
        for (const auto& c : chain_) {
            const int s = intpoly::sign_at(c, x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    /// Sign variations as x -> +inf (at_plus) or -inf.
    int variations_at_infinity(bool at_plus) const {
        int count = 0;
        int prev = 0;
        for (const auto& c : chain_) {
            int s = sgn(c.back());
            if (!at_plus && (c.size() - 1) % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    /// Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

    const std::vector<BigInt>& base() const { return chain_.front(); }

private:
    static RatPoly normalized(const RatPoly& r) {
        if (r.is_zero()) return r;
        std::vector<Rational> c;
        for (const auto& v : r.primitive_integer()) c.emplace_back(v);
        // primitive_integer scales by a positive factor; keep it that way.
        return RatPoly(std::move(c));
    }
    void push(const RatPoly& p) { chain_.push_back(p.primitive_integer()); }

    std::vector<std::vector<BigInt>> chain_;
};

/// Cauchy bound: every real root lies strictly inside (-B, B).
inline Rational cauchy_bound(const RatPoly& p) {
    Rational m;
    const Rational lead = p.leading().abs();
    for (long i = 0; i < p.degree(); ++i) {
        const Rational r = p.coeff(static_cast<std::size_t>(i)).abs() / lead;
        if (r > m) m = r;
    }
    return m + Rational(1);
}

namespace detail {

inline void isolate_rec(const SturmChain& s, const std::vector<BigInt>& base, const Rational& a, const Rational& b,
                        int n, std::vector<RootInterval>& out) {
    if (n == 0) return;
    if (n == 1) {
        // Root in (a, b]; pin it down when it sits on b.
        if (intpoly::sign_at(base, b) == 0) {
            out.push_back({b, b});
        } else {
            out.push_back({a, b});
        }
        return;
    }
    const Rational m = (a + b) / Rational(2);
    const int left = s.count(a, m);
    isolate_rec(s, base, a, m, left, out);
    isolate_rec(s, base, m, b, n - left, out);
}

}  // namespace detail

/// Refine an isolating interval of a squarefree polynomial until its width
/// is at most `width` (or the root is hit exactly).
inline RootInterval refine(const std::vector<BigInt>& base, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    int slo = intpoly::sign_at(base, iv.lo);
    int shi = intpoly::sign_at(base, iv.hi);
    if (shi == 0) return {iv.hi, iv.hi};
    if (slo == 0) {
        // The left endpoint belongs to a neighbouring root; step off it.
        throw std::logic_error("refine: interval endpoint is a root");
    }
    while (iv.width() > width) {
        const Rational m = iv.midpoint();
        const int sm = intpoly::sign_at(base, m);
        if (sm == 0) return {m, m};
        if (sm == slo) {
            iv.lo = m;
        } else {
            iv.hi = m;
            shi = sm;
        }
    }
    return iv;
}

/// Disjoint isolating intervals, one per distinct real root, ascending.
/// Non-exact intervals have non-root endpoints with opposite signs.
inline std::vector<RootInterval> isolate_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    if (p.degree() == 0) return {};
    const SturmChain s(p);
    const auto& base = s.base();
    const Rational bound = cauchy_bound(p);
    std::vector<RootInterval> raw;
    detail::isolate_rec(s, base, -bound, bound, s.count(-bound, bound), raw);
    // Make endpoints root-free: an interval (a, b] whose a is a root of the
    // previous interval is shrunk from the left.
    for (auto& iv : raw) {
        if (iv.exact()) continue;
        while (intpoly::sign_at(base, iv.lo) == 0) {
            const Rational m = iv.midpoint();
            const int sm = intpoly::sign_at(base, m);
            if (sm == 0) {
                iv = {m, m};
                break;
            }
            if (s.count(iv.lo, m) == 1) {
                iv.hi = m;
            } else {
                iv.lo = m;
            }
        }
    }
    // Neighbours may still share a non-root endpoint; pull the left one in.
    for (std::size_t i = 1; i < raw.size(); ++i) {
        auto& prev = raw[i - 1];
        while (!prev.exact() && prev.hi >= raw[i].lo) {
            const Rational m = prev.midpoint();
            const int sm = intpoly::sign_at(base, m);
            if (sm == 0) {
                prev = {m, m};
            } else if (sm == intpoly::sign_at(base, prev.lo)) {
                prev.lo = m;
            } else {
                prev.hi = m;
            }
        }
    }
    return raw;
}

/// Refine every interval to at most the given width.
inline std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rational& width) {
    auto ivs = isolate_real_roots(p);
    const auto base = p.primitive_integer();
    for (auto& iv : ivs) iv = refine(base, iv, width);
    return ivs;
}

/// Why a polynomial failed to split into allowed rational roots.
struct IrrationalWitness {
    enum class Kind { NoAllowedCandidate, NonRealRoots, DisallowedDenominator };
    Kind kind = Kind::NoAllowedCandidate;
    /// An interval holding a root but no allowed candidate (unset for NonRealRoots).
    std::optional<RootInterval> interval;
    int real_root_count = 0;
    std::string describe() const {
        switch (kind) {
            case Kind::NonRealRoots:
                return "only " + std::to_string(real_root_count) + " distinct real roots";
            case Kind::DisallowedDenominator:
                return "rational root " + interval->lo.str() + " has a disallowed denominator";
            case Kind::NoAllowedCandidate:
            default:
                return "root in [" + interval->lo.str() + ", " + interval->hi.str() +
                       "] with no allowed rational candidate";
        }
    }
};

struct AllRational {
    std::vector<Rational> roots;  // ascending, one per root (roots are simple)
};

using RootReport = std::variant<AllRational, IrrationalWitness>;

/// Decide whether a monic squarefree polynomial splits into rational roots
/// whose denominators all belong to `allowed_denominators`.
inline RootReport rational_roots(const RatPoly& p, const std::set<long>& allowed_denominators) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    if (!p.is_monic()) throw std::invalid_argument("rational_roots: polynomial is not monic");
    if (allowed_denominators.empty()) throw std::invalid_argument("rational_roots: no allowed denominators");
    if (p.degree() == 0) return AllRational{};
    BigInt l = 1;
    for (long q : allowed_denominators) {
        if (q < 1) throw std::invalid_argument("rational_roots: denominators must be positive");
        l = lcm(l, BigInt(q));
    }
    auto allowed = [&](const BigInt& den) { return den.fits_slong_p() && allowed_denominators.count(den.get_si()) > 0; };

    const SturmChain s(p);
    const auto& base = s.base();
    const int real = s.count_all();
    if (real < p.degree()) {
        IrrationalWitness w;
        w.kind = IrrationalWitness::Kind::NonRealRoots;
        w.real_root_count = real;
        return w;
    }
    const Rational step(BigInt(1), l);
    std::vector<Rational> roots;
    for (RootInterval iv : isolate_real_roots(p)) {
        if (!iv.exact()) iv = refine(base, iv, step / Rational(2));
        if (iv.exact()) {
            if (!allowed(iv.lo.den())) {
                IrrationalWitness w;
                w.kind = IrrationalWitness::Kind::DisallowedDenominator;
                w.interval = iv;
                return w;
            }
            roots.push_back(iv.lo);
            continue;
        }
        // Width <= 1/(2L): at most one grid point k/L inside.
        const BigInt k = (iv.lo * Rational(l)).ceil();
        const Rational g(k, l);
        if (g > iv.hi || !allowed(g.den()) || intpoly::sign_at(base, g) != 0) {
            // Shrink until the grid point (if any) is outside the interval.
            while (iv.contains(g)) {
                const Rational m = iv.midpoint();
                const int sm = intpoly::sign_at(base, m);
                if (sm == 0) {
                    iv = {m, m};
                    break;
                }
                if (sm == intpoly::sign_at(base, iv.lo)) {
                    iv.lo = m;
                } else {
                    iv.hi = m;
                }
            }
            IrrationalWitness w;
            w.interval = iv;
            if (iv.exact()) {
                w.kind = IrrationalWitness::Kind::DisallowedDenominator;
            }
            return w;
        }
        roots.push_back(g);
    }
    return AllRational{roots};
}

}  // namespace stiff
