#pragma once

#include "stiff/factor.hpp"
#include "stiff/gegenbauer.hpp"
#include "stiff/newton_polygon.hpp"
#include "stiff/polynomial.hpp"
#include "stiff/roots.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stiff {

/// Parameters of S_m(X) for configurations in S^{D-1}; bd_param is D - 2.
struct BDParams {
    long m = 0;
    long n = 0;
    BigInt sphere_dim;
    BigInt bd_param;
    BigInt h;

    static BDParams make(long m, const BigInt& sphere_dim) {
        if (m < 1) throw std::invalid_argument("m must be at least 1");
        if (sphere_dim < 2) throw std::invalid_argument("sphere dimension must be at least 2");
        BDParams p;
        p.m = m;
        p.n = m / 2;
        p.sphere_dim = sphere_dim;
        p.bd_param = sphere_dim - 2;
        p.h = p.bd_param + 2 * p.n + (m % 2 != 0 ? 2 : 0);
        return p;
    }
    static BDParams make(long m, long sphere_dim) { return make(m, BigInt(sphere_dim)); }

    bool odd() const { return m % 2 != 0; }
    long eps() const { return odd() ? 1 : 0; }
    /// Roots of S_m are integers (even m) or k/3 (odd m); scaling X by this makes them integers.
    long root_scale() const { return odd() ? 3 : 1; }
    bool dim_fits_long() const { return sphere_dim.fits_slong_p() && h.fits_slong_p(); }
    long dim() const { return to_int64(sphere_dim); }
};

namespace detail {

/// u_r / u_{r-1} = (n - r + 1)(h + 2r - 2) / (r (2r - 1 + 2 eps)).
inline Rational coefficient_step(const BDParams& p, long r) {
    BigInt num = BigInt(p.n - r + 1) * (p.h + 2 * r - 2);
    BigInt den = BigInt(r) * BigInt(2 * r - 1 + 2 * p.eps());
    return Rational(num, den);
}

inline bool denominator_allowed(const BigInt& den, bool odd_m) {
    if (den == 1) return true;
    return odd_m && strip_factor(den, 3) == 1;
}

inline BigInt offending_prime(const BigInt& den, bool odd_m) {
    BigInt rest = odd_m ? strip_factor(den, 3) : den;
    const auto f = FactoredInteger::factor(rest);
    return f.factors().begin()->first;
}

}  // namespace detail

/// u_1 .. u_n of S_m(X) = X^n + sum (-1)^r u_r X^{n-r}.
inline std::vector<Rational> bd_coefficients(const BDParams& p) {
    if (p.m < 2 || p.sphere_dim < 3) throw std::invalid_argument("bd_coefficients needs m >= 2 and D >= 3");
    std::vector<Rational> u;
    u.reserve(static_cast<std::size_t>(p.n));
    Rational cur(1);
    for (long r = 1; r <= p.n; ++r) {
        cur *= detail::coefficient_step(p, r);
        u.push_back(cur);
    }
    return u;
}

inline Rational bd_coefficient(const BDParams& p, long r) {
    if (r < 0 || r > p.n) throw std::out_of_range("coefficient index out of range");
    Rational cur(1);
    for (long i = 1; i <= r; ++i) cur *= detail::coefficient_step(p, i);
    return cur;
}

/// u_n for even D as 2^{2n} * rest; rest is a product of K - 1 small ratios
/// with K = D/2 - 1 + eps. Works for n far beyond machine range.
struct TopCoefficient {
    BigInt n;
    Rational rest;

    /// Denominator of u_n in lowest terms (always odd).
    BigInt denominator() const { return odd_part(rest.den()); }
    Rational value() const {
        const BigInt two_n = 2 * n;
        if (!two_n.fits_ulong_p()) throw std::overflow_error("u_n too large to expand");
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, two_n.get_ui());
        return rest * Rational(scale);
    }
};

inline TopCoefficient top_coefficient_even_dim(const BigInt& n, long sphere_dim, bool odd_m) {
    if (sphere_dim < 4 || sphere_dim % 2 != 0) throw std::invalid_argument("closed form needs even D >= 4");
    const long K = (sphere_dim - 2) / 2 + (odd_m ? 1 : 0);
    Rational rest(1);
    BigInt num = 1, den = 1;
    for (long i = 1; i <= K - 1; ++i) {
        num *= 2 * n + i;
        den *= n + i;
    }
    if (odd_m) den *= 2 * n + 1;
    return {n, Rational(num, den)};
}

/// Denominator of u_{n-1} given u_n in closed form.
inline BigInt second_coefficient_denominator(const TopCoefficient& top, long sphere_dim, bool odd_m) {
    const long eps = odd_m ? 1 : 0;
    const BigInt h = BigInt(sphere_dim - 2) + 2 * top.n + 2 * eps;
    const Rational ratio(top.n * (2 * top.n - 1 + 2 * eps), h + 2 * top.n - 2);
    return odd_part((top.rest * ratio).den());
}

/// The constant term for d' = 2k written with floor expressions of k;
/// equal to u_n^- (checked in tests).
inline Rational top_coefficient_floor_form(long n, long k) {
    if (k < 2) throw std::invalid_argument("floor form needs k >= 2");
    const long a = (k - 1) / 2, b = k / 2;
    BigInt two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(2 * n + a));
    BigInt num = two, den = 1;
    for (long j = 1; j <= b; ++j) {
        num *= 2 * n + 2 * j - 1;
        den *= n + a + j;
    }
    return Rational(num, den);
}

inline RatPoly s_poly(const BDParams& p) {
    const auto u = bd_coefficients(p);
    std::vector<Rational> c(static_cast<std::size_t>(p.n + 1));
    c[static_cast<std::size_t>(p.n)] = Rational(1);
    for (long r = 1; r <= p.n; ++r) {
        const Rational& ur = u[static_cast<std::size_t>(r - 1)];
        c[static_cast<std::size_t>(p.n - r)] = (r % 2 == 0) ? ur : -ur;
    }
    return RatPoly(c);
}

// Witness kinds

struct NonIntegerCoefficient {
    long r = 0;
    std::optional<Rational> value;
    BigInt prime;

    std::string describe() const {
        std::ostringstream os;
        os << "u_" << r;
        if (value) os << " = " << value->str();
        os << " has " << prime.get_str() << " in its denominator";
        return os.str();
    }
};

struct IrrationalRoot {
    RootInterval interval;  // in X
    std::string reason;

    std::string describe() const {
        return "S_m has a root in (" + interval.lo.str() + ", " + interval.hi.str() + ") that is not admissible: " +
               reason;
    }
};

struct NonIntegerSlope {
    BigInt prime;
    Rational slope;
    std::vector<std::pair<long, long>> vertices;

    std::string describe() const {
        return "Newton polygon at p = " + prime.get_str() + " has slope " + slope.str();
    }
};

struct BoundExceeded {
    std::string theorem;
    std::string detail;

    std::string describe() const { return theorem + ": " + detail; }
};

using Witness = std::variant<NonIntegerCoefficient, IrrationalRoot, NonIntegerSlope, BoundExceeded>;

inline std::string witness_kind(const Witness& w) {
    switch (w.index()) {
        case 0: return "non_integer_coefficient";
        case 1: return "irrational_root";
        case 2: return "non_integer_slope";
        default: return "bound_exceeded";
    }
}

inline std::string describe(const Witness& w) {
    return std::visit([](const auto& x) { return x.describe(); }, w);
}

struct StiffVerdict {
    enum class Decision { Exists, NotExists };

    Decision decision = Decision::NotExists;
    long m = 0;
    BigInt sphere_dim;
    /// Roots X_i of S_m ascending; node_sq[i] = 1/X_i and root_lambdas[i] is the
    /// weight of each of the two nodes +-1/sqrt(X_i).
    std::vector<Rational> roots;
    std::vector<Rational> node_sq;
    std::vector<Rational> root_lambdas;
    std::optional<Rational> zero_lambda;
    std::optional<Witness> witness;

    bool exists() const { return decision == Decision::Exists; }

    /// All m weights in ascending node order.
    std::vector<Rational> weights() const {
        if (!exists()) return {};
        if (sphere_dim == 2) return std::vector<Rational>(static_cast<std::size_t>(m), Rational(1, m));
        std::vector<Rational> w(root_lambdas.begin(), root_lambdas.end());
        if (zero_lambda) w.push_back(*zero_lambda);
        w.insert(w.end(), root_lambdas.rbegin(), root_lambdas.rend());
        return w;
    }
};

namespace detail {

// Tracks prime valuations of a running product of small factors.
class ValuationLedger {
public:
    ValuationLedger(std::size_t limit, bool odd_m) : val_(limit + 1, 0), odd_(odd_m) {}

    void apply(std::uint32_t v, int sign) {
        SmallPrimeSieve::instance().for_each_prime_power(v, [&](std::uint32_t q, int e) { bump(q, sign * e); });
    }
    bool bad() const { return bad_ > 0; }
    std::uint32_t smallest_bad() const {
        for (std::size_t q = 2; q < val_.size(); ++q) {
            if (is_bad(static_cast<std::uint32_t>(q), val_[q])) return static_cast<std::uint32_t>(q);
        }
        return 0;
    }

private:
    bool is_bad(std::uint32_t q, long v) const { return v < 0 && !(odd_ && q == 3); }
    void bump(std::uint32_t q, long delta) {
        long& v = val_[q];
        const bool was = is_bad(q, v);
        v += delta;
        const bool now = is_bad(q, v);
        bad_ += static_cast<long>(now) - static_cast<long>(was);
    }

    std::vector<long> val_;
    bool odd_;
    long bad_ = 0;
};

inline constexpr long kExactScreenDegree = 64;
inline constexpr long kWitnessValueDegree = 400;
inline constexpr long kClosedFormDim = 4096;

inline NonIntegerCoefficient make_coefficient_witness(const BDParams& p, long r, const BigInt& prime) {
    NonIntegerCoefficient w{r, std::nullopt, prime};
    if (r <= kWitnessValueDegree) w.value = bd_coefficient(p, r);
    return w;
}

inline std::optional<NonIntegerCoefficient> screen_exact(const BDParams& p) {
    const auto u = bd_coefficients(p);
    auto check = [&](long r) -> std::optional<NonIntegerCoefficient> {
        const Rational& v = u[static_cast<std::size_t>(r - 1)];
        if (denominator_allowed(v.den(), p.odd())) return std::nullopt;
        return NonIntegerCoefficient{r, v, offending_prime(v.den(), p.odd())};
    };
    if (auto w = check(p.n)) return w;
    if (p.n >= 2) {
        if (auto w = check(p.n - 1)) return w;
    }
    for (long r = 1; r <= p.n - 2; ++r) {
        if (auto w = check(r)) return w;
    }
    return std::nullopt;
}

}  // namespace detail

/// First coefficient failing the denominator test, in the order u_n, u_{n-1}, u_1, u_2, ...
/// Even m requires integers; odd m allows powers of 3 in the denominator.
inline std::optional<NonIntegerCoefficient> screen_coefficients(const BDParams& p) {
    if (p.m < 2 || p.sphere_dim < 3) throw std::invalid_argument("screen_coefficients needs m >= 2 and D >= 3");
    const bool odd = p.odd();

    // The closed form costs O(D) products, so it only pays off when n is the larger parameter.
    const bool closed_form = p.sphere_dim.fits_slong_p() && p.dim() % 2 == 0 &&
                             (p.n > detail::kExactScreenDegree || p.dim() <= detail::kClosedFormDim);
    if (closed_form) {
        const auto top = top_coefficient_even_dim(BigInt(p.n), p.dim(), odd);
        const BigInt den = top.denominator();
        if (!detail::denominator_allowed(den, odd)) {
            return detail::make_coefficient_witness(p, p.n, detail::offending_prime(den, odd));
        }
        if (p.n >= 2) {
            const BigInt den2 = second_coefficient_denominator(top, p.dim(), odd);
            if (!detail::denominator_allowed(den2, odd)) {
                return detail::make_coefficient_witness(p, p.n - 1, detail::offending_prime(den2, odd));
            }
        }
    }

    const BigInt span = p.h + 2 * p.n + 2;
    if (p.n <= detail::kExactScreenDegree || span >= SmallPrimeSieve::kLimit) return detail::screen_exact(p);

    const long hl = to_int64(p.h);
    detail::ValuationLedger ledger(static_cast<std::size_t>(to_int64(span)), odd);
    long first_bad = 0;
    std::uint32_t first_prime = 0;
    bool bad_prev = false;
    std::uint32_t prime_prev = 0;
    for (long r = 1; r <= p.n; ++r) {
        ledger.apply(static_cast<std::uint32_t>(p.n - r + 1), 1);
        ledger.apply(static_cast<std::uint32_t>(hl + 2 * r - 2), 1);
        ledger.apply(static_cast<std::uint32_t>(r), -1);
        ledger.apply(static_cast<std::uint32_t>(2 * r - 1 + 2 * p.eps()), -1);
        if (r == p.n - 1 && ledger.bad()) {
            bad_prev = true;
            prime_prev = ledger.smallest_bad();
        }
        if (first_bad == 0 && r <= p.n - 2 && ledger.bad()) {
            first_bad = r;
            first_prime = ledger.smallest_bad();
        }
    }
    if (ledger.bad()) return detail::make_coefficient_witness(p, p.n, BigInt(ledger.smallest_bad()));
    if (bad_prev) return detail::make_coefficient_witness(p, p.n - 1, BigInt(prime_prev));
    if (first_bad != 0) return detail::make_coefficient_witness(p, first_bad, BigInt(first_prime));
    return std::nullopt;
}

namespace detail {

inline long small_valuation(long v, long p) {
    long e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

/// ord_p of the coefficients of T(Y) = g^n S(Y/g), descending, from the
/// defining products alone.
inline std::vector<std::optional<long>> scaled_valuations(const BDParams& p, long prime) {
    const long g = p.root_scale();
    const long vg = small_valuation(g, prime);
    const long hl = to_int64(p.h);
    std::vector<std::optional<long>> out;
    out.reserve(static_cast<std::size_t>(p.n + 1));
    out.emplace_back(0L);
    long v = 0;
    for (long r = 1; r <= p.n; ++r) {
        v += small_valuation(p.n - r + 1, prime) + small_valuation(hl + 2 * r - 2, prime) -
             small_valuation(r, prime) - small_valuation(2 * r - 1 + 2 * p.eps(), prime);
        out.emplace_back(v + r * vg);
    }
    return out;
}

}  // namespace detail

/// Newton polygon of T(Y) = g^n S_m(Y/g), the integer-root form of S_m.
inline NewtonPolygon s_newton_polygon(const BDParams& p, long prime) {
    if (!p.h.fits_slong_p()) throw std::invalid_argument("dimension too large for valuation screening");
    return newton_polygon_from_valuations(detail::scaled_valuations(p, prime), BigInt(prime));
}

namespace detail {

inline std::optional<NonIntegerCoefficient> screen_three_scaling(const BDParams& p) {
    if (!p.odd()) return std::nullopt;
    const auto vals = scaled_valuations(p, 3);
    for (long r = 1; r <= p.n; ++r) {
        if (*vals[static_cast<std::size_t>(r)] < 0) return make_coefficient_witness(p, r, BigInt(3));
    }
    return std::nullopt;
}

inline std::optional<NonIntegerSlope> newton_screen(const BDParams& p) {
    for (long prime : {2L, 3L, 5L, 7L}) {
        const auto np = s_newton_polygon(p, prime);
        if (auto s = np.first_non_integer_slope()) return NonIntegerSlope{BigInt(prime), *s, np.vertices};
    }
    return std::nullopt;
}

/// Cases where the screens pass for arbitrarily large n but a counting
/// argument on the constant term rules out admissible roots.
inline std::optional<BoundExceeded> structural_exclusion(const BDParams& p) {
    if (!p.sphere_dim.fits_slong_p()) return std::nullopt;
    const long D = p.dim();
    if (D == 4 && !p.odd() && p.n > 5) {
        return BoundExceeded{"thm-4.4", "u_n = 2^(2n) forces n <= 5 for distinct power-of-two roots"};
    }
    if ((D == 4 || D == 6) && p.odd() && p.n > 10) {
        return BoundExceeded{D == 4 ? "thm-4.5" : "thm-4.6",
                             "constant term too small for n distinct roots of the form 2^a or 2^a/3"};
    }
    return std::nullopt;
}

inline constexpr long kSturmDegree = 12;
inline constexpr long kMaxRootTestDegree = 6000;

struct RootOutcome {
    std::vector<Rational> roots;  // X, ascending
    std::optional<IrrationalRoot> irrational;
};

inline RootOutcome sturm_root_test(const BDParams& p) {
    const RatPoly s = s_poly(p);
    const std::set<long> allowed = p.odd() ? std::set<long>{1, 3} : std::set<long>{1};
    const RootReport rep = rational_roots(s, allowed);
    if (const auto* ok = std::get_if<AllRational>(&rep)) return {ok->roots, std::nullopt};
    const auto& w = std::get<IrrationalWitness>(rep);
    IrrationalRoot ir;
    if (w.interval) {
        ir.interval = *w.interval;
    } else {
        ir.interval = RootInterval{Rational(0), cauchy_bound(s)};
    }
    ir.reason = w.describe();
    return {{}, ir};
}

/// Root test on T(Y) guided by floating-point zeros of P_m, every claim
/// certified by exact integer evaluation. Returns nullopt when the guidance
/// was not conclusive.
inline std::optional<RootOutcome> guided_root_test(const BDParams& p) {
    const long g = p.root_scale();
    const auto u = bd_coefficients(p);
    std::vector<BigInt> t(static_cast<std::size_t>(p.n + 1));  // ascending in Y
    t[static_cast<std::size_t>(p.n)] = 1;
    BigInt gr = 1;
    for (long r = 1; r <= p.n; ++r) {
        gr *= g;
        const Rational c = u[static_cast<std::size_t>(r - 1)] * Rational(gr);
        if (!c.is_integer()) return std::nullopt;
        t[static_cast<std::size_t>(p.n - r)] = (r % 2 == 0) ? c.num() : BigInt(-c.num());
    }

    const GegenbauerZerosApprox zeros(p.m, p.dim());
    std::vector<std::optional<long double>> cache(static_cast<std::size_t>(p.n));
    auto hint = [&](long j) {  // j-th smallest Y
        auto& slot = cache[static_cast<std::size_t>(j)];
        if (!slot) {
            const long double x = zeros.zero(p.m - 1 - j);
            slot = static_cast<long double>(g) / (x * x);
        }
        return *slot;
    };

    std::vector<BigInt> found;
    bool inconclusive = false;
    for (long j = 0; j < p.n; ++j) {
        const long double y = hint(j);
        if (!std::isfinite(y)) {
            inconclusive = true;
            continue;
        }
        const Rational ry = Rational::from_long_double(y);
        const BigInt fl = ry.floor();
        BigInt near = (ry - Rational(fl) < Rational(1, 2)) ? fl : BigInt(fl + 1);
        const long double tol = 1e-9L * std::max<long double>(1, y);
        if (std::fabs(y - Rational(near).to_long_double()) < tol && intpoly::eval(t, near) == 0) {
            found.push_back(near);
            continue;
        }
        Rational lo = Rational(fl), hi = Rational(BigInt(fl + 1));
        if (j > 0) lo = std::max(lo, Rational::from_long_double((y + hint(j - 1)) / 2));
        if (j + 1 < p.n) hi = std::min(hi, Rational::from_long_double((y + hint(j + 1)) / 2));
        if (!(lo < hi)) {
            inconclusive = true;
            continue;
        }
        const int slo = intpoly::sign_at(t, lo), shi = intpoly::sign_at(t, hi);
        if (slo != 0 && shi != 0 && slo != shi) {
            IrrationalRoot ir;
            const Rational gq(g);
            ir.interval = RootInterval{lo / gq, hi / gq};
            ir.reason = p.odd() ? "sign change with no k/3 inside" : "sign change with no integer inside";
            return RootOutcome{{}, ir};
        }
        inconclusive = true;
    }
    if (inconclusive) return std::nullopt;
    for (std::size_t i = 1; i < found.size(); ++i) {
        if (!(found[i - 1] < found[i])) return std::nullopt;
    }
    RootOutcome out;
    for (const auto& y : found) out.roots.push_back(Rational(y, BigInt(g)));
    return out;
}

inline StiffVerdict special_exists(long m, const BigInt& D) {
    StiffVerdict v;
    v.decision = StiffVerdict::Decision::Exists;
    v.m = m;
    v.sphere_dim = D;
    if (m == 1) v.zero_lambda = Rational(1);
    return v;
}

inline void certify(StiffVerdict& v, const BDParams& p) {
    if (!p.sphere_dim.fits_slong_p()) throw std::overflow_error("certificate needs a machine-size dimension");
    const long D = p.dim();
    const RatPoly kfun = christoffel_function_in_square(p.m, D);
    const RatPoly s = s_poly(p);
    Rational total(0);
    for (std::size_t i = 0; i < v.roots.size(); ++i) {
        if (i > 0 && !(v.roots[i - 1] < v.roots[i])) throw std::logic_error("certificate roots are not distinct");
        if (!s(v.roots[i]).is_zero()) throw std::logic_error("certificate root does not satisfy S_m");
        const Rational xsq = v.roots[i].inverse();
        const Rational lam = kfun(xsq).inverse();
        if (lam.sign() <= 0) throw std::logic_error("non-positive Christoffel number");
        v.node_sq.push_back(xsq);
        v.root_lambdas.push_back(lam);
        total += Rational(2) * lam;
    }
    if (p.odd()) {
        v.zero_lambda = kfun(Rational(0)).inverse();
        total += *v.zero_lambda;
    }
    if (total != Rational(1)) throw std::logic_error("Christoffel numbers do not sum to 1");
}

}  // namespace detail

/// Decides whether an m-stiff configuration exists in S^{D-1}.
inline StiffVerdict stiff_exists(long m, const BigInt& sphere_dim) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (sphere_dim < 2) throw std::invalid_argument("sphere dimension must be at least 2");
    if (m == 1 || sphere_dim == 2) return detail::special_exists(m, sphere_dim);

    const BDParams p = BDParams::make(m, sphere_dim);
    StiffVerdict v;
    v.m = m;
    v.sphere_dim = sphere_dim;
    auto reject = [&](Witness w) {
        v.decision = StiffVerdict::Decision::NotExists;
        v.witness = std::move(w);
        return v;
    };

    if (auto w = screen_coefficients(p)) return reject(*w);
    if (p.h.fits_slong_p()) {
        if (auto w = detail::screen_three_scaling(p)) return reject(*w);
        if (auto w = detail::newton_screen(p)) return reject(*w);
    }
    if (auto w = detail::structural_exclusion(p)) return reject(*w);

    std::optional<detail::RootOutcome> outcome;
    if (p.n > detail::kSturmDegree && p.dim_fits_long()) {
        if (p.n > detail::kMaxRootTestDegree) {
            throw std::runtime_error("root test beyond supported degree for m = " + std::to_string(m));
        }
        outcome = detail::guided_root_test(p);
    }
    if (!outcome) outcome = detail::sturm_root_test(p);
    if (outcome->irrational) return reject(*outcome->irrational);

    v.decision = StiffVerdict::Decision::Exists;
    v.roots = outcome->roots;
    detail::certify(v, p);
    return v;
}

inline StiffVerdict stiff_exists(long m, long sphere_dim) { return stiff_exists(m, BigInt(sphere_dim)); }

struct CrossValidation {
    bool pass = false;
    long m = 0;
    long sphere_dim = 0;
    std::vector<Rational> s_roots;
    std::vector<Rational> reciprocal_zeros;
    Rational max_error;
    std::string message;
};

/// Compares the roots of S_m against 1/x^2 over the positive zeros x of P_m.
inline CrossValidation cross_validate(long m, long sphere_dim, int precision = 50) {
    if (m < 2 || sphere_dim < 3) throw std::invalid_argument("cross_validate needs m >= 2 and D >= 3");
    CrossValidation cv;
    cv.m = m;
    cv.sphere_dim = sphere_dim;
    const BDParams p = BDParams::make(m, sphere_dim);
    const Rational fine = ten_pow_neg(precision + 5);
    for (const auto& iv : isolate_real_roots(s_poly(p), fine)) cv.s_roots.push_back(iv.midpoint());

    std::vector<Rational> pos;
    for (const auto& iv : isolate_real_roots(jacobi_poly(m, sphere_dim), ten_pow_neg(precision + 20))) {
        const Rational x = iv.midpoint();
        if (x.sign() > 0 && !(iv.lo.sign() <= 0 && iv.hi.sign() >= 0)) pos.push_back(x);
    }
    std::sort(pos.begin(), pos.end(), [](const Rational& a, const Rational& b) { return b < a; });
    for (const auto& x : pos) cv.reciprocal_zeros.push_back((x * x).inverse());

    if (cv.s_roots.size() != cv.reciprocal_zeros.size()) {
        cv.message = "root counts differ";
        return cv;
    }
    for (std::size_t i = 0; i < cv.s_roots.size(); ++i) {
        const Rational e = abs(cv.s_roots[i] - cv.reciprocal_zeros[i]);
        if (cv.max_error < e) cv.max_error = e;
    }
    cv.pass = cv.max_error < ten_pow_neg(precision - 5);
    cv.message = cv.pass ? "agree" : "max deviation " + cv.max_error.to_decimal(10);
    return cv;
}

}  // namespace stiff
