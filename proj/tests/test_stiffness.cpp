#include "stiff/newton_polygon.hpp"
#include "stiff/stiffness.hpp"

#include <gtest/gtest.h>

using namespace stiff;

namespace {

/// u_r straight from the product formula: binom(n, r) h(h+2)...(h+2r-2) / (1 3 ... (2r-1))
/// for even m, with 3 5 ... (2r+1) below for odd m.
Rational u_by_formula(long m, long D, long r) {
    const long n = m / 2;
    const long h = D - 2 + 2 * n + (m % 2 ? 2 : 0);
    BigInt num = 1, den = 1;
    for (long i = 0; i < r; ++i) {
        num *= BigInt(n - i) * BigInt(h + 2 * i);
        den *= BigInt(i + 1) * BigInt(m % 2 ? 2 * i + 3 : 2 * i + 1);
    }
    return Rational(num, den);
}

Rational lam(const StiffVerdict& v, std::size_t i) { return v.root_lambdas.at(i); }

}  // namespace

TEST(BDParams, ParityRule) {
    const auto e = BDParams::make(8, 10);
    EXPECT_EQ(e.n, 4);
    EXPECT_EQ(e.bd_param, 8);
    EXPECT_EQ(e.h, 16);
    const auto o = BDParams::make(9, 10);
    EXPECT_EQ(o.n, 4);
    EXPECT_EQ(o.h, 18);
}

TEST(Coefficients, MatchProductFormula) {
    for (long m = 2; m <= 24; ++m) {
        for (long D = 3; D <= 60; ++D) {
            const auto u = bd_coefficients(BDParams::make(m, D));
            ASSERT_EQ(static_cast<long>(u.size()), m / 2);
            for (long r = 1; r <= m / 2; ++r) EXPECT_EQ(u[r - 1], u_by_formula(m, D, r)) << m << " " << D << " " << r;
        }
    }
}

TEST(Coefficients, Examples) {
    const auto u = bd_coefficients(BDParams::make(4, 23));
    EXPECT_EQ(u, (std::vector<Rational>{50, 225}));
    for (long n = 1; n <= 12; ++n) {
        const BigInt four_n = pow(BigInt(4), static_cast<unsigned long>(n));
        EXPECT_EQ(bd_coefficient(BDParams::make(2 * n, 4), n), Rational(four_n));
        EXPECT_EQ(bd_coefficient(BDParams::make(2 * n, 6), n), Rational(four_n * (2 * n + 1), BigInt(n + 1)));
    }
    EXPECT_EQ(bd_coefficient(BDParams::make(13, 8), 3), Rational(14080, 7));
    EXPECT_EQ(bd_coefficient(BDParams::make(11, 10), 3), Rational(7040, 7));
}

TEST(Coefficients, OddEvenShiftIdentity) {
    for (long n = 1; n <= 30; ++n) {
        for (long D = 3; D <= 60; ++D) {
            const Rational plus = bd_coefficient(BDParams::make(2 * n + 1, D), n);
            const Rational minus = bd_coefficient(BDParams::make(2 * n, D + 2), n);
            EXPECT_EQ(plus, minus / Rational(2 * n + 1));
        }
    }
}

TEST(Coefficients, OddDoubleFactorialIdentity) {
    for (long n = 1; n <= 200; ++n) {
        BigInt lhs = pow(BigInt(2), static_cast<unsigned long>(n - 1)), rhs = 1;
        for (long i = 1; i <= n; ++i) lhs *= 2 * i - 1;
        for (long i = n; i <= 2 * n - 1; ++i) rhs *= i;
        EXPECT_EQ(lhs, rhs) << n;
    }
}

TEST(Coefficients, ClosedFormTopCoefficient) {
    for (long D = 4; D <= 62; D += 2) {
        for (bool odd : {false, true}) {
            for (long n = 1; n <= 200; ++n) {
                const auto p = BDParams::make(2 * n + (odd ? 1 : 0), D);
                const auto top = top_coefficient_even_dim(BigInt(n), D, odd);
                const Rational un = bd_coefficient(p, n);
                ASSERT_EQ(top.value(), un) << D << " " << n;
                EXPECT_EQ(top.denominator(), odd_part(un.den()));
                if (n >= 2) {
                    EXPECT_EQ(second_coefficient_denominator(top, D, odd), odd_part(bd_coefficient(p, n - 1).den()));
                }
            }
        }
    }
}

TEST(Coefficients, FloorFormTopCoefficient) {
    for (long k = 2; k <= 30; ++k) {
        for (long n = 1; n <= 50; ++n) {
            EXPECT_EQ(top_coefficient_floor_form(n, k), bd_coefficient(BDParams::make(2 * n, 2 * k + 2), n)) << k << " " << n;
        }
    }
}

TEST(SPoly, Examples) {
    for (long D = 3; D <= 30; ++D) EXPECT_EQ(s_poly(BDParams::make(2, D)), (RatPoly{Rational(-D), Rational(1)}));
    EXPECT_EQ(s_poly(BDParams::make(5, 26)), (RatPoly{Rational(64), Rational(-20), Rational(1)}));
    EXPECT_EQ(s_poly(BDParams::make(4, 4)), (RatPoly{Rational(16), Rational(-12), Rational(1)}));
}

TEST(SPoly, ReversalOfJacobi) {
    // P_m(x) / lc = x^eps * x^(2n) S_m(1/x^2) / S_m(0).
    for (long m = 2; m <= 20; ++m) {
        for (long D = 3; D <= 60; ++D) {
            const auto p = BDParams::make(m, D);
            const RatPoly s = s_poly(p);
            std::vector<Rational> c(static_cast<std::size_t>(m + 1));
            for (long i = 0; i <= p.n; ++i) c[static_cast<std::size_t>(2 * (p.n - i) + p.eps())] = s.coeff(i) / s.coeff(0);
            const RatPoly jac = jacobi_poly(m, D);
            EXPECT_EQ(RatPoly(c), jac * jac.leading().inverse()) << m << " " << D;
            // Vieta: sum of roots u_1, product u_n.
            EXPECT_EQ(-s.coeff(static_cast<std::size_t>(p.n - 1)), bd_coefficient(p, 1));
        }
    }
}

TEST(Screen, Examples) {
    EXPECT_FALSE(screen_coefficients(BDParams::make(12, 4)).has_value());
    const auto w = screen_coefficients(BDParams::make(13, 10));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->prime, 7);
    ASSERT_TRUE(w->value.has_value());
    EXPECT_FALSE(detail::denominator_allowed(w->value->den(), true));
    const auto w6 = screen_coefficients(BDParams::make(6, 5));
    ASSERT_TRUE(w6.has_value());
    EXPECT_FALSE(w6->value->is_integer());
}

TEST(Screen, ValuationPathMatchesExactPath) {
    for (long D : {5L, 7L, 9L, 11L, 15L, 4100L, 4102L, 5001L}) {
        for (long m = 130; m <= 601; m += 7) {
            const auto p = BDParams::make(m, D);
            const auto fast = screen_coefficients(p);
            const auto exact = detail::screen_exact(p);
            ASSERT_EQ(fast.has_value(), exact.has_value()) << m << " " << D;
            if (!fast) continue;
            EXPECT_EQ(fast->r, exact->r) << m << " " << D;
            EXPECT_EQ(fast->prime, exact->prime) << m << " " << D;
        }
    }
}

TEST(Screen, ClosedFormPathAgreesOnVerdict) {
    for (long D = 4; D <= 40; D += 2) {
        for (long m = 2; m <= 300; ++m) {
            const auto p = BDParams::make(m, D);
            EXPECT_EQ(screen_coefficients(p).has_value(), detail::screen_exact(p).has_value()) << m << " " << D;
        }
    }
}

TEST(StiffExists, TableExamples) {
    const auto a = stiff_exists(4, 23);
    ASSERT_TRUE(a.exists());
    EXPECT_EQ(a.roots, (std::vector<Rational>{5, 45}));
    EXPECT_EQ(a.weights(), (std::vector<Rational>{Rational(11, 184), Rational(81, 184), Rational(81, 184), Rational(11, 184)}));

    const auto b = stiff_exists(4, 24);
    EXPECT_FALSE(b.exists());
    ASSERT_TRUE(b.witness.has_value());

    const auto c = stiff_exists(5, 124);
    ASSERT_TRUE(c.exists());
    EXPECT_EQ(c.roots, (std::vector<Rational>{16, Rational(208, 3)}));
    EXPECT_EQ(c.zero_lambda, Rational(1025, 1953));

    const auto d = stiff_exists(5, 26);
    ASSERT_TRUE(d.exists());
    EXPECT_EQ(lam(d, 0), Rational(5, 273));
    EXPECT_EQ(lam(d, 1), Rational(64, 273));
    EXPECT_EQ(d.zero_lambda, Rational(45, 91));

    const auto e = stiff_exists(5, 4);
    ASSERT_TRUE(e.exists());
    EXPECT_EQ(lam(e, 0), Rational(1, 12));
    EXPECT_EQ(lam(e, 1), Rational(1, 4));
    EXPECT_EQ(e.zero_lambda, Rational(1, 3));

    const auto f = stiff_exists(4, 241);
    ASSERT_TRUE(f.exists());
    EXPECT_EQ(lam(f, 0), Rational(125, 2651));
    EXPECT_EQ(lam(f, 1), Rational(2401, 5302));
}

TEST(StiffExists, SpecialCases) {
    for (long D = 2; D <= 50; ++D) {
        const auto v = stiff_exists(1, D);
        EXPECT_TRUE(v.exists());
        EXPECT_EQ(v.weights(), std::vector<Rational>{Rational(1)});
    }
    for (long m = 1; m <= 40; ++m) EXPECT_TRUE(stiff_exists(m, 2).exists());
    for (long D = 3; D <= 50; ++D) {
        EXPECT_TRUE(stiff_exists(2, D).exists());
        EXPECT_TRUE(stiff_exists(3, D).exists());
    }
    EXPECT_THROW(stiff_exists(0, 5), std::invalid_argument);
    EXPECT_THROW(stiff_exists(3, 1), std::invalid_argument);
}

TEST(StiffExists, MatchesSquareConditions) {
    for (long D = 3; D <= 3000; ++D) {
        const bool sq4 = is_perfect_square(BigInt(6 * (D + 1) * (D + 2))).has_value();
        const bool sq5 = is_perfect_square(BigInt(10 * (D + 1) * (D + 4))).has_value();
        EXPECT_EQ(stiff_exists(4, D).exists(), sq4) << D;
        EXPECT_EQ(stiff_exists(5, D).exists(), sq5) << D;
    }
}

TEST(StiffExists, CertificatesIntegrateMoments) {
    for (long m = 2; m <= 12; ++m) {
        for (long D = 3; D <= 60; ++D) {
            const auto v = stiff_exists(m, D);
            if (!v.exists()) {
                ASSERT_TRUE(v.witness.has_value());
                continue;
            }
            Rational total;
            for (const auto& w : v.weights()) {
                EXPECT_GT(w.sign(), 0);
                total += w;
            }
            EXPECT_EQ(total, Rational(1));
            const RatPoly s = s_poly(BDParams::make(m, D));
            for (std::size_t i = 0; i < v.roots.size(); ++i) {
                EXPECT_TRUE(s(v.roots[i]).is_zero());
                if (i) EXPECT_TRUE(v.roots[i - 1] < v.roots[i]);
            }
            for (long j = 0; 2 * j <= 2 * m - 1; ++j) {
                Rational q;
                for (std::size_t i = 0; i < v.node_sq.size(); ++i) q += Rational(2) * v.root_lambdas[i] * v.node_sq[i].pow(j);
                if (j == 0 && v.zero_lambda) q += *v.zero_lambda;
                EXPECT_EQ(q, moment(j, D)) << m << " " << D << " " << j;
            }
        }
    }
}

TEST(StiffExists, WitnessesAreGenuine) {
    for (long m = 4; m <= 16; ++m) {
        for (long D = 3; D <= 40; ++D) {
            const auto v = stiff_exists(m, D);
            if (v.exists()) continue;
            const auto p = BDParams::make(m, D);
            if (const auto* c = std::get_if<NonIntegerCoefficient>(&*v.witness)) {
                const Rational u = bd_coefficient(p, c->r);
                EXPECT_TRUE(divides(c->prime, u.den()));
                if (p.odd() && c->prime == 3) {
                    // Roots k/3 make 3^r u_r an integer.
                    EXPECT_LT(*ord_p(u, BigInt(3)) + c->r, 0);
                } else {
                    EXPECT_FALSE(detail::denominator_allowed(u.den(), p.odd()));
                }
            } else if (const auto* r = std::get_if<IrrationalRoot>(&*v.witness)) {
                const Rational lo = r->interval.lo, hi = r->interval.hi;
                const long q = p.root_scale();
                const RatPoly s = s_poly(p);
                for (BigInt k = (lo * Rational(q)).ceil(); k <= (hi * Rational(q)).floor(); ++k) {
                    EXPECT_FALSE(s(Rational(k, BigInt(q))).is_zero());
                }
            } else if (const auto* ns = std::get_if<NonIntegerSlope>(&*v.witness)) {
                EXPECT_FALSE(ns->slope.is_integer());
            }
        }
    }
}

TEST(StiffExists, NewtonPolygonOfDimensionSix) {
    const auto np = s_newton_polygon(BDParams::make(6, 6), 2);
    EXPECT_EQ(np.vertices, (std::vector<std::pair<long, long>>{{0, 0}, {1, 0}, {2, 1}, {4, 4}}));
    EXPECT_EQ(np.first_non_integer_slope(), Rational(3, 2));
    EXPECT_EQ(s_poly(BDParams::make(6, 6)), (RatPoly{Rational(-112), Rational(120), Rational(-30), Rational(1)}));
    const auto v = stiff_exists(6, 6);
    ASSERT_FALSE(v.exists());

    const auto w = stiff_exists(8, 6);
    ASSERT_FALSE(w.exists());
    const auto* c = std::get_if<NonIntegerCoefficient>(&*w.witness);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(bd_coefficient(BDParams::make(8, 6), 3), Rational(3584, 5));
}

TEST(StiffExists, LargeDimensionsStayFast) {
    EXPECT_FALSE(stiff_exists(6, 403192).exists());
    EXPECT_FALSE(stiff_exists(401, 12).exists());
    EXPECT_TRUE(stiff_exists(4, BigInt("23049599")).exists());
}

TEST(CrossValidate, Examples) {
    const auto a = cross_validate(4, 23);
    EXPECT_TRUE(a.pass) << a.message;
    ASSERT_EQ(a.s_roots.size(), 2u);
    EXPECT_LT(abs(a.s_roots[0] - Rational(5)), ten_pow_neg(40));
    EXPECT_LT(abs(a.s_roots[1] - Rational(45)), ten_pow_neg(40));
    const auto b = cross_validate(3, 7);
    EXPECT_TRUE(b.pass);
    ASSERT_EQ(b.s_roots.size(), 1u);
    EXPECT_LT(abs(b.s_roots[0] - Rational(3)), ten_pow_neg(40));
    EXPECT_TRUE(cross_validate(7, 9).pass);
}
