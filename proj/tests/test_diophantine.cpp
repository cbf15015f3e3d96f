#include "stiff/diophantine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

using namespace stiff;

namespace {

bool is_square_u64(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v;
}

/// Smallest unit > 1 by increasing b: the first b <= 10^6 with D b^2 +- 1 square.
std::optional<std::pair<long, long>> brute_unit(long D, int& norm) {
    for (long b = 1; b <= 1000000; ++b) {
        for (int s : {-1, 1}) {
            const long t = D * b * b + s;
            const long a = std::lround(std::sqrt(static_cast<double>(t)));
            if (a * a == t) {
                norm = s;
                return std::pair<long, long>{a, b};
            }
        }
    }
    return std::nullopt;
}

std::vector<BigInt> to_big(const std::vector<long>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(PerfectSquare, Examples) {
    EXPECT_EQ(is_perfect_square(BigInt(0)), BigInt(0));
    EXPECT_EQ(is_perfect_square(BigInt(6 * 24 * 25)), BigInt(60));
    EXPECT_EQ(is_perfect_square(BigInt(10 * 27 * 30)), BigInt(90));
    EXPECT_FALSE(is_perfect_square(BigInt(3900)).has_value());
    for (long v = 0; v < 20000; ++v) EXPECT_EQ(is_perfect_square(BigInt(v)).has_value(), is_square_u64(static_cast<std::uint64_t>(v)));
}

TEST(FundamentalUnit, Examples) {
    const auto u6 = fundamental_unit(6);
    EXPECT_EQ(u6.a, 5);
    EXPECT_EQ(u6.b, 2);
    EXPECT_EQ(u6.norm, 1);
    const auto u10 = fundamental_unit(10);
    EXPECT_EQ(u10.a, 3);
    EXPECT_EQ(u10.b, 1);
    EXPECT_EQ(u10.norm, -1);
    const auto u2 = fundamental_unit(2);
    EXPECT_EQ(u2.a, 1);
    EXPECT_EQ(u2.b, 1);
    EXPECT_EQ(u2.norm, -1);
    EXPECT_THROW(fundamental_unit(9), std::invalid_argument);
}

TEST(FundamentalUnit, MatchesSmallestSolution) {
    for (long D = 2; D <= 150; ++D) {
        if (is_square_u64(static_cast<std::uint64_t>(D))) continue;
        int norm = 0;
        const auto brute = brute_unit(D, norm);
        const auto u = fundamental_unit(D);
        EXPECT_EQ(u.value().norm(), u.norm);
        if (!brute) continue;
        const auto [a, b] = *brute;
        EXPECT_EQ(u.a, a) << D;
        EXPECT_EQ(u.b, b) << D;
        EXPECT_EQ(u.norm, norm) << D;
    }
    const auto big = fundamental_unit(661);
    EXPECT_EQ(big.value().norm(), big.norm);
}

TEST(Pell, RepresentativeExamples) {
    const auto a = pell_representatives(6, 9);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].x, 3);
    EXPECT_EQ(a[0].y, 0);

    const auto b = pell_representatives(10, 9);
    ASSERT_EQ(b.size(), 3u);
    std::vector<std::pair<BigInt, BigInt>> got;
    for (const auto& s : b) got.emplace_back(s.x, s.y);
    EXPECT_EQ(got, (std::vector<std::pair<BigInt, BigInt>>{{3, 0}, {7, 2}, {7, -2}}));

    const auto c = pell_representatives(6, 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].x, 1);
    EXPECT_EQ(c[0].y, 0);
    EXPECT_THROW(pell_representatives(6, 0), std::invalid_argument);
}

TEST(Pell, ClassesAreDistinctAndCover) {
    for (long D : {2L, 3L, 6L, 7L, 10L, 13L}) {
        for (long M : {1L, -1L, 2L, -2L, 9L, -9L, 14L, 31L, -23L}) {
            const auto reps = pell_representatives(D, M);
            const UnitElement unit = fundamental_unit(D);
            for (std::size_t i = 0; i < reps.size(); ++i) {
                EXPECT_EQ(reps[i].value().norm(), M);
                for (const auto& q : pell_orbit(reps[i], unit, 5)) EXPECT_EQ(q.norm(), M);
                for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(associated(reps[i].value(), reps[j].value()));
            }
            for (long y = -10000; y <= 10000; ++y) {
                const long t = M + D * y * y;
                if (t < 0 || !is_square_u64(static_cast<std::uint64_t>(t))) continue;
                const long x = std::lround(std::sqrt(static_cast<double>(t)));
                for (long sx : {x, -x}) {
                    const QuadInt s{sx, y, D};
                    bool hit = false;
                    for (const auto& r : reps) hit = hit || associated(s, r.value());
                    EXPECT_TRUE(hit) << D << " " << M << " " << sx << " " << y;
                }
            }
        }
    }
}

TEST(Pell, DegreeFourStream) {
    const auto d = dims_for_m4(7);
    EXPECT_EQ(d, to_big({23, 241, 2399, 23761, 235223, 2328481, 23049599}));
    EXPECT_EQ(dims_for_m4_up_to(BigInt(100000000)), d);
    EXPECT_TRUE(dims_for_m4_up_to(BigInt(10)).empty());
}

TEST(Pell, DegreeFiveStream) {
    const auto d = dims_for_m5_up_to(BigInt(100000000));
    EXPECT_EQ(d, to_big({4, 26, 124, 241, 1079, 4801, 9244, 41066, 182404, 351121, 1559519, 6926641, 13333444,
                         59220746}));
    EXPECT_EQ(dims_for_m5(5), to_big({4, 26, 124, 241, 1079}));
}

TEST(Pell, StreamsMatchDirectScan) {
    const std::uint64_t limit = 10000000;
    std::vector<BigInt> four, five;
    for (std::uint64_t D = 3; D <= limit; ++D) {
        if (is_square_u64(6 * (D + 1) * (D + 2))) four.emplace_back(static_cast<unsigned long>(D));
        if (is_square_u64(10 * (D + 1) * (D + 4))) five.emplace_back(static_cast<unsigned long>(D));
    }
    EXPECT_EQ(dims_for_m4_up_to(BigInt(static_cast<unsigned long>(limit))), four);
    EXPECT_EQ(dims_for_m5_up_to(BigInt(static_cast<unsigned long>(limit))), five);
}

TEST(Mordell, GridShape) {
    for (long m = 6; m <= 11; ++m) {
        const auto c = mordell_ab_candidates(m);
        EXPECT_EQ(c.a_values.size(), 16u);
        EXPECT_EQ(c.b_values.size(), 81u);
        EXPECT_EQ(c.pairs.size(), 16u * 81u);
        EXPECT_EQ(c.warning.has_value(), m == 11);
        EXPECT_NE(std::find(c.a_values.begin(), c.a_values.end(), 210), c.a_values.end());
        EXPECT_NE(std::find(c.b_values.begin(), c.b_values.end(), 44100), c.b_values.end());
    }
    EXPECT_THROW(mordell_ab_candidates(5), std::invalid_argument);
    EXPECT_THROW(mordell_ab_candidates(12), std::invalid_argument);
}

TEST(Mordell, SmallSearches) {
    const auto a = bounded_mordell_search(1, 1, 6, 10000);
    ASSERT_FALSE(a.solutions.empty());
    EXPECT_EQ(a.solutions.front(), (std::pair<BigInt, BigInt>{-1, 1}));
    EXPECT_TRUE(a.derived_dims.empty());
    EXPECT_TRUE(a.incomplete_beyond_bound);
    const auto none = bounded_mordell_search(7, 7, 6, 1000);
    EXPECT_TRUE(none.solutions.empty());
    EXPECT_THROW(bounded_mordell_search(1, 1, 6, 0), std::invalid_argument);
}

TEST(Mordell, MatchesNaiveSearch) {
    const auto grid = mordell_ab_candidates(7);
    for (std::size_t i = 0; i < grid.pairs.size(); i += 5) {
        const auto [A, B] = grid.pairs[i];
        const auto fast = bounded_mordell_search(A, B, 7, 2000);
        std::vector<std::pair<BigInt, BigInt>> naive;
        for (long x = -2000; x <= 2000; ++x) {
            const BigInt v = BigInt(B) * x * x * x + 2;
            if (v < 0 || !divides(BigInt(A), v)) continue;
            if (const auto r = is_perfect_square(BigInt(v / A))) naive.emplace_back(x, *r);
        }
        EXPECT_EQ(fast.solutions, naive) << A << " " << B;
        for (const auto& [x, y] : fast.solutions) EXPECT_EQ(BigInt(A) * y * y - BigInt(B) * x * x * x, 2);
        for (const auto& d : fast.derived_dims) EXPECT_GE(d, 3);
    }
}

TEST(Mordell, SweepIsDeterministic) {
    const auto one = mordell_sweep(8, 3000, 1);
    const auto four = mordell_sweep(8, 3000, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].A, four[i].A);
        EXPECT_EQ(one[i].B, four[i].B);
        EXPECT_EQ(one[i].solutions, four[i].solutions);
        EXPECT_EQ(one[i].dims_to_check, four[i].dims_to_check);
    }
}
