#include "stiff/search.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stiff;

namespace {

std::vector<long> exists_in(long D, std::optional<Parity> only = std::nullopt) {
    ClassifyOptions opt;
    opt.only = only;
    const auto r = classify_dimension(D, opt);
    EXPECT_TRUE(r.complete);
    return r.exists_m;
}

bool passes_top_two(long n, long D, bool odd) {
    const auto p = BDParams::make(2 * n + (odd ? 1 : 0), D);
    const auto ok = [&](long r) { return detail::denominator_allowed(odd_part(bd_coefficient(p, r).den()), odd); };
    return ok(n) && ok(n - 1);
}

}  // namespace

TEST(Bounds, Examples) {
    const auto a = n_upper_bound(10, Parity::Even);
    EXPECT_EQ(a.threshold, 15);
    EXPECT_EQ(a.theorem_tag, "thm-3.6");
    EXPECT_EQ(n_upper_bound(8, Parity::Even).threshold, 30);
    for (long D = 3; D <= 99; D += 2) {
        const auto e = n_upper_bound(D, Parity::Even);
        const auto o = n_upper_bound(D, Parity::Odd);
        EXPECT_EQ(e.threshold, 2 * D + 5);
        EXPECT_EQ(o.threshold, 2 * D + 9);
        EXPECT_TRUE(e.conservative);
        EXPECT_FALSE(e.strict);
        EXPECT_EQ(e.first_excluded(), 2 * D + 5);
    }
    EXPECT_EQ(n_upper_bound(12, Parity::Odd).threshold, 10390);
    EXPECT_EQ(n_upper_bound(14, Parity::Odd).threshold, 4152);
    EXPECT_EQ(n_upper_bound(8, Parity::Odd).first_excluded(), 7);
    EXPECT_THROW(n_upper_bound(2, Parity::Even), std::invalid_argument);
}

TEST(Bounds, SampledDegreesAreExcluded) {
    std::mt19937_64 rng(20240917);
    for (long D = 3; D <= 30; ++D) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const BigInt first = n_upper_bound(D, p).first_excluded();
            for (int i = 0; i < 20; ++i) {
                const BigInt n = first + static_cast<unsigned long>(rng() % 3000);
                const long m = degree_of(to_int64(n), p);
                const auto v = stiff_exists(m, D);
                EXPECT_FALSE(v.exists()) << D << " " << m;
                EXPECT_TRUE(v.witness.has_value());
            }
        }
    }
}

TEST(Candidates, SmallestCaseAgainstDirectScan) {
    const auto cs = candidate_set(4, Parity::Even);
    EXPECT_TRUE(cs.exhaustive);
    std::vector<long> direct;
    for (long n = 2; n <= 5000; ++n) {
        if (passes_top_two(n, 10, false)) direct.push_back(n);
    }
    std::vector<long> got;
    for (long n : cs.surviving_n) {
        if (n <= 5000) got.push_back(n);
    }
    EXPECT_EQ(got, direct);
    EXPECT_GE(cs.raw_candidates, cs.after_divisibility);
    EXPECT_GE(cs.after_divisibility, cs.after_top);
    EXPECT_GE(cs.after_top, cs.surviving_n.size());
    EXPECT_THROW(candidate_set(3, Parity::Even), std::invalid_argument);
}

TEST(Candidates, PruningIsSound) {
    for (long k = 4; k <= 8; ++k) {
        const long D = 2 * k + 2;
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const auto cs = candidate_set(k, p);
            const std::set<long> kept(cs.surviving_n.begin(), cs.surviving_n.end());
            for (long n = 2; n <= 500; ++n) {
                const bool pass = passes_top_two(n, D, p == Parity::Odd);
                if (kept.count(n)) EXPECT_TRUE(pass) << k << " " << n;
                if (cs.exhaustive && pass) EXPECT_TRUE(kept.count(n)) << k << " " << n;
                if (cs.exhaustive && !kept.count(n)) {
                    EXPECT_FALSE(stiff_exists(degree_of(n, p), D).exists()) << k << " " << n;
                }
            }
            for (long n : cs.surviving_n) {
                if (n <= 1000 && n > 1) EXPECT_FALSE(stiff_exists(degree_of(n, p), D).exists()) << k << " " << n;
            }
        }
    }
}

TEST(ClassifyDimension, Examples) {
    const auto two = classify_dimension(2);
    EXPECT_TRUE(two.all_m);
    EXPECT_TRUE(two.complete);
    EXPECT_EQ(exists_in(23), (std::vector<long>{1, 2, 3, 4}));
    EXPECT_EQ(exists_in(4), (std::vector<long>{1, 2, 3, 5}));
    EXPECT_EQ(exists_in(7), (std::vector<long>{1, 2, 3}));
    EXPECT_EQ(exists_in(26), (std::vector<long>{1, 2, 3, 5}));
    EXPECT_EQ(exists_in(6, Parity::Even), (std::vector<long>{2}));
}

TEST(ClassifyDimension, ConsistentWithSquareConditions) {
    for (long D = 3; D <= 30; ++D) {
        const auto ms = exists_in(D);
        std::vector<long> expect{1, 2, 3};
        if (is_perfect_square(BigInt(6 * (D + 1) * (D + 2)))) expect.push_back(4);
        if (D == 4 || is_perfect_square(BigInt(10 * (D + 1) * (D + 4)))) expect.push_back(5);
        EXPECT_EQ(ms, expect) << D;
    }
}

TEST(ClassifyDimension, DeterministicAcrossWorkers) {
    ClassifyOptions one, four;
    four.workers = 4;
    for (long D : {12L, 19L, 28L}) {
        const auto a = classify_dimension(D, one);
        const auto b = classify_dimension(D, four);
        ASSERT_EQ(a.cells.size(), b.cells.size());
        for (std::size_t i = 0; i < a.cells.size(); ++i) {
            EXPECT_EQ(a.cells[i].m, b.cells[i].m);
            EXPECT_EQ(a.cells[i].exists, b.cells[i].exists);
            EXPECT_EQ(a.cells[i].evidence, b.cells[i].evidence);
            EXPECT_EQ(a.cells[i].detail, b.cells[i].detail);
        }
        EXPECT_EQ(a.exists_m, b.exists_m);
    }
}

TEST(ClassifyDimension, BudgetMarksIncomplete) {
    ClassifyOptions opt;
    opt.max_cells = 20;
    const auto r = classify_dimension(12, opt);
    EXPECT_FALSE(r.complete);
    EXPECT_EQ(r.cells_examined, 20u);
    EXPECT_TRUE(classify_dimension(12).complete);
}

TEST(ClassifyDegree, SmallDegrees) {
    for (long m = 1; m <= 3; ++m) EXPECT_TRUE(classify_degree(m, BigInt(1000)).all_dimensions);
    EXPECT_EQ(classify_degree(4, BigInt(3000)).dims, (std::vector<BigInt>{23, 241, 2399}));
    EXPECT_EQ(classify_degree(5, BigInt(1100)).dims, (std::vector<BigInt>{4, 26, 124, 241, 1079}));
    DegreeOptions o;
    o.mordell_x_bound = 1000;
    o.direct_limit = 1000;
    const auto six = classify_degree(6, BigInt(1000), o);
    EXPECT_TRUE(six.dims.empty());
    EXPECT_TRUE(six.heuristic);
}

TEST(ClassifyDegree, AgreesWithDimensionGrid) {
    std::map<long, std::set<long>> by_dim;
    for (long D = 3; D <= 30; ++D) {
        for (long m : exists_in(D)) by_dim[m].insert(D);
    }
    DegreeOptions o;
    o.mordell_x_bound = 1000;
    o.direct_limit = 30;
    for (long m = 1; m <= 20; ++m) {
        const auto r = classify_degree(m, BigInt(30), o);
        std::set<long> dims;
        if (r.all_dimensions) {
            for (long D = 3; D <= 30; ++D) dims.insert(D);
        }
        for (const auto& d : r.dims) dims.insert(to_int64(d));
        EXPECT_EQ(dims, by_dim[m]) << m;
    }
}

TEST(Verify, HarnessTags) {
    EXPECT_THROW(verify_theorem("thm-9.9"), std::invalid_argument);
    for (const char* tag : {"thm-4.4", "thm-4.5", "thm-4.6", "thm-4.9", "thm-4.10", "thm-6.2"}) {
        const auto r = verify_theorem(tag);
        EXPECT_TRUE(r.agrees) << tag;
        EXPECT_FALSE(r.lines.empty());
    }
    EXPECT_TRUE(verify_theorem("thm-4.1", 20).agrees);
    EXPECT_TRUE(verify_theorem("thm-4.2", 28).agrees);
}
