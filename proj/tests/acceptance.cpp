// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include "stiff/cli.hpp"
#include "stiff/diophantine.hpp"
#include "stiff/search.hpp"
#include "table_data.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace stiff;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

std::vector<json> run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "stiff");
    args.push_back("--format");
    args.push_back("json");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) throw std::runtime_error("command failed: " + err.str());
    std::vector<json> lines;
    std::istringstream is(out.str());
    for (std::string line; std::getline(is, line);) {
        if (!line.empty()) lines.push_back(json::parse(line));
    }
    return lines;
}

std::multiset<std::string> as_set(const json& arr) {
    std::multiset<std::string> s;
    for (const auto& v : arr) s.insert(v.get<std::string>());
    return s;
}

/// Checks `classify --deg m --max-d 1e8` against a reference table.
Outcome degree_table(long m, const std::vector<testdata::TableEntry>& table, bool ordered) {
    const auto lines = run_json({"classify", "--deg", std::to_string(m), "--max-d", "100000000"});
    const auto& summary = lines.back()["summary"];
    std::vector<long> dims{2};
    for (const auto& d : summary["dims"]) dims.push_back(d.get<long>());
    std::vector<long> expect{2};
    for (const auto& e : table) expect.push_back(e.d);
    if (dims != expect) return fail("dimension list differs");
    std::size_t checked = 0;
    for (const auto& row : lines) {
        if (!row.contains("d") || row["d"].get<long>() == 2) continue;
        const long d = row["d"].get<long>();
        const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.d == d; });
        if (it == table.end()) return fail("unexpected row d=" + std::to_string(d));
        const json expect_l = it->lambdas;
        const bool same = ordered ? row["lambdas"] == expect_l : as_set(row["lambdas"]) == as_set(expect_l);
        if (!same) return fail("lambda mismatch at d=" + std::to_string(d));
        ++checked;
    }
    if (checked != table.size()) return fail("missing rows");
    return {true, std::to_string(table.size() + 1) + " dimensions, " + std::to_string(checked) + " exact lambda rows"};
}

Outcome classify_range(long lo, long hi, long step, std::optional<Parity> only,
                       const std::function<std::vector<long>(long)>& expect) {
    long count = 0;
    for (long D = lo; D <= hi; D += step) {
        ClassifyOptions opt;
        opt.only = only;
        opt.workers = default_workers();
        const auto r = classify_dimension(D, opt);
        if (!r.complete) return fail("incomplete at D=" + std::to_string(D));
        if (r.exists_m != expect(D)) return fail("mismatch at D=" + std::to_string(D));
        ++count;
    }
    return {true, std::to_string(count) + " dimensions"};
}

Outcome criterion1() { return degree_table(4, testdata::kDegreeFour, true); }

Outcome criterion2() {
    auto o = degree_table(5, testdata::kDegreeFive, false);
    if (!o.pass) return o;
    const auto spot = [](long d, std::vector<Rational> expect) {
        const auto v = stiff_exists(5, d);
        return v.exists() && std::vector<Rational>{v.root_lambdas[0], v.root_lambdas[1], *v.zero_lambda} == expect;
    };
    if (!spot(4, {Rational(1, 12), Rational(1, 4), Rational(1, 3)})) return fail("d=4 spot check");
    if (!spot(26, {Rational(5, 273), Rational(64, 273), Rational(45, 91)})) return fail("d=26 spot check");
    if (*stiff_exists(5, 124).zero_lambda != Rational(1025, 1953)) return fail("d=124 spot check");
    return o;
}

Outcome criterion3() {
    return classify_range(8, 60, 2, Parity::Even, [](long) { return std::vector<long>{2}; });
}

Outcome criterion4() {
    return classify_range(12, 60, 2, Parity::Odd, [](long D) {
        return D == 26 ? std::vector<long>{1, 3, 5} : std::vector<long>{1, 3};
    });
}

Outcome criterion5() {
    return classify_range(3, 499, 2, std::nullopt, [](long D) {
        std::vector<long> e{1, 2, 3};
        if (D == 23 || D == 241) e.push_back(4);
        if (D == 241) e.push_back(5);
        return e;
    });
}

Outcome criterion6() {
    return classify_range(4, 10, 1, std::nullopt, [](long D) {
        return D == 4 ? std::vector<long>{1, 2, 3, 5} : std::vector<long>{1, 2, 3};
    });
}

Outcome criterion7() {
    DegreeOptions o;
    o.mordell_x_bound = 1000000;
    o.direct_limit = 10000;
    o.workers = default_workers();
    std::size_t candidates = 0, solutions = 0;
    for (long m = 6; m <= 10; ++m) {
        const auto cand = degree_candidates(m, BigInt("1000000000000000000000000000000"), o);
        candidates += cand.dims.size();
        solutions += cand.mordell_solutions;
        const auto found = parallel_map<char>(cand.dims.size(), o.workers, [&](std::size_t i) {
            return stiff_exists(m, cand.dims[i]).exists() ? 1 : 0;
        });
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (found[i]) return fail("m=" + std::to_string(m) + " exists at D=" + cand.dims[i].get_str());
        }
    }
    return {true, std::to_string(solutions) + " bounded solutions, " + std::to_string(candidates) +
                      " dimensions checked, none admissible (heuristic-complete)"};
}

Outcome criterion8() {
    long count = 0;
    for (long m = 2; m <= 12; ++m) {
        for (long D = 3; D <= 40; ++D) {
            const auto cv = cross_validate(m, D, 50);
            if (!cv.pass || !(cv.max_error < ten_pow_neg(45))) {
                return fail("m=" + std::to_string(m) + " D=" + std::to_string(D) + ": " + cv.message);
            }
            ++count;
        }
    }
    return {true, std::to_string(count) + " (m, D) pairs within 1e-45"};
}

Outcome criterion9() {
    const int precision = 50;
    const Rational tol = ten_pow_neg(precision - 3);
    long count = 0;
    for (long n = 1; n <= 8; ++n) {
        for (long D = 3; D <= 30; ++D) {
            const auto set = christoffel_numbers_numeric(n, D, precision);
            std::vector<Rational> lam;
            for (const auto& e : set.entries) {
                if (e.lambda.sign() <= 0) return fail("non-positive weight");
                lam.push_back(e.lambda);
            }
            if (!is_unimodal(lam, tol)) return fail("not unimodal at n=" + std::to_string(n));
            for (long j = 0; 2 * j <= 2 * n - 1; ++j) {
                Rational q;
                for (const auto& e : set.entries) q += e.lambda * (e.node * e.node).pow(j);
                if (abs(q - moment(j, D)) > tol) return fail("moment mismatch");
            }
            ++count;
        }
    }
    // Exact identities on certified node sets.
    for (long D : {23L, 241L, 2399L}) {
        const auto v = stiff_exists(4, D);
        for (long j = 0; j <= 3; ++j) {
            Rational q;
            for (std::size_t i = 0; i < v.node_sq.size(); ++i) q += Rational(2) * v.root_lambdas[i] * v.node_sq[i].pow(j);
            if (q != moment(j, D)) return fail("exact quadrature at D=" + std::to_string(D));
        }
    }
    return {true, std::to_string(count) + " (n, D) pairs plus exact checks"};
}

Outcome criterion10() {
    const auto u6 = fundamental_unit(6), u10 = fundamental_unit(10);
    if (!(u6.a == 5 && u6.b == 2 && u6.norm == 1)) return fail("unit for 6");
    if (!(u10.a == 3 && u10.b == 1 && u10.norm == -1)) return fail("unit for 10");
    const auto r6 = pell_representatives(6, 9);
    if (r6.size() != 1 || r6[0].x != 3 || r6[0].y != 0) return fail("classes for (6, 9)");
    const auto r10 = pell_representatives(10, 9);
    if (r10.size() != 3) return fail("classes for (10, 9)");
    std::set<std::pair<BigInt, BigInt>> got;
    for (const auto& s : r10) got.insert({s.x, s.y});
    if (got != std::set<std::pair<BigInt, BigInt>>{{3, 0}, {7, 2}, {7, -2}}) return fail("classes for (10, 9)");
    const std::uint64_t limit = 10000000;
    std::vector<BigInt> four, five;
    for (std::uint64_t D = 3; D <= limit; ++D) {
        if (is_perfect_square(BigInt(static_cast<unsigned long>(6 * (D + 1) * (D + 2))))) four.emplace_back(static_cast<unsigned long>(D));
        if (is_perfect_square(BigInt(static_cast<unsigned long>(10 * (D + 1) * (D + 4))))) five.emplace_back(static_cast<unsigned long>(D));
    }
    if (dims_for_m4_up_to(BigInt(static_cast<unsigned long>(limit))) != four) return fail("m = 4 stream vs scan");
    if (dims_for_m5_up_to(BigInt(static_cast<unsigned long>(limit))) != five) return fail("m = 5 stream vs scan");
    return {true, "units, classes and both streams agree with the scan to 1e7"};
}

Outcome criterion11() {
    std::mt19937_64 rng(11);
    long count = 0;
    for (long D = 3; D <= 30; ++D) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const BigInt first = n_upper_bound(D, p).first_excluded();
            for (int i = 0; i < 20; ++i) {
                const BigInt n = first + static_cast<unsigned long>(rng() % 5000);
                const auto v = stiff_exists(degree_of(to_int64(n), p), D);
                if (v.exists() || !v.witness) return fail("D=" + std::to_string(D) + " n=" + n.get_str());
                ++count;
            }
        }
    }
    return {true, std::to_string(count) + " sampled degrees rejected with witnesses"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table of degree-4 dimensions to 1e8", criterion1},
        {"table of degree-5 dimensions to 1e8", criterion2},
        {"even D in [8, 60], even m: only m = 2", criterion3},
        {"even D in [12, 60], odd m: {1, 3} plus (26, 5)", criterion4},
        {"odd D in [3, 499]: {1, 2, 3} plus (23, 4), (241, 4), (241, 5)", criterion5},
        {"D = 4..10 small-dimension classification", criterion6},
        {"m = 6..10 bounded Diophantine screening", criterion7},
        {"S_m roots against Gegenbauer zeros, 50 digits", criterion8},
        {"quadrature invariants n <= 8, D <= 30", criterion9},
        {"Pell units, classes and dimension streams", criterion10},
        {"sampled degrees beyond the bounds", criterion11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
                  << o.detail << ", " << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
