#pragma once

#include "stiff/diophantine.hpp"
#include "stiff/factor.hpp"
#include "stiff/parallel.hpp"
#include "stiff/stiffness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiff {

enum class Parity { Even, Odd };

inline long degree_of(long n, Parity p) { return 2 * n + (p == Parity::Odd ? 1 : 0); }
inline const char* parity_name(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

/// Every n beyond the threshold is excluded (n > threshold when strict, n >= threshold otherwise).
struct BoundResult {
    long sphere_dim = 0;
    Parity parity = Parity::Even;
    BigInt threshold;
    bool strict = true;
    std::string theorem_tag;
    bool conservative = false;

    /// Largest n not covered by the bound.
    BigInt last_open() const { return strict ? threshold : BigInt(threshold - 1); }
    BigInt first_excluded() const { return last_open() + 1; }
};

namespace detail {

// (2t - 1)(2t - 3) ... (2t - 2 floor(k/2) + 1)
inline BigInt odd_falling_product(long t, long k) {
    BigInt v = 1;
    for (long i = 1; i <= k / 2; ++i) v *= 2 * t - 2 * i + 1;
    return v;
}

}  // namespace detail

inline BoundResult n_upper_bound(long D, Parity parity) {
    if (D < 3) throw std::invalid_argument("n_upper_bound needs D >= 3");
    BoundResult b;
    b.sphere_dim = D;
    b.parity = parity;
    const bool odd_m = parity == Parity::Odd;
    auto set = [&](BigInt t, bool strict, const char* tag, bool conservative = false) {
        b.threshold = std::move(t);
        b.strict = strict;
        b.theorem_tag = tag;
        b.conservative = conservative;
        return b;
    };
    if (D % 2 != 0) {
        // Both readings of the dimension convention are covered by the larger value.
        return odd_m ? set(BigInt(2 * D + 9), false, "thm-3.13", true) : set(BigInt(2 * D + 5), false, "thm-3.8", true);
    }
    const long k = (D - 2) / 2;
    if (!odd_m) {
        switch (D) {
            case 4: return set(BigInt(5), true, "thm-4.4");
            case 6: return set(BigInt(1), true, "thm-6.2");
            case 8: return set(BigInt(30), true, "thm-3.7");
            default: return set(detail::odd_falling_product((k - 1) / 2 + 2, k), true, "thm-3.6");
        }
    }
    switch (D) {
        case 4: return set(BigInt(8), true, "thm-4.5");
        case 6: return set(BigInt(7), true, "thm-4.6");
        case 8: return set(BigInt(6), true, "thm-4.9");
        case 10: return set(BigInt(6), true, "thm-4.10");
        case 12: return set(BigInt(10390), true, "thm-3.12");
        case 14: return set(BigInt(4152), true, "thm-3.11");
        default: return set(detail::odd_falling_product(k / 2 + 4, k), true, "thm-3.10");
    }
}

// Divisor pruning for even dimensions

struct CandidateBranch {
    long theta = 0;
    FactoredInteger f;
    std::size_t qualifying_divisors = 0;
};

struct CandidateSet {
    long k = 0;
    Parity parity = Parity::Even;
    /// Shift for the odd-n branch with even m; first window shift otherwise.
    long theta = 0;
    FactoredInteger f_k;
    std::vector<CandidateBranch> branches;
    std::size_t raw_candidates = 0;
    std::size_t after_divisibility = 0;
    std::size_t after_top = 0;
    std::vector<long> surviving_n;
    /// The window always contains a usable shift, so no n >= 2 escapes the filters.
    bool exhaustive = false;
};

namespace detail {

inline bool qualifies(const BigInt& v, Parity p) {
    if (mpz_even_p(v.get_mpz_t())) return false;
    return p == Parity::Even || !mpz_divisible_ui_p(v.get_mpz_t(), 3);
}

inline FactoredInteger window_product(long theta, long w) {
    FactoredInteger f = FactoredInteger::factor(BigInt(1));
    for (long i = 1; i <= w; ++i) {
        const long v = 2 * i - 1 - 2 * theta;
        f *= FactoredInteger::factor(BigInt(v < 0 ? -v : v));
    }
    return f;
}

}  // namespace detail

/// Candidates n >= 2 for d' = 2k (sphere dimension 2k + 2) that survive the
/// divisibility test n + theta | F(theta) for every usable shift and the
/// denominator tests on u_n and u_{n-1}.
inline CandidateSet candidate_set(long k, Parity parity) {
    if (k < 4) throw std::invalid_argument("candidate_set needs k >= 4");
    CandidateSet cs;
    cs.k = k;
    cs.parity = parity;
    const long D = 2 * k + 2;
    const bool odd_m = parity == Parity::Odd;
    const long K = k + (odd_m ? 1 : 0);
    const long t0 = (K - 1) / 2, w = K / 2;
    cs.exhaustive = odd_m ? w >= 4 : w >= 2;
    if (!odd_m) {
        cs.theta = (k % 4 == 0 || k % 4 == 3) ? t0 + 1 : t0 + 2;
    } else {
        cs.theta = t0 + 1;
    }

    std::vector<long> thetas;
    std::vector<BigInt> fvals;
    for (long th = t0 + 1; th <= t0 + w; ++th) {
        CandidateBranch br;
        br.theta = th;
        br.f = detail::window_product(th, w);
        thetas.push_back(th);
        fvals.push_back(br.f.value());
        cs.branches.push_back(std::move(br));
    }
    for (const auto& br : cs.branches) {
        if (br.theta == cs.theta) cs.f_k = br.f;
    }

    std::vector<BigInt> cand;
    for (auto& br : cs.branches) {
        br.f.for_each_divisor([&](const BigInt& delta) {
            if (!detail::qualifies(delta, parity)) return true;
            BigInt n = delta - br.theta;
            if (n >= 2) cand.push_back(std::move(n));
            ++br.qualifying_divisors;
            return true;
        });
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    cs.raw_candidates = cand.size();

    std::vector<BigInt> kept;
    for (const auto& n : cand) {
        bool ok = true;
        for (std::size_t i = 0; i < thetas.size() && ok; ++i) {
            const BigInt v = n + thetas[i];
            if (detail::qualifies(v, parity) && !divides(v, fvals[i])) ok = false;
        }
        if (ok) kept.push_back(n);
    }
    cs.after_divisibility = kept.size();

    std::vector<BigInt> top_ok;
    for (const auto& n : kept) {
        const auto top = top_coefficient_even_dim(n, D, odd_m);
        if (detail::denominator_allowed(top.denominator(), odd_m)) top_ok.push_back(n);
    }
    cs.after_top = top_ok.size();
    for (const auto& n : top_ok) {
        const auto top = top_coefficient_even_dim(n, D, odd_m);
        if (!detail::denominator_allowed(second_coefficient_denominator(top, D, odd_m), odd_m)) continue;
        cs.surviving_n.push_back(to_int64(n));
    }
    return cs;
}

// Classification

struct CellRecord {
    long m = 0;
    BigInt sphere_dim;
    bool exists = false;
    std::string evidence;  // "certificate" or a witness kind
    std::string detail;
};

inline CellRecord summarize(const StiffVerdict& v) {
    CellRecord c;
    c.m = v.m;
    c.sphere_dim = v.sphere_dim;
    c.exists = v.exists();
    if (v.exists()) {
        c.evidence = "certificate";
        std::ostringstream os;
        for (std::size_t i = 0; i < v.roots.size(); ++i) os << (i ? " " : "") << v.roots[i].str();
        c.detail = os.str();
    } else {
        c.evidence = witness_kind(*v.witness);
        c.detail = describe(*v.witness);
    }
    return c;
}

struct ClassifyOptions {
    std::optional<Parity> only;
    /// 0 means unlimited.
    std::size_t max_cells = 0;
    double max_seconds = 0;
    unsigned workers = 1;
};

/// The m values whose verdicts settle a dimension, with the reason for each range.
struct DimensionPlan {
    long sphere_dim = 0;
    std::vector<long> m_values;
    std::vector<BoundResult> bounds;
    std::vector<std::string> notes;
};

namespace detail {

inline constexpr long kStructuralSweep = 64;

inline bool uses_pipeline(long D, Parity p) {
    if (D % 2 != 0) return false;
    return p == Parity::Even ? D >= 12 : D >= 16;
}

}  // namespace detail

inline DimensionPlan plan_dimension(long D, const ClassifyOptions& opt = {}) {
    if (D < 3) throw std::invalid_argument("plan_dimension needs D >= 3");
    DimensionPlan plan;
    plan.sphere_dim = D;
    std::set<long> ms;
    if (!opt.only || *opt.only == Parity::Odd) ms.insert(1);
    for (Parity p : {Parity::Even, Parity::Odd}) {
        if (opt.only && *opt.only != p) continue;
        const BoundResult b = n_upper_bound(D, p);
        plan.bounds.push_back(b);
        if (detail::uses_pipeline(D, p)) {
            const CandidateSet cs = candidate_set((D - 2) / 2, p);
            ms.insert(degree_of(1, p));
            for (long n : cs.surviving_n) ms.insert(degree_of(n, p));
            std::ostringstream os;
            os << parity_name(p) << " m: divisor pruning kept " << cs.surviving_n.size() << " of "
               << cs.raw_candidates << " candidates";
            plan.notes.push_back(os.str());
            continue;
        }
        long last = to_int64(b.last_open());
        const bool structural = D <= 10 && D % 2 == 0;
        if (structural) last = std::max(last, detail::kStructuralSweep);
        for (long n = 1; n <= last; ++n) ms.insert(degree_of(n, p));
        std::ostringstream os;
        os << parity_name(p) << " m: direct sweep n <= " << last << ", beyond by " << b.theorem_tag;
        plan.notes.push_back(os.str());
    }
    plan.m_values.assign(ms.begin(), ms.end());
    return plan;
}

struct DimensionClassification {
    long sphere_dim = 0;
    bool all_m = false;
    std::vector<long> exists_m;
    std::vector<CellRecord> cells;
    std::vector<BoundResult> bounds;
    std::vector<std::string> notes;
    bool complete = false;
    std::size_t cells_examined = 0;
};

struct Cell {
    long m = 0;
    BigInt sphere_dim;
};

/// Evaluates cells in order, in chunks, until done or the cell/time budget runs out.
/// `sink` sees every record on the calling thread, in input order.
inline std::vector<CellRecord> evaluate_cells(const std::vector<Cell>& cells, const ClassifyOptions& opt, bool& complete,
                                              const std::function<void(const CellRecord&)>& sink = {}) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CellRecord> out;
    complete = true;
    const std::size_t chunk = std::max<std::size_t>(16, 4 * std::max(1U, opt.workers));
    for (std::size_t pos = 0; pos < cells.size(); pos += chunk) {
        std::size_t end = std::min(cells.size(), pos + chunk);
        if (opt.max_cells != 0) {
            if (out.size() >= opt.max_cells) {
                complete = false;
                break;
            }
            end = std::min(end, pos + (opt.max_cells - out.size()));
        }
        if (opt.max_seconds > 0) {
            const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el > opt.max_seconds) {
                complete = false;
                break;
            }
        }
        auto part = parallel_map<CellRecord>(end - pos, opt.workers, [&](std::size_t i) {
            return summarize(stiff_exists(cells[pos + i].m, cells[pos + i].sphere_dim));
        });
        for (auto& c : part) {
            if (sink) sink(c);
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline std::vector<Cell> dimension_cells(long D, const std::vector<long>& ms) {
    std::vector<Cell> cells;
    cells.reserve(ms.size());
    for (long m : ms) cells.push_back({m, BigInt(D)});
    return cells;
}

/// Degrees m >= 1 admitting an m-stiff configuration in S^{D-1}.
inline DimensionClassification classify_dimension(long D, const ClassifyOptions& opt = {}) {
    if (D < 2) throw std::invalid_argument("classify_dimension needs D >= 2");
    DimensionClassification r;
    r.sphere_dim = D;
    if (D == 2) {
        r.all_m = true;
        r.complete = true;
        r.notes.push_back("regular 2m-gon for every m");
        return r;
    }
    const DimensionPlan plan = plan_dimension(D, opt);
    r.bounds = plan.bounds;
    r.notes = plan.notes;
    r.cells = evaluate_cells(dimension_cells(D, plan.m_values), opt, r.complete);
    r.cells_examined = r.cells.size();
    for (const auto& c : r.cells) {
        if (c.exists) r.exists_m.push_back(c.m);
    }
    std::sort(r.exists_m.begin(), r.exists_m.end());
    return r;
}

struct DegreeClassification {
    long m = 0;
    BigInt d_max;
    /// Every D in [3, d_max] qualifies (m <= 3).
    bool all_dimensions = false;
    std::vector<BigInt> dims;
    /// Exhaustive only up to the search bounds recorded in notes.
    bool heuristic = false;
    std::vector<std::string> notes;
};

struct DegreeOptions {
    long mordell_x_bound = 1000000;
    long direct_limit = 10000;
    unsigned workers = 1;
};

/// Dimensions that must be checked directly for m >= 6: bounded Mordell
/// candidates plus every D up to the direct limit.
struct DegreeCandidates {
    std::vector<BigInt> dims;
    std::size_t mordell_solutions = 0;
    std::vector<std::string> notes;
};

inline DegreeCandidates degree_candidates(long m, const BigInt& d_max, const DegreeOptions& opt = {}) {
    if (m < 6) throw std::invalid_argument("degree_candidates needs m >= 6");
    DegreeCandidates r;
    std::set<BigInt> candidates;
    if (m <= 11) {
        const auto sweep = mordell_sweep(m, opt.mordell_x_bound, opt.workers);
        std::size_t from_mordell = 0;
        for (const auto& c : sweep) {
            r.mordell_solutions += c.solutions.size();
            for (const auto& d : c.dims_to_check) {
                if (d <= d_max && candidates.insert(d).second) ++from_mordell;
            }
        }
        std::ostringstream os;
        os << "A y^2 - B x^3 = 2 over " << mordell_ab_candidates(m).pairs.size() << " pairs with x <= "
           << opt.mordell_x_bound << ": " << r.mordell_solutions << " solutions, " << from_mordell
           << " candidate dimensions";
        r.notes.push_back(os.str());
        if (m == 11) r.notes.push_back("m = 11: the (A, B) grid is not exhaustive");
    } else {
        r.notes.push_back("no Diophantine reduction for m >= 12");
    }
    const BigInt direct = std::min<BigInt>(d_max, BigInt(opt.direct_limit));
    for (BigInt d = 3; d <= direct; ++d) candidates.insert(d);
    if (direct >= 3) r.notes.push_back("direct check of every D <= " + direct.get_str());
    r.dims.assign(candidates.begin(), candidates.end());
    return r;
}

/// Sphere dimensions D in [3, d_max] admitting an m-stiff configuration.
inline DegreeClassification classify_degree(long m, const BigInt& d_max, const DegreeOptions& opt = {}) {
    if (m < 1) throw std::invalid_argument("classify_degree needs m >= 1");
    DegreeClassification r;
    r.m = m;
    r.d_max = d_max;
    if (m <= 3) {
        r.all_dimensions = d_max >= 3;
        r.notes.push_back("exists in every dimension");
        return r;
    }
    if (m == 4 || m == 5) {
        r.dims = m == 4 ? dims_for_m4_up_to(d_max) : dims_for_m5_up_to(d_max);
        r.notes.push_back(m == 4 ? "6(D+1)(D+2) is a square" : "10(D+1)(D+4) is a square");
        return r;
    }
    r.heuristic = true;
    const DegreeCandidates cand = degree_candidates(m, d_max, opt);
    r.notes = cand.notes;
    const auto verdicts = parallel_map<char>(cand.dims.size(), opt.workers, [&](std::size_t i) {
        return stiff_exists(m, cand.dims[i]).exists() ? 1 : 0;
    });
    for (std::size_t i = 0; i < cand.dims.size(); ++i) {
        if (verdicts[i]) r.dims.push_back(cand.dims[i]);
    }
    return r;
}

// Reproduction harness

struct TheoremReport {
    std::string tag;
    std::string statement;
    std::string scale;
    bool agrees = false;
    std::vector<std::string> lines;
};

inline std::vector<std::string> theorem_tags() {
    return {"thm-4.1", "thm-4.2", "thm-4.3", "thm-4.4", "thm-4.5", "thm-4.6",
            "thm-4.9", "thm-4.10", "thm-6.1", "thm-6.2"};
}

namespace detail {

inline std::string join(const std::vector<long>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

inline bool check_dimension(TheoremReport& rep, long D, std::optional<Parity> only, std::vector<long> expected,
                            unsigned workers) {
    ClassifyOptions opt;
    opt.only = only;
    opt.workers = workers;
    const auto r = classify_dimension(D, opt);
    std::sort(expected.begin(), expected.end());
    const bool ok = r.complete && r.exists_m == expected;
    rep.lines.push_back("D=" + std::to_string(D) + " " + join(r.exists_m) + (ok ? " ok" : " MISMATCH expected " + join(expected)));
    return ok;
}

}  // namespace detail

/// Re-derives a classification statement at the given scale.
inline TheoremReport verify_theorem(const std::string& tag, long scale = 0, unsigned workers = 1) {
    TheoremReport rep;
    rep.tag = tag;
    bool ok = true;
    if (tag == "thm-4.1") {
        const long top = scale > 0 ? scale : 40;
        rep.statement = "even D >= 8: 2n-stiff iff n = 1";
        rep.scale = "even D in [8, " + std::to_string(top) + "]";
        for (long D = 8; D <= top; D += 2) ok &= detail::check_dimension(rep, D, Parity::Even, {2}, workers);
    } else if (tag == "thm-4.2") {
        const long top = scale > 0 ? scale : 40;
        rep.statement = "even D >= 12: (2n+1)-stiff iff n = 0, 1 or (D, n) = (26, 2)";
        rep.scale = "even D in [12, " + std::to_string(top) + "]";
        for (long D = 12; D <= top; D += 2) {
            std::vector<long> e{1, 3};
            if (D == 26) e.push_back(5);
            ok &= detail::check_dimension(rep, D, Parity::Odd, e, workers);
        }
    } else if (tag == "thm-4.3") {
        const long top = scale > 0 ? scale : 99;
        rep.statement = "odd D: m in {1,2,3} plus (23,4), (241,4), (241,5), (1079,5)";
        rep.scale = "odd D in [3, " + std::to_string(top) + "]";
        for (long D = 3; D <= top; D += 2) {
            std::vector<long> e{1, 2, 3};
            if (D == 23 || D == 241) e.push_back(4);
            if (D == 241 || D == 1079) e.push_back(5);
            ok &= detail::check_dimension(rep, D, std::nullopt, e, workers);
        }
    } else if (tag == "thm-4.4") {
        rep.statement = "D = 4: 2n-stiff iff n = 1";
        rep.scale = "D = 4, even m";
        ok = detail::check_dimension(rep, 4, Parity::Even, {2}, workers);
    } else if (tag == "thm-4.5") {
        rep.statement = "D = 4: (2n+1)-stiff iff n = 0, 1, 2";
        rep.scale = "D = 4, odd m";
        ok = detail::check_dimension(rep, 4, Parity::Odd, {1, 3, 5}, workers);
    } else if (tag == "thm-4.6" || tag == "thm-4.9" || tag == "thm-4.10") {
        const long D = tag == "thm-4.6" ? 6 : tag == "thm-4.9" ? 8 : 10;
        rep.statement = "D = " + std::to_string(D) + ": (2n+1)-stiff iff n = 0, 1";
        rep.scale = "D = " + std::to_string(D) + ", odd m";
        ok = detail::check_dimension(rep, D, Parity::Odd, {1, 3}, workers);
    } else if (tag == "thm-6.1") {
        const long xb = scale > 0 ? scale : 10000;
        rep.statement = "m = 6..10: no m-stiff configuration for D > 2";
        rep.scale = "bounded search |x| <= " + std::to_string(xb) + ", direct D <= 1000";
        DegreeOptions o;
        o.mordell_x_bound = xb;
        o.direct_limit = 1000;
        o.workers = workers;
        for (long m = 6; m <= 10; ++m) {
            const auto r = classify_degree(m, BigInt(1000000000000L), o);
            const bool good = r.dims.empty();
            ok &= good;
            rep.lines.push_back("m=" + std::to_string(m) + (good ? " none found" : " FOUND " + r.dims.front().get_str()));
        }
    } else if (tag == "thm-6.2") {
        const long top = scale > 0 ? scale : 10;
        rep.statement = "D = 6: S_{2n} with n = 2^l - 1 has a Newton polygon slope 3/2 at p = 2";
        rep.scale = "l in [2, " + std::to_string(top) + "]";
        for (long l = 2; l <= top; ++l) {
            const long n = (1L << l) - 1;
            const auto np = s_newton_polygon(BDParams::make(2 * n, 6L), 2);
            const bool has = std::find(np.slopes.begin(), np.slopes.end(), Rational(3, 2)) != np.slopes.end();
            ok &= has;
            rep.lines.push_back("n=" + std::to_string(n) + (has ? " slope 3/2 present" : " slope 3/2 MISSING"));
        }
    } else {
        throw std::invalid_argument("unknown theorem tag: " + tag);
    }
    rep.agrees = ok;
    return rep;
}

}  // namespace stiff
