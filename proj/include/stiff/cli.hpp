#pragma once

#include "stiff/diophantine.hpp"
#include "stiff/render.hpp"
#include "stiff/search.hpp"
#include "stiff/stiffness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiff::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNotExists = 3, kStateError = 4 };

enum class Format { Text, Csv, Json, Markdown };

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-negative integer written as digits or in e-notation ("1e8", "2.5e3").
inline BigInt parse_count(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    const auto e = s.find_first_of("eE");
    auto digits_only = [](const std::string& t) {
        return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    if (e == std::string::npos) {
        if (!digits_only(s)) throw UsageError("not a non-negative integer: " + text);
        return BigInt(s);
    }
    std::string mant = s.substr(0, e);
    const std::string ex = s.substr(e + 1);
    if (!digits_only(ex) || ex.size() > 6) throw UsageError("bad exponent in: " + text);
    long exp10 = std::stol(ex);
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    if (!digits_only(mant)) throw UsageError("not a non-negative integer: " + text);
    BigInt v(mant);
    if (exp10 < 0) {
        const BigInt p = stiff::pow(BigInt(10), static_cast<unsigned long>(-exp10));
        if (!divides(p, v)) throw UsageError("not an integer: " + text);
        return v / p;
    }
    return v * stiff::pow(BigInt(10), static_cast<unsigned long>(exp10));
}

inline long parse_long(const std::string& text, const char* what) {
    bool neg = !text.empty() && text.front() == '-';
    const BigInt v = parse_count(neg ? text.substr(1) : text);
    if (!v.fits_slong_p()) throw UsageError(std::string(what) + " is out of range: " + text);
    return neg ? -v.get_si() : v.get_si();
}

/// "5000" cells, "30s" seconds, or "5000,30s".
struct Budget {
    std::size_t cells = 0;
    double seconds = 0;
};

inline Budget parse_budget(const std::string& text) {
    Budget b;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw UsageError("empty budget component");
        if (part.back() == 's') {
            try {
                std::size_t used = 0;
                b.seconds = std::stod(part.substr(0, part.size() - 1), &used);
                if (used != part.size() - 1 || b.seconds <= 0) throw UsageError("bad time budget: " + part);
            } catch (const std::logic_error&) {
                throw UsageError("bad time budget: " + part);
            }
        } else {
            b.cells = static_cast<std::size_t>(to_int64(parse_count(part)));
            if (b.cells == 0) throw UsageError("cell budget must be positive");
        }
    }
    return b;
}

inline json big_json(const BigInt& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

inline json rationals_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json witness_json(const Witness& w) {
    json j;
    j["kind"] = witness_kind(w);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, NonIntegerCoefficient>) {
                j["r"] = x.r;
                if (x.value) j["value"] = x.value->str();
                j["prime"] = big_json(x.prime);
            } else if constexpr (std::is_same_v<T, IrrationalRoot>) {
                j["interval"] = {x.interval.lo.str(), x.interval.hi.str()};
                j["reason"] = x.reason;
            } else if constexpr (std::is_same_v<T, NonIntegerSlope>) {
                j["prime"] = big_json(x.prime);
                j["slope"] = x.slope.str();
                json v = json::array();
                for (const auto& [i, e] : x.vertices) v.push_back({i, e});
                j["vertices"] = v;
            } else {
                j["theorem"] = x.theorem;
            }
        },
        w);
    j["detail"] = describe(w);
    return j;
}

inline json verdict_json(const StiffVerdict& v) {
    json j;
    j["m"] = v.m;
    j["d"] = big_json(v.sphere_dim);
    j["verdict"] = v.exists() ? "exists" : "not_exists";
    j["roots"] = rationals_json(v.roots);
    if (v.exists()) {
        const TableRow row = table_row(v);
        j["zeros"] = row.nodes;
        j["lambdas"] = rationals_json(row.lambdas);
    } else {
        j["lambdas"] = json::array();
        j["witness"] = witness_json(*v.witness);
    }
    return j;
}

inline json cell_json(const CellRecord& c) {
    json j;
    j["m"] = c.m;
    j["d"] = big_json(c.sphere_dim);
    j["verdict"] = c.exists ? "exists" : "not_exists";
    j["evidence"] = c.evidence;
    j["detail"] = c.detail;
    return j;
}

inline CellRecord cell_from_json(const json& j) {
    CellRecord c;
    c.m = j.at("m").get<long>();
    const json& d = j.at("d");
    c.sphere_dim = d.is_string() ? BigInt(d.get<std::string>()) : BigInt(d.get<long>());
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "exists" && verdict != "not_exists") throw std::invalid_argument("bad verdict");
    c.exists = verdict == "exists";
    c.evidence = j.at("evidence").get<std::string>();
    c.detail = j.at("detail").get<std::string>();
    return c;
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Append-only JSON-lines log of evaluated cells. The first line identifies the run;
/// a trailing line without its newline (an interrupted write) is dropped on resume.
class Checkpoint {
public:
    Checkpoint(std::string path, json run) : path_(std::move(path)), run_(std::move(run)) {
        std::ifstream in(path_, std::ios::binary);
        std::string content;
        if (in) content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        in.close();
        const auto last_nl = content.rfind('\n');
        const std::size_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
        if (keep != content.size()) {
            content.resize(keep);
            std::ofstream trunc(path_, std::ios::binary | std::ios::trunc);
            trunc << content;
            if (!trunc) throw StateError("cannot rewrite checkpoint " + path_);
        }
        std::stringstream ss(content);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception&) {
                throw StateError("checkpoint " + path_ + " line " + std::to_string(lineno) + " is not valid JSON");
            }
            try {
                if (lineno == 1) {
                    if (j.at("kind") != "run" || j.at("run") != run_) {
                        throw StateError("checkpoint " + path_ + " belongs to a different run");
                    }
                    continue;
                }
                if (j.at("kind") != "cell") throw std::invalid_argument("unexpected record kind");
                CellRecord c = cell_from_json(j);
                cells_[key(c.m, c.sphere_dim)] = std::move(c);
            } catch (const StateError&) {
                throw;
            } catch (const std::exception&) {
                throw StateError("checkpoint " + path_ + " line " + std::to_string(lineno) + " is malformed");
            }
        }
        out_.open(path_, std::ios::binary | std::ios::app);
        if (!out_) throw StateError("cannot open checkpoint " + path_);
        if (lineno == 0) {
            json h;
            h["kind"] = "run";
            h["run"] = run_;
            h["tool_version"] = kToolVersion;
            h["timestamp"] = utc_timestamp();
            write(h);
        }
    }

    const CellRecord* find(long m, const BigInt& D) const {
        auto it = cells_.find(key(m, D));
        return it == cells_.end() ? nullptr : &it->second;
    }

    void append(const CellRecord& c) {
        json j;
        j["kind"] = "cell";
        const json body = cell_json(c);
        for (const auto& [k, v] : body.items()) j[k] = v;
        j["tool_version"] = kToolVersion;
        j["timestamp"] = utc_timestamp();
        write(j);
    }

    std::size_t replayed() const { return cells_.size(); }

private:
    static std::string key(long m, const BigInt& D) { return std::to_string(m) + ":" + D.get_str(); }

    void write(const json& j) {
        out_ << j.dump() << '\n';
        out_.flush();
        if (!out_) throw StateError("write to checkpoint " + path_ + " failed");
    }

    std::string path_;
    json run_;
    std::map<std::string, CellRecord> cells_;
    std::ofstream out_;
};

struct RunConfig {
    Format format = Format::Text;
    unsigned workers = 1;
    Budget budget;
    std::string checkpoint_path;
    int precision = 50;
    bool precision_set = false;
};

/// Evaluates the cells, reusing those already in the checkpoint, and returns
/// every record in input order.
inline std::vector<CellRecord> run_cells(const std::vector<Cell>& cells, const RunConfig& cfg, const json& run,
                                         bool& complete) {
    std::optional<Checkpoint> cp;
    if (!cfg.checkpoint_path.empty()) cp.emplace(cfg.checkpoint_path, run);
    std::vector<Cell> todo;
    for (const auto& c : cells) {
        if (!cp || !cp->find(c.m, c.sphere_dim)) todo.push_back(c);
    }
    ClassifyOptions opt;
    opt.max_cells = cfg.budget.cells;
    opt.max_seconds = cfg.budget.seconds;
    opt.workers = cfg.workers;
    const auto fresh = evaluate_cells(todo, opt, complete, [&](const CellRecord& r) {
        if (cp) cp->append(r);
    });
    std::map<std::pair<long, BigInt>, const CellRecord*> have;
    for (const auto& r : fresh) have[{r.m, r.sphere_dim}] = &r;
    std::vector<CellRecord> out;
    for (const auto& c : cells) {
        const CellRecord* r = cp ? cp->find(c.m, c.sphere_dim) : nullptr;
        if (!r) {
            auto it = have.find({c.m, c.sphere_dim});
            if (it != have.end()) r = it->second;
        }
        if (r) out.push_back(*r);
    }
    return out;
}

inline json bound_json(const BoundResult& b) {
    json j;
    j["parity"] = parity_name(b.parity);
    j["threshold"] = big_json(b.threshold);
    j["strict"] = b.strict;
    j["theorem"] = b.theorem_tag;
    j["conservative"] = b.conservative;
    j["first_excluded_n"] = big_json(b.first_excluded());
    return j;
}

inline std::string bound_text(const BoundResult& b) {
    std::ostringstream os;
    os << parity_name(b.parity) << " m: no configuration for n " << (b.strict ? "> " : ">= ") << b.threshold.get_str()
       << " (" << b.theorem_tag << (b.conservative ? ", conservative" : "") << ")";
    return os.str();
}

inline void emit_cells(std::ostream& out, const std::vector<CellRecord>& cells, Format f) {
    switch (f) {
        case Format::Json:
            for (const auto& c : cells) out << cell_json(c).dump() << '\n';
            break;
        case Format::Csv:
            out << "m,d,verdict,evidence,detail\r\n";
            for (const auto& c : cells) {
                out << c.m << ',' << c.sphere_dim.get_str() << ',' << (c.exists ? "exists" : "not_exists") << ','
                    << c.evidence << ',' << csv_field(c.detail) << "\r\n";
            }
            break;
        case Format::Markdown:
            out << "| m | d | verdict | evidence |\n|---|---|---|---|\n";
            for (const auto& c : cells) {
                out << "| " << c.m << " | " << c.sphere_dim.get_str() << " | " << (c.exists ? "exists" : "not_exists")
                    << " | " << c.evidence << " |\n";
            }
            break;
        case Format::Text:
            break;
    }
}

template <typename T>
std::string brace_list(const std::vector<T>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "}";
    return os.str();
}

// Commands

inline int cmd_exists(long m, const BigInt& D, const RunConfig& cfg, std::ostream& out) {
    if (m < 1) throw UsageError("--m must be at least 1");
    if (D < 2) throw UsageError("--d must be at least 2");
    const StiffVerdict v = stiff_exists(m, D);
    std::optional<CrossValidation> cv;
    if (cfg.precision_set && m >= 2 && D >= 3 && D.fits_slong_p()) cv = cross_validate(m, D.get_si(), cfg.precision);
    if (cfg.format == Format::Json) {
        json j = verdict_json(v);
        if (cv) j["numeric_check"] = {{"pass", cv->pass}, {"max_error", cv->max_error.str()}, {"message", cv->message}};
        out << j.dump() << '\n';
    } else if (cfg.format == Format::Csv) {
        out << "m,d,verdict,roots,lambdas,witness\r\n" << m << ',' << D.get_str() << ','
            << (v.exists() ? "exists" : "not_exists") << ',' << csv_field(join_strings(rational_strings(v.roots), " "))
            << ',';
        if (v.exists()) {
            out << csv_field(join_strings(rational_strings(table_row(v).lambdas), " ")) << ",\r\n";
        } else {
            out << ',' << csv_field(describe(*v.witness)) << "\r\n";
        }
    } else {
        out << "m = " << m << ", D = " << D.get_str() << ": " << (v.exists() ? "exists" : "does not exist") << '\n';
        if (v.exists()) {
            const TableRow row = table_row(v);
            if (!v.roots.empty()) out << "roots of S_m: " << join_strings(rational_strings(v.roots), ", ") << '\n';
            out << "zeros: " << join_strings(signed_nodes(row.nodes), ", ") << '\n';
            out << "lambdas: " << join_strings(rational_strings(row.lambdas), ", ") << '\n';
        } else {
            out << "witness (" << witness_kind(*v.witness) << "): " << describe(*v.witness) << '\n';
        }
        if (cv) out << "numeric check: " << (cv->pass ? "pass" : "FAIL") << ", " << cv->message << '\n';
    }
    return v.exists() ? kOk : kNotExists;
}

inline int cmd_classify_dim(long D, std::optional<long> max_m, const RunConfig& cfg, std::ostream& out) {
    if (D < 2) throw UsageError("--dim must be at least 2");
    if (max_m && *max_m < 1) throw UsageError("--max-m must be at least 1");
    if (D == 2) {
        if (cfg.format == Format::Json) {
            out << json({{"summary", {{"axis", "dim"}, {"d", 2}, {"all_m", true}, {"complete", true}}}}).dump() << '\n';
        } else {
            out << "D = 2: all m (regular 2m-gon)\n";
        }
        return kOk;
    }
    const DimensionPlan plan = plan_dimension(D);
    std::vector<long> ms;
    for (long m : plan.m_values) {
        if (!max_m || m <= *max_m) ms.push_back(m);
    }
    json run = {{"command", "classify"}, {"axis", "dim"}, {"d", D}, {"max_m", max_m ? json(*max_m) : json(nullptr)}};
    bool complete = false;
    const auto cells = run_cells(dimension_cells(D, ms), cfg, run, complete);
    complete = complete && cells.size() == ms.size();
    std::vector<long> exists;
    for (const auto& c : cells) {
        if (c.exists) exists.push_back(c.m);
    }
    emit_cells(out, cells, cfg.format);
    if (cfg.format == Format::Json) {
        json s;
        s["axis"] = "dim";
        s["d"] = D;
        if (max_m) s["max_m"] = *max_m;
        s["exists_m"] = exists;
        s["complete"] = complete;
        s["cells"] = cells.size();
        s["budget"] = {{"cells", cfg.budget.cells}, {"seconds", cfg.budget.seconds}};
        json bs = json::array();
        for (const auto& b : plan.bounds) bs.push_back(bound_json(b));
        s["bounds"] = bs;
        s["notes"] = plan.notes;
        out << json({{"summary", s}}).dump() << '\n';
    } else if (cfg.format == Format::Text) {
        out << "D = " << D << ": m in " << brace_list(exists) << (max_m ? " (m <= " + std::to_string(*max_m) + ")" : "")
            << '\n';
        out << "complete: " << (complete ? "yes" : "no") << " (" << cells.size() << " of " << ms.size()
            << " cells)\n";
        for (const auto& b : plan.bounds) out << bound_text(b) << '\n';
        for (const auto& n : plan.notes) out << n << '\n';
    }
    return kOk;
}

inline int cmd_classify_deg(long m, const BigInt& d_max, long x_bound, const RunConfig& cfg, std::ostream& out) {
    if (m < 1) throw UsageError("--deg must be at least 1");
    if (d_max < 2) throw UsageError("--max-d must be at least 2");
    if (m <= 3) {
        if (cfg.format == Format::Json) {
            out << json({{"summary", {{"axis", "deg"}, {"m", m}, {"all_d", true}, {"complete", true}}}}).dump() << '\n';
        } else {
            out << "m = " << m << ": all D in [2, " << d_max.get_str() << "]\n";
        }
        return kOk;
    }
    std::vector<json> records;
    std::vector<BigInt> dims;
    std::vector<std::string> notes;
    bool complete = true;
    bool heuristic = false;
    std::size_t cell_count = 0;
    if (m == 4 || m == 5) {
        const auto r = classify_degree(m, d_max);
        notes = r.notes;
        std::vector<BigInt> all{BigInt(2)};
        all.insert(all.end(), r.dims.begin(), r.dims.end());
        const auto verdicts = parallel_map<StiffVerdict>(all.size(), cfg.workers,
                                                         [&](std::size_t i) { return stiff_exists(m, all[i]); });
        for (const auto& v : verdicts) {
            if (!v.exists()) throw std::logic_error("Pell dimension failed the existence test");
            records.push_back(verdict_json(v));
            if (v.sphere_dim > 2) dims.push_back(v.sphere_dim);
        }
        cell_count = all.size();
        if (cfg.format == Format::Json) {
            for (const auto& j : records) out << j.dump() << '\n';
        } else if (cfg.format != Format::Text) {
            std::vector<TableRow> rows;
            for (const auto& v : verdicts) rows.push_back(table_row(v));
            out << (cfg.format == Format::Csv ? render_table_csv(rows, m) : render_table_markdown(rows, m));
        }
    } else {
        heuristic = true;
        DegreeOptions o;
        o.mordell_x_bound = x_bound;
        o.workers = cfg.workers;
        const DegreeCandidates cand = degree_candidates(m, d_max, o);
        notes = cand.notes;
        std::vector<Cell> cells;
        for (const auto& d : cand.dims) cells.push_back({m, d});
        json run = {{"command", "classify"}, {"axis", "deg"}, {"m", m}, {"max_d", d_max.get_str()},
                    {"x_bound", x_bound}};
        const auto recs = run_cells(cells, cfg, run, complete);
        complete = complete && recs.size() == cells.size();
        cell_count = recs.size();
        for (const auto& c : recs) {
            if (c.exists) dims.push_back(c.sphere_dim);
        }
        emit_cells(out, recs, cfg.format);
    }
    if (cfg.format == Format::Json) {
        json s;
        s["axis"] = "deg";
        s["m"] = m;
        s["max_d"] = big_json(d_max);
        json ds = json::array();
        for (const auto& d : dims) ds.push_back(big_json(d));
        s["dims"] = ds;
        if (m == 4 || m == 5) s["special"] = {2};
        s["complete"] = complete;
        s["heuristic"] = heuristic;
        s["cells"] = cell_count;
        s["budget"] = {{"cells", cfg.budget.cells}, {"seconds", cfg.budget.seconds}};
        s["notes"] = notes;
        out << json({{"summary", s}}).dump() << '\n';
    } else if (cfg.format == Format::Text) {
        std::vector<std::string> ds;
        for (const auto& d : dims) ds.push_back(d.get_str());
        out << "m = " << m << ": D in " << brace_list(ds) << (m <= 5 ? " plus the special case D = 2" : "") << '\n';
        if (m == 4 || m == 5) {
            for (const auto& j : records) {
                out << "  D = " << j["d"].dump() << ": lambdas "
                    << join_strings(j["lambdas"].get<std::vector<std::string>>(), ", ") << '\n';
            }
        }
        out << "complete: " << (complete ? "yes" : "no") << (heuristic ? " (heuristic: bounded search)" : "") << '\n';
        for (const auto& n : notes) out << n << '\n';
    }
    return kOk;
}

inline int cmd_tables(const std::string& which, const BigInt& limit, const RunConfig& cfg, std::ostream& out) {
    if (which != "m4" && which != "m5") throw UsageError("--which must be m4 or m5");
    if (limit < 1) throw UsageError("--limit must be at least 1");
    const long m = which == "m4" ? 4 : 5;
    std::vector<BigInt> dims;
    if (limit >= 2) dims.push_back(2);
    for (const auto& d : m == 4 ? dims_for_m4_up_to(limit) : dims_for_m5_up_to(limit)) dims.push_back(d);
    const auto rows = parallel_map<TableRow>(dims.size(), cfg.workers,
                                             [&](std::size_t i) { return table_row(stiff_exists(m, dims[i])); });
    switch (cfg.format) {
        case Format::Csv: out << render_table_csv(rows, m); break;
        case Format::Markdown: out << render_table_markdown(rows, m); break;
        case Format::Text: out << render_table_text(rows, m); break;
        case Format::Json:
            for (const auto& r : rows) {
                out << json({{"d", big_json(r.sphere_dim)}, {"zeros", r.nodes}, {"lambdas", rationals_json(r.lambdas)}})
                           .dump()
                    << '\n';
            }
            break;
    }
    return kOk;
}

inline int cmd_pell(const BigInt& D, const BigInt& M, long orbit, const RunConfig& cfg, std::ostream& out) {
    if (D <= 1 || is_perfect_square(D)) throw UsageError("--D must be a non-square integer > 1");
    if (M == 0) throw UsageError("--M must be nonzero");
    if (orbit < 1) throw UsageError("--limit must be at least 1");
    const UnitElement unit = fundamental_unit(D);
    const QuadInt g = norm_one_generator(unit);
    const PellBox box = pell_box(unit, M);
    const auto reps = pell_representatives(D, M);
    if (cfg.format == Format::Json) {
        json j;
        j["D"] = big_json(D);
        j["M"] = big_json(M);
        j["unit"] = unit.str();
        j["unit_norm"] = unit.norm;
        j["norm_one_generator"] = g.str();
        j["box"] = {{"x", big_json(box.x_bound)}, {"y", big_json(box.y_bound)}};
        json cls = json::array();
        for (const auto& r : reps) {
            json orb = json::array();
            for (const auto& q : pell_orbit(r, unit, static_cast<std::size_t>(orbit))) orb.push_back(q.str());
            cls.push_back({{"representative", r.value().str()}, {"orbit", orb}});
        }
        j["classes"] = cls;
        out << j.dump() << '\n';
        return kOk;
    }
    out << "x^2 - " << D.get_str() << " y^2 = " << M.get_str() << '\n';
    out << "fundamental unit: " << unit.str() << " (norm " << unit.norm << ")\n";
    out << "norm-one generator: " << g.str() << '\n';
    out << "search box: |x| <= " << box.x_bound.get_str() << ", |y| <= " << box.y_bound.get_str() << '\n';
    out << "classes: " << reps.size() << '\n';
    for (const auto& r : reps) {
        std::vector<std::string> orb;
        for (const auto& q : pell_orbit(r, unit, static_cast<std::size_t>(orbit))) orb.push_back(q.str());
        out << "  " << r.value().str() << ": " << join_strings(orb, ", ") << '\n';
    }
    return kOk;
}

inline int cmd_newton(long m, const BigInt& D, long prime, const RunConfig& cfg, std::ostream& out) {
    if (m < 2) throw UsageError("--m must be at least 2");
    if (D < 3) throw UsageError("--d must be at least 3");
    if (prime < 2 || !mpz_probab_prime_p(BigInt(prime).get_mpz_t(), 30)) throw UsageError("--p must be prime");
    const NewtonPolygon np = s_newton_polygon(BDParams::make(m, D), prime);
    const auto bad = np.first_non_integer_slope();
    if (cfg.format == Format::Json) {
        json j;
        j["m"] = m;
        j["d"] = big_json(D);
        j["p"] = prime;
        json pts = json::array();
        for (const auto& p : np.points) pts.push_back({p.index, p.valuation ? json(*p.valuation) : json("inf")});
        j["points"] = pts;
        json v = json::array();
        for (const auto& [i, e] : np.vertices) v.push_back({i, e});
        j["vertices"] = v;
        j["slopes"] = rationals_json(np.slopes);
        j["all_slopes_integer"] = np.all_slopes_integer();
        out << j.dump() << '\n';
        return kOk;
    }
    std::vector<std::string> v, s;
    for (const auto& [i, e] : np.vertices) v.push_back("(" + std::to_string(i) + "," + std::to_string(e) + ")");
    for (const auto& x : np.slopes) s.push_back(x.is_integer() ? x.str() : x.str() + " (non-integer)");
    out << "Newton polygon of the integer-root form of S_" << m << " for D = " << D.get_str() << " at p = " << prime
        << '\n';
    out << "vertices: " << join_strings(v, " ") << '\n';
    out << "slopes: " << join_strings(s, ", ") << '\n';
    out << (bad ? "non-integer slope " + bad->str() + ": S_m has a root that is not an integer"
                : std::string("all slopes integer"))
        << '\n';
    return kOk;
}

inline int cmd_bounds(long lo, long hi, const RunConfig& cfg, std::ostream& out) {
    if (lo < 3) throw UsageError("bounds need D >= 3");
    if (hi < lo) throw UsageError("empty dimension range");
    if (cfg.format == Format::Csv) out << "d,parity,threshold,strict,theorem,conservative\r\n";
    if (cfg.format == Format::Markdown) out << "| d | parity | excluded | theorem |\n|---|---|---|---|\n";
    for (long D = lo; D <= hi; ++D) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const BoundResult b = n_upper_bound(D, p);
            switch (cfg.format) {
                case Format::Json: {
                    json j = bound_json(b);
                    j["d"] = D;
                    out << j.dump() << '\n';
                    break;
                }
                case Format::Csv:
                    out << D << ',' << parity_name(p) << ',' << b.threshold.get_str() << ','
                        << (b.strict ? "true" : "false") << ',' << b.theorem_tag << ','
                        << (b.conservative ? "true" : "false") << "\r\n";
                    break;
                case Format::Markdown:
                    out << "| " << D << " | " << parity_name(p) << " | n " << (b.strict ? "> " : ">= ")
                        << b.threshold.get_str() << " | " << b.theorem_tag << " |\n";
                    break;
                case Format::Text: out << "D = " << D << ", " << bound_text(b) << '\n'; break;
            }
        }
    }
    return kOk;
}

inline int cmd_verify(const std::string& tag, long scale, const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> tags = tag == "all" ? theorem_tags() : std::vector<std::string>{tag};
    const auto known = theorem_tags();
    for (const auto& t : tags) {
        if (std::find(known.begin(), known.end(), t) == known.end()) {
            throw UsageError("unknown theorem tag " + t + " (known: " + join_strings(known, ", ") + ")");
        }
    }
    bool all = true;
    for (const auto& t : tags) {
        const TheoremReport r = verify_theorem(t, scale, cfg.workers);
        all = all && r.agrees;
        if (cfg.format == Format::Json) {
            out << json({{"tag", r.tag}, {"statement", r.statement}, {"scale", r.scale}, {"agrees", r.agrees}, {"lines", r.lines}})
                       .dump()
                << '\n';
        } else {
            out << r.tag << ": " << (r.agrees ? "agrees" : "DISAGREES") << " | " << r.statement << " | " << r.scale
                << '\n';
            for (const auto& l : r.lines) out << "  " << l << '\n';
        }
    }
    return all ? kOk : kNotExists;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide and classify m-stiff configurations on spheres"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", budget, checkpoint, precision;
    unsigned workers = 1;
    app.add_option("--format", format, "text, csv, json or markdown")->check(CLI::IsMember({"text", "csv", "json", "markdown"}));
    app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1U, 1024U));
    app.add_option("--budget", budget, "cell count and/or wall-clock cap, e.g. 5000 or 5000,30s");
    app.add_option("--checkpoint", checkpoint, "JSON-lines file to resume from and append to");
    app.add_option("--precision", precision, "decimal digits for numeric cross-checks (>= 20)");

    std::string m_s, d_s, max_d_s, max_m_s, which, p_s = "2", D_s, M_s, limit_s, dim_s, deg_s, tag;

    auto* exists = app.add_subcommand("exists", "decide one (m, D)");
    exists->add_option("--m", m_s)->required();
    exists->add_option("--d", d_s)->required();

    auto* classify = app.add_subcommand("classify", "classify a dimension or a degree");
    auto* dim_opt = classify->add_option("--dim", dim_s, "sphere dimension D");
    auto* deg_opt = classify->add_option("--deg", deg_s, "degree m");
    dim_opt->excludes(deg_opt);
    classify->add_option("--max-d", max_d_s, "largest D for --deg");
    classify->add_option("--max-m", max_m_s, "largest m for --dim");
    classify->add_option("--limit", limit_s, "x bound for the Mordell search (m >= 6)");

    auto* tables = app.add_subcommand("tables", "dimension tables for m = 4 and m = 5");
    tables->add_option("--which", which)->required();
    tables->add_option("--limit", limit_s);

    auto* pell = app.add_subcommand("pell", "solve x^2 - D y^2 = M up to units");
    pell->add_option("--D", D_s)->required();
    pell->add_option("--M", M_s)->required();
    pell->add_option("--limit", limit_s, "orbit elements per class");

    auto* newton = app.add_subcommand("newton", "Newton polygon of S_m");
    newton->add_option("--m", m_s)->required();
    newton->add_option("--d", d_s)->required();
    newton->add_option("--p", p_s);

    auto* bounds = app.add_subcommand("bounds", "largest n not excluded by the bounds");
    bounds->add_option("--d", d_s);
    bounds->add_option("--max-d", max_d_s);

    auto* verify = app.add_subcommand("verify", "re-derive a classification theorem");
    verify->add_option("tag", tag, "theorem tag or all");
    verify->add_option("--which", which, "theorem tag or all");
    verify->add_option("--limit", limit_s, "scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg;
        cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : format == "markdown" ? Format::Markdown : Format::Text;
        cfg.workers = workers;
        if (!budget.empty()) cfg.budget = parse_budget(budget);
        cfg.checkpoint_path = checkpoint;
        if (!precision.empty()) {
            cfg.precision = static_cast<int>(parse_long(precision, "--precision"));
            if (cfg.precision < 20 || cfg.precision > 10000) throw UsageError("--precision must lie in [20, 10000]");
            cfg.precision_set = true;
        }
        if (*exists) return cmd_exists(parse_long(m_s, "--m"), parse_count(d_s), cfg, out);
        if (*classify) {
            if (!dim_s.empty()) {
                std::optional<long> max_m;
                if (!max_m_s.empty()) max_m = parse_long(max_m_s, "--max-m");
                return cmd_classify_dim(parse_long(dim_s, "--dim"), max_m, cfg, out);
            }
            if (!deg_s.empty()) {
                if (max_d_s.empty()) throw UsageError("classify --deg needs --max-d");
                const long xb = limit_s.empty() ? 1000000 : parse_long(limit_s, "--limit");
                if (xb < 1) throw UsageError("--limit must be positive");
                return cmd_classify_deg(parse_long(deg_s, "--deg"), parse_count(max_d_s), xb, cfg, out);
            }
            throw UsageError("classify needs --dim or --deg");
        }
        if (*tables) return cmd_tables(which, limit_s.empty() ? BigInt(100000000L) : parse_count(limit_s), cfg, out);
        if (*pell) {
            auto signed_big = [](const std::string& s) {
                return !s.empty() && s.front() == '-' ? BigInt(-parse_count(s.substr(1))) : parse_count(s);
            };
            return cmd_pell(parse_count(D_s), signed_big(M_s), limit_s.empty() ? 4 : parse_long(limit_s, "--limit"), cfg,
                            out);
        }
        if (*newton) return cmd_newton(parse_long(m_s, "--m"), parse_count(d_s), parse_long(p_s, "--p"), cfg, out);
        if (*bounds) {
            if (d_s.empty() == max_d_s.empty()) throw UsageError("bounds needs exactly one of --d or --max-d");
            if (!d_s.empty()) {
                const long D = parse_long(d_s, "--d");
                return cmd_bounds(D, D, cfg, out);
            }
            return cmd_bounds(3, parse_long(max_d_s, "--max-d"), cfg, out);
        }
        if (*verify) {
            const std::string t = !tag.empty() ? tag : which;
            if (t.empty()) throw UsageError("verify needs a theorem tag");
            return cmd_verify(t, limit_s.empty() ? 0 : parse_long(limit_s, "--limit"), cfg, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const StateError& e) {
        err << "error: " << e.what() << '\n';
        return kStateError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kStateError;
    }
    return kUsage;
}

}  // namespace stiff::cli
