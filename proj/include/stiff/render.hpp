#pragma once

#include "stiff/quad_surd.hpp"
#include "stiff/stiffness.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiff {

/// Positive zero with the given square, written as 1/sqrt(45), sqrt(3)/2,
/// sqrt(3/208) or 1/21; radicands are never reduced.
inline std::string render_node(const Rational& node_sq) {
    if (node_sq.is_zero()) return "0";
    const BigInt& p = node_sq.num();
    const BigInt& q = node_sq.den();
    const bool ps = mpz_perfect_square_p(p.get_mpz_t()) != 0;
    const bool qs = mpz_perfect_square_p(q.get_mpz_t()) != 0;
    if (ps && qs) return Rational(floor_sqrt(p), floor_sqrt(q)).str();
    if (ps) return floor_sqrt(p).get_str() + "/sqrt(" + q.get_str() + ")";
    if (qs) {
        const std::string root = "sqrt(" + p.get_str() + ")";
        return q == 1 ? root : root + "/" + floor_sqrt(q).get_str();
    }
    return "sqrt(" + p.get_str() + "/" + q.get_str() + ")";
}

/// Squares of the positive zeros of the Chebyshev polynomial T_m, m in 2..5,
/// outermost first: (1 + cos((2k-1)pi/m)) / 2.
inline std::vector<QuadSurd> circle_node_squares(long m) {
    const Rational h(1, 2);
    switch (m) {
        case 2: return {QuadSurd(h)};
        case 3: return {QuadSurd(Rational(3, 4))};
        case 4: return {QuadSurd(h, Rational(1, 4), BigInt(2)), QuadSurd(h, Rational(-1, 4), BigInt(2))};
        case 5:
            return {QuadSurd(Rational(5, 8), Rational(1, 8), BigInt(5)), QuadSurd(Rational(5, 8), Rational(-1, 8), BigInt(5))};
        default: throw std::invalid_argument("closed-form circle nodes need 2 <= m <= 5");
    }
}

/// Positive zeros of P_m for D = 2, outermost first.
inline std::vector<std::string> circle_nodes(long m) {
    std::vector<std::string> out;
    if (m >= 2 && m <= 5) {
        for (const auto& s : circle_node_squares(m)) {
            out.push_back(s.is_rational() ? render_node(s.rational()) : "sqrt(" + s.str() + ")");
        }
    } else {
        for (long k = 1; 2 * k <= m; ++k) {
            out.push_back("cos(" + (k == 1 ? std::string() : std::to_string(2 * k - 1)) + "pi/" +
                          std::to_string(2 * m) + ")");
        }
    }
    if (m % 2 != 0) out.push_back("0");
    return out;
}

/// One row per dimension: positive zeros outermost first (0 last for odd m) and
/// the matching Christoffel numbers.
struct TableRow {
    BigInt sphere_dim;
    std::vector<std::string> nodes;
    std::vector<Rational> lambdas;
};

inline TableRow table_row(const StiffVerdict& v) {
    if (!v.exists()) throw std::invalid_argument("table rows need an existing configuration");
    TableRow row;
    row.sphere_dim = v.sphere_dim;
    if (v.sphere_dim == 2) {
        row.nodes = circle_nodes(v.m);
        row.lambdas.assign(static_cast<std::size_t>((v.m + 1) / 2), Rational(1, v.m));
        return row;
    }
    for (std::size_t i = 0; i < v.node_sq.size(); ++i) {
        row.nodes.push_back(render_node(v.node_sq[i]));
        row.lambdas.push_back(v.root_lambdas[i]);
    }
    if (v.zero_lambda) {
        row.nodes.push_back("0");
        row.lambdas.push_back(*v.zero_lambda);
    }
    return row;
}

inline std::string join_strings(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

inline std::vector<std::string> rational_strings(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

inline std::vector<std::string> signed_nodes(const std::vector<std::string>& nodes) {
    std::vector<std::string> out;
    for (const auto& n : nodes) out.push_back(n == "0" ? n : "+-" + n);
    return out;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render_table_csv(const std::vector<TableRow>& rows, long m) {
    std::ostringstream os;
    const long cols = (m + 1) / 2;
    os << "d";
    for (long i = 1; i <= cols; ++i) os << ",zero_" << i;
    for (long i = 1; i <= cols; ++i) os << ",lambda_" << i;
    os << "\r\n";
    for (const auto& r : rows) {
        os << r.sphere_dim.get_str();
        for (const auto& n : r.nodes) os << ',' << csv_field(n);
        for (const auto& l : r.lambdas) os << ',' << l.str();
        os << "\r\n";
    }
    return os.str();
}

inline std::string render_table_markdown(const std::vector<TableRow>& rows, long m) {
    std::ostringstream os;
    os << "| d | zeros of P_" << m << " | lambda |\n|---|---|---|\n";
    for (const auto& r : rows) {
        os << "| " << r.sphere_dim.get_str() << " | " << join_strings(signed_nodes(r.nodes), ", ") << " | "
           << join_strings(rational_strings(r.lambdas), ", ") << " |\n";
    }
    return os.str();
}

inline std::string render_table_text(const std::vector<TableRow>& rows, long m) {
    const std::string header = "zeros of P_" + std::to_string(m);
    std::vector<std::string> d, z, l;
    std::size_t wd = 1, wz = header.size();
    for (const auto& r : rows) {
        d.push_back(r.sphere_dim.get_str());
        z.push_back(join_strings(signed_nodes(r.nodes), ", "));
        l.push_back(join_strings(rational_strings(r.lambdas), ", "));
        wd = std::max(wd, d.back().size());
        wz = std::max(wz, z.back().size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    std::ostringstream os;
    os << pad("d", wd) << "  " << pad(header, wz) << "  lambda\n";
    for (std::size_t i = 0; i < rows.size(); ++i) os << pad(d[i], wd) << "  " << pad(z[i], wz) << "  " << l[i] << "\n";
    return os.str();
}

}  // namespace stiff
