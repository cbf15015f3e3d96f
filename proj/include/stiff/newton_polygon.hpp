#pragma once

#include "stiff/factor.hpp"
#include "stiff/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stiff {

struct PolygonPoint {
    long index = 0;
    std::optional<long> valuation;  // nullopt = infinity (zero coefficient)
    friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

/// Lower convex hull of (i + 1, ord_p(a_i)) for F(x) = sum a_i x^(k-i),
/// preceded by the point (0, 0).
///
/// Zero coefficients are left out of the hull. Collinear points are not
/// vertices. `slopes` lists the edges to the right of x = 1, i.e. the part
/// of the polygon built from the coefficients themselves.
struct NewtonPolygon {
    BigInt prime;
    std::vector<PolygonPoint> points;
    std::vector<std::pair<long, long>> vertices;
    std::vector<Rational> slopes;

    bool all_slopes_integer() const {
        for (const auto& s : slopes) {
            if (!s.is_integer()) return false;
        }
        return true;
    }

    std::optional<Rational> first_non_integer_slope() const {
        for (const auto& s : slopes) {
            if (!s.is_integer()) return s;
        }
        return std::nullopt;
    }
};

/// Builds the polygon from precomputed valuations ord_p(a_0) .. ord_p(a_k);
/// nullopt marks a zero coefficient.
inline NewtonPolygon newton_polygon_from_valuations(const std::vector<std::optional<long>>& descending,
                                                     const BigInt& p) {
    if (descending.empty()) throw std::invalid_argument("newton_polygon: empty coefficient list");
    if (!descending.front()) throw std::invalid_argument("newton_polygon: leading coefficient is zero");
    NewtonPolygon np;
    np.prime = p;
    np.points.reserve(descending.size() + 1);
    np.points.push_back({0, 0L});
    for (std::size_t i = 0; i < descending.size(); ++i) {
        np.points.push_back({static_cast<long>(i) + 1, descending[i]});
    }
    auto cross = [](const std::pair<long, long>& o, const std::pair<long, long>& a, const std::pair<long, long>& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    // Monotone chain, lower hull only; points are already sorted by index.
    auto lower_hull = [&](long min_index) {
        std::vector<std::pair<long, long>> hull;
        for (const auto& pt : np.points) {
            if (!pt.valuation || pt.index < min_index) continue;
            const std::pair<long, long> q{pt.index, *pt.valuation};
            while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0) hull.pop_back();
            hull.push_back(q);
        }
        return hull;
    };
    np.vertices = lower_hull(0);
    const auto tail = lower_hull(1);
    for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
        np.slopes.emplace_back(BigInt(tail[i + 1].second - tail[i].second), BigInt(tail[i + 1].first - tail[i].first));
    }
    return np;
}

/// `descending` lists a_0 (leading) .. a_k (constant).
inline NewtonPolygon newton_polygon(const std::vector<BigInt>& descending, const BigInt& p) {
    if (descending.empty()) throw std::invalid_argument("newton_polygon: empty coefficient list");
    if (descending.front() == 0) throw std::invalid_argument("newton_polygon: leading coefficient is zero");
    if (!is_probable_prime(p)) throw std::invalid_argument("newton_polygon: " + p.get_str() + " is not prime");
    std::vector<std::optional<long>> vals;
    vals.reserve(descending.size());
    for (const auto& a : descending) {
        if (a == 0) {
            vals.emplace_back();
        } else {
            vals.emplace_back(static_cast<long>(valuation(a, p)));
        }
    }
    return newton_polygon_from_valuations(vals, p);
}

/// Newton polygon of a polynomial with integer coefficients.
inline NewtonPolygon newton_polygon(const RatPoly& p, const BigInt& prime) {
    std::vector<BigInt> desc;
    for (long i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_integer()) throw std::invalid_argument("newton_polygon: coefficients must be integers");
        desc.push_back(c.num());
    }
    return newton_polygon(desc, prime);
}

}  // namespace stiff
