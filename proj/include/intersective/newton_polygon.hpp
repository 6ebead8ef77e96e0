#pragma once

#include <vector>

#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/intpoly.hpp"
#include "intersective/ratpoly.hpp"

namespace intersective {

// Lower convex envelope of the coefficient-valuation points
// {(i, v_p(a_i)) : a_i != 0}. Slopes strictly increase left to right;
// collinear interior points are not vertices. A segment from (r, v_r) to
// (s, v_s) of slope -m certifies exactly s - r roots of p-adic valuation m.
struct NewtonVertex {
    long index;     // i
    long valuation; // v_p(a_i); valuations of rational coefficients are integers
    friend bool operator==(const NewtonVertex& a, const NewtonVertex& b) {
        return a.index == b.index && a.valuation == b.valuation;
    }
};

struct NewtonSegment {
    long start;      // r
    long end;        // s
    Rational slope;  // (v_s - v_r) / (s - r); roots on this segment have valuation -slope
    long length() const { return end - start; }
    Rational root_valuation() const { return -slope; }
};

struct NewtonPolygon {
    BigInt p;
    unsigned stripped_x_power = 0; // roots of valuation infinity (x^r factor)
    std::vector<NewtonVertex> vertices;
    std::vector<NewtonSegment> segments;
};

namespace detail {

inline NewtonPolygon polygon_from_points(BigInt p, std::vector<std::pair<long, long>> pts,
                                         unsigned stripped) {
    NewtonPolygon np;
    np.p = std::move(p);
    np.stripped_x_power = stripped;
    // pts sorted by index, one point per nonzero coefficient
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // pop b unless slope(a,b) < slope(b,pt), exact integer cross test
            long long lhs = static_cast<long long>(b.second - a.second) * (pt.first - b.first);
            long long rhs = static_cast<long long>(pt.second - b.second) * (b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (const auto& [i, v] : hull) np.vertices.push_back({i, v});
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        NewtonSegment s;
        s.start = hull[k].first;
        s.end = hull[k + 1].first;
        s.slope = Rational(BigInt(hull[k + 1].second - hull[k].second),
                           BigInt(hull[k + 1].first - hull[k].first));
        np.segments.push_back(s);
    }
    return np;
}

} // namespace detail

// Polygon of a rational-coefficient polynomial at p. A zero constant term is
// handled by stripping the x-power first (recorded as roots of valuation
// infinity), matching the f(0) != 0 convention.
inline NewtonPolygon newton_polygon(const RatPoly& f, const BigInt& p) {
    if (f.degree() < 1) throw ConstantPolynomial("newton_polygon: need deg >= 1");
    unsigned strip = 0;
    while (f.coeff(strip).is_zero()) ++strip;
    std::vector<std::pair<long, long>> pts;
    for (long i = static_cast<long>(strip); i <= f.degree(); ++i) {
        Rational c = f.coeff(static_cast<size_t>(i));
        if (c.is_zero()) continue;
        pts.emplace_back(i - static_cast<long>(strip), c.valuation(p));
    }
    return detail::polygon_from_points(p, std::move(pts), strip);
}

inline NewtonPolygon newton_polygon(const IntPoly& f, const BigInt& p) {
    return newton_polygon(RatPoly(f), p);
}

// Optional exact shift x -> x + c before the polygon is taken.
inline NewtonPolygon newton_polygon_shifted(const IntPoly& f, const BigInt& p, const BigInt& c) {
    return newton_polygon(f.shift(c), p);
}

// Valuation partition of the finite-valuation roots: each segment (r, s, -m)
// contributes (m, s - r). Counts sum to deg f minus the stripped x-power.
inline std::vector<std::pair<Rational, unsigned>> root_valuation_partition(const NewtonPolygon& np) {
    std::vector<std::pair<Rational, unsigned>> out;
    for (const auto& s : np.segments)
        out.emplace_back(s.root_valuation(), static_cast<unsigned>(s.length()));
    return out;
}

} // namespace intersective
