#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "gonal/errors.hpp"

namespace gonal {

struct LatticePoint {
    long long x = 0;
    long long y = 0;
    friend bool operator==(LatticePoint, LatticePoint) = default;
    friend auto operator<=>(LatticePoint, LatticePoint) = default;  // lexicographic (x, y)
};

inline long long cross(LatticePoint o, LatticePoint a, LatticePoint b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline long long gcd_ll(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// Lattice points on the closed segment [a, b]: gcd(|dx|, |dy|) + 1.
inline long long edge_lattice_count(LatticePoint a, LatticePoint b) {
    if (a == b) throw InvalidArgumentError("edge_lattice_count: endpoints coincide");
    return gcd_ll(b.x - a.x, b.y - a.y) + 1;
}

// Convex lattice polygon in canonical form: vertices strictly convex in
// counterclockwise order, starting at the lexicographically least vertex.
// Degenerate hulls (a single point, a segment) are representable and flagged
// by dimension(); operations that need area reject them.
class LatticePolygon {
public:
    static LatticePolygon hull(std::span<const LatticePoint> points) {
        if (points.empty()) throw InvalidArgumentError("convex hull of empty point set");
        std::vector<LatticePoint> pts(points.begin(), points.end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() <= 2) return LatticePolygon(std::move(pts));
        std::vector<LatticePoint> h;
        h.reserve(pts.size() + 1);
        // lower chain, then upper chain; popping on cross <= 0 drops collinear
        // points, so every kept vertex is a strict corner
        for (const LatticePoint& p : pts) {
            while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
            h.push_back(p);
        }
        const std::size_t lower = h.size() + 1;
        for (std::size_t i = pts.size() - 1; i-- > 0;) {
            const LatticePoint& p = pts[i];
            while (h.size() >= lower && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
            h.push_back(p);
        }
        h.pop_back();  // last point repeats the first
        return LatticePolygon(std::move(h));
    }

    static LatticePolygon hull(std::initializer_list<LatticePoint> points) {
        return hull(std::span<const LatticePoint>(points.begin(), points.size()));
    }

    const std::vector<LatticePoint>& vertices() const { return v_; }
    int dimension() const { return v_.size() == 1 ? 0 : (v_.size() == 2 ? 1 : 2); }

    friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) {
        return a.v_ == b.v_;
    }

    // Twice the enclosed area (shoelace; positive in canonical orientation).
    long long twice_area() const {
        long long s = 0;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            const LatticePoint& a = v_[i];
            const LatticePoint& b = v_[(i + 1) % v_.size()];
            s += a.x * b.y - b.x * a.y;
        }
        return s;
    }

    bool contains(LatticePoint p) const {
        if (dimension() == 0) return p == v_[0];
        if (dimension() == 1) return on_segment(v_[0], v_[1], p);
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (cross(v_[i], v_[(i + 1) % v_.size()], p) < 0) return false;
        return true;
    }

    static bool on_segment(LatticePoint a, LatticePoint b, LatticePoint p) {
        if (cross(a, b, p) != 0) return false;
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
    }

private:
    explicit LatticePolygon(std::vector<LatticePoint> v) : v_(std::move(v)) {}
    std::vector<LatticePoint> v_;
};

inline LatticePolygon convex_hull(std::span<const LatticePoint> points) {
    return LatticePolygon::hull(points);
}

struct LatticeCounts {
    long long interior = 0;
    long long boundary = 0;
};

inline long long boundary_lattice_count(const LatticePolygon& poly) {
    const auto& v = poly.vertices();
    if (poly.dimension() == 0) return 1;
    if (poly.dimension() == 1) return edge_lattice_count(v[0], v[1]);
    long long total = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        total += gcd_ll(v[(i + 1) % v.size()].x - v[i].x, v[(i + 1) % v.size()].y - v[i].y);
    return total;
}

namespace detail {

inline long long floor_div(long long a, long long b) {
    // b > 0
    long long q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

// Interior lattice points counted row by row: for each integer height the
// convex slice is an interval whose endpoints are rational edge crossings,
// and the strictly interior integers are counted in closed form. O(height *
// edges), which matters because the Delta_r polygons are long and thin.
inline long long interior_row_scan(const LatticePolygon& poly) {
    const auto& v = poly.vertices();
    long long ymin = v[0].y, ymax = v[0].y;
    for (const auto& p : v) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    long long total = 0;
    for (long long y = ymin + 1; y < ymax; ++y) {
        bool have = false;
        long long lo_num = 0, lo_den = 1, hi_num = 0, hi_den = 1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const LatticePoint a = v[i];
            const LatticePoint b = v[(i + 1) % v.size()];
            if (a.y == b.y) continue;  // horizontal edges occur only at ymin/ymax
            if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
            long long num = a.x * (b.y - a.y) + (y - a.y) * (b.x - a.x);
            long long den = b.y - a.y;
            if (den < 0) {
                num = -num;
                den = -den;
            }
            if (!have) {
                lo_num = hi_num = num;
                lo_den = hi_den = den;
                have = true;
            } else {
                if (static_cast<__int128>(num) * lo_den < static_cast<__int128>(lo_num) * den) {
                    lo_num = num;
                    lo_den = den;
                }
                if (static_cast<__int128>(num) * hi_den > static_cast<__int128>(hi_num) * den) {
                    hi_num = num;
                    hi_den = den;
                }
            }
        }
        if (!have) continue;
        const long long first = floor_div(lo_num, lo_den) + 1;  // smallest integer > lo
        const long long last = ceil_div(hi_num, hi_den) - 1;    // largest integer < hi
        if (last >= first) total += last - first + 1;
    }
    return total;
}

}  // namespace detail

// Interior count via Pick's theorem, 2A = 2I + B - 2. Kept as an independent
// route; lattice_counts cross-checks against it in debug builds.
inline long long interior_by_pick(const LatticePolygon& poly) {
    if (poly.dimension() != 2)
        throw DegeneratePolygonError("interior count needs a 2-dimensional polygon");
    return (poly.twice_area() - boundary_lattice_count(poly) + 2) / 2;
}

inline LatticeCounts lattice_counts(const LatticePolygon& poly) {
    if (poly.dimension() != 2)
        throw DegeneratePolygonError("lattice_counts needs a 2-dimensional polygon");
    LatticeCounts out;
    out.boundary = boundary_lattice_count(poly);
    out.interior = detail::interior_row_scan(poly);
    assert(out.interior == interior_by_pick(poly));
    return out;
}

// The target polygon Delta_r = conv{(0,0), (0,gamma), (r,gamma),
// (r+l'_1, gamma-1), ..., (r+l'_gamma, 0)} for a right-hand profile l'
// (l'_0 = 0, partial sums of a strictly decreasing k'). Every right-hand
// edge carries exactly two lattice points; validated here.
inline LatticePolygon delta_r(int gamma, std::span<const long long> ell_prime, long long r) {
    if (gamma < 2) throw InvalidArgumentError("delta_r: gamma must be >= 2");
    if (ell_prime.size() != static_cast<std::size_t>(gamma) + 1 || ell_prime[0] != 0)
        throw InvalidArgumentError("delta_r: right profile must list l'_0..l'_gamma with l'_0 = 0");
    if (r < 1) throw DegeneratePolygonError("delta_r: r must be >= 1");
    std::vector<LatticePoint> pts;
    pts.push_back({0, 0});
    pts.push_back({0, gamma});
    pts.push_back({r, gamma});
    for (int i = 1; i <= gamma; ++i) pts.push_back({r + ell_prime[static_cast<std::size_t>(i)], gamma - i});
    LatticePolygon poly = LatticePolygon::hull(pts);
    // all listed points must survive as vertices, in canonical order:
    // (0,0), bottom-right, right chain upward, (r,gamma), (0,gamma)
    std::vector<LatticePoint> expected;
    expected.push_back({0, 0});
    for (int i = gamma; i >= 1; --i)
        expected.push_back({r + ell_prime[static_cast<std::size_t>(i)], gamma - i});
    expected.push_back({r, gamma});
    expected.push_back({0, gamma});
    if (poly.vertices() != expected)
        throw DegeneratePolygonError("delta_r: profile does not give a strictly convex polygon");
    for (int i = 1; i <= gamma; ++i) {
        LatticePoint a{r + ell_prime[static_cast<std::size_t>(i - 1)], gamma - i + 1};
        LatticePoint b{r + ell_prime[static_cast<std::size_t>(i)], gamma - i};
        if (edge_lattice_count(a, b) != 2)
            throw DegeneratePolygonError("delta_r: right-hand edge with extra lattice points");
    }
    return poly;
}

}  // namespace gonal
