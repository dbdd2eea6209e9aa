#pragma once

// Test-only reference implementations, kept independent of the library paths
// they are used to check.

#include <cstdint>
#include <vector>

#include "gonal/curve.hpp"
#include "gonal/field.hpp"
#include "gonal/lattice.hpp"
#include "gonal/rng.hpp"
#include "gonal/unipoly.hpp"

namespace oracles {

using gonal::CurvePoly;
using gonal::FieldPtr;
using gonal::FqElem;
using gonal::LatticePoint;
using gonal::LatticePolygon;
using gonal::UniPoly;

// All monic polynomials of exact degree d, ascending canonical encoding.
inline std::vector<UniPoly> all_monic(const FieldPtr& field, int d) {
    const std::uint64_t q = field->cardinality();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    std::vector<UniPoly> out;
    out.reserve(total);
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(d) + 1, 0);
    codes.back() = 1;
    for (std::uint64_t index = 0; index < total; ++index) {
        std::uint64_t v = index;
        for (int i = 0; i < d; ++i) {
            codes[static_cast<std::size_t>(i)] = v % q;
            v /= q;
        }
        out.push_back(UniPoly::from_codes(field, codes));
    }
    return out;
}

// Irreducibility by pure trial division: no monic divisor of degree in
// [1, d-1]. No gcds, no Frobenius; deliberately naive.
inline bool trial_division_irreducible(const UniPoly& m) {
    for (int d = 1; d < m.degree(); ++d)
        for (const UniPoly& cand : all_monic(m.field(), d))
            if (gonal::divrem(m, cand).second.is_zero()) return false;
    return m.degree() >= 1;
}

// Squarefree test by trial division with every monic irreducible of degree
// <= max_factor_degree: squarefree iff no p^2 divides. Complete for inputs of
// degree <= 2 * max_factor_degree.
inline bool trial_division_squarefree(const UniPoly& a, int max_factor_degree) {
    for (int d = 1; d <= max_factor_degree; ++d)
        for (const UniPoly& p : all_monic(a.field(), d)) {
            if (!trial_division_irreducible(p)) continue;
            auto [q1, r1] = gonal::divrem(a, p);
            if (!r1.is_zero()) continue;
            if (gonal::divrem(q1, p).second.is_zero()) return false;
        }
    return true;
}

// Scalar determinant over a field by Gaussian elimination.
inline FqElem dense_determinant(std::vector<std::vector<FqElem>> m, const FieldPtr& K) {
    const std::size_t n = m.size();
    FqElem det = K->one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c].code == 0) ++pivot;
        if (pivot == n) return K->zero();
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = K->neg(det);
        }
        det = K->mul(det, m[c][c]);
        const FqElem inv = K->inv(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].code == 0) continue;
            const FqElem factor = K->mul(m[r][c], inv);
            for (std::size_t k = c; k < n; ++k)
                m[r][k] = K->sub(m[r][k], K->mul(factor, m[c][k]));
        }
    }
    return det;
}

// Scalar discriminant of f(a, y) with the formal block-size convention.
inline FqElem scalar_discriminant(const CurvePoly& f, const FieldPtr& K, FqElem a) {
    const int gamma = f.gamma();
    std::vector<FqElem> fa(static_cast<std::size_t>(gamma) + 1);
    for (int i = 0; i <= gamma; ++i) fa[static_cast<std::size_t>(i)] = f.fi(i).eval_in(K, a);
    const std::size_t n = static_cast<std::size_t>(2 * gamma - 1);
    std::vector<std::vector<FqElem>> m(n, std::vector<FqElem>(n, FqElem{0}));
    for (int row = 0; row < gamma - 1; ++row)
        for (int k = 0; k <= gamma; ++k)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] =
                fa[static_cast<std::size_t>(gamma - k)];
    for (int row = 0; row < gamma; ++row)
        for (int k = 0; k <= gamma - 1; ++k) {
            const int i = gamma - k;  // derivative coefficient i f_i
            m[static_cast<std::size_t>(gamma - 1 + row)][static_cast<std::size_t>(row + k)] =
                K->mul(fa[static_cast<std::size_t>(i)], K->from_int(i));
        }
    FqElem res = dense_determinant(std::move(m), K);
    FqElem disc = K->div(res, fa[static_cast<std::size_t>(gamma)]);
    const bool flip = ((static_cast<long long>(gamma) * (gamma - 1) / 2) % 2) != 0;
    return flip ? K->neg(disc) : disc;
}

// Lagrange interpolation (Newton form) through distinct points over K.
inline UniPoly interpolate(const FieldPtr& K, const std::vector<FqElem>& xs,
                           const std::vector<FqElem>& ys) {
    const std::size_t n = xs.size();
    std::vector<FqElem> dd(ys);  // divided differences, computed in place
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            FqElem num = K->sub(dd[i], dd[i - 1]);
            FqElem den = K->sub(xs[i], xs[i - level]);
            dd[i] = K->div(num, den);
            if (i == level) break;
        }
    UniPoly result = UniPoly::zero(K);
    UniPoly basis = UniPoly::constant(K, K->one());
    for (std::size_t i = 0; i < n; ++i) {
        result = result + basis.scaled(dd[i]);
        basis = basis * UniPoly(K, {K->neg(xs[i]), K->one()});
    }
    return result;
}

// Evaluation-interpolation discriminant: specialize t in an extension large
// enough to dodge the roots of f_gamma and to pin down the degree bound
// (2 gamma - 1) max_i deg f_i, then interpolate.
inline UniPoly interpolated_discriminant(const CurvePoly& f) {
    const FieldPtr& base = f.field();
    const int gamma = f.gamma();
    int maxdeg = 0;
    for (int i = 0; i <= gamma; ++i) maxdeg = std::max(maxdeg, f.fi(i).degree());
    const long long bound = static_cast<long long>(2 * gamma - 1) * maxdeg;
    const long long need = bound + static_cast<long long>(gamma) * maxdeg + 1;
    int k = 1;
    unsigned __int128 card = base->cardinality();
    while (card < static_cast<unsigned __int128>(need) + 1) {
        card *= base->cardinality();
        ++k;
    }
    const FieldPtr K = gonal::extension_spec(base, k);
    std::vector<FqElem> xs, ys;
    for (std::uint64_t code = 0; code < K->cardinality() &&
                                 xs.size() < static_cast<std::size_t>(bound) + 1;
         ++code) {
        FqElem a{code};
        if (f.fi(gamma).eval_in(K, a).code == 0) continue;
        xs.push_back(a);
        ys.push_back(scalar_discriminant(f, K, a));
    }
    return interpolate(K, xs, ys);
}

// Random strictly convex lattice polygon: hull of random points in a box,
// retried until 2-dimensional.
inline LatticePolygon random_convex_polygon(gonal::SeededRng& rng, int npoints = 10,
                                            long long box = 24) {
    for (;;) {
        std::vector<LatticePoint> pts;
        pts.reserve(static_cast<std::size_t>(npoints));
        for (int i = 0; i < npoints; ++i)
            pts.push_back({static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(box))),
                           static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(box)))});
        LatticePolygon poly = LatticePolygon::hull(pts);
        if (poly.dimension() == 2) return poly;
    }
}

// Random polynomial of degree <= max_deg (possibly zero).
inline UniPoly random_poly(const FieldPtr& field, int max_deg, gonal::SeededRng& rng) {
    std::vector<FqElem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto& e : c) e = FqElem{rng.next_below(field->cardinality())};
    return UniPoly(field, std::move(c));
}

// Random polynomial of exact degree d.
inline UniPoly random_poly_exact(const FieldPtr& field, int d, gonal::SeededRng& rng) {
    std::vector<FqElem> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = FqElem{rng.next_below(field->cardinality())};
    c[static_cast<std::size_t>(d)] = FqElem{1 + rng.next_below(field->cardinality() - 1)};
    return UniPoly(field, std::move(c));
}

}  // namespace oracles
