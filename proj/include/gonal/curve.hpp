#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gonal/errors.hpp"
#include "gonal/field.hpp"
#include "gonal/lattice.hpp"
#include "gonal/unipoly.hpp"

namespace gonal {

// f(t, y) = sum_{i=0}^{gamma} f_i(t) y^i with f_gamma != 0, the dehomogenized
// form of sum f_i(t) y^i z^{gamma-i}.
class CurvePoly {
public:
    CurvePoly(FieldPtr field, std::vector<UniPoly> f)
        : field_(std::move(field)), f_(std::move(f)) {
        if (f_.empty() || f_.back().is_zero())
            throw InvalidArgumentError("CurvePoly: top y-coefficient must be nonzero");
        for (const UniPoly& fi : f_)
            if (!fi.is_zero() && !Field::same(fi.field(), field_))
                throw MixedFieldError("CurvePoly: coefficient field mismatch");
    }

    const FieldPtr& field() const { return field_; }
    int gamma() const { return static_cast<int>(f_.size()) - 1; }
    const UniPoly& fi(int i) const { return f_[static_cast<std::size_t>(i)]; }
    const std::vector<UniPoly>& coefficients() const { return f_; }

    friend bool operator==(const CurvePoly& a, const CurvePoly& b) { return a.f_ == b.f_; }

private:
    FieldPtr field_;
    std::vector<UniPoly> f_;
};

// Exponent pairs (i, j) of the nonzero terms c_{i,j} t^i y^j.
inline std::vector<LatticePoint> support(const CurvePoly& f) {
    std::vector<LatticePoint> pts;
    for (int j = 0; j <= f.gamma(); ++j) {
        const auto& cs = f.fi(j).coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (cs[i].code != 0) pts.push_back({static_cast<long long>(i), j});
    }
    return pts;
}

inline LatticePolygon newton_polygon(const CurvePoly& f) {
    return LatticePolygon::hull(support(f));
}

// Upper bound on the geometric genus: interior lattice points of the Newton
// polygon. Caller guarantees absolute irreducibility.
inline long long baker_bound(const CurvePoly& f) {
    return lattice_counts(newton_polygon(f)).interior;
}

// f is a Delta-polynomial for Delta iff its support lies in Delta and every
// edge of Delta contains a support point.
inline bool is_delta_polynomial(const CurvePoly& f, const LatticePolygon& delta) {
    const std::vector<LatticePoint> supp = support(f);
    for (const LatticePoint& p : supp)
        if (!delta.contains(p)) return false;
    const auto& v = delta.vertices();
    if (delta.dimension() == 0) return true;
    const std::size_t edges = delta.dimension() == 1 ? 1 : v.size();
    for (std::size_t i = 0; i < edges; ++i) {
        const LatticePoint a = v[i];
        const LatticePoint b = v[(i + 1) % v.size()];
        bool hit = false;
        for (const LatticePoint& p : supp)
            if (LatticePolygon::on_segment(a, b, p)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

namespace detail {

// Fraction-free determinant of a polynomial matrix (Bareiss). Divisions are
// exact over the integral domain F_q[t]; row swaps track the sign.
inline UniPoly bareiss_determinant(std::vector<std::vector<UniPoly>> m, const FieldPtr& field) {
    const std::size_t n = m.size();
    int sign = 1;
    UniPoly prev = UniPoly::constant(field, field->one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row == k) return UniPoly::zero(field);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = UniPoly::zero(field);
        }
        prev = m[k][k];
    }
    UniPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Sylvester matrix of (A, B) with formal degrees m, n: the first n rows carry
// shifted A-coefficients, the remaining m rows shifted B-coefficients. Zero
// formal leading coefficients are kept in place, which is what makes the
// discriminant identity specialize to every characteristic.
inline std::vector<std::vector<UniPoly>> sylvester_matrix(const std::vector<UniPoly>& a, int m,
                                                          const std::vector<UniPoly>& b, int n,
                                                          const FieldPtr& field) {
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size, UniPoly::zero(field)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k)
            s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] =
                a[static_cast<std::size_t>(m - k)];
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + k)] =
                b[static_cast<std::size_t>(n - k)];
    return s;
}

}  // namespace detail

// Discriminant of f with respect to y:
//   disc = (-1)^{gamma(gamma-1)/2} Res_y(f, df/dy) / f_gamma,
// with the resultant taken as the formal Sylvester determinant of block sizes
// gamma and gamma-1 (the partial derivative keeps its formal degree even when
// the characteristic kills its leading term). The division by f_gamma is
// exact; a zero result is the distinguished "not squarefree in y" value.
inline UniPoly discriminant_y(const CurvePoly& f) {
    const int gamma = f.gamma();
    if (gamma < 2) throw InvalidArgumentError("discriminant_y: gamma must be >= 2");
    const FieldPtr& field = f.field();
    std::vector<UniPoly> a;  // a[i] = f_i
    a.reserve(static_cast<std::size_t>(gamma) + 1);
    for (int i = 0; i <= gamma; ++i) a.push_back(f.fi(i));
    std::vector<UniPoly> b;  // b[i] = (i+1) f_{i+1}, formal degree gamma-1
    b.reserve(static_cast<std::size_t>(gamma));
    for (int i = 1; i <= gamma; ++i) b.push_back(f.fi(i).scaled(field->from_int(i)));
    auto syl = detail::sylvester_matrix(a, gamma, b, gamma - 1, field);
    UniPoly res = detail::bareiss_determinant(std::move(syl), field);
    UniPoly disc = exact_div(res, f.fi(gamma));
    const bool flip = ((static_cast<long long>(gamma) * (gamma - 1) / 2) % 2) != 0;
    return flip ? -disc : disc;
}

// Substitute t = a (a in an extension K of the coefficient field); the result
// is a polynomial in y over K whose degree may drop.
inline UniPoly eval_t(const CurvePoly& f, const FieldPtr& K, FqElem a) {
    std::vector<FqElem> ycoeffs;
    ycoeffs.reserve(static_cast<std::size_t>(f.gamma()) + 1);
    for (int i = 0; i <= f.gamma(); ++i) ycoeffs.push_back(f.fi(i).eval_in(K, a));
    return UniPoly(K, std::move(ycoeffs));
}

// Fibre identically zero: every f_i vanishes at a. Never happens for an
// absolutely irreducible f; callers treat the sentinel as an inconsistency.
inline int fibre_zero_sentinel(const CurvePoly& f) { return f.gamma() + 1; }

// Number of distinct points [y : z] in P^1(K) on the fibre of f above t = a:
// distinct roots of f(a, y) in K, plus the point [1 : 0] when the y-degree
// drops below gamma. Returns gamma + 1 if the fibre polynomial vanishes
// identically.
inline int projective_fibre_count(const CurvePoly& f, const FieldPtr& K, FqElem a) {
    UniPoly h = eval_t(f, K, a);
    if (h.is_zero()) return fibre_zero_sentinel(f);
    int count = distinct_root_count(h);
    if (h.degree() < f.gamma()) ++count;
    return count;
}

inline CurvePoly curve_mul(const CurvePoly& a, const CurvePoly& b) {
    const FieldPtr& field = a.field();
    std::vector<UniPoly> out(static_cast<std::size_t>(a.gamma() + b.gamma()) + 1,
                             UniPoly::zero(field));
    for (int i = 0; i <= a.gamma(); ++i)
        for (int j = 0; j <= b.gamma(); ++j)
            out[static_cast<std::size_t>(i + j)] =
                out[static_cast<std::size_t>(i + j)] + a.fi(i) * b.fi(j);
    return CurvePoly(field, std::move(out));
}

}  // namespace gonal
