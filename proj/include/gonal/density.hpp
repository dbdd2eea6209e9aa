#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gonal/construct.hpp"
#include "gonal/errors.hpp"
#include "gonal/rng.hpp"
#include "gonal/unipoly.hpp"

namespace gonal {

// Exact rational with reduced representation; sizes stay small because the
// enumeration cap bounds every denominator |p|^{2(gamma+1)}.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational of(long long n, long long d) {
        Rational r{n, d};
        r.normalize();
        return r;
    }

    void normalize() {
        if (den == 0) throw InvalidArgumentError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rational times(long long n, long long d) const {
        Rational o = of(n, d);
        __int128 g1 = gcd128(num, o.den);
        __int128 g2 = gcd128(o.num, den);
        Rational r{(num / g1) * (o.num / g2), (den / g2) * (o.den / g1)};
        r.normalize();
        return r;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        auto print128 = [](__int128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            if (neg) v = -v;
            std::string s;
            while (v) {
                s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
                v /= 10;
            }
            if (neg) s.push_back('-');
            std::reverse(s.begin(), s.end());
            return s;
        };
        return print128(num) + "/" + print128(den);
    }
};

// Shared pieces of one density study: the construction family over F_q with
// gonality gamma (profile, alpha, beta), independent of any genus.
struct DensityContext {
    FieldPtr field;
    int gamma = 0;
    GonalityProfile profile;
    UniPoly alpha;
    UniPoly beta;
};

inline DensityContext density_context(FieldPtr field, int gamma) {
    DensityContext ctx;
    ctx.field = std::move(field);
    ctx.gamma = gamma;
    ctx.profile = default_profile(gamma);
    ctx.alpha = alpha_poly(ctx.field);
    ctx.beta = find_irreducible(ctx.field, 2);
    return ctx;
}

struct PrimeFactor {
    UniPoly prime;
    long long cp = 0;
    long long factor_num = 0;  // local factor (|p|^{2n} - c_p) / |p|^{2n}
    long long factor_den = 0;
};

struct DensityReport {
    int truncation_degree = 0;
    std::vector<PrimeFactor> per_prime;
    Rational truncated{1, 1};
    long long trials = 0;
    long long successes = 0;
    double frequency = 0.0;
};

// All monic irreducibles of exact degree d, ascending in the canonical
// integer encoding.
inline std::vector<UniPoly> monic_irreducibles(const FieldPtr& field, int d) {
    const std::uint64_t q = field->cardinality();
    unsigned __int128 total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    if (total > (static_cast<unsigned __int128>(1) << 26))
        throw CapExceededError("too many monic polynomials to enumerate");
    std::vector<UniPoly> out;
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(d) + 1, 0);
    codes.back() = 1;
    for (std::uint64_t index = 0; index < static_cast<std::uint64_t>(total); ++index) {
        std::uint64_t v = index;
        for (int i = 0; i < d; ++i) {
            codes[static_cast<std::size_t>(i)] = v % q;
            v /= q;
        }
        UniPoly cand = UniPoly::from_codes(field, codes);
        if (is_irreducible(cand)) out.push_back(std::move(cand));
    }
    return out;
}

namespace detail {

// F_q[t]/(modulus) with flat fixed-size elements; enough ring structure for
// the division-free determinants in count_cp. Over a prime field the
// arithmetic runs on raw codes with one deferred reduction per coefficient.
class QuotientRing {
public:
    using Elem = std::vector<FqElem>;

    explicit QuotientRing(UniPoly modulus)
        : field_(modulus.field()), mod_(std::move(modulus)),
          deg_(static_cast<std::size_t>(mod_.degree())),
          prime_(field_->is_prime_field() &&
                 field_->characteristic() < (std::uint64_t(1) << 24)),
          p_(field_->characteristic()) {
        if (!mod_.is_monic() || mod_.degree() < 1)
            throw InvalidArgumentError("quotient modulus must be monic of positive degree");
        scratch_.resize(2 * deg_);
        raw_.resize(2 * deg_);
        for (std::size_t i = 0; i < deg_; ++i) mod_codes_.push_back(mod_.coeff(i).code);
    }

    const FieldPtr& field() const { return field_; }
    std::size_t size() const { return deg_; }

    Elem zero() const { return Elem(deg_, FqElem{0}); }

    Elem from_poly(const UniPoly& a) const {
        UniPoly r = divrem(a, mod_).second;
        Elem e(deg_, FqElem{0});
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) e[i] = r.coeffs()[i];
        return e;
    }

    UniPoly to_poly(const Elem& e) const { return UniPoly(field_, e); }

    bool is_zero(const Elem& e) const {
        for (FqElem c : e)
            if (c.code != 0) return false;
        return true;
    }

    void add(const Elem& a, const Elem& b, Elem& out) const {
        if (prime_) {
            for (std::size_t i = 0; i < deg_; ++i) {
                std::uint64_t s = a[i].code + b[i].code;
                out[i].code = s >= p_ ? s - p_ : s;
            }
            return;
        }
        for (std::size_t i = 0; i < deg_; ++i) out[i] = field_->add(a[i], b[i]);
    }

    void sub(const Elem& a, const Elem& b, Elem& out) const {
        if (prime_) {
            for (std::size_t i = 0; i < deg_; ++i) {
                std::uint64_t s = a[i].code + p_ - b[i].code;
                out[i].code = s >= p_ ? s - p_ : s;
            }
            return;
        }
        for (std::size_t i = 0; i < deg_; ++i) out[i] = field_->sub(a[i], b[i]);
    }

    void scal(const Elem& a, FqElem s, Elem& out) const {
        if (prime_) {
            for (std::size_t i = 0; i < deg_; ++i) out[i].code = (a[i].code * s.code) % p_;
            return;
        }
        for (std::size_t i = 0; i < deg_; ++i) out[i] = field_->mul(a[i], s);
    }

    void mul(const Elem& a, const Elem& b, Elem& out) const {
        if (prime_) {
            std::fill(raw_.begin(), raw_.end(), 0);
            for (std::size_t i = 0; i < deg_; ++i) {
                const std::uint64_t ai = a[i].code;
                if (ai == 0) continue;
                for (std::size_t j = 0; j < deg_; ++j) raw_[i + j] += ai * b[j].code;
            }
            for (std::size_t i = 0; i < 2 * deg_; ++i) raw_[i] %= p_;
            for (std::size_t top = 2 * deg_ - 2; top >= deg_; --top) {
                const std::uint64_t c = raw_[top];
                if (c != 0) {
                    raw_[top] = 0;
                    const std::size_t shift = top - deg_;
                    for (std::size_t i = 0; i < deg_; ++i) {
                        if (mod_codes_[i] == 0) continue;
                        raw_[shift + i] =
                            (raw_[shift + i] + p_ * p_ - c * mod_codes_[i]) % p_;
                    }
                }
                if (top == deg_) break;
            }
            for (std::size_t i = 0; i < deg_; ++i) out[i].code = raw_[i];
            return;
        }
        std::fill(scratch_.begin(), scratch_.end(), FqElem{0});
        for (std::size_t i = 0; i < deg_; ++i) {
            if (a[i].code == 0) continue;
            for (std::size_t j = 0; j < deg_; ++j) {
                if (b[j].code == 0) continue;
                scratch_[i + j] = field_->add(scratch_[i + j], field_->mul(a[i], b[j]));
            }
        }
        for (std::size_t top = 2 * deg_ - 2; top >= deg_; --top) {
            FqElem c = scratch_[top];
            if (c.code != 0) {
                scratch_[top] = FqElem{0};
                const std::size_t shift = top - deg_;
                for (std::size_t i = 0; i < deg_; ++i) {
                    FqElem m = mod_.coeff(i);
                    if (m.code == 0) continue;
                    scratch_[shift + i] = field_->sub(scratch_[shift + i], field_->mul(c, m));
                }
            }
            if (top == deg_) break;
        }
        for (std::size_t i = 0; i < deg_; ++i) out[i] = scratch_[i];
    }

private:
    FieldPtr field_;
    UniPoly mod_;
    std::size_t deg_;
    bool prime_;
    std::uint64_t p_;
    std::vector<std::uint64_t> mod_codes_;
    mutable std::vector<FqElem> scratch_;
    mutable std::vector<std::uint64_t> raw_;
};

}  // namespace detail

// F(g) reduced mod p^2 via the literal route: assemble f in F_q[t], take the
// discriminant, divide exactly by alpha^{2L} beta^{gamma-1}, reduce. Used as
// the reference for count_cp and for the well-definedness tests.
inline UniPoly capital_F_mod_p2(const DensityContext& ctx, std::span<const UniPoly> tuple,
                                const UniPoly& p) {
    UniPoly F = capital_F_at(ctx.field, ctx.profile, ctx.alpha, ctx.beta, tuple);
    return divrem(F, p * p).second;
}

// c_p = #{ g in (F_q[t]/p^2)^{gamma+1} : F(g) = 0 }, with representatives the
// polynomials of degree < 2 deg p.
//
// The hot path evaluates the formal Sylvester determinant Res = +-f_gamma *
// disc in F_q[t]/(p^{2+v+w}), where v = v_p(alpha^{2L} beta^{gamma-1}) and
// w = v_p(f_gamma). Then F(g) = 0 mod p^2 iff v_p(disc) >= v+2 iff the ring
// determinant vanishes. At degree-1 primes w = l_gamma and at beta w = 0 for
// every tuple (the unit factors are 1 mod p); at other primes w = 0 for all
// but ~1/|p| of the tuples, and the rare w > 0 tuples fall back to the
// literal route. Agreement with the literal route is covered by tests.
inline long long count_cp(const DensityContext& ctx, const UniPoly& p,
                          std::uint64_t cap = kDefaultEnumerationCap) {
    if (!p.is_monic() || !is_irreducible(p))
        throw InvalidArgumentError("count_cp: p must be a monic irreducible");
    const FieldPtr& field = ctx.field;
    const std::uint64_t q = field->cardinality();
    const int gamma = ctx.gamma;
    const int dp = p.degree();
    const int n_vars = gamma + 1;
    unsigned __int128 tuples = 1;
    for (int i = 0; i < 2 * dp * n_vars; ++i) {
        tuples *= q;
        if (tuples > cap) throw CapExceededError("count_cp: residue enumeration exceeds cap");
    }

    long long v = 0;
    if (dp == 1) v += 2 * ctx.profile.L;  // every monic linear divides alpha
    if (p == ctx.beta) v += gamma - 1;
    const bool w_varies = dp > 1 && !(p == ctx.beta);
    const long long w_known =
        w_varies ? 0 : (dp == 1 ? ctx.profile.l[static_cast<std::size_t>(gamma)] : 0);

    const UniPoly modulus = poly_pow(p, static_cast<std::uint64_t>(2 + v + w_known));
    detail::QuotientRing ring(modulus);
    using Elem = detail::QuotientRing::Elem;

    // f_i = A_i + B_i g_i with the fixed parts precomputed (ring and lifted forms)
    std::vector<Elem> A, B;
    UniPoly a_top = UniPoly::zero(field), b_top = UniPoly::zero(field);
    for (int i = 0; i <= gamma; ++i) {
        UniPoly a = poly_pow(ctx.alpha, static_cast<std::uint64_t>(
                                            ctx.profile.l[static_cast<std::size_t>(i)]));
        if (delta_index(i, gamma)) a = a * ctx.beta;
        UniPoly b = a * ctx.alpha;
        if (delta_prime_index(i, gamma)) b = b * ctx.beta;
        A.push_back(ring.from_poly(a));
        B.push_back(ring.from_poly(b));
        if (i == gamma) {
            a_top = std::move(a);
            b_top = std::move(b);
        }
    }

    const int n = 2 * gamma - 1;  // Sylvester dimension
    std::vector<std::vector<Elem>> m(static_cast<std::size_t>(n),
                                     std::vector<Elem>(static_cast<std::size_t>(n), ring.zero()));
    std::vector<Elem> dp_table(std::size_t(1) << n, ring.zero());
    std::vector<Elem> f(static_cast<std::size_t>(n_vars), ring.zero());
    std::vector<Elem> df(static_cast<std::size_t>(gamma), ring.zero());
    Elem tmp = ring.zero();

    const std::size_t coords = static_cast<std::size_t>(2 * dp) * static_cast<std::size_t>(n_vars);
    std::vector<std::uint64_t> odo(coords, 0);
    const UniPoly p2 = p * p;

    auto lift_g = [&](int i) {
        std::vector<FqElem> c(static_cast<std::size_t>(2 * dp));
        for (int j = 0; j < 2 * dp; ++j)
            c[static_cast<std::size_t>(j)] = FqElem{odo[static_cast<std::size_t>(i * 2 * dp + j)]};
        return UniPoly(field, std::move(c));
    };

    long long count = 0;
    for (unsigned __int128 it = 0; it < tuples; ++it) {
        bool counted_by_fallback = false;
        if (w_varies) {
            // w = v_p(f_gamma) decides whether the mod-p^2 precision suffices
            UniPoly f_top = a_top + b_top * lift_g(gamma);
            if (valuation_at(f_top, p) > 0) {
                std::vector<UniPoly> tuple;
                tuple.reserve(static_cast<std::size_t>(n_vars));
                for (int i = 0; i < n_vars; ++i) tuple.push_back(lift_g(i));
                UniPoly F = capital_F_at(ctx.field, ctx.profile, ctx.alpha, ctx.beta, tuple);
                if (divrem(F, p2).second.is_zero()) ++count;
                counted_by_fallback = true;
            }
        }
        if (!counted_by_fallback) {
            for (int i = 0; i < n_vars; ++i) {
                Elem& gi = f[static_cast<std::size_t>(i)];  // reused as scratch for g_i
                std::fill(gi.begin(), gi.end(), FqElem{0});
                for (int j = 0; j < 2 * dp; ++j)
                    gi[static_cast<std::size_t>(j)] =
                        FqElem{odo[static_cast<std::size_t>(i * 2 * dp + j)]};
                ring.mul(B[static_cast<std::size_t>(i)], gi, tmp);
                ring.add(A[static_cast<std::size_t>(i)], tmp, gi);  // now f_i
            }
            for (int i = 0; i < gamma; ++i)
                ring.scal(f[static_cast<std::size_t>(i + 1)], field->from_int(i + 1),
                          df[static_cast<std::size_t>(i)]);

            // formal Sylvester blocks: gamma-1 rows of f, gamma rows of df
            for (auto& row : m)
                for (auto& e : row) std::fill(e.begin(), e.end(), FqElem{0});
            for (int row = 0; row < gamma - 1; ++row)
                for (int k = 0; k <= gamma; ++k)
                    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] =
                        f[static_cast<std::size_t>(gamma - k)];
            for (int row = 0; row < gamma; ++row)
                for (int k = 0; k <= gamma - 1; ++k)
                    m[static_cast<std::size_t>(gamma - 1 + row)]
                     [static_cast<std::size_t>(row + k)] = df[static_cast<std::size_t>(gamma - 1 - k)];

            // division-free determinant over the ring (Laplace over column
            // subsets, cofactor signs included)
            dp_table[0] = ring.zero();
            dp_table[0][0] = field->one();
            for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
                const int row = std::popcount(mask) - 1;
                Elem& dst = dp_table[mask];
                std::fill(dst.begin(), dst.end(), FqElem{0});
                int sign = (row % 2 == 0) ? 1 : -1;
                for (int j = 0; j < n; ++j) {
                    if (!(mask & (std::size_t(1) << j))) continue;
                    const Elem& entry =
                        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
                    if (!ring.is_zero(entry)) {
                        ring.mul(entry, dp_table[mask ^ (std::size_t(1) << j)], tmp);
                        if (sign > 0)
                            ring.add(dst, tmp, dst);
                        else
                            ring.sub(dst, tmp, dst);
                    }
                    sign = -sign;
                }
            }
            if (ring.is_zero(dp_table[(std::size_t(1) << n) - 1])) ++count;
        }

        // odometer step
        for (std::size_t pos = 0; pos < coords; ++pos) {
            if (++odo[pos] < q) break;
            odo[pos] = 0;
        }
    }
    return count;
}

// Truncated Euler product prod_{deg p <= D} (1 - c_p / |p|^{2(gamma+1)}),
// exact and monotone nonincreasing in D.
inline DensityReport truncated_density(const DensityContext& ctx, int max_prime_degree,
                                       std::uint64_t cap = kDefaultEnumerationCap) {
    DensityReport report;
    report.truncation_degree = max_prime_degree;
    const std::uint64_t q = ctx.field->cardinality();
    for (int d = 1; d <= max_prime_degree; ++d) {
        for (UniPoly& p : monic_irreducibles(ctx.field, d)) {
            const long long cp = count_cp(ctx, p, cap);
            long long den = 1;
            for (int i = 0; i < 2 * d * (ctx.gamma + 1); ++i) den *= static_cast<long long>(q);
            if (cp >= den)
                throw Error("truncated_density: local factor not positive (c_p >= |p|^{2n})");
            report.per_prime.push_back(PrimeFactor{p, cp, den - cp, den});
            report.truncated = report.truncated.times(den - cp, den);
        }
    }
    return report;
}

// Fraction of uniformly random exact-degree tuples whose F value is
// squarefree; the empirical counterpart of the truncated product.
inline DensityReport empirical_density(const DensityContext& ctx,
                                       std::span<const long long> degrees, long long trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw InvalidArgumentError("empirical_density: trials must be >= 1");
    if (degrees.size() != static_cast<std::size_t>(ctx.gamma) + 1)
        throw InvalidArgumentError("empirical_density: need gamma + 1 degrees");
    for (long long d : degrees)
        if (d < 0) throw InvalidArgumentError("empirical_density: negative degree");
    DensityReport report;
    report.trials = trials;
    SeededRng rng(seed);
    for (long long tidx = 0; tidx < trials; ++tidx) {
        std::vector<UniPoly> tuple = draw_tuple(ctx.field, degrees, rng);
        UniPoly F = capital_F_at(ctx.field, ctx.profile, ctx.alpha, ctx.beta, tuple);
        if (!F.is_zero() && is_squarefree(F)) ++report.successes;
    }
    report.frequency = static_cast<double>(report.successes) / static_cast<double>(trials);
    return report;
}

}  // namespace gonal
