#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gonal/errors.hpp"
#include "gonal/field.hpp"

namespace gonal {

// Degree of the zero polynomial. Chosen deep enough below zero that adding
// ordinary degrees cannot make it non-negative, so it absorbs in max/sum
// rules without special cases in the Newton-polygon code.
inline constexpr int kDegNegInfinity = std::numeric_limits<int>::min() / 4;

// Valuation of the zero polynomial at any prime.
inline constexpr int kValInfinity = std::numeric_limits<int>::max();

// Default cap on exhaustive enumeration of a field (root finding, point
// counting over extensions).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 24;

// Element of F_q[t]: coefficients ascending by degree, trailing zeros trimmed,
// so the top coefficient of a nonzero polynomial is nonzero.
class UniPoly {
public:
    UniPoly() = default;

    UniPoly(FieldPtr field, std::vector<FqElem> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly zero(FieldPtr field) { return UniPoly(std::move(field), {}); }

    static UniPoly constant(FieldPtr field, FqElem c) {
        return UniPoly(std::move(field), {c});
    }

    static UniPoly from_codes(FieldPtr field, const std::vector<std::uint64_t>& codes) {
        std::vector<FqElem> c;
        c.reserve(codes.size());
        for (std::uint64_t v : codes) c.push_back(field->element(v));
        return UniPoly(std::move(field), std::move(c));
    }

    // The variable t.
    static UniPoly variable(FieldPtr field) {
        return UniPoly(std::move(field), {FqElem{0}, FqElem{1}});
    }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kDegNegInfinity : static_cast<int>(c_.size()) - 1; }

    FqElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FqElem{0}; }
    FqElem leading() const {
        if (c_.empty()) throw InvalidArgumentError("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<FqElem>& coeffs() const { return c_; }

    std::vector<std::uint64_t> codes() const {
        std::vector<std::uint64_t> out;
        out.reserve(c_.size());
        for (FqElem e : c_) out.push_back(e.code);
        return out;
    }

    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.c_ == b.c_;  // fields assumed compatible; codes are canonical
    }

    UniPoly operator-() const {
        std::vector<FqElem> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->neg(c_[i]);
        return UniPoly(field_, std::move(out));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        const FieldPtr& f = a.common_field(b);
        std::vector<FqElem> out(std::max(a.c_.size(), b.c_.size()), FqElem{0});
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = f->add(a.coeff(i), b.coeff(i));
        return UniPoly(f, std::move(out));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        const FieldPtr& f = a.common_field(b);
        std::vector<FqElem> out(std::max(a.c_.size(), b.c_.size()), FqElem{0});
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = f->sub(a.coeff(i), b.coeff(i));
        return UniPoly(f, std::move(out));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        const FieldPtr& f = a.common_field(b);
        if (a.is_zero() || b.is_zero()) return zero(f);
        std::vector<FqElem> out(a.c_.size() + b.c_.size() - 1, FqElem{0});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].code == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].code == 0) continue;
                out[i + j] = f->add(out[i + j], f->mul(a.c_[i], b.c_[j]));
            }
        }
        return UniPoly(f, std::move(out));
    }

    UniPoly scaled(FqElem s) const {
        if (s.code == 0) return zero(field_);
        std::vector<FqElem> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(c_[i], s);
        return UniPoly(field_, std::move(out));
    }

    // Multiply by t^k.
    UniPoly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<FqElem> out(c_.size() + k, FqElem{0});
        std::copy(c_.begin(), c_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
        return UniPoly(field_, std::move(out));
    }

    UniPoly monic() const {
        if (is_zero()) throw InvalidArgumentError("monic of zero polynomial");
        if (is_monic()) return *this;
        return scaled(field_->inv(leading()));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero(field_);
        std::vector<FqElem> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i)));
        return UniPoly(field_, std::move(out));
    }

    FqElem eval(FqElem a) const {
        FqElem acc{0};
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = field_->add(field_->mul(acc, a), c_[i]);
        return acc;
    }

    // Horner evaluation at a point of an extension K built over this field
    // (constants embed with unchanged codes).
    FqElem eval_in(const FieldPtr& K, FqElem a) const {
        require_embeds_into(K);
        FqElem acc{0};
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = K->add(K->mul(acc, a), c_[i]);
        return acc;
    }

    // Coefficientwise embedding into an extension built over this field.
    UniPoly mapped_into(const FieldPtr& K) const {
        require_embeds_into(K);
        return UniPoly(K, c_);
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ',';
            os << c_[i].code;
        }
        os << ']';
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().code == 0) c_.pop_back();
    }

    const FieldPtr& common_field(const UniPoly& other) const {
        if (!Field::same(field_, other.field_))
            throw MixedFieldError("polynomial operands live in different fields");
        return field_;
    }

    void require_embeds_into(const FieldPtr& K) const {
        if (Field::same(field_, K)) return;
        if (K->base() && Field::same(field_, K->base())) return;
        throw MixedFieldError("target field is not an extension of the coefficient field");
    }

    FieldPtr field_;
    std::vector<FqElem> c_;
};

// (quotient, remainder) with deg rem < deg b; b != 0.
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    const FieldPtr& f = a.field() ? a.field() : b.field();
    if (a.degree() < b.degree()) return {UniPoly::zero(f), a};
    const FqElem lead_inv = f->inv(b.leading());
    std::vector<FqElem> rem(a.coeffs());
    const int db = b.degree();
    std::vector<FqElem> quot(static_cast<std::size_t>(a.degree() - db) + 1, FqElem{0});
    for (int i = a.degree(); i >= db; --i) {
        FqElem c = rem[static_cast<std::size_t>(i)];
        if (c.code == 0) continue;
        FqElem q = f->mul(c, lead_inv);
        quot[static_cast<std::size_t>(i - db)] = q;
        for (int j = 0; j <= db; ++j) {
            std::size_t idx = static_cast<std::size_t>(i - db + j);
            rem[idx] = f->sub(rem[idx], f->mul(q, b.coeff(static_cast<std::size_t>(j))));
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly(f, std::move(quot)), UniPoly(f, std::move(rem))};
}

// Exact division; throws InexactDivisionError if b does not divide a.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw InexactDivisionError("exact division has nonzero remainder");
    return q;
}

// Monic gcd; gcd(a, 0) = monic(a). Both zero is an error.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw InvalidArgumentError("gcd(0, 0) undefined");
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPoly poly_pow(const UniPoly& a, std::uint64_t e) {
    UniPoly acc = UniPoly::constant(a.field(), a.field()->one());
    UniPoly sq = a;
    while (e) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e) sq = sq * sq;
    }
    return acc;
}

// a^e mod m by square-and-multiply.
inline UniPoly pow_mod(const UniPoly& a, std::uint64_t e, const UniPoly& m) {
    UniPoly acc = UniPoly::constant(m.field(), m.field()->one());
    UniPoly sq = divrem(a, m).second;
    while (e) {
        if (e & 1) acc = divrem(acc * sq, m).second;
        e >>= 1;
        if (e) sq = divrem(sq * sq, m).second;
    }
    return acc;
}

inline bool is_irreducible(const UniPoly& a);

// Largest m with p^m | a; p monic irreducible. +infinity sentinel for a = 0.
// Irreducibility of p is the caller's contract, checked in debug builds.
inline int valuation_at(UniPoly a, const UniPoly& p) {
    if (p.degree() < 1 || !p.is_monic())
        throw InvalidArgumentError("valuation prime must be monic of positive degree");
    assert(is_irreducible(p));
    if (a.is_zero()) return kValInfinity;
    int m = 0;
    for (;;) {
        auto [q, r] = divrem(a, p);
        if (!r.is_zero()) return m;
        ++m;
        a = std::move(q);
        if (a.is_zero()) return m;  // unreachable for p of positive degree
    }
}

// Squarefree over a perfect field: a' = 0 with deg a > 0 means a is a p-th
// power; otherwise squarefree iff gcd(a, a') is constant.
inline bool is_squarefree(const UniPoly& a) {
    if (a.is_zero()) throw InvalidArgumentError("squarefree test on zero polynomial");
    UniPoly d = a.derivative();
    if (d.is_zero()) return a.degree() <= 0;
    return poly_gcd(a, d).degree() == 0;
}

// Irreducibility over F_q: no irreducible factor of degree <= deg/2, detected
// by gcd with t^{q^i} - t (the product of all monic irreducibles of degree
// dividing i).
inline bool is_irreducible(const UniPoly& a) {
    if (a.degree() < 1) throw InvalidArgumentError("irreducibility test needs positive degree");
    if (a.degree() == 1) return true;
    const FieldPtr& f = a.field();
    const UniPoly m = a.monic();
    const UniPoly t = UniPoly::variable(f);
    UniPoly frob = pow_mod(t, f->cardinality(), m);  // t^q mod m
    UniPoly power = frob;
    const int half = a.degree() / 2;
    for (int i = 1; i <= half; ++i) {
        if (i > 1) power = pow_mod(power, f->cardinality(), m);  // t^{q^i} mod m
        if (poly_gcd(m, power - t).degree() != 0) return false;
    }
    return true;
}

// Distinct roots of a in its own (finite) coefficient field, by exhaustive
// evaluation. Exact and simple; capped because it is linear in |K|.
inline std::vector<FqElem> roots_in_field(const UniPoly& a,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
    if (a.is_zero()) throw InvalidArgumentError("root finding on zero polynomial");
    const FieldPtr& K = a.field();
    if (K->cardinality() > cap)
        throw CapExceededError("field too large for exhaustive root enumeration");
    std::vector<FqElem> roots;
    for (std::uint64_t code = 0; code < K->cardinality(); ++code) {
        FqElem x{code};
        if (a.eval(x).code == 0) roots.push_back(x);
    }
    return roots;
}

// Number of distinct roots of a in its coefficient field K, as
// deg gcd(a, t^{|K|} - t). O(log |K|) ring operations, used where the
// per-fibre enumeration of roots_in_field would be quadratic overall.
inline int distinct_root_count(const UniPoly& a) {
    if (a.is_zero()) throw InvalidArgumentError("root counting on zero polynomial");
    if (a.degree() == 0) return 0;
    const FieldPtr& K = a.field();
    const UniPoly t = UniPoly::variable(K);
    UniPoly frob = pow_mod(t, K->cardinality(), a);
    UniPoly g = poly_gcd(a, frob - t);
    return std::max(g.degree(), 0);
}

namespace detail {

inline std::string field_cache_tag(const Field& f) {
    std::ostringstream os;
    if (f.is_prime_field()) {
        os << "p" << f.characteristic();
    } else {
        os << field_cache_tag(*f.base()) << "x";
        for (std::uint64_t c : f.modulus_codes()) os << "_" << c;
    }
    return os.str();
}

inline bool load_cached_irreducible(const std::filesystem::path& file, const FieldPtr& field,
                                    int d, UniPoly* out) {
    std::ifstream in(file);
    if (!in) return false;
    std::vector<std::uint64_t> codes;
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            codes.push_back(std::stoull(tok));
        } catch (...) {
            return false;
        }
    }
    if (codes.size() != static_cast<std::size_t>(d) + 1 || codes.back() != 1) return false;
    for (std::uint64_t c : codes)
        if (c >= field->cardinality()) return false;
    UniPoly p = UniPoly::from_codes(field, codes);
    if (p.degree() != d || !is_irreducible(p)) return false;
    *out = p;
    return true;
}

}  // namespace detail

// First monic irreducible of degree d in the deterministic order: coefficient
// tuples compared lexicographically from the constant term up, via the
// canonical integer encoding. Optionally cached under $GONAL_CACHE_DIR.
inline UniPoly find_irreducible(const FieldPtr& field, int d) {
    if (d < 1) throw InvalidArgumentError("find_irreducible: degree must be >= 1");
    const char* cache_env = std::getenv("GONAL_CACHE_DIR");
    std::filesystem::path cache_file;
    if (cache_env && *cache_env) {
        cache_file = std::filesystem::path(cache_env) /
                     ("irr_" + detail::field_cache_tag(*field) + "_d" + std::to_string(d) + ".txt");
        UniPoly cached;
        if (detail::load_cached_irreducible(cache_file, field, d, &cached)) return cached;
    }
    const std::uint64_t q = field->cardinality();
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(d) + 1, 0);
    codes.back() = 1;
    for (std::uint64_t index = 0;; ++index) {
        std::uint64_t v = index;
        for (int i = 0; i < d; ++i) {
            codes[static_cast<std::size_t>(i)] = v % q;
            v /= q;
        }
        UniPoly cand = UniPoly::from_codes(field, codes);
        if (is_irreducible(cand)) {
            if (!cache_file.empty()) {
                std::error_code ec;
                std::filesystem::create_directories(cache_file.parent_path(), ec);
                std::ofstream outf(cache_file);
                if (outf) {
                    auto cs = cand.codes();
                    for (std::size_t i = 0; i < cs.size(); ++i)
                        outf << (i ? "," : "") << cs[i];
                }
            }
            return cand;
        }
    }
}

// F_{q^k} as F_q[u]/(m) with m = find_irreducible(field, k); deterministic,
// and constants of F_q keep their codes.
inline FieldPtr extension_spec(const FieldPtr& field, int k) {
    if (k < 1) throw InvalidArgumentError("extension degree must be >= 1");
    if (k == 1) return field;
    UniPoly m = find_irreducible(field, k);
    return Field::extension(field, m.codes());
}

// Field description helpers (p, e over the prime field).

inline FieldPtr field_from_spec(std::uint64_t p, int e) {
    FieldPtr fp = Field::prime(p);
    if (e == 1) return fp;
    if (e < 1) throw InvalidArgumentError("field extension degree must be >= 1");
    return extension_spec(fp, e);
}

inline FieldPtr field_from_spec(std::uint64_t p, int e, const std::vector<std::uint64_t>& modulus) {
    FieldPtr fp = Field::prime(p);
    if (e == 1) return fp;
    UniPoly m = UniPoly::from_codes(fp, modulus);
    if (m.degree() != e || !m.is_monic() || !is_irreducible(m))
        throw InvalidArgumentError("field modulus must be monic irreducible of degree e");
    return Field::extension(fp, m.codes());
}

}  // namespace gonal
