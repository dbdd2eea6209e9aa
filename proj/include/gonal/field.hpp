#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gonal/errors.hpp"

namespace gonal {

// Element of a finite field, held as its canonical integer encoding
// sum coeffs[i] * base^i in [0, cardinality). The encoding gives a total
// order on elements, which the deterministic searches rely on. Elements do
// not know their field; all arithmetic goes through Field.
struct FqElem {
    std::uint64_t code = 0;
    friend bool operator==(FqElem, FqElem) = default;
    friend auto operator<=>(FqElem, FqElem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_q = F_{p^e}, built either directly over the prime field or as a tower
// extension F_base[u]/(m(u)). Towers matter: extensions used for point
// counting are built over the curve's base field F_q, so F_q-coefficients
// embed with unchanged codes (constants are codes < q).
class Field : public std::enable_shared_from_this<Field> {
public:
    static constexpr int kMaxDegreeOverBase = 32;

    static FieldPtr prime(std::uint64_t p) {
        check_prime(p);
        return FieldPtr(new Field(p));
    }

    // F_p[x]/(modulus); modulus given over F_p, ascending coefficients,
    // monic of degree >= 2, irreducibility checked by the caller's layer
    // (unipoly.hpp exposes validated constructors).
    static FieldPtr extension(FieldPtr base, std::vector<std::uint64_t> modulus_codes) {
        if (!base) throw InvalidArgumentError("extension: null base field");
        if (modulus_codes.size() < 3)
            throw InvalidArgumentError("extension: modulus degree must be >= 2");
        const std::size_t deg = modulus_codes.size() - 1;
        if (deg > kMaxDegreeOverBase)
            throw InvalidArgumentError("extension: modulus degree too large");
        if (modulus_codes.back() != 1)
            throw InvalidArgumentError("extension: modulus must be monic");
        for (std::uint64_t c : modulus_codes)
            if (c >= base->cardinality())
                throw InvalidArgumentError("extension: modulus coefficient out of range");
        unsigned __int128 card = 1;
        for (std::size_t i = 0; i < deg; ++i) {
            card *= base->cardinality();
            if (card > (static_cast<unsigned __int128>(1) << 62))
                throw CapExceededError("extension: field cardinality exceeds 2^62");
        }
        return FieldPtr(new Field(std::move(base), std::move(modulus_codes),
                                  static_cast<std::uint64_t>(card)));
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t cardinality() const { return card_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const FieldPtr& base() const { return base_; }
    // Degree over the immediate base field (1 for a prime field).
    std::uint32_t degree_over_base() const { return deg_; }
    // Modulus coefficient codes over the base, ascending; empty for a prime field.
    const std::vector<std::uint64_t>& modulus_codes() const { return mod_; }

    // Structural equality of field descriptions (same tower, same moduli).
    static bool same(const Field& a, const Field& b) {
        if (&a == &b) return true;
        if (a.p_ != b.p_ || a.card_ != b.card_ || a.deg_ != b.deg_) return false;
        if (a.mod_ != b.mod_) return false;
        if (!a.base_ && !b.base_) return true;
        if (!a.base_ || !b.base_) return false;
        return same(*a.base_, *b.base_);
    }
    static bool same(const FieldPtr& a, const FieldPtr& b) { return same(*a, *b); }

    FqElem zero() const { return FqElem{0}; }
    FqElem one() const { return FqElem{1}; }

    FqElem element(std::uint64_t code) const {
        if (code >= card_) throw InvalidArgumentError("element code out of range");
        return FqElem{code};
    }

    // Integer scalar reduced mod p, embedded as a constant.
    FqElem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return FqElem{static_cast<std::uint64_t>(r)};
    }

    FqElem add(FqElem a, FqElem b) const {
        check(a), check(b);
        if (is_prime_field()) {
            std::uint64_t s = a.code + b.code;
            return FqElem{s >= p_ ? s - p_ : s};
        }
        Digits da, db;
        decode(a.code, da);
        decode(b.code, db);
        if (base_prime_) {
            for (std::size_t i = 0; i < deg_; ++i) {
                const std::uint64_t s = da[i] + db[i];
                da[i] = s >= p_ ? s - p_ : s;
            }
            return FqElem{encode(da)};
        }
        for (std::size_t i = 0; i < deg_; ++i)
            da[i] = base_->add(FqElem{da[i]}, FqElem{db[i]}).code;
        return FqElem{encode(da)};
    }

    FqElem neg(FqElem a) const {
        check(a);
        if (is_prime_field()) return FqElem{a.code == 0 ? 0 : p_ - a.code};
        Digits da;
        decode(a.code, da);
        if (base_prime_) {
            for (std::size_t i = 0; i < deg_; ++i)
                if (da[i] != 0) da[i] = p_ - da[i];
            return FqElem{encode(da)};
        }
        for (std::size_t i = 0; i < deg_; ++i) da[i] = base_->neg(FqElem{da[i]}).code;
        return FqElem{encode(da)};
    }

    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

    FqElem mul(FqElem a, FqElem b) const {
        check(a), check(b);
        if (is_prime_field()) return FqElem{(a.code * b.code) % p_};
        if (a.code == 0 || b.code == 0) return FqElem{0};
        if (base_prime_) return mul_over_prime(a, b);
        Digits da, db;
        decode(a.code, da);
        decode(b.code, db);
        std::array<std::uint64_t, 2 * kMaxDegreeOverBase> prod{};
        for (std::size_t i = 0; i < deg_; ++i) {
            if (da[i] == 0) continue;
            for (std::size_t j = 0; j < deg_; ++j) {
                if (db[j] == 0) continue;
                FqElem t = base_->mul(FqElem{da[i]}, FqElem{db[j]});
                prod[i + j] = base_->add(FqElem{prod[i + j]}, t).code;
            }
        }
        reduce(prod);
        Digits out{};
        for (std::size_t i = 0; i < deg_; ++i) out[i] = prod[i];
        return FqElem{encode(out)};
    }

    FqElem pow(FqElem a, std::uint64_t e) const {
        check(a);
        FqElem acc = one();
        FqElem sq = a;
        while (e) {
            if (e & 1) acc = mul(acc, sq);
            e >>= 1;
            if (e) sq = mul(sq, sq);
        }
        return acc;
    }

    FqElem inv(FqElem a) const {
        check(a);
        if (a.code == 0) throw DivisionByZeroError("inverse of zero");
        return pow(a, card_ - 2);
    }

    FqElem div(FqElem a, FqElem b) const {
        if (b.code == 0) throw DivisionByZeroError("division by zero field element");
        return mul(a, inv(b));
    }

    // Frobenius x -> x^p.
    FqElem frobenius(FqElem a) const { return pow(a, p_); }

private:
    using Digits = std::array<std::uint64_t, kMaxDegreeOverBase>;

    explicit Field(std::uint64_t p) : p_(p), card_(p), deg_(1) {}

    Field(FieldPtr base, std::vector<std::uint64_t> mod, std::uint64_t card)
        : p_(base->characteristic()),
          base_(std::move(base)),
          mod_(std::move(mod)),
          card_(card),
          deg_(static_cast<std::uint32_t>(mod_.size() - 1)),
          // raw digit accumulation needs deg * (p-1)^2 < 2^63
          base_prime_(base_->is_prime_field() && p_ < (std::uint64_t(1) << 28)) {}

    // One-level extensions of a prime field run on raw digits with deferred
    // reduction; this is the hot loop of point counting over F_{q^k}.
    FqElem mul_over_prime(FqElem a, FqElem b) const {
        Digits da, db;
        decode(a.code, da);
        decode(b.code, db);
        std::array<std::uint64_t, 2 * kMaxDegreeOverBase> prod{};
        for (std::size_t i = 0; i < deg_; ++i) {
            const std::uint64_t ai = da[i];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < deg_; ++j) prod[i + j] += ai * db[j];
        }
        const std::uint64_t pp = p_ * p_;
        for (std::size_t i = 0; i < 2 * deg_ - 1; ++i) prod[i] %= p_;
        for (std::size_t top = 2 * deg_ - 2; top >= deg_; --top) {
            const std::uint64_t c = prod[top];
            if (c != 0) {
                prod[top] = 0;
                const std::size_t shift = top - deg_;
                for (std::size_t i = 0; i < deg_; ++i) {
                    if (mod_[i] == 0) continue;
                    prod[shift + i] = (prod[shift + i] + pp - c * mod_[i]) % p_;
                }
            }
            if (top == deg_) break;
        }
        Digits out{};
        for (std::size_t i = 0; i < deg_; ++i) out[i] = prod[i];
        return FqElem{encode(out)};
    }

    static void check_prime(std::uint64_t p) {
        if (p < 2) throw InvalidArgumentError("characteristic must be prime");
        if (p >= (std::uint64_t(1) << 31))
            throw InvalidArgumentError("characteristic too large");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw InvalidArgumentError("characteristic must be prime");
    }

    void check(FqElem a) const {
        if (a.code >= card_) throw InvalidArgumentError("element code out of range for field");
    }

    void decode(std::uint64_t code, Digits& out) const {
        const std::uint64_t b = base_->cardinality();
        for (std::size_t i = 0; i < deg_; ++i) {
            out[i] = code % b;
            code /= b;
        }
    }

    std::uint64_t encode(const Digits& d) const {
        const std::uint64_t b = base_->cardinality();
        std::uint64_t code = 0;
        for (std::size_t i = deg_; i-- > 0;) code = code * b + d[i];
        return code;
    }

    // Reduce a length-(2*deg-1) digit vector modulo the (monic) modulus.
    void reduce(std::array<std::uint64_t, 2 * kMaxDegreeOverBase>& prod) const {
        for (std::size_t top = 2 * deg_ - 2; top >= deg_; --top) {
            const std::uint64_t c = prod[top];
            if (c != 0) {
                prod[top] = 0;
                const std::size_t shift = top - deg_;
                for (std::size_t i = 0; i < deg_; ++i) {
                    if (mod_[i] == 0) continue;
                    FqElem t = base_->mul(FqElem{c}, FqElem{mod_[i]});
                    prod[shift + i] = base_->sub(FqElem{prod[shift + i]}, t).code;
                }
            }
            if (top == deg_) break;
        }
    }

    std::uint64_t p_;
    FieldPtr base_;
    std::vector<std::uint64_t> mod_;
    std::uint64_t card_;
    std::uint32_t deg_;
    bool base_prime_ = false;
};

}  // namespace gonal
