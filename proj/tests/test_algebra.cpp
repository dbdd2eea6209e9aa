#include <doctest.h>

#include "gonal/field.hpp"
#include "gonal/rng.hpp"
#include "gonal/unipoly.hpp"
#include "support/oracles.hpp"

using namespace gonal;

TEST_SUITE_BEGIN("algebra");

TEST_CASE("prime field arithmetic") {
    FieldPtr f3 = Field::prime(3);
    CHECK(f3->add(FqElem{2}, FqElem{2}) == FqElem{1});
    CHECK(f3->sub(FqElem{0}, FqElem{1}) == FqElem{2});

    FieldPtr f5 = Field::prime(5);
    CHECK(f5->div(FqElem{2}, FqElem{3}) == FqElem{4});  // 3 * 4 = 12 = 2
    CHECK_THROWS_AS(f5->div(FqElem{1}, FqElem{0}), DivisionByZeroError);
    CHECK_THROWS_AS(f5->element(5), InvalidArgumentError);
    CHECK_THROWS_AS(Field::prime(4), InvalidArgumentError);
}

TEST_CASE("F_4 multiplication forced by the modulus") {
    // F_4 = F_2[x]/(x^2+x+1); x has code 2 and x*x = x+1 has code 3
    FieldPtr f4 = field_from_spec(2, 2, {1, 1, 1});
    CHECK(f4->cardinality() == 4);
    CHECK(f4->mul(FqElem{2}, FqElem{2}) == FqElem{3});
    CHECK(f4->mul(FqElem{2}, FqElem{3}) == FqElem{1});  // x * (x+1) = x^2+x = 1
    for (std::uint64_t c = 1; c < 4; ++c)
        CHECK(f4->mul(FqElem{c}, f4->inv(FqElem{c})) == f4->one());
}

TEST_CASE("find_irreducible deterministic order") {
    FieldPtr f3 = Field::prime(3);
    CHECK(find_irreducible(f3, 2).codes() == std::vector<std::uint64_t>{1, 0, 1});  // t^2+1
    FieldPtr f2 = Field::prime(2);
    CHECK(find_irreducible(f2, 2).codes() == std::vector<std::uint64_t>{1, 1, 1});  // t^2+t+1
    FieldPtr f5 = Field::prime(5);
    CHECK(find_irreducible(f5, 1).codes() == std::vector<std::uint64_t>{0, 1});  // t
    // repeated calls byte-identical
    CHECK(find_irreducible(f3, 4).codes() == find_irreducible(f3, 4).codes());
}

TEST_CASE("extension_spec") {
    FieldPtr f3 = Field::prime(3);
    CHECK(extension_spec(f3, 1).get() == f3.get());
    FieldPtr f9 = extension_spec(f3, 2);
    CHECK(f9->cardinality() == 9);
    CHECK(f9->modulus_codes() == std::vector<std::uint64_t>{1, 0, 1});  // u^2+1
    FieldPtr f8 = extension_spec(Field::prime(2), 3);
    CHECK(f8->cardinality() == 8);
    // constants keep their codes under the embedding
    UniPoly a = UniPoly::from_codes(f3, {2, 1});  // t + 2
    CHECK(a.eval_in(f9, FqElem{1}) == f9->element(0));
}

TEST_CASE("mixed-field operands are rejected") {
    UniPoly a = UniPoly::from_codes(Field::prime(3), {1, 1});
    UniPoly b = UniPoly::from_codes(Field::prime(5), {1, 1});
    CHECK_THROWS_AS(a + b, MixedFieldError);
    CHECK_THROWS_AS(a * b, MixedFieldError);
    FieldPtr f25 = extension_spec(Field::prime(5), 2);
    CHECK_THROWS_AS(a.eval_in(f25, FqElem{3}), MixedFieldError);
}

TEST_CASE("poly arithmetic examples") {
    FieldPtr f3 = Field::prime(3);
    UniPoly t2m1 = UniPoly::from_codes(f3, {2, 0, 1});  // t^2 - 1
    UniPoly tm1 = UniPoly::from_codes(f3, {2, 1});      // t - 1
    CHECK(poly_gcd(t2m1, tm1) == tm1);
    CHECK(poly_gcd(t2m1, tm1).is_monic());

    FieldPtr f2 = Field::prime(2);
    UniPoly tp1 = UniPoly::from_codes(f2, {1, 1});
    CHECK((tp1 * tp1).codes() == std::vector<std::uint64_t>{1, 0, 1});  // char-2 square

    UniPoly t3 = UniPoly::from_codes(f3, {0, 0, 0, 1});
    UniPoly t2p1 = UniPoly::from_codes(f3, {1, 0, 1});
    auto [q, r] = divrem(t3, t2p1);
    CHECK(q.codes() == std::vector<std::uint64_t>{0, 1});  // t
    CHECK(r.codes() == std::vector<std::uint64_t>{0, 2});  // -t = 2t
    CHECK_THROWS_AS(divrem(t3, UniPoly::zero(f3)), DivisionByZeroError);
    CHECK_THROWS_AS(poly_gcd(UniPoly::zero(f3), UniPoly::zero(f3)), InvalidArgumentError);
}

TEST_CASE("valuation examples and additivity") {
    FieldPtr f3 = Field::prime(3);
    UniPoly t = UniPoly::variable(f3);
    UniPoly a = UniPoly::from_codes(f3, {0, 0, 2, 1});  // t^2(t - 1) = t^3 + 2t^2
    CHECK(valuation_at(a, t) == 2);
    CHECK(valuation_at(UniPoly::from_codes(f3, {1, 0, 1}), t) == 0);
    CHECK(valuation_at(UniPoly::zero(f3), t) == kValInfinity);

    SeededRng rng(101);
    for (int iter = 0; iter < 50; ++iter) {
        UniPoly u = oracles::random_poly(f3, 6, rng);
        UniPoly v = oracles::random_poly(f3, 6, rng);
        if (u.is_zero() || v.is_zero()) continue;
        CHECK(valuation_at(u * v, t) == valuation_at(u, t) + valuation_at(v, t));
    }
}

TEST_CASE("squarefree examples") {
    FieldPtr f3 = Field::prime(3);
    CHECK(is_squarefree(UniPoly::from_codes(f3, {1, 0, 1})));         // t^2+1 irreducible
    CHECK_FALSE(is_squarefree(UniPoly::from_codes(f3, {0, 0, 1})));   // t^2
    CHECK_FALSE(is_squarefree(UniPoly::from_codes(f3, {0, 0, 0, 1})));  // t^3, derivative 0
    CHECK_THROWS_AS(is_squarefree(UniPoly::zero(f3)), InvalidArgumentError);
}

TEST_CASE("squarefree agrees with trial-division factorization up to degree 6") {
    for (std::uint64_t p : {2ULL, 3ULL}) {
        FieldPtr f = Field::prime(p);
        for (int d = 1; d <= 6; ++d)
            for (const UniPoly& a : oracles::all_monic(f, d))
                CHECK(is_squarefree(a) == oracles::trial_division_squarefree(a, 3));
    }
}

TEST_CASE("irreducibility examples") {
    CHECK(is_irreducible(UniPoly::from_codes(Field::prime(3), {1, 0, 1})));
    CHECK_FALSE(is_irreducible(UniPoly::from_codes(Field::prime(5), {1, 0, 1})));  // 2^2 = -1
    CHECK(is_irreducible(UniPoly::from_codes(Field::prime(2), {1, 1, 1})));
    CHECK_THROWS_AS(is_irreducible(UniPoly::constant(Field::prime(3), FqElem{1})),
                    InvalidArgumentError);
}

TEST_CASE("irreducibility agrees with trial division up to degree 6") {
    FieldPtr f2 = Field::prime(2);
    for (int d = 2; d <= 6; ++d)
        for (const UniPoly& a : oracles::all_monic(f2, d))
            CHECK(is_irreducible(a) == oracles::trial_division_irreducible(a));
}

TEST_CASE("roots in field") {
    FieldPtr f3 = Field::prime(3);
    auto codes = [](const std::vector<FqElem>& v) {
        std::vector<std::uint64_t> out;
        for (FqElem e : v) out.push_back(e.code);
        return out;
    };
    CHECK(codes(roots_in_field(UniPoly::from_codes(f3, {2, 0, 1}))) ==
          std::vector<std::uint64_t>{1, 2});
    CHECK(roots_in_field(UniPoly::from_codes(f3, {1, 0, 1})).empty());
    // alpha = t^3 - t vanishes on all of F_3
    CHECK(codes(roots_in_field(UniPoly::from_codes(f3, {0, 2, 0, 1}))) ==
          std::vector<std::uint64_t>{0, 1, 2});
    CHECK_THROWS_AS(roots_in_field(UniPoly::variable(f3), 2), CapExceededError);
}

TEST_CASE("distinct_root_count matches exhaustive enumeration") {
    FieldPtr f9 = extension_spec(Field::prime(3), 2);
    SeededRng rng(77);
    for (int iter = 0; iter < 60; ++iter) {
        UniPoly h = oracles::random_poly(f9, 4, rng);
        if (h.is_zero()) continue;
        CHECK(distinct_root_count(h) == static_cast<int>(roots_in_field(h).size()));
    }
}

TEST_CASE("Frobenius fixes F_{q^k}") {
    FieldPtr f9 = extension_spec(Field::prime(3), 2);
    FieldPtr f8 = extension_spec(Field::prime(2), 3);
    SeededRng rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        FqElem a{rng.next_below(9)};
        CHECK(f9->pow(a, 9) == a);
        FqElem b{rng.next_below(8)};
        CHECK(f8->pow(b, 8) == b);
    }
    // tower: F_81 over F_9
    FieldPtr f81 = extension_spec(f9, 2);
    CHECK(f81->cardinality() == 81);
    for (int iter = 0; iter < 20; ++iter) {
        FqElem a{rng.next_below(81)};
        CHECK(f81->pow(a, 81) == a);
    }
}

TEST_SUITE_END();
