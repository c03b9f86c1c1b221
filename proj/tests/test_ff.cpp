#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>

#include "isotope/ff.hpp"

using namespace isotope;

TEST_CASE("deterministic modulus selection") {
    // two irreducible cubics over GF(2); x^3+x+1 has the smaller encoding
    auto f8 = FieldSpec::make(2, 3);
    CHECK(f8->modulus() == std::vector<int>{1, 1, 0, 1});

    auto f2 = FieldSpec::make(2, 1);
    CHECK(f2->modulus() == std::vector<int>{0, 1});  // modulus x

    auto f27 = FieldSpec::make(3, 3);
    CHECK(f27->order() == 27);
    CHECK(poly::is_irreducible(f27->modulus(), 3));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(FieldSpec::make(4, 2), NotPrime);
    CHECK_THROWS_AS(FieldSpec::make(1, 2), NotPrime);
    // x^3+x^2+x+1 has the root 1 over GF(2)
    CHECK_THROWS_AS(FieldSpec::make(2, 3, std::vector<int>{1, 1, 1, 1}), ReducibleModulus);
    CHECK_NOTHROW(FieldSpec::make(2, 3, std::vector<int>{1, 1, 0, 1}));
    CHECK_NOTHROW(FieldSpec::make(2, 3, std::vector<int>{1, 0, 1, 1}));  // the other cubic
}

TEST_CASE("GF(8) arithmetic") {
    auto k = FieldSpec::make(2, 3);
    const elem_t alpha = 2;  // class of x
    // alpha^3 = alpha + 1 after reduction by x^3+x+1
    CHECK(k->mul(k->mul(alpha, alpha), alpha) == k->add(alpha, 1));
    CHECK(k->inv(1) == 1);

    // alpha generates all 7 nonzero elements
    std::set<elem_t> seen;
    elem_t x = 1;
    for (int i = 0; i < 7; ++i) {
        seen.insert(x);
        x = k->mul(x, alpha);
    }
    CHECK(seen.size() == 7);
    CHECK(x == 1);

    for (elem_t a = 1; a < 8; ++a) CHECK(k->mul(k->inv(a), a) == 1);
    CHECK_THROWS_AS(k->inv(0), DivisionByZero);
}

TEST_CASE("field axioms, exhaustive for small orders") {
    for (auto [p, d] : {std::pair{2, 3}, {3, 2}, {5, 1}, {2, 6}}) {
        auto k = FieldSpec::make(p, d);
        const elem_t N = k->order();
        for (elem_t a = 0; a < N; ++a) {
            CHECK(k->encode(k->decode(a)) == a);
            for (elem_t b = 0; b < N; ++b) {
                CHECK(k->add(a, b) == k->add(b, a));
                CHECK(k->mul(a, b) == k->mul(b, a));
                CHECK(k->sub(k->add(a, b), b) == a);
            }
        }
        // distributivity spot checks on a grid
        for (elem_t a = 0; a < N; a += 3)
            for (elem_t b = 0; b < N; b += 2)
                for (elem_t c = 0; c < N; c += 2)
                    CHECK(k->mul(a, k->add(b, c)) == k->add(k->mul(a, b), k->mul(a, c)));
    }
}

TEST_CASE("frobenius") {
    auto k = FieldSpec::make(2, 3);
    const elem_t alpha = 2;
    CHECK(k->frobenius(0, 2) == 0);
    CHECK(k->frobenius(1, 2) == 1);
    CHECK(k->frobenius(alpha, 2) == k->mul(alpha, alpha));
    // applying x -> x^2 three times is the identity on GF(8)
    for (elem_t a = 0; a < 8; ++a) {
        elem_t b = a;
        for (int i = 0; i < 3; ++i) b = k->frobenius(b, 2);
        CHECK(b == a);
    }
    // additive and multiplicative
    for (elem_t a = 0; a < 8; ++a)
        for (elem_t b = 0; b < 8; ++b) {
            CHECK(k->frobenius(k->add(a, b), 2) == k->add(k->frobenius(a, 2), k->frobenius(b, 2)));
            CHECK(k->frobenius(k->mul(a, b), 2) == k->mul(k->frobenius(a, 2), k->frobenius(b, 2)));
        }
    CHECK_THROWS_AS(k->frobenius(alpha, 3), Error);  // not a power of p
}

TEST_CASE("pow and generator") {
    auto k = FieldSpec::make(3, 2);  // GF(9)
    const elem_t g = k->generator();
    std::set<elem_t> orbit;
    elem_t x = 1;
    for (int i = 0; i < 8; ++i) {
        orbit.insert(x);
        x = k->mul(x, g);
    }
    CHECK(orbit.size() == 8);
    CHECK(k->pow(g, 8) == 1);
    CHECK(k->pow(g, -1) == k->inv(g));
    CHECK(k->pow(0, 0) == 1);
    CHECK(k->pow(0, 5) == 0);
}

TEST_CASE("FieldElement value semantics") {
    auto k = FieldSpec::make(2, 3);
    auto k2 = FieldSpec::make(3, 1);
    FieldElement a(k.get(), 2), b(k.get(), 3);
    CHECK((a * b).value() == k->mul(2, 3));
    CHECK((a + b).value() == 1);
    CHECK(a.inv() * a == FieldElement(k.get(), 1));
    FieldElement c(k2.get(), 2);
    CHECK_THROWS_AS((void)(a + c), FieldMismatch);
}

TEST_CASE("schoolbook fallback above the table range") {
    // 2^17 elements: too large for log/antilog tables, arithmetic stays exact
    auto k = FieldSpec::make(2, 17);
    CHECK(k->order() == 131072u);
    const elem_t g = k->generator();
    CHECK(g != 0);
    elem_t x = 0x1357;
    for (int t = 0; t < 50; ++t) {
        x = k->mul(x, g);
        if (x == 0) x = 3;
        CHECK(k->mul(k->inv(x), x) == 1);
        CHECK(k->mul(x, k->pow(x, k->order() - 2)) == 1);
        CHECK(k->frobenius(k->mul(x, g), 2) ==
              k->mul(k->frobenius(x, 2), k->frobenius(g, 2)));
    }
}

TEST_CASE("polynomial helpers") {
    using namespace poly;
    CHECK(is_irreducible({1, 1, 0, 1}, 2));
    CHECK_FALSE(is_irreducible({1, 1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible({0, 0, 0, 1}, 2));  // x^3
    CHECK(is_irreducible({1, 0, 2, 1}, 3));        // 1 + 2x^2 + x^3 over GF(3)
    CHECK(is_irreducible({0, 1}, 5));              // degree one
    // gcd(x^2-1, x-1) = x-1 over GF(5)
    auto g = gcd({4, 0, 1}, {4, 1}, 5);
    REQUIRE(g.size() == 2);
    CHECK(g[1] != 0);
}
