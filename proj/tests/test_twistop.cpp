#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isotope/twistop.hpp"
#include "isotope/verify.hpp"

using namespace isotope;

namespace {
// independent oracle for n = 3: N(y0) + N(y1) + N(y2) - T(y0 tau(y1) tau^2(y2))
elem_t closed_form_norm3(const CyclicExtension& ext, elem_t y0, elem_t y1, elem_t y2) {
    const FieldSpec& k = ext.field();
    const elem_t nsum = k.add(k.add(ext.norm(y0), ext.norm(y1)), ext.norm(y2));
    return k.sub(nsum, ext.trace(k.mul(k.mul(y0, ext.tau(y1, 1)), ext.tau(y2, 2))));
}
}  // namespace

TEST_CASE("apply") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const FieldSpec& k = ext->field();
    const elem_t alpha = 2;
    const TwistedOperator id = identity_op(*ext);
    for (elem_t x = 0; x < 8; ++x) CHECK(id.apply(x) == x);
    const TwistedOperator t = tau_op(*ext, 1);
    for (elem_t x = 0; x < 8; ++x) CHECK(t.apply(x) == ext->tau(x));
    // f = (1, alpha, 0): f(alpha) = alpha + alpha * alpha^2 = alpha + alpha^3
    TwistedOperator f(ext.get(), {1, alpha, 0});
    CHECK(f.apply(alpha) == k.add(alpha, k.mul(alpha, k.mul(alpha, alpha))));
}

TEST_CASE("compose matches sequential application") {
    auto ext = CyclicExtension::build(2, 1, 3);
    SampleRng rng(7);
    const TwistedOperator id = identity_op(*ext);
    CHECK(tau_op(*ext, 1).compose(tau_op(*ext, 1)) == tau_op(*ext, 2));
    for (int t = 0; t < 100; ++t) {
        std::vector<elem_t> y(3), z(3);
        for (int i = 0; i < 3; ++i) {
            y[i] = static_cast<elem_t>(rng.below(8));
            z[i] = static_cast<elem_t>(rng.below(8));
        }
        TwistedOperator f(ext.get(), y), g(ext.get(), z);
        CHECK(id.compose(g) == g);
        const TwistedOperator fg = f.compose(g);
        for (elem_t x = 0; x < 8; ++x) CHECK(fg.apply(x) == f.apply(g.apply(x)));
    }
}

TEST_CASE("matrix representation is a ring homomorphism") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const FieldSpec& k = ext->field();
    SampleRng rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<elem_t> y(3), z(3);
        for (int i = 0; i < 3; ++i) {
            y[i] = static_cast<elem_t>(rng.below(27));
            z[i] = static_cast<elem_t>(rng.below(27));
        }
        TwistedOperator f(ext.get(), y), g(ext.get(), z);
        CHECK(f.compose(g).to_matrix() == fmat_mul(k, f.to_matrix(), g.to_matrix()));
        CHECK(from_matrix(*ext, f.to_matrix()) == f);
    }
    CHECK(from_matrix(*ext, FMatrix::identity(3)) == identity_op(*ext));
}

TEST_CASE("from_matrix . to_matrix = id on all of End, q = 2, n = 2") {
    auto ext = CyclicExtension::build(2, 1, 2);
    const CheckResult r = check_matrix_roundtrip(*ext, 0, 0);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("reduced norm: identity and the singular (1, alpha, 0)") {
    auto ext = CyclicExtension::build(2, 1, 3);
    CHECK(identity_op(*ext).reduced_norm() == 1);
    const elem_t alpha = 2;
    // char 2: 1 + N(alpha) = 1 + 1 = 0
    TwistedOperator f(ext.get(), {1, alpha, 0});
    CHECK(f.reduced_norm() == 0);
    CHECK_FALSE(f.is_invertible());
    CHECK_THROWS_AS(f.inverse(), SingularOperator);
    CHECK(fmat_det(ext->field(), f.to_matrix()) == 0);
}

TEST_CASE("determinant identity, exhaustive over GF(8)/GF(2)") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const CheckResult r = check_determinant_identity(*ext, 0, 0);
    CHECK_MESSAGE(r.pass, r.detail);
    // closed form agrees with det_K(R(y)) on all inputs
    for (elem_t y0 = 0; y0 < 8; ++y0)
        for (elem_t y1 = 0; y1 < 8; ++y1)
            for (elem_t y2 = 0; y2 < 8; ++y2)
                CHECK(TwistedOperator(ext.get(), {y0, y1, y2}).reduced_norm() ==
                      closed_form_norm3(*ext, y0, y1, y2));
}

TEST_CASE("determinant identity, sampled at larger parameters") {
    for (auto [p, m, n] :
         {std::tuple{3, 1, 3}, {2, 2, 3}, {5, 1, 3}, {2, 1, 2}, {2, 1, 4}, {2, 1, 5}}) {
        auto ext = CyclicExtension::build(p, m, n);
        const CheckResult r = check_determinant_identity(*ext, 500, 42);
        CHECK_MESSAGE(r.pass, r.detail);
    }
}

TEST_CASE("inverse") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const TwistedOperator id = identity_op(*ext);
    CHECK(id.inverse() == id);
    SampleRng rng(3);
    for (int t = 0; t < 50; ++t) {
        const TwistedOperator f = random_invertible_op(*ext, rng);
        CHECK(f.inverse().compose(f) == id);
        CHECK(f.compose(f.inverse()) == id);
    }
}

TEST_CASE("left multiplication operators") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const FieldSpec& k = ext->field();
    CHECK(left_mul(*ext, 1) == identity_op(*ext));
    for (elem_t u = 1; u < 8; ++u)
        for (elem_t v = 1; v < 8; ++v) {
            CHECK(left_mul(*ext, u).compose(left_mul(*ext, v)) == left_mul(*ext, k.mul(u, v)));
            CHECK(left_mul(*ext, u).apply(v) == k.mul(u, v));
        }
}

TEST_CASE("transforms of invertible operators stay invertible") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const CheckResult r = check_transform_invertibility(*ext, 300, 5);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("right multiplication matrix layout") {
    auto ext = CyclicExtension::build(2, 1, 3);
    // R(y)[k][j] = tau^j(y_(k-j mod n))
    std::vector<elem_t> y = {3, 5, 6};
    const FMatrix r = right_mult_matrix(*ext, y);
    for (int kk = 0; kk < 3; ++kk)
        for (int j = 0; j < 3; ++j) CHECK(r.at(kk, j) == ext->tau(y[(kk - j + 3) % 3], j));
}
