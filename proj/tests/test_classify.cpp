#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isotope/json_io.hpp"
#include "isotope/verify.hpp"

using namespace isotope;

TEST_CASE("type partition") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const TypeTag t1 = type_partition(identity_op(*ext));
    CHECK(t1.N2 == std::vector<int>{0});
    CHECK(t1.N0 == std::vector<int>{1, 2});
    CHECK(t1.N1.empty());

    const TypeTag t2 = type_partition(TwistedOperator(ext.get(), {1, 2, 0}));
    CHECK(t2.N2 == std::vector<int>{0, 1});
    CHECK(t2.N0 == std::vector<int>{2});

    const TypeTag t3 = type_partition(TwistedOperator(ext.get(), {0, 3, 5}));
    CHECK(t3.N0 == std::vector<int>{0});
    CHECK(t3.N2 == std::vector<int>{1, 2});
}

TEST_CASE("canonicalize: identity presentation is type 5 with canonical g = id") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const CanonicalForm c =
        canonicalize({ext.get(), identity_op(*ext), identity_op(*ext)});
    CHECK(c.tag.cubic_type == 5);
    CHECK(c.pres.f == identity_op(*ext));
    CHECK(c.pres.g == identity_op(*ext));
    CHECK(c.applied.u == 1);
    CHECK(c.applied.v == 1);
}

TEST_CASE("canonicalize: type 1 scales y1 into M at q = 3") {
    auto ext = CyclicExtension::build(3, 1, 3);
    SampleRng rng(77);
    int seen = 0;
    while (seen < 25) {
        const TwistedOperator f = random_invertible_op(*ext, rng);
        if (f.coeff(0) == 0 || f.coeff(1) == 0 || f.coeff(2) == 0) continue;
        ++seen;
        const TwistedOperator g = random_invertible_op(*ext, rng);
        const CanonicalForm c = canonicalize({ext.get(), f, g});
        CHECK(c.tag.cubic_type == 1);
        CHECK(c.pres.f.coeff(0) == 1);
        CHECK(ext->in_M(c.pres.f.coeff(1)));
        // the applied witness really transforms the input to the canonical form
        CHECK(check_critical({ext.get(), f, g}, c.pres, c.applied));
    }
}

TEST_CASE("canonicalize: y0 = 0 cubic shapes") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const FieldSpec& k = ext->field();
    for (elem_t y1 = 1; y1 < 27; ++y1)
        for (elem_t y2 = 0; y2 < 27; ++y2) {
            TwistedOperator f(ext.get(), {0, y1, y2});
            if (!f.is_invertible()) continue;
            const CanonicalForm c = canonicalize({ext.get(), f, identity_op(*ext)});
            if (y2 != 0) {
                CHECK(c.tag.cubic_type == 6);
                CHECK(c.pres.f.coeff(1) == 1);
                CHECK(ext->in_M(c.pres.f.coeff(2)));
            } else {
                CHECK(c.tag.cubic_type == 8);
                CHECK(c.pres.f == tau_op(*ext, 1));
            }
        }
    // type 7: f = L(y2) tau^2 reduces to tau^2
    for (elem_t y2 = 1; y2 < 27; ++y2) {
        TwistedOperator f(ext.get(), {0, 0, y2});
        REQUIRE(f.is_invertible());
        const CanonicalForm c = canonicalize({ext.get(), f, identity_op(*ext)});
        CHECK(c.tag.cubic_type == 7);
        CHECK(c.pres.f == tau_op(*ext, 2));
        (void)k;
    }
}

TEST_CASE("canonical stability") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const CheckResult r = check_canonical_stability(*ext, 200, 3);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("types 2 and 3 are empty over GF(2)") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const CheckResult r = check_type_emptiness_q2(*ext);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("iso_critical: self isomorphism and extension mismatch") {
    auto ext = CyclicExtension::build(2, 1, 3);
    SampleRng rng(1);
    const IsotopePresentation p{ext.get(), random_invertible_op(*ext, rng),
                                random_invertible_op(*ext, rng)};
    auto w = iso_critical(p, p);
    REQUIRE(w.has_value());
    CHECK(w->u == 1);
    CHECK(w->v == 1);
    CHECK(w->sigma == 0);

    auto other = CyclicExtension::build(2, 1, 3);
    const IsotopePresentation q{other.get(), identity_op(*other), identity_op(*other)};
    CHECK_THROWS_AS(iso_critical(p, q), ExtensionMismatch);
}

TEST_CASE("iso_critical finds scaling witnesses (Cor 1.13 style)") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const CheckResult r = check_scaling_isomorphism(*ext, 20, 7);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("witness group laws") {
    auto ext = CyclicExtension::build(3, 1, 3);
    SampleRng rng(15);
    for (int t = 0; t < 40; ++t) {
        const IsotopePresentation p{ext.get(), random_invertible_op(*ext, rng),
                                    random_invertible_op(*ext, rng)};
        const CriticalWitness w1{static_cast<elem_t>(1 + rng.below(26)),
                                 static_cast<elem_t>(1 + rng.below(26)),
                                 static_cast<int>(rng.below(3))};
        const CriticalWitness w2{static_cast<elem_t>(1 + rng.below(26)),
                                 static_cast<elem_t>(1 + rng.below(26)),
                                 static_cast<int>(rng.below(3))};
        const IsotopePresentation q = witness_apply(witness_apply(p, w1), w2);
        const IsotopePresentation q2 = witness_apply(p, witness_compose(*ext, w1, w2));
        CHECK(q.f == q2.f);
        CHECK(q.g == q2.g);
        const IsotopePresentation back =
            witness_apply(witness_apply(p, w1), witness_inverse(*ext, w1));
        CHECK(back.f == p.f);
        CHECK(back.g == p.g);
        CHECK(check_critical(p, witness_apply(p, w1), w1));
    }
}

TEST_CASE("iso_bruteforce: identity first, unital vs non-unital") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const AlgebraStructure kk = field_algebra(*ext);
    auto phi = iso_bruteforce(kk, kk);
    REQUIRE(phi.has_value());
    CHECK(*phi == FMatrix::identity(3));

    // K vs K^(tau, id): no unit on the right, so no isomorphism among all 168 maps
    const AlgebraStructure a = from_presentation({ext.get(), tau_op(*ext, 1), identity_op(*ext)});
    CHECK_FALSE(iso_bruteforce(kk, a).has_value());
}

TEST_CASE("GL enumeration has the right order and starts at the identity") {
    auto ext = CyclicExtension::build(2, 1, 3);
    int count = 0;
    bool first = true;
    for_each_gl(*ext, [&](const FMatrix& phi) {
        if (first) {
            CHECK(phi == FMatrix::identity(3));
            first = false;
        }
        ++count;
        return true;
    });
    CHECK(count == 168);

    auto ext2 = CyclicExtension::build(2, 1, 2);
    count = 0;
    for_each_gl(*ext2, [&](const FMatrix&) {
        ++count;
        return true;
    });
    CHECK(count == 6);
}

TEST_CASE("oracle equivalence on sampled pairs at q = 2") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const CheckResult r = check_oracle_equivalence(*ext, 60, 99);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("cubic fast paths: type 5 closed form") {
    auto ext = CyclicExtension::build(3, 1, 3);
    SampleRng rng(2);
    for (int t = 0; t < 20; ++t) {
        TwistedOperator g = random_invertible_op(*ext, rng);
        std::vector<elem_t> x = g.coeffs();
        x[0] = 1;
        TwistedOperator g1(ext.get(), x);
        if (!g1.is_invertible()) continue;
        const CanonicalForm a = canonicalize({ext.get(), identity_op(*ext), g1});
        REQUIRE(a.tag.cubic_type == 5);
        // x = w: sigma = id
        auto w0 = iso_cubic_cases(a, a);
        REQUIRE(w0.has_value());
        CHECK(w0->sigma == 0);
        // w_i = tau(x_i): sigma = tau
        std::vector<elem_t> tx = {1, ext->tau(x[1]), ext->tau(x[2])};
        const CanonicalForm b = canonicalize({ext.get(), identity_op(*ext),
                                              TwistedOperator(ext.get(), tx)});
        REQUIRE(b.tag.cubic_type == 5);
        auto w1 = iso_cubic_cases(a, b);
        REQUIRE(w1.has_value());
        if (x[1] != ext->tau(x[1]) || x[2] != ext->tau(x[2])) CHECK(w1->sigma == 1);
    }
}

TEST_CASE("cubic fast paths agree with the generic search on sampled pairs") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const CheckResult r = check_cubic_cases_agreement(*ext, 150, 4);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("cubic fast paths, directed per-type pairs") {
    // q = 3 leaves only trivial designated coefficients in types 2, 3, 6;
    // q = 4 exercises the twisted subcases with nontrivial M-elements
    for (auto [p, m] : {std::pair{3, 1}, {2, 2}}) {
        auto ext = CyclicExtension::build(p, m, 3);
        const CheckResult r = check_cubic_cases_per_type(*ext, 60, 21);
        CHECK_MESSAGE(r.pass, r.detail);
    }
}

TEST_CASE("type mismatch is rejected") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const CanonicalForm a = canonicalize({ext.get(), identity_op(*ext), identity_op(*ext)});
    const CanonicalForm b =
        canonicalize({ext.get(), tau_op(*ext, 1), identity_op(*ext)});
    CHECK_THROWS_AS(iso_cubic_cases(a, b), TypeMismatch);
}

TEST_CASE("det invariant labels are always trivial over finite fields") {
    auto ext = CyclicExtension::build(3, 1, 3);
    const CheckResult r = check_det_invariant(*ext, 20, 8);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("atlas: n = 2 sanity run with oracle") {
    auto ext = CyclicExtension::build(2, 1, 2);
    AtlasOptions opt;
    opt.oracle = true;
    const AtlasReport rep = atlas(*ext, opt);
    CHECK(rep.oracle_checked);
    CHECK(rep.oracle_agrees);
    unsigned long long total = 0;
    for (const auto& t : rep.types)
        for (const auto& c : t.classes) total += c.members;
    CHECK(total == 36);  // |GL_2(F_2)|^2 presentations
}

TEST_CASE("atlas: budget guard and sampled determinism") {
    auto ext = CyclicExtension::build(3, 1, 3);
    AtlasOptions opt;
    CHECK_THROWS_AS(atlas(*ext, opt), BudgetExceeded);

    opt.samples = 150;
    opt.seed = 42;
    const AtlasReport r1 = atlas(*ext, opt);
    const AtlasReport r2 = atlas(*ext, opt);
    CHECK(atlas_to_json(r1).dump() == atlas_to_json(r2).dump());

    opt.seed = 43;
    const AtlasReport r3 = atlas(*ext, opt);
    unsigned long long n1 = 0, n3 = 0;
    for (const auto& t : r1.types) n1 += t.classes.size();
    for (const auto& t : r3.types) n3 += t.classes.size();
    CHECK(n1 > 0);
    CHECK(n3 > 0);
}

TEST_CASE("Burnside count of witness-group orbits matches the atlas") {
    // isomorphism classes are the orbits of (u, v, sigma) acting on invertible
    // pairs; counting fixed points gives the class total without any search
    for (auto [p, m, n] : {std::tuple{2, 1, 2}, {2, 1, 3}}) {
        auto extp = CyclicExtension::build(p, m, n);
        const CyclicExtension& ext = *extp;
        const auto ops = enumerate_invertible_ops(ext);
        std::vector<IsotopePresentation> pres;
        pres.reserve(ops.size() * ops.size());
        for (const auto& fy : ops)
            for (const auto& gy : ops)
                pres.emplace_back(&ext, TwistedOperator(&ext, fy), TwistedOperator(&ext, gy));

        unsigned long long fixed_total = 0;
        const unsigned long long group_order =
            static_cast<unsigned long long>(ext.order() - 1) * (ext.order() - 1) * ext.n();
        for (elem_t u = 1; u < ext.order(); ++u)
            for (elem_t v = 1; v < ext.order(); ++v)
                for (int s = 0; s < ext.n(); ++s) {
                    const CriticalWitness w{u, v, s};
                    for (const auto& pr : pres) {
                        const IsotopePresentation moved = witness_apply(pr, w);
                        if (moved.f == pr.f && moved.g == pr.g) ++fixed_total;
                    }
                }
        REQUIRE(fixed_total % group_order == 0);
        const unsigned long long burnside_classes = fixed_total / group_order;

        AtlasOptions opt;
        const AtlasReport rep = atlas(ext, opt);
        unsigned long long atlas_classes = 0;
        for (const auto& t : rep.types) {
            atlas_classes += t.classes.size();
            // orbit-stabilizer: every class size divides the group order
            for (const auto& c : t.classes) CHECK(group_order % c.members == 0);
        }
        CHECK(burnside_classes == atlas_classes);
    }
}

TEST_CASE("atlas: sampled run with oracle cross-check") {
    auto ext = CyclicExtension::build(3, 1, 3);
    AtlasOptions opt;
    opt.samples = 40;
    opt.seed = 11;
    opt.oracle = true;
    const AtlasReport rep = atlas(*ext, opt);
    CHECK(rep.oracle_checked);
    CHECK(rep.oracle_agrees);
    unsigned long long members = 0;
    for (const auto& t : rep.types)
        for (const auto& c : t.classes) members += c.members;
    CHECK(members == 40);
}

TEST_CASE("atlas: parallel partitions give identical reports") {
    auto ext = CyclicExtension::build(2, 1, 2);
    AtlasOptions seq, par;
    par.threads = 4;
    CHECK(atlas_to_json(atlas(*ext, seq)).dump() == atlas_to_json(atlas(*ext, par)).dump());
}

namespace {
// reference implementation: plain triple loop in (sigma, u, v) order
std::optional<CriticalWitness> naive_iso_critical(const IsotopePresentation& p,
                                                  const IsotopePresentation& pp) {
    const CyclicExtension& ext = *p.ext;
    const FieldSpec& k = ext.field();
    const int n = ext.n();
    for (int s = 0; s < n; ++s)
        for (elem_t u = 1; u < ext.order(); ++u)
            for (elem_t v = 1; v < ext.order(); ++v) {
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    const elem_t scale = k.mul(ext.tau(u, i), ext.tau(v, i));
                    if (pp.f.coeff(i) !=
                        k.mul(k.mul(scale, k.inv(v)), ext.tau(p.f.coeff(i), s)))
                        ok = false;
                    else if (pp.g.coeff(i) !=
                             k.mul(k.mul(scale, k.inv(u)), ext.tau(p.g.coeff(i), s)))
                        ok = false;
                }
                if (ok) return CriticalWitness{u, v, s};
            }
    return std::nullopt;
}
}  // namespace

TEST_CASE("fast-path search returns the same first witness as the plain loop") {
    auto ext = CyclicExtension::build(3, 1, 3);
    SampleRng rng(55);
    int isomorphic = 0;
    for (int t = 0; t < 120; ++t) {
        IsotopePresentation p{ext.get(), random_invertible_op(*ext, rng),
                              random_invertible_op(*ext, rng)};
        IsotopePresentation q = p;
        if (t % 2 == 0) {
            // force an isomorphic partner through a random witness
            const CriticalWitness w{static_cast<elem_t>(1 + rng.below(26)),
                                    static_cast<elem_t>(1 + rng.below(26)),
                                    static_cast<int>(rng.below(3))};
            q = witness_apply(p, w);
        } else {
            q = IsotopePresentation{ext.get(), random_invertible_op(*ext, rng),
                                    random_invertible_op(*ext, rng)};
        }
        auto fast = iso_critical(p, q);
        auto slow = naive_iso_critical(p, q);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            ++isomorphic;
            CHECK(fast->u == slow->u);
            CHECK(fast->v == slow->v);
            CHECK(fast->sigma == slow->sigma);
        }
    }
    CHECK(isomorphic >= 60);  // every engineered pair must be found
}

TEST_CASE("generic n = 4: composite-degree canonical forms and oracle agreement") {
    auto ext = CyclicExtension::build(2, 1, 4);
    const FieldSpec& k = ext->field();
    SampleRng rng(67);

    // f = 1 + L(y2) tau^2 cannot be scaled (tau^2 does not generate C_4)
    int found = 0;
    for (elem_t y2 = 1; y2 < ext->order(); ++y2) {
        TwistedOperator f(ext.get(), {1, 0, y2, 0});
        if (!f.is_invertible()) continue;
        ++found;
        const CanonicalForm c = canonicalize({ext.get(), f, random_invertible_op(*ext, rng)});
        CHECK(c.tag.cubic_type == 0);
        CHECK(c.pres.f.coeff(2) == y2);  // untouched: no generating power available
        CHECK(c.tag.N0 == std::vector<int>{1, 3});
    }
    CHECK(found > 0);

    // when a generating index is present the designated coefficient lands in M
    for (int t = 0; t < 10; ++t) {
        TwistedOperator f = random_invertible_op(*ext, rng);
        if (f.coeff(0) == 0) continue;
        const CanonicalForm c = canonicalize({ext.get(), f, random_invertible_op(*ext, rng)});
        CHECK(c.pres.f.coeff(0) == 1);
        int idx = -1;
        for (int i = 1; i < 4; ++i)
            if (c.pres.f.coeff(i) != 0 && (i % 2) == 1) {
                idx = i;
                break;
            }
        if (idx > 0) CHECK(ext->in_M(c.pres.f.coeff(idx)));
    }

    // the critical-relations decision matches the GL(4,2) oracle
    int pairs = 0;
    while (pairs < 12) {
        IsotopePresentation p{ext.get(), random_invertible_op(*ext, rng),
                              random_invertible_op(*ext, rng)};
        IsotopePresentation q{ext.get(), random_invertible_op(*ext, rng),
                              random_invertible_op(*ext, rng)};
        if (pairs % 3 == 0) {
            const CriticalWitness w{static_cast<elem_t>(1 + rng.below(15)),
                                    static_cast<elem_t>(1 + rng.below(15)),
                                    static_cast<int>(rng.below(4))};
            q = witness_apply(p, w);
        }
        auto wc = iso_critical(p, q);
        auto phi = iso_bruteforce(from_presentation(p), from_presentation(q));
        CHECK(wc.has_value() == phi.has_value());
        if (wc) CHECK(check_critical(p, q, *wc));
        ++pairs;
    }
    (void)k;
}

TEST_CASE("json round trips") {
    auto ext = CyclicExtension::build(2, 1, 3);
    const json ej = extension_to_json(*ext);
    auto ext2 = extension_from_json(ej);
    CHECK(ext2->order() == 8);

    const TwistedOperator f(ext.get(), {1, 2, 0});
    CHECK(operator_from_json(*ext, operator_to_json(f)) == f);

    const AlgebraStructure a = from_presentation({ext.get(), tau_op(*ext, 1), identity_op(*ext)});
    auto [ext3, a2] = tensor_from_json(tensor_to_json(a));
    CHECK(a2.tensor() == a.tensor());

    CHECK_THROWS_AS(extension_from_json(json{{"p", 2}}), ParseError);
}
