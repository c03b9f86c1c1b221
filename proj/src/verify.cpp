#include "isotope/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace isotope {

namespace {

std::string enc_str(elem_t x) { return std::to_string(x); }

std::string op_str(const TwistedOperator& f) {
    std::string s = "(";
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        s += (i ? "," : "") + std::to_string(f.coeffs()[i]);
    return s + ")";
}

CheckResult pass(const std::string& name, const std::string& detail) {
    return {name, true, detail};
}

CheckResult fail(const std::string& name, const std::string& detail) {
    return {name, false, detail};
}

elem_t random_elem(const CyclicExtension& ext, SampleRng& rng) {
    return static_cast<elem_t>(rng.below(ext.order()));
}

elem_t random_unit(const CyclicExtension& ext, SampleRng& rng) {
    return 1 + static_cast<elem_t>(rng.below(ext.order() - 1));
}

IsotopePresentation random_presentation(const CyclicExtension& ext, SampleRng& rng) {
    TwistedOperator f = random_invertible_op(ext, rng);
    TwistedOperator g = random_invertible_op(ext, rng);
    return {&ext, std::move(f), std::move(g)};
}

}  // namespace

// ---------------------------------------------------------------------------
// field / Galois layer

CheckResult check_field_axioms(const CyclicExtension& ext, std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const elem_t N = k.order();
    const char* name = "ff.field_axioms";
    auto test_triple = [&](elem_t a, elem_t b, elem_t c) -> bool {
        if (k.add(a, b) != k.add(b, a)) return false;
        if (k.mul(a, b) != k.mul(b, a)) return false;
        if (k.add(k.add(a, b), c) != k.add(a, k.add(b, c))) return false;
        if (k.mul(k.mul(a, b), c) != k.mul(a, k.mul(b, c))) return false;
        if (k.mul(a, k.add(b, c)) != k.add(k.mul(a, b), k.mul(a, c))) return false;
        if (a != 0 && k.mul(k.inv(a), a) != 1) return false;
        if (k.sub(a, a) != 0 || k.add(a, k.neg(a)) != 0) return false;
        return true;
    };
    if (N <= 64) {
        for (elem_t a = 0; a < N; ++a)
            for (elem_t b = 0; b < N; ++b)
                for (elem_t c = 0; c < N; ++c)
                    if (!test_triple(a, b, c))
                        return fail(name, "triple " + enc_str(a) + "," + enc_str(b) + "," +
                                              enc_str(c));
        return pass(name, "exhaustive over " + std::to_string(N) + "^3 triples");
    }
    SampleRng rng(seed);
    for (int t = 0; t < 2000; ++t) {
        elem_t a = random_elem(ext, rng), b = random_elem(ext, rng), c = random_elem(ext, rng);
        if (!test_triple(a, b, c))
            return fail(name, "triple " + enc_str(a) + "," + enc_str(b) + "," + enc_str(c));
    }
    return pass(name, "2000 random triples");
}

CheckResult check_encoding_roundtrip(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    for (elem_t x = 0; x < k.order(); ++x)
        if (k.encode(k.decode(x)) != x)
            return fail("ff.encoding_roundtrip", "x = " + enc_str(x));
    return pass("ff.encoding_roundtrip", "all " + std::to_string(k.order()) + " elements");
}

CheckResult check_frobenius(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    const elem_t N = k.order();
    const char* name = "ff.frobenius";
    if (ext.tau(0) != 0 || ext.tau(1) != 1) return fail(name, "tau does not fix 0/1");
    if (N <= 243) {
        for (elem_t a = 0; a < N; ++a)
            for (elem_t b = 0; b < N; ++b) {
                if (ext.tau(k.add(a, b)) != k.add(ext.tau(a), ext.tau(b)))
                    return fail(name, "not additive at " + enc_str(a) + "," + enc_str(b));
                if (ext.tau(k.mul(a, b)) != k.mul(ext.tau(a), ext.tau(b)))
                    return fail(name, "not multiplicative at " + enc_str(a) + "," + enc_str(b));
            }
    }
    // order of tau is exactly n, and Fix(tau) = F with |F| = q
    elem_t fixed = 0;
    for (elem_t x = 0; x < N; ++x) {
        elem_t y = ext.tau(x);
        if (y == x) ++fixed;
    }
    if (fixed != ext.q() && ext.n() > 1)
        return fail(name, "|Fix(tau)| = " + std::to_string(fixed));
    for (int j = 1; j < ext.n(); ++j) {
        bool all_fixed = true;
        for (elem_t x = 0; x < N && all_fixed; ++x)
            if (ext.tau(x, j) != x) all_fixed = false;
        if (all_fixed) return fail(name, "tau^" + std::to_string(j) + " = id");
    }
    for (elem_t x = 0; x < N; ++x)
        if (ext.tau(ext.tau(x, ext.n() - 1)) != x)
            return fail(name, "tau^n != id at " + enc_str(x));
    return pass(name, "automorphism of order exactly " + std::to_string(ext.n()));
}

CheckResult check_norm_trace(const CyclicExtension& ext, std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const elem_t N = k.order();
    const char* name = "galois.norm_trace";
    if (ext.norm(elem_t(0)) != 0 || ext.trace(elem_t(0)) != 0)
        return fail(name, "N(0) or T(0) wrong");
    if (ext.norm(elem_t(1)) != 1) return fail(name, "N(1) != 1");
    elem_t n_ones = 0;
    for (int i = 0; i < ext.n(); ++i) n_ones = k.add(n_ones, 1);
    if (ext.trace(elem_t(1)) != n_ones) return fail(name, "T(1) != n * 1");
    for (elem_t x = 0; x < N; ++x)
        if (!ext.in_subfield(ext.norm(x)) || !ext.in_subfield(ext.trace(x)))
            return fail(name, "value outside F at x = " + enc_str(x));
    auto mult_ok = [&](elem_t x, elem_t y) {
        return ext.norm(k.mul(x, y)) == k.mul(ext.norm(x), ext.norm(y)) &&
               ext.trace(k.add(x, y)) == k.add(ext.trace(x), ext.trace(y));
    };
    if (N <= 64) {
        for (elem_t x = 0; x < N; ++x)
            for (elem_t y = 0; y < N; ++y)
                if (!mult_ok(x, y))
                    return fail(name, "multiplicativity at " + enc_str(x) + "," + enc_str(y));
        return pass(name, "exhaustive over all pairs");
    }
    SampleRng rng(seed);
    for (int t = 0; t < 2000; ++t)
        if (!mult_ok(random_elem(ext, rng), random_elem(ext, rng)))
            return fail(name, "multiplicativity (random)");
    return pass(name, "2000 random pairs");
}

CheckResult check_hilbert90(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    const char* name = "galois.hilbert90";
    const elem_t N = k.order();
    std::set<elem_t> quotients;
    for (elem_t v = 1; v < N; ++v) quotients.insert(k.mul(ext.tau(v), k.inv(v)));
    std::set<elem_t> norm_one(ext.norm_one_set().begin(), ext.norm_one_set().end());
    if (quotients != norm_one) return fail(name, "S(K) != {tau(v)/v}");
    const unsigned long long expect =
        (static_cast<unsigned long long>(N) - 1) / (ext.q() - 1);
    if (norm_one.size() != expect)
        return fail(name, "|S(K)| = " + std::to_string(norm_one.size()) + ", expected " +
                              std::to_string(expect));
    // solver: minimal and correct on every s in S(K)
    for (elem_t s : ext.norm_one_set()) {
        elem_t v = ext.hilbert90_solve(s);
        if (k.mul(ext.tau(v), k.inv(v)) != s) return fail(name, "solver wrong at s = " + enc_str(s));
        for (elem_t w = 1; w < v; ++w)
            if (k.mul(ext.tau(w), k.inv(w)) == s)
                return fail(name, "solver not minimal at s = " + enc_str(s));
    }
    bool threw = false;
    try {
        elem_t bad = 0;
        for (elem_t x = 1; x < N; ++x)
            if (ext.norm(x) != 1) {
                bad = x;
                break;
            }
        if (bad != 0) ext.hilbert90_solve(bad);
        threw = bad == 0;  // q = 2, n arbitrary: everything has norm 1
    } catch (const NormNotOne&) {
        threw = true;
    }
    if (!threw) return fail(name, "NormNotOne not thrown");
    return pass(name, "|S(K)| = " + std::to_string(norm_one.size()));
}

CheckResult check_representatives(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    const char* name = "galois.representatives";
    const auto& M = ext.representatives();
    if (M.size() != ext.q() - 1) return fail(name, "|M| != q - 1");
    if (M.empty() || M[0] != 1) return fail(name, "1 not the first representative");
    std::set<elem_t> norms;
    for (elem_t m : M) {
        const elem_t c = ext.norm(m);
        if (!norms.insert(c).second) return fail(name, "duplicate norm class");
        for (elem_t x = 1; x < m; ++x)
            if (ext.norm(x) == c) return fail(name, "not encoding-smallest: " + enc_str(m));
    }
    for (elem_t c : ext.subfield()) {
        if (c == 0) continue;
        if (!norms.count(c)) return fail(name, "norm class " + enc_str(c) + " missing");
    }
    if (ext.reduce_to_M(1) != 1) return fail(name, "reduce(1) != 1");
    for (elem_t y = 1; y < k.order(); ++y)
        if (ext.norm(ext.reduce_to_M(y)) != ext.norm(y))
            return fail(name, "reduce changes the norm at y = " + enc_str(y));
    return pass(name, "|M| = " + std::to_string(M.size()));
}

CheckResult check_scale_to_M(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    const char* name = "galois.scale_to_M";
    for (int i = 1; i < std::max(2, ext.n()); ++i) {
        if (i >= ext.n() && ext.n() > 1) break;
        if (std::gcd(i, ext.n()) != 1) continue;
        for (elem_t y = 1; y < k.order(); ++y) {
            auto [m, v] = ext.scale_to_M(y, i);
            if (!ext.in_M(m)) return fail(name, "result not in M");
            if (m != k.mul(k.mul(ext.tau(v, i), k.inv(v)), y))
                return fail(name, "relation fails at y = " + enc_str(y));
            auto [m2, v2] = ext.scale_to_M(m, i);
            if (m2 != m) return fail(name, "not idempotent at y = " + enc_str(y));
            if (ext.in_M(y) && (m != y || !ext.in_subfield(v)))
                return fail(name, "y in M should give m = y, v in F");
        }
    }
    bool threw = false;
    try {
        ext.scale_to_M(1, 0);
    } catch (const NonGeneratingPower&) {
        threw = true;
    }
    if (!threw) return fail(name, "i = 0 accepted");
    return pass(name, "all y, all generating powers");
}

CheckResult check_rep_scaling_uniqueness(const CyclicExtension& ext) {
    const FieldSpec& k = ext.field();
    const char* name = "galois.rep_scaling_uniqueness";
    if (static_cast<unsigned long long>(k.order()) > 729)
        return pass(name, "skipped (exhaustive bound is q^n <= 729)");
    for (int i = 1; i < ext.n(); ++i) {
        if (std::gcd(i, ext.n()) != 1) continue;
        for (elem_t y : ext.representatives())
            for (elem_t u : ext.norm_one_set())
                for (elem_t v = 1; v < k.order(); ++v)
                    for (int s = 0; s < ext.n(); ++s) {
                        const elem_t yp = k.mul(
                            k.mul(k.mul(ext.tau(u, i), ext.tau(v, i)), k.inv(v)),
                            ext.tau(y, s));
                        if (ext.in_M(yp) && yp != y)
                            return fail(name, "y = " + enc_str(y) + " maps to " + enc_str(yp));
                    }
    }
    return pass(name, "exhaustive over (y, u, v, sigma)");
}

// ---------------------------------------------------------------------------
// twisted operators

CheckResult check_determinant_identity(const CyclicExtension& ext, long long samples,
                                       std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "twistop.determinant_identity";
    const int n = ext.n();
    auto check_one = [&](const std::vector<elem_t>& y) {
        TwistedOperator f(&ext, y);
        return fmat_det(k, f.to_matrix()) == f.reduced_norm();
    };
    if (samples <= 0) {
        std::vector<elem_t> y(n, 0);
        unsigned long long total = 0;
        for (;;) {
            if (!check_one(y)) return fail(name, "coeffs " + op_str(TwistedOperator(&ext, y)));
            ++total;
            int i = n - 1;
            while (i >= 0 && ++y[i] == k.order()) y[i--] = 0;
            if (i < 0) break;
        }
        return pass(name, "exhaustive over " + std::to_string(total) + " operators");
    }
    SampleRng rng(seed);
    for (long long t = 0; t < samples; ++t) {
        std::vector<elem_t> y(n);
        for (int i = 0; i < n; ++i) y[i] = random_elem(ext, rng);
        if (!check_one(y)) return fail(name, "coeffs " + op_str(TwistedOperator(&ext, y)));
    }
    return pass(name, std::to_string(samples) + " random operators");
}

CheckResult check_closed_form_norm(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "twistop.closed_form_norm";
    if (ext.n() != 3) return pass(name, "skipped (n != 3)");
    auto closed = [&](elem_t y0, elem_t y1, elem_t y2) {
        const elem_t nsum = k.add(k.add(ext.norm(y0), ext.norm(y1)), ext.norm(y2));
        const elem_t prod = k.mul(k.mul(y0, ext.tau(y1, 1)), ext.tau(y2, 2));
        return k.sub(nsum, ext.trace(prod));
    };
    auto check_one = [&](elem_t y0, elem_t y1, elem_t y2) {
        return TwistedOperator(&ext, {y0, y1, y2}).reduced_norm() == closed(y0, y1, y2);
    };
    if (samples <= 0) {
        for (elem_t y0 = 0; y0 < k.order(); ++y0)
            for (elem_t y1 = 0; y1 < k.order(); ++y1)
                for (elem_t y2 = 0; y2 < k.order(); ++y2)
                    if (!check_one(y0, y1, y2))
                        return fail(name, "coeffs (" + enc_str(y0) + "," + enc_str(y1) + "," +
                                              enc_str(y2) + ")");
        return pass(name, "exhaustive");
    }
    SampleRng rng(seed);
    for (long long t = 0; t < samples; ++t)
        if (!check_one(random_elem(ext, rng), random_elem(ext, rng), random_elem(ext, rng)))
            return fail(name, "random counterexample");
    return pass(name, std::to_string(samples) + " random operators");
}

CheckResult check_matrix_roundtrip(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed) {
    const char* name = "twistop.matrix_roundtrip";
    const int n = ext.n();
    unsigned long long endo = 1;
    for (int i = 0; i < n * n; ++i) endo *= ext.q();
    if (samples <= 0 && endo <= 1024) {
        // from_matrix . to_matrix = id on all of End
        std::vector<int> digits(n * n, 0);
        for (;;) {
            FMatrix m(n);
            for (int i = 0; i < n * n; ++i) m.a[i] = ext.subfield()[digits[i]];
            TwistedOperator f = from_matrix(ext, m);
            if (f.to_matrix() != m) return fail(name, "matrix roundtrip failed");
            int i = 0;
            while (i < n * n && ++digits[i] == static_cast<int>(ext.q())) digits[i++] = 0;
            if (i == n * n) break;
        }
        return pass(name, "exhaustive over " + std::to_string(endo) + " matrices");
    }
    SampleRng rng(seed);
    const long long count = samples <= 0 ? 200 : samples;
    for (long long t = 0; t < count; ++t) {
        std::vector<elem_t> y(n);
        for (int i = 0; i < n; ++i) y[i] = random_elem(ext, rng);
        TwistedOperator f(&ext, y);
        if (from_matrix(ext, f.to_matrix()) != f) return fail(name, "operator roundtrip failed");
    }
    return pass(name, std::to_string(count) + " random operators");
}

CheckResult check_compose(const CyclicExtension& ext, long long samples, std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "twistop.compose";
    SampleRng rng(seed);
    const TwistedOperator id = identity_op(ext);
    const long long count = samples <= 0 ? 100 : samples;
    for (long long t = 0; t < count; ++t) {
        std::vector<elem_t> y(ext.n()), z(ext.n());
        for (int i = 0; i < ext.n(); ++i) {
            y[i] = random_elem(ext, rng);
            z[i] = random_elem(ext, rng);
        }
        TwistedOperator f(&ext, y), g(&ext, z);
        if (f.compose(id) != f || id.compose(g) != g) return fail(name, "identity law");
        const TwistedOperator fg = f.compose(g);
        for (int probe = 0; probe < 5; ++probe) {
            const elem_t x = random_elem(ext, rng);
            if (fg.apply(x) != f.apply(g.apply(x)))
                return fail(name, "apply disagrees at x = " + enc_str(x));
        }
        if (fg.to_matrix() != fmat_mul(k, f.to_matrix(), g.to_matrix()))
            return fail(name, "matrix of composition");
        const elem_t u = random_unit(ext, rng), v = random_unit(ext, rng);
        if (left_mul(ext, u).compose(left_mul(ext, v)) != left_mul(ext, k.mul(u, v)))
            return fail(name, "L(u) L(v) != L(uv)");
        if (left_mul(ext, u).apply(v) != k.mul(u, v)) return fail(name, "L(u) apply");
    }
    if (ext.n() >= 2) {
        if (tau_op(ext, 1).compose(tau_op(ext, 1)) != tau_op(ext, 2))
            return fail(name, "tau o tau != tau^2");
    }
    return pass(name, std::to_string(count) + " random pairs");
}

CheckResult check_inverse(const CyclicExtension& ext, long long samples, std::uint64_t seed) {
    const char* name = "twistop.inverse";
    SampleRng rng(seed);
    const TwistedOperator id = identity_op(ext);
    if (id.reduced_norm() != 1 || id.inverse() != id) return fail(name, "identity");
    const long long count = samples <= 0 ? 100 : samples;
    for (long long t = 0; t < count; ++t) {
        TwistedOperator f = random_invertible_op(ext, rng);
        if (f.inverse().compose(f) != id || f.compose(f.inverse()) != id)
            return fail(name, "inverse law at " + op_str(f));
        if (fmat_det(ext.field(), f.to_matrix()) == 0)
            return fail(name, "invertible operator with singular matrix");
    }
    // singular operators refuse to invert
    std::vector<elem_t> y(ext.n(), 0);
    TwistedOperator zero(&ext, y);
    bool threw = false;
    try {
        zero.inverse();
    } catch (const SingularOperator&) {
        threw = true;
    }
    if (!threw) return fail(name, "zero operator inverted");
    return pass(name, std::to_string(count) + " random operators");
}

CheckResult check_transform_invertibility(const CyclicExtension& ext, long long samples,
                                std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "twistop.transform_invertibility";
    SampleRng rng(seed);
    const long long count = samples <= 0 ? 200 : samples;
    for (long long t = 0; t < count; ++t) {
        TwistedOperator f = random_invertible_op(ext, rng);
        const elem_t u = random_unit(ext, rng), v = random_unit(ext, rng);
        const int s = static_cast<int>(rng.below(ext.n()));
        std::vector<elem_t> yp(ext.n());
        for (int i = 0; i < ext.n(); ++i)
            yp[i] = k.mul(k.mul(k.mul(ext.tau(u, i), ext.tau(v, i)), k.inv(v)),
                          ext.tau(f.coeff(i), s));
        if (!TwistedOperator(&ext, yp).is_invertible())
            return fail(name, "transformed operator singular, f = " + op_str(f));
    }
    return pass(name, std::to_string(count) + " random transforms");
}

// ---------------------------------------------------------------------------
// algebra layer

CheckResult check_isotope_identities(const CyclicExtension& ext, long long samples,
                                     std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "algebra.isotope_identities";
    SampleRng rng(seed);
    const int n = ext.n();
    const AlgebraStructure kk = field_algebra(ext);
    const FMatrix id = FMatrix::identity(n);
    if (albert_isotope(kk, id, id, id) != kk) return fail(name, "identity isotope");
    const long long count = samples <= 0 ? 50 : samples;
    for (long long t = 0; t < count; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        const AlgebraStructure a = from_presentation(p);
        const FMatrix fm = p.f.to_matrix(), gm = p.g.to_matrix();
        // from_presentation agrees with the generic homotope on K's tensor
        if (albert_isotope(kk, fm, gm) != a) return fail(name, "from_presentation != isotope");
        // (A^(f,g))^op = (A^op)^(g,f), tensor-exact
        if (albert_isotope(kk, fm, gm).opposite() != albert_isotope(kk.opposite(), gm, fm))
            return fail(name, "opposite identity (g,f) fails");
        // double isotope composes
        IsotopePresentation p2 = random_presentation(ext, rng);
        const FMatrix f2 = p2.f.to_matrix(), g2 = p2.g.to_matrix();
        if (albert_isotope(a, f2, g2) != albert_isotope(kk, fmat_mul(k, fm, f2), fmat_mul(k, gm, g2)))
            return fail(name, "double isotope");
    }
    bool threw = false;
    try {
        albert_isotope(kk, FMatrix(n), id);
    } catch (const SingularMap&) {
        threw = true;
    }
    if (!threw) return fail(name, "singular map accepted");
    return pass(name, std::to_string(count) + " random presentations");
}

CheckResult check_jordan_isotopes(const CyclicExtension& ext, long long samples,
                                  std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "algebra.jordan_isotopes";
    SampleRng rng(seed);
    const long long count = samples <= 0 ? 60 : samples;
    for (long long t = 0; t < count; ++t) {
        // unital <=> both maps are left multiplications <=> recognizable
        const elem_t u = random_unit(ext, rng), v = random_unit(ext, rng);
        const AlgebraStructure jordan =
            from_presentation({&ext, left_mul(ext, u), left_mul(ext, v)});
        auto e = jordan.unit();
        if (!e) return fail(name, "Jordan isotope not unital");
        if (ext.from_coords(*e) != k.inv(k.mul(u, v)))
            return fail(name, "unit != (uv)^-1 for u,v = " + enc_str(u) + "," + enc_str(v));
        IsotopePresentation p = random_presentation(ext, rng);
        const AlgebraStructure a = from_presentation(p);
        bool l_shaped = true;
        for (int i = 1; i < ext.n(); ++i)
            if (p.f.coeff(i) != 0 || p.g.coeff(i) != 0) l_shaped = false;
        const bool unital = a.unit().has_value();
        if (unital != l_shaped) return fail(name, "unital <=> L-shaped fails at " + op_str(p.f));
        bool recognized = true;
        try {
            recognize_field_heart(a);
        } catch (const NotAField&) {
            recognized = false;
        }
        if (recognized != unital) return fail(name, "recognized <=> unital fails");
    }
    return pass(name, std::to_string(count) + " random isotopes");
}

CheckResult check_kaplansky(const CyclicExtension& ext, long long samples, std::uint64_t seed) {
    const char* name = "algebra.kaplansky";
    const int n = ext.n();
    SampleRng rng(seed);

    const AlgebraStructure kk = field_algebra(ext);
    auto reg = is_regular(kk);
    std::vector<elem_t> one(n, 0);
    one[0] = 1;  // b_0 = 1 in the fixed basis
    if (!reg || reg->first != one || reg->second != one)
        return fail(name, "is_regular(K) != (1, 1)");
    {
        HeartExtraction h = kaplansky_heart(kk);
        if (h.heart != kk || h.f != FMatrix::identity(n) || h.g != FMatrix::identity(n))
            return fail(name, "heart of K is not K itself");
    }
    const AlgebraStructure zero(&ext, std::vector<elem_t>(static_cast<size_t>(n) * n * n, 0));
    if (is_regular(zero)) return fail(name, "zero algebra regular");
    if (decompose_as_presentation(zero)) return fail(name, "zero algebra decomposed");

    if (n >= 2) {
        // K^(tau, id): a noncommutative division algebra with heart K
        const AlgebraStructure a = from_presentation({&ext, tau_op(ext, 1), identity_op(ext)});
        if (a.is_commutative()) return fail(name, "K^(tau,id) commutative");
        if (a.has_zero_divisors()) return fail(name, "K^(tau,id) has zero divisors");
        HeartExtraction h = kaplansky_heart(a);
        if (!h.heart.unit() || !h.heart.is_commutative() || !h.heart.is_associative() ||
            h.heart.has_zero_divisors())
            return fail(name, "heart of K^(tau,id) is not a field");
        recognize_field_heart(h.heart);  // throws on failure
    }

    const long long count = samples <= 0 ? 100 : samples;
    for (long long t = 0; t < count; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        const AlgebraStructure a = from_presentation(p);
        auto r = is_regular(a);
        if (!r) return fail(name, "isotope of K singular");
        HeartExtraction h = kaplansky_heart(a, r->first, r->second);
        if (albert_isotope(h.heart, h.f, h.g) != a) return fail(name, "A != B^(f,g) after extraction");
        if (h.unit != a.multiply(r->first, r->second)) return fail(name, "unit != u A v");
        for (int j = 0; j < n; ++j) {
            std::vector<elem_t> ej(n, 0);
            ej[j] = 1;
            if (h.heart.multiply(h.unit, ej) != ej || h.heart.multiply(ej, h.unit) != ej)
                return fail(name, "unit fails in the heart");
        }
        auto d = decompose_as_presentation(a);
        if (!d) return fail(name, "decomposition missing");
        const AlgebraStructure back = from_presentation(d->presentation);
        if (!is_algebra_isomorphism(a, back, d->witness))
            return fail(name, "decomposition witness not an isomorphism");
    }
    return pass(name, std::to_string(count) + " random isotopes");
}

CheckResult check_heart_uniqueness(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed) {
    const char* name = "algebra.heart_uniqueness";
    SampleRng rng(seed);
    const FieldSpec& k = ext.field();
    const long long count = samples <= 0 ? 40 : samples;
    // full (u, v) sweeps for the small fields; first witnesses per side above
    const elem_t witness_cap = ext.order() <= 32 ? ext.order() : 6;
    for (long long t = 0; t < count; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        const AlgebraStructure a = from_presentation(p);
        // every valid (u, v): heart recognized as K (so all pairwise isomorphic);
        // fall back to the oracle when recognition fails
        const AlgebraStructure* first = nullptr;
        AlgebraStructure first_store;
        const elem_t total = a.size();
        elem_t used_u = 0;
        for (elem_t iu = 1; iu < total && used_u < witness_cap; ++iu) {
            const std::vector<elem_t> u = a.element(iu);
            if (!fmat_invertible(k, a.left_mult(u))) continue;
            ++used_u;
            elem_t used_v = 0;
            for (elem_t iv = 1; iv < total && used_v < witness_cap; ++iv) {
                const std::vector<elem_t> v = a.element(iv);
                if (!fmat_invertible(k, a.right_mult(v))) continue;
                ++used_v;
                HeartExtraction h = kaplansky_heart(a, u, v);
                bool recognized = true;
                try {
                    recognize_field_heart(h.heart);
                } catch (const NotAField&) {
                    recognized = false;
                }
                if (!recognized) {
                    if (!first) return fail(name, "first heart unrecognized");
                    if (!iso_bruteforce(h.heart, *first))
                        return fail(name, "hearts not isomorphic");
                }
                if (!first) {
                    first_store = h.heart;
                    first = &first_store;
                }
            }
        }
        if (!first) return fail(name, "no valid (u, v) pair");
    }
    return pass(name, std::to_string(count) + " algebras, " +
                          (ext.order() <= 32 ? std::string("all (u,v) witnesses")
                                             : std::string("6x6 witness grids")));
}

CheckResult check_division_closure(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed) {
    const char* name = "algebra.division_closure";
    SampleRng rng(seed);
    unsigned long long checked = 0;
    if (samples <= 0) {
        for (const CanonicalForm& c : collect_canonical_forms(ext)) {
            const AlgebraStructure a = from_presentation(c.pres);
            if (a.has_zero_divisors())
                return fail(name, "zero divisors in canonical form f = " + op_str(c.pres.f));
            ++checked;
        }
        return pass(name, std::to_string(checked) + " canonical representatives");
    }
    for (long long t = 0; t < samples; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        if (from_presentation(p).has_zero_divisors())
            return fail(name, "zero divisors at f = " + op_str(p.f) + ", g = " + op_str(p.g));
        ++checked;
    }
    return pass(name, std::to_string(checked) + " random presentations");
}

// ---------------------------------------------------------------------------
// classification

std::vector<CanonicalForm> collect_canonical_forms(const CyclicExtension& ext) {
    const auto ops = enumerate_invertible_ops(ext);
    std::map<std::vector<elem_t>, CanonicalForm> forms;
    for (const auto& fy : ops) {
        TwistedOperator f(&ext, fy);
        for (const auto& gy : ops) {
            CanonicalForm c = canonicalize({&ext, f, TwistedOperator(&ext, gy)});
            std::vector<elem_t> key;
            key.push_back(static_cast<elem_t>(c.tag.cubic_type));
            key.push_back(static_cast<elem_t>(c.tag.g_const + 1));
            for (int i : c.tag.N0) key.push_back(static_cast<elem_t>(i + 1));
            key.push_back(0);
            for (elem_t e : c.pres.f.coeffs()) key.push_back(e);
            for (elem_t e : c.pres.g.coeffs()) key.push_back(e);
            forms.emplace(std::move(key), std::move(c));
        }
    }
    std::vector<CanonicalForm> out;
    out.reserve(forms.size());
    for (auto& [key, c] : forms) out.push_back(std::move(c));
    return out;
}

CheckResult check_canonical_stability(const CyclicExtension& ext, long long samples,
                                      std::uint64_t seed) {
    const char* name = "classify.canonical_stability";
    SampleRng rng(seed);
    auto stable = [&](const IsotopePresentation& p) {
        const CanonicalForm c = canonicalize(p);
        if (!check_critical(p, c.pres, c.applied)) return false;
        if (c.applied.sigma != 0) return false;
        const CanonicalForm c2 = canonicalize(c.pres);
        if (c2.pres.f != c.pres.f || c2.pres.g != c.pres.g) return false;
        if (from_presentation(c2.pres) != from_presentation(c.pres)) return false;
        return c2.tag == c.tag;
    };
    if (samples <= 0) {
        unsigned long long total = 0;
        for (const CanonicalForm& c : collect_canonical_forms(ext)) {
            if (!stable(c.pres)) return fail(name, "unstable at f = " + op_str(c.pres.f));
            ++total;
        }
        return pass(name, std::to_string(total) + " canonical forms");
    }
    for (long long t = 0; t < samples; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        if (!stable(p)) return fail(name, "unstable at f = " + op_str(p.f));
    }
    return pass(name, std::to_string(samples) + " random presentations");
}

CheckResult check_type_emptiness_q2(const CyclicExtension& ext) {
    const char* name = "classify.type_emptiness_q2";
    if (ext.q() != 2 || ext.n() != 3) return pass(name, "skipped (needs q = 2, n = 3)");
    const elem_t N = ext.order();
    unsigned long long scanned = 0;
    for (elem_t y1 = 1; y1 < N; ++y1) {
        if (TwistedOperator(&ext, {1, y1, 0}).is_invertible())
            return fail(name, "invertible (1, y1, 0) with y1 = " + enc_str(y1));
        if (TwistedOperator(&ext, {1, 0, y1}).is_invertible())
            return fail(name, "invertible (1, 0, y2) with y2 = " + enc_str(y1));
        scanned += 2;
    }
    // the scan over all 512 triples: types 2 and 3 never appear
    std::vector<elem_t> y(3, 0);
    for (;;) {
        TwistedOperator f(&ext, y);
        ++scanned;
        if (f.is_invertible()) {
            const CanonicalForm c = canonicalize({&ext, f, identity_op(ext)});
            if (c.tag.cubic_type == 2 || c.tag.cubic_type == 3)
                return fail(name, "canonical type 2/3 reached by " + op_str(f));
        }
        int i = 2;
        while (i >= 0 && ++y[i] == N) y[i--] = 0;
        if (i < 0) break;
    }
    return pass(name, "512-triple scan; types 2 and 3 are empty over GF(2)");
}

CheckResult check_type_soundness(const CyclicExtension& ext) {
    const char* name = "classify.type_soundness";
    const auto forms = collect_canonical_forms(ext);
    unsigned long long pairs = 0;
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = i + 1; j < forms.size(); ++j) {
            if (forms[i].tag == forms[j].tag) continue;
            ++pairs;
            if (iso_bruteforce(from_presentation(forms[i].pres),
                               from_presentation(forms[j].pres)))
                return fail(name, "cross-type isomorphism between " + op_str(forms[i].pres.f) +
                                      " and " + op_str(forms[j].pres.f));
        }
    return pass(name, std::to_string(pairs) + " cross-type pairs, oracle-checked");
}

CheckResult check_oracle_equivalence(const CyclicExtension& ext, long long samples,
                                     std::uint64_t seed) {
    const char* name = "classify.oracle_equivalence";
    {
        unsigned long long qn = 1, gl = 1, qi = 1;
        for (int i = 0; i < ext.n(); ++i) qn *= ext.q();
        for (int i = 0; i < ext.n(); ++i) {
            gl *= qn - qi;
            qi *= ext.q();
        }
        if (gl > 200000)
            return pass(name, "skipped (|GL| = " + std::to_string(gl) +
                                  " exceeds the oracle budget)");
    }
    unsigned long long agreements = 0;
    auto compare = [&](const IsotopePresentation& a, const IsotopePresentation& b,
                       std::string& err) {
        auto w = iso_critical(a, b);
        if (w && !check_critical(a, b, *w)) {
            err = "critical witness does not re-verify";
            return false;
        }
        const AlgebraStructure ta = from_presentation(a), tb = from_presentation(b);
        auto phi = iso_bruteforce(ta, tb);
        if (phi && !is_algebra_isomorphism(ta, tb, *phi)) {
            err = "oracle witness does not re-verify";
            return false;
        }
        if (w.has_value() != phi.has_value()) {
            err = "disagreement at f = " + op_str(a.f) + ", g = " + op_str(a.g) +
                  " vs f' = " + op_str(b.f) + ", g' = " + op_str(b.g);
            return false;
        }
        ++agreements;
        return true;
    };
    std::string err;
    if (samples <= 0) {
        const auto forms = collect_canonical_forms(ext);
        for (size_t i = 0; i < forms.size(); ++i)
            for (size_t j = i; j < forms.size(); ++j) {
                if (forms[i].tag != forms[j].tag) continue;
                if (!compare(forms[i].pres, forms[j].pres, err)) return fail(name, err);
            }
        return pass(name, std::to_string(agreements) + " within-type canonical pairs");
    }
    SampleRng rng(seed);
    for (long long t = 0; t < samples; ++t) {
        IsotopePresentation a = random_presentation(ext, rng);
        IsotopePresentation b = random_presentation(ext, rng);
        if (!compare(a, b, err)) return fail(name, err);
    }
    return pass(name, std::to_string(agreements) + " random pairs");
}

CheckResult check_cubic_cases_agreement(const CyclicExtension& ext, long long samples,
                                        std::uint64_t seed) {
    const char* name = "classify.cubic_cases_agreement";
    if (ext.n() != 3) return pass(name, "skipped (n != 3)");
    unsigned long long compared = 0;
    auto compare = [&](const CanonicalForm& a, const CanonicalForm& b, std::string& err) {
        auto wc = iso_critical(a.pres, b.pres);
        auto wf = iso_cubic_cases(a, b);
        if (wf && !check_critical(a.pres, b.pres, *wf)) {
            err = "cubic-case witness does not re-verify";
            return false;
        }
        if (wc.has_value() != wf.has_value()) {
            err = "fast path disagrees at f = " + op_str(a.pres.f) + ", g = " +
                  op_str(a.pres.g) + " vs f' = " + op_str(b.pres.f) + ", g' = " +
                  op_str(b.pres.g);
            return false;
        }
        ++compared;
        return true;
    };
    std::string err;
    if (samples <= 0) {
        const auto forms = collect_canonical_forms(ext);
        for (size_t i = 0; i < forms.size(); ++i)
            for (size_t j = i; j < forms.size(); ++j) {
                if (forms[i].tag != forms[j].tag) continue;
                if (!compare(forms[i], forms[j], err)) return fail(name, err);
            }
        return pass(name, std::to_string(compared) + " within-type canonical pairs");
    }
    SampleRng rng(seed);
    for (long long t = 0; t < samples; ++t) {
        const CanonicalForm a = canonicalize(random_presentation(ext, rng));
        const CanonicalForm b = canonicalize(random_presentation(ext, rng));
        if (a.tag != b.tag) {
            // different canonical types: the generic search must refuse too
            if (iso_critical(a.pres, b.pres)) return fail(name, "cross-type witness found");
            continue;
        }
        if (!compare(a, b, err)) return fail(name, err);
    }
    return pass(name, std::to_string(compared) + " sampled canonical pairs");
}

CheckResult check_cubic_cases_per_type(const CyclicExtension& ext, long long pairs_per_type,
                                       std::uint64_t seed) {
    const char* name = "classify.cubic_cases_per_type";
    if (ext.n() != 3) return pass(name, "skipped (n != 3)");
    SampleRng rng(seed);
    const auto& M = ext.representatives();
    auto rand_M = [&] { return M[rng.below(M.size())]; };

    // one canonical form of the requested type, or nullopt if the type is
    // empty over this field (types 2, 3 and 6 vanish at q = 2)
    auto generate = [&](int type) -> std::optional<CanonicalForm> {
        for (int attempt = 0; attempt < 400; ++attempt) {
            std::vector<elem_t> fy(3, 0);
            std::optional<elem_t> g0;  // pinned constant term of g, for f = id
            switch (type) {
                case 1:
                    fy = {1, rand_M(), random_unit(ext, rng)};
                    break;
                case 2:
                    fy = {1, 0, rand_M()};
                    break;
                case 3:
                    fy = {1, rand_M(), 0};
                    break;
                case 4:
                    fy = {1, 0, 0};
                    g0 = 0;
                    break;
                case 5:
                    fy = {1, 0, 0};
                    g0 = random_unit(ext, rng);
                    break;
                case 6:
                    fy = {0, 1, rand_M()};
                    break;
                case 7:
                    fy = {0, 0, 1};
                    break;
                case 8:
                    fy = {0, 1, 0};
                    break;
            }
            TwistedOperator f(&ext, fy);
            if (!f.is_invertible()) continue;
            TwistedOperator g = random_invertible_op(ext, rng);
            if (g0) {
                std::vector<elem_t> gy = g.coeffs();
                gy[0] = *g0;
                g = TwistedOperator(&ext, gy);
                if (!g.is_invertible()) continue;
            }
            CanonicalForm c = canonicalize({&ext, f, g});
            if (c.tag.cubic_type == type) return c;
        }
        return std::nullopt;
    };

    unsigned long long compared = 0;
    std::vector<int> covered;
    for (int type = 1; type <= 8; ++type) {
        auto probe = generate(type);
        if (!probe) continue;  // empty type over this field
        covered.push_back(type);
        for (long long t = 0; t < pairs_per_type; ++t) {
            auto a = generate(type);
            auto b = generate(type);
            if (!a || !b) return fail(name, "generator starved for type " +
                                                std::to_string(type));
            auto wc = iso_critical(a->pres, b->pres);
            auto wf = iso_cubic_cases(*a, *b);
            if (wf && !check_critical(a->pres, b->pres, *wf))
                return fail(name, "fast-path witness fails for type " + std::to_string(type));
            if (wc.has_value() != wf.has_value())
                return fail(name, "type " + std::to_string(type) + " disagreement at f' = " +
                                      op_str(b->pres.f) + ", g = " + op_str(a->pres.g) +
                                      ", g' = " + op_str(b->pres.g));
            ++compared;
        }
    }
    std::string types;
    for (int t : covered) types += (types.empty() ? "" : ",") + std::to_string(t);
    return pass(name, std::to_string(compared) + " pairs over types {" + types + "}");
}

CheckResult check_scaling_isomorphism(const CyclicExtension& ext, long long samples,
                                      std::uint64_t seed) {
    const FieldSpec& k = ext.field();
    const char* name = "classify.scaling_isomorphism";
    SampleRng rng(seed);
    const long long count = samples <= 0 ? 100 : samples;
    unsigned long long witnesses = 0;
    for (long long t = 0; t < count; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        for (elem_t a : ext.subfield()) {
            if (a == 0) continue;
            for (elem_t b : ext.subfield()) {
                if (b == 0) continue;
                std::vector<elem_t> fy(ext.n()), gy(ext.n());
                for (int i = 0; i < ext.n(); ++i) {
                    fy[i] = k.mul(a, p.f.coeff(i));
                    gy[i] = k.mul(b, p.g.coeff(i));
                }
                IsotopePresentation scaled{&ext, TwistedOperator(&ext, fy),
                                           TwistedOperator(&ext, gy)};
                auto w = iso_critical(p, scaled);
                if (!w) return fail(name, "no witness for a,b = " + enc_str(a) + "," + enc_str(b));
                if (!check_critical(p, scaled, *w)) return fail(name, "witness fails");
                ++witnesses;
            }
        }
    }
    return pass(name, std::to_string(witnesses) + " scaled pairs, witness found every time");
}

CheckResult check_det_invariant(const CyclicExtension& ext, long long samples,
                                std::uint64_t seed) {
    const char* name = "classify.det_invariant";
    SampleRng rng(seed);
    const long long count = samples <= 0 ? 50 : samples;
    for (long long t = 0; t < count; ++t) {
        IsotopePresentation p = random_presentation(ext, rng);
        auto labels = det_invariant(p);
        if (labels.first != "trivial" || labels.second != "trivial")
            return fail(name, "nontrivial label over a finite field");
    }
    return pass(name, "labels trivial (norm is onto F^x)");
}

CheckResult check_atlas_consistency(const CyclicExtension& ext) {
    const char* name = "classify.atlas_consistency";
    AtlasOptions opt;
    opt.oracle = true;
    const AtlasReport a = atlas(ext, opt);
    if (!a.oracle_agrees) {
        for (const auto& t : a.types)
            if (t.oracle_class_count != t.classes.size())
                return fail(name, "type " + t.tag.key() + ": " +
                                      std::to_string(t.classes.size()) + " vs oracle " +
                                      std::to_string(t.oracle_class_count));
        return fail(name, "oracle disagreement");
    }
    const AtlasReport b = atlas(ext, opt);
    // identical partition on a rerun (determinism)
    if (a.types.size() != b.types.size()) return fail(name, "rerun changed the type list");
    for (size_t i = 0; i < a.types.size(); ++i) {
        if (a.types[i].classes.size() != b.types[i].classes.size())
            return fail(name, "rerun changed class counts");
        for (size_t j = 0; j < a.types[i].classes.size(); ++j)
            if (!(a.types[i].classes[j].rep == b.types[i].classes[j].rep))
                return fail(name, "rerun changed representatives");
    }
    unsigned long long classes = 0;
    for (const auto& t : a.types) classes += t.classes.size();
    return pass(name, std::to_string(a.types.size()) + " types, " + std::to_string(classes) +
                          " classes, oracle-matched");
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    auto ext_ptr = CyclicExtension::build(opt.p, opt.m, opt.n);
    const CyclicExtension& ext = *ext_ptr;
    std::vector<CheckResult> out;

    const long long s = opt.exhaustive ? 0 : opt.samples;
    const std::uint64_t seed = opt.seed;

    out.push_back(check_field_axioms(ext, seed));
    out.push_back(check_encoding_roundtrip(ext));
    out.push_back(check_frobenius(ext));
    out.push_back(check_norm_trace(ext, seed));
    out.push_back(check_hilbert90(ext));
    out.push_back(check_representatives(ext));
    out.push_back(check_scale_to_M(ext));
    out.push_back(check_rep_scaling_uniqueness(ext));

    unsigned long long opspace = 1;
    for (int i = 0; i < ext.n(); ++i) opspace *= ext.order();
    const long long det_samples = opt.exhaustive && opspace <= 4096 ? 0 : std::max(opt.samples, 1ll);
    out.push_back(check_determinant_identity(ext, det_samples, seed));
    out.push_back(check_closed_form_norm(ext, det_samples, seed));
    out.push_back(check_matrix_roundtrip(ext, s, seed));
    out.push_back(check_compose(ext, s, seed));
    out.push_back(check_inverse(ext, s, seed));
    out.push_back(check_transform_invertibility(ext, s, seed));

    out.push_back(check_isotope_identities(ext, s, seed));
    out.push_back(check_jordan_isotopes(ext, s, seed));
    out.push_back(check_kaplansky(ext, s, seed));
    out.push_back(check_heart_uniqueness(ext, opt.exhaustive ? 20 : std::min(opt.samples, 50ll),
                                         seed));

    // the exhaustive classification sweeps need an enumerable pair space
    unsigned long long qn = 1, gl = 1, qi = 1;
    for (int i = 0; i < ext.n(); ++i) qn *= ext.q();
    for (int i = 0; i < ext.n(); ++i) {
        gl *= qn - qi;
        qi *= ext.q();
    }
    const bool small = gl <= 500 && gl * gl <= 200000;
    const long long cls = opt.exhaustive && small ? 0 : std::max(opt.samples, 1ll);

    out.push_back(check_division_closure(ext, cls, seed));
    out.push_back(check_canonical_stability(ext, cls, seed));
    out.push_back(check_type_emptiness_q2(ext));
    if (opt.exhaustive && small) out.push_back(check_type_soundness(ext));
    // oracle sweeps get expensive once GL(n, q) needs six-digit enumerations
    const long long oracle_samples = gl > 20000 ? std::min<long long>(std::max(cls, 1ll), 30)
                                                : cls;
    out.push_back(check_oracle_equivalence(ext, oracle_samples, seed));
    out.push_back(check_cubic_cases_agreement(ext, cls, seed));
    out.push_back(check_cubic_cases_per_type(ext, opt.exhaustive ? 200 : opt.samples / 5 + 1,
                                             seed));
    out.push_back(check_scaling_isomorphism(ext, opt.exhaustive ? 20 : opt.samples, seed));
    out.push_back(check_det_invariant(ext, opt.exhaustive ? 20 : opt.samples, seed));
    if (opt.exhaustive && small) out.push_back(check_atlas_consistency(ext));

    return out;
}

}  // namespace isotope
