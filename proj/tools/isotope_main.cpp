#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isotope/json_io.hpp"
#include "isotope/verify.hpp"

namespace {

using isotope::json;

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

int env_threads() {
    const char* s = std::getenv("ISOTOPE_THREADS");
    if (!s) return 1;
    const int v = std::atoi(s);
    return v >= 1 ? v : 1;
}

std::vector<isotope::elem_t> parse_coeffs(const std::string& s) {
    std::vector<isotope::elem_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(static_cast<isotope::elem_t>(std::stoul(item)));
        } catch (const std::exception&) {
            throw isotope::ParseError("bad coefficient list '" + s + "'");
        }
    }
    if (out.empty()) throw isotope::ParseError("empty coefficient list");
    return out;
}

void emit(const json& j, const std::string& out_path, bool pretty,
          const std::string& pretty_text) {
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw isotope::Error("cannot write " + out_path);
        f << j.dump(2) << "\n";
        if (pretty) std::cout << pretty_text;
    } else if (pretty) {
        std::cout << pretty_text;
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

json read_json_input(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream f(path);
        if (!f) throw isotope::ParseError("cannot open " + path);
        return json::parse(f);
    } catch (const json::exception& e) {
        throw isotope::ParseError(e.what());
    }
}

std::string render_atlas(const isotope::AtlasReport& r) {
    std::ostringstream os;
    os << "atlas for GF(" << r.p << "^" << r.m * r.n << ") / GF(" << r.p << "^" << r.m
       << "), n = " << r.n << (r.samples > 0 ? " (sampled)" : " (exhaustive)") << "\n";
    os << "type             classes  members  representatives (f | g)\n";
    for (const auto& t : r.types) {
        unsigned long long members = 0;
        for (const auto& c : t.classes) members += c.members;
        os << "  " << t.tag.key() << std::string(t.tag.key().size() < 15 ? 15 - t.tag.key().size() : 1, ' ')
           << t.classes.size() << "        " << members << "\n";
        for (const auto& c : t.classes) {
            os << "      (";
            for (size_t i = 0; i < c.rep.f.coeffs().size(); ++i)
                os << (i ? "," : "") << c.rep.f.coeffs()[i];
            os << " | ";
            for (size_t i = 0; i < c.rep.g.coeffs().size(); ++i)
                os << (i ? "," : "") << c.rep.g.coeffs()[i];
            os << ")  x" << c.members << "\n";
        }
        if (r.oracle_checked)
            os << "      oracle classes: " << t.oracle_class_count << "\n";
    }
    if (r.oracle_checked)
        os << (r.oracle_agrees ? "oracle check: PASS\n" : "oracle check: FAIL\n");
    return os.str();
}

int cmd_atlas(int p, int m, int n, long long samples, std::uint64_t seed, bool oracle,
              const std::string& out, bool pretty, unsigned long long max_pairs) {
    auto ext = isotope::CyclicExtension::build(p, m, n);
    isotope::AtlasOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.oracle = oracle;
    opt.max_pairs = max_pairs;
    opt.threads = env_threads();
    const isotope::AtlasReport rep = isotope::atlas(*ext, opt);
    emit(isotope::atlas_to_json(rep), out, pretty, render_atlas(rep));
    if (oracle && !rep.oracle_agrees) return kExitPropertyFailure;
    return kExitPass;
}

int cmd_isotest(int p, int m, int n, const std::string& fs, const std::string& gs,
                const std::string& fs2, const std::string& gs2, bool oracle,
                const std::string& out, bool pretty) {
    auto ext_ptr = isotope::CyclicExtension::build(p, m, n);
    const isotope::CyclicExtension& ext = *ext_ptr;
    isotope::TwistedOperator f(&ext, parse_coeffs(fs));
    isotope::TwistedOperator g(&ext, parse_coeffs(gs));
    isotope::TwistedOperator f2(&ext, parse_coeffs(fs2));
    isotope::TwistedOperator g2(&ext, parse_coeffs(gs2));

    json singular = json::array();
    if (!f.is_invertible()) singular.push_back("f");
    if (!g.is_invertible()) singular.push_back("g");
    if (!f2.is_invertible()) singular.push_back("f2");
    if (!g2.is_invertible()) singular.push_back("g2");
    if (!singular.empty()) {
        json err = isotope::error_to_json("SingularOperator", "operands are not invertible");
        err["error"]["operands"] = singular;
        std::cout << err.dump(2) << "\n";
        return kExitUsage;
    }

    isotope::IsotopePresentation a{&ext, f, g}, b{&ext, f2, g2};
    const isotope::CanonicalForm ca = isotope::canonicalize(a);
    const isotope::CanonicalForm cb = isotope::canonicalize(b);

    std::optional<isotope::CriticalWitness> w;
    std::string method = "critical";
    if (n == 3 && ca.tag == cb.tag) {
        method = "cubic_case";
        if (auto cw = isotope::iso_cubic_cases(ca, cb)) {
            // transport the canonical-level witness back to the raw pair
            w = witness_compose(ext, witness_compose(ext, ca.applied, *cw),
                                witness_inverse(ext, cb.applied));
        }
    } else {
        w = isotope::iso_critical(a, b);
    }
    if (w && !isotope::check_critical(a, b, *w))
        throw isotope::Error("internal: emitted witness does not re-verify");

    json verdict{{"isomorphic", w.has_value()},
                 {"witness", w ? isotope::witness_to_json(*w) : json()},
                 {"method", method}};
    int code = kExitPass;
    if (oracle) {
        auto phi = isotope::iso_bruteforce(isotope::from_presentation(a),
                                           isotope::from_presentation(b));
        verdict["oracle"] = json{{"isomorphic", phi.has_value()},
                                 {"witness", phi ? isotope::witness_to_json(isotope::IsoWitness(*phi))
                                                 : json()},
                                 {"agrees", phi.has_value() == w.has_value()}};
        if (phi.has_value() != w.has_value()) code = kExitPropertyFailure;
    }
    std::ostringstream ps;
    ps << (w ? "isomorphic" : "not isomorphic") << " (method: " << method << ")\n";
    if (w)
        ps << "witness: u = " << w->u << ", v = " << w->v << ", sigma = tau^" << w->sigma << "\n";
    emit(verdict, out, pretty, ps.str());
    return code;
}

int cmd_heart(const std::string& tensor_path, const std::string& out, bool pretty) {
    const json tj = read_json_input(tensor_path);
    auto [ext, a] = isotope::tensor_from_json(tj);
    json rep;
    const auto reg = isotope::is_regular(a);
    rep["regular"] = reg.has_value();
    std::ostringstream ps;
    if (!reg) {
        rep["unit"] = json();
        rep["heart_is_K"] = false;
        rep["presentation"] = json();
        ps << "singular algebra (no regular pair)\n";
    } else {
        const isotope::HeartExtraction h = isotope::kaplansky_heart(a, reg->first, reg->second);
        rep["unit"] = ext->from_coords(h.unit);
        auto d = isotope::decompose_as_presentation(a);
        rep["heart_is_K"] = d.has_value();
        rep["presentation"] =
            d ? json{{"f", isotope::operator_to_json(d->presentation.f)},
                     {"g", isotope::operator_to_json(d->presentation.g)}}
              : json();
        ps << "regular; unit enc = " << ext->from_coords(h.unit)
           << (d ? "; heart recognized as K" : "; heart is not the field K") << "\n";
    }
    emit(rep, out, pretty, ps.str());
    return kExitPass;
}

int cmd_verify(int p, int m, int n, const std::string& level, std::uint64_t seed,
               long long samples, const std::string& spec_path, const std::string& out,
               bool pretty) {
    if (!spec_path.empty()) {
        const json sj = read_json_input(spec_path);
        try {
            p = sj.at("p").get<int>();
            m = sj.at("m").get<int>();
            n = sj.at("n").get<int>();
        } catch (const json::exception& e) {
            throw isotope::ParseError(e.what());
        }
        isotope::extension_from_json(sj);  // validates the modulus when present
    }
    isotope::VerifyOptions opt;
    opt.p = p;
    opt.m = m;
    opt.n = n;
    opt.seed = seed;
    opt.samples = samples;
    opt.exhaustive = level == "exhaustive";
    if (level != "exhaustive" && level != "random")
        throw isotope::ParseError("level must be exhaustive or random");
    const auto results = isotope::run_verify(opt);
    bool all = true;
    json checks = json::array();
    std::ostringstream ps;
    for (const auto& r : results) {
        checks.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
        ps << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    }
    ps << (all ? "all checks passed\n" : "CHECKS FAILED\n");
    json rep{{"ext", json{{"p", p}, {"m", m}, {"n", n}}},
             {"level", level},
             {"seed", seed},
             {"samples", samples},
             {"pass", all},
             {"checks", std::move(checks)}};
    emit(rep, out, pretty, ps.str());
    return all ? kExitPass : kExitPropertyFailure;
}

int cmd_mset(int p, int m, int n, const std::string& out, bool pretty) {
    auto ext = isotope::CyclicExtension::build(p, m, n);
    json rep{{"ext", isotope::extension_to_json(*ext)},
             {"S", ext->norm_one_set()},
             {"M", ext->representatives()}};
    std::ostringstream ps;
    ps << "S(K) (" << ext->norm_one_set().size() << " elements):";
    for (auto s : ext->norm_one_set()) ps << " " << s;
    ps << "\nM (" << ext->representatives().size() << " elements):";
    for (auto r : ext->representatives()) ps << " " << r;
    ps << "\n";
    emit(rep, out, pretty, ps.str());
    return kExitPass;
}

int cmd_normtest(int p, int m, int n, long long samples, std::uint64_t seed,
                 const std::string& out, bool pretty) {
    auto ext_ptr = isotope::CyclicExtension::build(p, m, n);
    const isotope::CyclicExtension& ext = *ext_ptr;
    unsigned long long space = 1;
    for (int i = 0; i < n; ++i) space *= ext.order();
    const bool exhaustive = samples <= 0 && space <= 65536;
    if (samples <= 0 && !exhaustive) samples = 10000;

    json mismatches = json::array();
    unsigned long long checked = 0;
    auto probe = [&](const std::vector<isotope::elem_t>& y) {
        isotope::TwistedOperator f(&ext, y);
        const isotope::elem_t det = isotope::fmat_det(ext.field(), f.to_matrix());
        const isotope::elem_t rn = f.reduced_norm();
        ++checked;
        if (det != rn)
            mismatches.push_back(json{{"f", y}, {"det", det}, {"reduced_norm", rn}});
    };
    if (exhaustive) {
        std::vector<isotope::elem_t> y(n, 0);
        for (;;) {
            probe(y);
            int i = n - 1;
            while (i >= 0 && ++y[i] == ext.order()) y[i--] = 0;
            if (i < 0) break;
        }
    } else {
        isotope::SampleRng rng(seed);
        for (long long t = 0; t < samples; ++t) {
            std::vector<isotope::elem_t> y(n);
            for (int i = 0; i < n; ++i) y[i] = static_cast<isotope::elem_t>(rng.below(ext.order()));
            probe(y);
        }
    }
    json rep{{"ext", json{{"p", p}, {"m", m}, {"n", n}}},
             {"mode", exhaustive ? "exhaustive" : "samples"},
             {"checked", checked},
             {"mismatches", mismatches}};
    std::ostringstream ps;
    ps << "det vs reduced norm: " << checked << " operators, " << mismatches.size()
       << " mismatches\n";
    emit(rep, out, pretty, ps.str());
    return mismatches.empty() ? kExitPass : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"principal Albert isotopes of cyclic Galois field extensions: "
                 "atlases, isomorphism tests, hearts, verification"};
    app.require_subcommand(1);

    int p = 2, m = 1, n = 3;
    std::uint64_t seed = 0;
    long long samples = 0;
    bool oracle = false, pretty = false;
    std::string out, f_str, g_str, f2_str, g2_str, tensor_path, spec_path;
    std::string level = "exhaustive";
    unsigned long long max_pairs = 200000;

    auto add_field_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "field characteristic");
        cmd->add_option("--m", m, "degree of F over the prime field");
        cmd->add_option("--n", n, "degree of K over F");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "write JSON report to this path");
        cmd->add_flag("--pretty", pretty, "human-readable rendering");
    };

    CLI::App* atlas_cmd = app.add_subcommand("atlas", "classify isotopes up to isomorphism");
    add_field_opts(atlas_cmd);
    atlas_cmd->add_option("--samples", samples, "sample this many pairs instead of enumerating");
    atlas_cmd->add_option("--seed", seed, "sampling seed");
    atlas_cmd->add_flag("--oracle", oracle, "cross-check classes with the brute-force oracle");
    atlas_cmd->add_option("--max-pairs", max_pairs, "budget for exhaustive enumeration");
    add_common(atlas_cmd);

    CLI::App* iso_cmd = app.add_subcommand("isotest", "decide K^(f,g) iso K^(f',g')");
    add_field_opts(iso_cmd);
    iso_cmd->add_option("--f", f_str, "coefficients of f, e.g. 1,3,0")->required();
    iso_cmd->add_option("--g", g_str, "coefficients of g")->required();
    iso_cmd->add_option("--f2", f2_str, "coefficients of f'")->required();
    iso_cmd->add_option("--g2", g2_str, "coefficients of g'")->required();
    iso_cmd->add_flag("--oracle", oracle, "also run the brute-force oracle");
    add_common(iso_cmd);

    CLI::App* heart_cmd = app.add_subcommand("heart", "extract and recognize the unital heart");
    heart_cmd->add_option("--tensor", tensor_path, "tensor JSON file, or - for stdin")
        ->required();
    add_common(heart_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    add_field_opts(verify_cmd);
    verify_cmd->add_option("--level", level, "exhaustive | random");
    verify_cmd->add_option("--seed", seed, "seed for randomized suites");
    verify_cmd->add_option("--samples", samples, "sample count for randomized suites");
    verify_cmd->add_option("--spec", spec_path, "field spec JSON file, or - for stdin");
    add_common(verify_cmd);

    CLI::App* mset_cmd = app.add_subcommand("m-set", "print S(K) and the transversal M");
    add_field_opts(mset_cmd);
    add_common(mset_cmd);

    CLI::App* norm_cmd = app.add_subcommand("normtest",
                                            "reduced norm vs determinant residuals");
    add_field_opts(norm_cmd);
    norm_cmd->add_option("--samples", samples, "random sample count (default: exhaustive)");
    norm_cmd->add_option("--seed", seed, "sampling seed");
    add_common(norm_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (atlas_cmd->parsed())
            return cmd_atlas(p, m, n, samples, seed, oracle, out, pretty, max_pairs);
        if (iso_cmd->parsed())
            return cmd_isotest(p, m, n, f_str, g_str, f2_str, g2_str, oracle, out, pretty);
        if (heart_cmd->parsed()) return cmd_heart(tensor_path, out, pretty);
        if (verify_cmd->parsed())
            return cmd_verify(p, m, n, level, seed, samples == 0 ? 1000 : samples, spec_path,
                              out, pretty);
        if (mset_cmd->parsed()) return cmd_mset(p, m, n, out, pretty);
        if (norm_cmd->parsed()) return cmd_normtest(p, m, n, samples, seed, out, pretty);
    } catch (const isotope::ParseError& e) {
        std::cout << isotope::error_to_json("ParseError", e.what()).dump(2) << "\n";
        return kExitUsage;
    } catch (const isotope::NotPrime& e) {
        std::cout << isotope::error_to_json("NotPrime", e.what()).dump(2) << "\n";
        return kExitUsage;
    } catch (const isotope::Error& e) {
        std::cout << isotope::error_to_json("Error", e.what()).dump(2) << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
