#include "isotope/json_io.hpp"

namespace isotope {

json field_spec_to_json(const FieldSpec& spec) {
    return json{{"p", spec.characteristic()}, {"d", spec.degree()}, {"modulus", spec.modulus()}};
}

json extension_to_json(const CyclicExtension& ext) {
    return json{{"p", ext.p()},
                {"m", ext.m()},
                {"n", ext.n()},
                {"modulus", ext.field().modulus()},
                {"primitive_root", ext.primitive_root()},
                {"M", ext.representatives()}};
}

std::shared_ptr<const CyclicExtension> extension_from_json(const json& j) {
    try {
        const int p = j.at("p").get<int>();
        const int m = j.at("m").get<int>();
        const int n = j.at("n").get<int>();
        auto ext = CyclicExtension::build(p, m, n);
        if (j.contains("modulus") &&
            j.at("modulus").get<std::vector<int>>() != ext->field().modulus())
            throw ParseError("modulus does not match the deterministic choice for (p, m, n)");
        return ext;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json operator_to_json(const TwistedOperator& f) { return json(f.coeffs()); }

TwistedOperator operator_from_json(const CyclicExtension& ext, const json& j) {
    try {
        return {&ext, j.get<std::vector<elem_t>>()};
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json presentation_to_json(const IsotopePresentation& p) {
    return json{{"ext", extension_to_json(*p.ext)},
                {"f", operator_to_json(p.f)},
                {"g", operator_to_json(p.g)}};
}

IsotopePresentation presentation_from_json(const CyclicExtension& ext, const json& j) {
    try {
        return {&ext, operator_from_json(ext, j.at("f")), operator_from_json(ext, j.at("g"))};
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json matrix_to_json(const FMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

FMatrix matrix_from_json(const json& j) {
    try {
        const int n = static_cast<int>(j.size());
        FMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) m.at(i, jj) = j.at(i).at(jj).get<elem_t>();
        return m;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json tensor_to_json(const AlgebraStructure& a) {
    const int n = a.dim();
    json c = json::array();
    for (int i = 0; i < n; ++i) {
        json plane = json::array();
        for (int j = 0; j < n; ++j) {
            json row = json::array();
            for (int k = 0; k < n; ++k) row.push_back(a.at(i, j, k));
            plane.push_back(std::move(row));
        }
        c.push_back(std::move(plane));
    }
    return json{{"n", n}, {"q_spec", extension_to_json(*a.ext())}, {"c", std::move(c)}};
}

std::pair<std::shared_ptr<const CyclicExtension>, AlgebraStructure> tensor_from_json(
    const json& j) {
    try {
        auto ext = extension_from_json(j.at("q_spec"));
        const int n = j.at("n").get<int>();
        if (n != ext->n()) throw ParseError("tensor dimension does not match the extension");
        std::vector<elem_t> c;
        c.reserve(static_cast<size_t>(n) * n * n);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                for (int k = 0; k < n; ++k)
                    c.push_back(j.at("c").at(i).at(jj).at(k).get<elem_t>());
        AlgebraStructure a(ext.get(), std::move(c));
        return {std::move(ext), std::move(a)};
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json witness_to_json(const CriticalWitness& w) {
    return json{{"kind", "critical_relations"}, {"u", w.u}, {"v", w.v}, {"sigma", w.sigma}};
}

json witness_to_json(const IsoWitness& w) {
    if (std::holds_alternative<CriticalWitness>(w))
        return witness_to_json(std::get<CriticalWitness>(w));
    return json{{"kind", "explicit_map"}, {"phi", matrix_to_json(std::get<FMatrix>(w))}};
}

json tag_to_json(const TypeTag& t) {
    json j{{"key", t.key()}, {"N0", t.N0}, {"N1", t.N1}, {"N2", t.N2}};
    if (t.cubic_type > 0) j["type_index"] = t.cubic_type;
    if (t.g_const >= 0) j["g_const"] = t.g_const;
    return j;
}

json atlas_to_json(const AtlasReport& r) {
    json types = json::array();
    for (const auto& t : r.types) {
        json classes = json::array();
        for (const auto& c : t.classes)
            classes.push_back(json{{"f", operator_to_json(c.rep.f)},
                                   {"g", operator_to_json(c.rep.g)},
                                   {"members", c.members}});
        json tj{{"type_index", t.tag.cubic_type > 0 ? json(t.tag.cubic_type) : json()},
                {"key", t.tag.key()},
                {"N0", t.tag.N0},
                {"class_count", t.classes.size()},
                {"representatives", std::move(classes)}};
        if (r.oracle_checked) tj["oracle_class_count"] = t.oracle_class_count;
        types.push_back(std::move(tj));
    }
    json j{{"ext", json{{"p", r.p}, {"m", r.m}, {"n", r.n}}},
           {"types", std::move(types)},
           {"oracle_checked", r.oracle_checked},
           {"seed", r.seed}};
    if (r.samples > 0) j["samples"] = r.samples;
    if (r.oracle_checked) j["oracle_agrees"] = r.oracle_agrees;
    return j;
}

json error_to_json(const std::string& kind, const std::string& message) {
    return json{{"error", json{{"kind", kind}, {"message", message}}}};
}

}  // namespace isotope
