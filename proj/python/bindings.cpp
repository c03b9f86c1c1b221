#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isotope/json_io.hpp"
#include "isotope/verify.hpp"

namespace py = pybind11;
using namespace isotope;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

std::vector<std::vector<std::vector<elem_t>>> tensor_to_nested(const AlgebraStructure& a) {
    const int n = a.dim();
    std::vector<std::vector<std::vector<elem_t>>> out(
        n, std::vector<std::vector<elem_t>>(n, std::vector<elem_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out[i][j][k] = a.at(i, j, k);
    return out;
}

std::vector<std::vector<elem_t>> matrix_to_nested(const FMatrix& m) {
    std::vector<std::vector<elem_t>> out(m.n, std::vector<elem_t>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out[i][j] = m.at(i, j);
    return out;
}

FMatrix matrix_from_nested(const std::vector<std::vector<elem_t>>& rows) {
    FMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
    return m;
}

/// Python-facing handle: owns the extension and speaks integer encodings,
/// coefficient lists, matrices and nested-list tensors.
class PyExtension {
public:
    PyExtension(int p, int m, int n) : ext_(CyclicExtension::build(p, m, n)) {}

    const CyclicExtension& ext() const { return *ext_; }

    TwistedOperator op(const std::vector<elem_t>& coeffs) const {
        return {ext_.get(), coeffs};
    }
    AlgebraStructure tensor(const std::vector<std::vector<std::vector<elem_t>>>& c) const {
        const int n = ext_->n();
        std::vector<elem_t> flat;
        flat.reserve(static_cast<size_t>(n) * n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) flat.push_back(c.at(i).at(j).at(k));
        return {ext_.get(), std::move(flat)};
    }
    IsotopePresentation pres(const std::vector<elem_t>& f, const std::vector<elem_t>& g) const {
        return {ext_.get(), op(f), op(g)};
    }

private:
    std::shared_ptr<const CyclicExtension> ext_;
};

py::dict witness_dict(const CriticalWitness& w) {
    py::dict d;
    d["u"] = w.u;
    d["v"] = w.v;
    d["sigma"] = w.sigma;
    return d;
}

}  // namespace

PYBIND11_MODULE(isotope, m) {
    m.doc() = "principal Albert isotopes of cyclic Galois field extensions: exact "
              "finite-field machinery, twisted operators, canonical forms and "
              "isomorphism classification";

    py::register_exception<Error>(m, "IsotopeError");

    py::class_<PyExtension>(m, "Extension")
        .def(py::init<int, int, int>(), py::arg("p"), py::arg("m"), py::arg("n"),
             "Builds K = GF(p^(m n)) over F = GF(p^m) with tau: x -> x^(p^m)")
        .def_property_readonly("p", [](const PyExtension& e) { return e.ext().p(); })
        .def_property_readonly("m", [](const PyExtension& e) { return e.ext().m(); })
        .def_property_readonly("n", [](const PyExtension& e) { return e.ext().n(); })
        .def_property_readonly("q", [](const PyExtension& e) { return e.ext().q(); })
        .def_property_readonly("order", [](const PyExtension& e) { return e.ext().order(); })
        .def_property_readonly("modulus",
                               [](const PyExtension& e) { return e.ext().field().modulus(); })
        .def_property_readonly("primitive_root",
                               [](const PyExtension& e) { return e.ext().primitive_root(); })
        // field arithmetic on encodings
        .def("add", [](const PyExtension& e, elem_t a, elem_t b) { return e.ext().field().add(a, b); })
        .def("sub", [](const PyExtension& e, elem_t a, elem_t b) { return e.ext().field().sub(a, b); })
        .def("mul", [](const PyExtension& e, elem_t a, elem_t b) { return e.ext().field().mul(a, b); })
        .def("neg", [](const PyExtension& e, elem_t a) { return e.ext().field().neg(a); })
        .def("inv", [](const PyExtension& e, elem_t a) { return e.ext().field().inv(a); })
        .def("pow", [](const PyExtension& e, elem_t a, long long k) { return e.ext().field().pow(a, k); })
        .def("tau", [](const PyExtension& e, elem_t x, int i) { return e.ext().tau(x, i); },
             py::arg("x"), py::arg("i") = 1)
        .def("norm", [](const PyExtension& e, elem_t x) { return e.ext().norm(x); })
        .def("trace", [](const PyExtension& e, elem_t x) { return e.ext().trace(x); })
        .def("subfield", [](const PyExtension& e) { return e.ext().subfield(); })
        .def("norm_one_set", [](const PyExtension& e) { return e.ext().norm_one_set(); })
        .def("representatives", [](const PyExtension& e) { return e.ext().representatives(); })
        .def("hilbert90_solve",
             [](const PyExtension& e, elem_t s, int i) { return e.ext().hilbert90_solve(s, i); },
             py::arg("s"), py::arg("i") = 1)
        .def("scale_to_M",
             [](const PyExtension& e, elem_t y, int i) { return e.ext().scale_to_M(y, i); },
             py::arg("y"), py::arg("i") = 1)
        .def("coords", [](const PyExtension& e, elem_t x) { return e.ext().coords(x); })
        .def("from_coords",
             [](const PyExtension& e, const std::vector<elem_t>& c) { return e.ext().from_coords(c); })
        // twisted operators as coefficient lists
        .def("apply_operator",
             [](const PyExtension& e, const std::vector<elem_t>& f, elem_t x) {
                 return e.op(f).apply(x);
             })
        .def("compose",
             [](const PyExtension& e, const std::vector<elem_t>& f,
                const std::vector<elem_t>& g) { return e.op(f).compose(e.op(g)).coeffs(); })
        .def("reduced_norm",
             [](const PyExtension& e, const std::vector<elem_t>& f) {
                 return e.op(f).reduced_norm();
             })
        .def("is_invertible",
             [](const PyExtension& e, const std::vector<elem_t>& f) {
                 return e.op(f).is_invertible();
             })
        .def("inverse_operator",
             [](const PyExtension& e, const std::vector<elem_t>& f) {
                 return e.op(f).inverse().coeffs();
             })
        .def("operator_matrix",
             [](const PyExtension& e, const std::vector<elem_t>& f) {
                 return matrix_to_nested(e.op(f).to_matrix());
             })
        .def("operator_from_matrix",
             [](const PyExtension& e, const std::vector<std::vector<elem_t>>& m) {
                 return from_matrix(e.ext(), matrix_from_nested(m)).coeffs();
             })
        // algebras
        .def("field_tensor",
             [](const PyExtension& e) { return tensor_to_nested(field_algebra(e.ext())); })
        .def("tensor_of",
             [](const PyExtension& e, const std::vector<elem_t>& f,
                const std::vector<elem_t>& g) {
                 return tensor_to_nested(from_presentation(e.pres(f, g)));
             },
             "structure tensor of the principal Albert isotope K^(f,g)")
        .def("is_regular",
             [](const PyExtension& e,
                const std::vector<std::vector<std::vector<elem_t>>>& c) -> py::object {
                 auto r = is_regular(e.tensor(c));
                 if (!r) return py::none();
                 return py::make_tuple(r->first, r->second);
             })
        .def("kaplansky_heart",
             [](const PyExtension& e,
                const std::vector<std::vector<std::vector<elem_t>>>& c) {
                 const HeartExtraction h = kaplansky_heart(e.tensor(c));
                 py::dict d;
                 d["heart"] = tensor_to_nested(h.heart);
                 d["f"] = matrix_to_nested(h.f);
                 d["g"] = matrix_to_nested(h.g);
                 d["unit"] = h.unit;
                 return d;
             })
        .def("decompose",
             [](const PyExtension& e,
                const std::vector<std::vector<std::vector<elem_t>>>& c) -> py::object {
                 auto d = decompose_as_presentation(e.tensor(c));
                 if (!d) return py::none();
                 py::dict out;
                 out["f"] = d->presentation.f.coeffs();
                 out["g"] = d->presentation.g.coeffs();
                 out["witness"] = matrix_to_nested(d->witness);
                 return out;
             })
        // classification
        .def("canonicalize",
             [](const PyExtension& e, const std::vector<elem_t>& f,
                const std::vector<elem_t>& g) {
                 const CanonicalForm c = canonicalize(e.pres(f, g));
                 py::dict d;
                 d["f"] = c.pres.f.coeffs();
                 d["g"] = c.pres.g.coeffs();
                 d["type_key"] = c.tag.key();
                 d["type_index"] = c.tag.cubic_type;
                 d["N0"] = c.tag.N0;
                 d["witness"] = witness_dict(c.applied);
                 return d;
             })
        .def("iso_critical",
             [](const PyExtension& e, const std::vector<elem_t>& f, const std::vector<elem_t>& g,
                const std::vector<elem_t>& f2, const std::vector<elem_t>& g2) -> py::object {
                 auto w = iso_critical(e.pres(f, g), e.pres(f2, g2));
                 if (!w) return py::none();
                 return witness_dict(*w);
             })
        .def("iso_cubic",
             [](const PyExtension& e, const std::vector<elem_t>& f, const std::vector<elem_t>& g,
                const std::vector<elem_t>& f2, const std::vector<elem_t>& g2) -> py::object {
                 const CanonicalForm a = canonicalize(e.pres(f, g));
                 const CanonicalForm b = canonicalize(e.pres(f2, g2));
                 if (!(a.tag == b.tag)) return py::none();
                 auto w = iso_cubic_cases(a, b);
                 if (!w) return py::none();
                 // witness between the canonical forms
                 return witness_dict(*w);
             })
        .def("iso_bruteforce",
             [](const PyExtension& e, const std::vector<std::vector<std::vector<elem_t>>>& a,
                const std::vector<std::vector<std::vector<elem_t>>>& b) -> py::object {
                 auto phi = iso_bruteforce(e.tensor(a), e.tensor(b));
                 if (!phi) return py::none();
                 return py::cast(matrix_to_nested(*phi));
             })
        .def("check_critical",
             [](const PyExtension& e, const std::vector<elem_t>& f, const std::vector<elem_t>& g,
                const std::vector<elem_t>& f2, const std::vector<elem_t>& g2, elem_t u, elem_t v,
                int sigma) {
                 return check_critical(e.pres(f, g), e.pres(f2, g2),
                                       CriticalWitness{u, v, sigma});
             })
        .def("atlas",
             [](const PyExtension& e, long long samples, std::uint64_t seed, bool oracle) {
                 AtlasOptions opt;
                 opt.samples = samples;
                 opt.seed = seed;
                 opt.oracle = oracle;
                 return json_to_py(atlas_to_json(atlas(e.ext(), opt)));
             },
             py::arg("samples") = 0, py::arg("seed") = 0, py::arg("oracle") = false)
        .def("__repr__", [](const PyExtension& e) {
            return "Extension(p=" + std::to_string(e.ext().p()) +
                   ", m=" + std::to_string(e.ext().m()) + ", n=" + std::to_string(e.ext().n()) +
                   ")";
        });

    m.def("verify",
          [](int p, int mm, int n, const std::string& level, std::uint64_t seed,
             long long samples) {
              VerifyOptions opt;
              opt.p = p;
              opt.m = mm;
              opt.n = n;
              opt.seed = seed;
              opt.samples = samples;
              opt.exhaustive = level == "exhaustive";
              py::list out;
              for (const auto& r : run_verify(opt)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["pass"] = r.pass;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("p") = 2, py::arg("m") = 1, py::arg("n") = 3,
          py::arg("level") = "random", py::arg("seed") = 1, py::arg("samples") = 200);
}
