// Python bindings: algebra construction and checks, polynomial classification,
// and the main quadrature experiments. Structured results cross the boundary
// as JSON strings; the package wrapper turns them into dicts.

#include "supercauchy/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace supercauchy;

namespace {

/// pybind11 holders want a mutable element type; the library hands out
/// shared_ptr<const Algebra>, so the binding wraps it.
struct PyAlgebra {
    AlgebraPtr ptr;
    const Algebra& get() const { return *ptr; }
};

Element element_from_list(const Algebra& alg, const VecD& v) {
    return alg.from_doubles(v);
}

std::string check_algebra_json(const PyAlgebra& a) {
    const AlgebraPtr& alg = a.ptr;
    const ValidationReport val = alg->validate();
    const auto [s0, a0] = alg->check_A0();
    const A1Report a1 = alg->check_A1();
    Json out{{"algebra", alg->name()},
             {"p_plus_1", alg->p_plus_1()},
             {"q", alg->q()},
             {"valid", val.valid()},
             {"validation", validation_to_json(val)},
             {"A0", a0},
             {"A0_sum", element_to_json(s0)},
             {"A1", a1.pass},
             {"annihilator_dim", alg->annihilator().size()}};
    return out.dump();
}

PolyFunction poly_from_json_str(const PyAlgebra& alg, int n, int m,
                                const std::string& doc) {
    return poly_from_json(Json::parse(doc), Shape(alg.ptr, n, m));
}

std::string classify_json(const PolyFunction& f) {
    const D2Result comp = d2(f);
    Json out{{"qS", comp.all_zero()}};
    if (!comp.all_zero()) {
        out["witness_coordinate"] = *comp.witness();
        return out.dump();
    }
    const Shape& s = f.shape();
    if (s.n == 1 && s.m == 0) {
        const auto cs = classify_y(f);
        Json list = Json::array();
        for (const auto& c : *cs) list.push_back(element_to_json(c));
        out["c"] = list;
    } else if (s.n == 0 && s.m == 1) {
        const auto bs = classify_theta(f);
        Json list = Json::array();
        for (const auto& [key, c] : *bs)
            list.push_back(Json{{"K", key}, {"coeff", element_to_json(c)}});
        out["terms"] = list;
    } else if (s.n == 1 && s.m == 1) {
        const auto as = classify_mixed(f);
        Json list = Json::array();
        for (const auto& [key, c] : *as)
            list.push_back(Json{{"K", key}, {"coeff", element_to_json(c)}});
        out["terms"] = list;
    }
    return out.dump();
}

std::string series_json(const PolyFunction& f, int max_degree) {
    const SuperSeries ser =
        series_expand(f, SuperPoint(f.shape()), max_degree);
    return series_to_json(ser).dump();
}

std::string reproduce_disk_json(const PyAlgebra& alg, int64_t nodes, uint64_t seed) {
    const Shape s(alg.ptr, 1, 0);
    QuadratureConfig cfg;
    cfg.nodes = nodes;
    cfg.seed = seed;
    const PolyFunction f = PolyFunction::coordinate(s, 0).pow(2);
    SuperPoint x(s);
    x.y(0, 0) = Rat(3, 10);
    x.y(0, 1) = Rat(1, 10);
    QuadReport rep;
    reproduce(f, Domain::ball(s, VecD(s.coords(), 0.0), 1.0), x, cfg, &rep);
    rep.experiment = "reproduce-disk";
    rep.finish_against(f.eval(x).to_doubles());
    return report_to_json(rep).dump();
}

std::string divergence_json(int dim, int64_t nodes, uint64_t seed) {
    QuadratureConfig cfg;
    cfg.nodes = nodes;
    cfg.seed = seed;
    return report_to_json(divergence_selftest(dim, cfg)).dump();
}

double kernel_residual(const PyAlgebra& alg, int n, int m, const VecD& x, double h) {
    return Kernel(Shape(alg.ptr, n, m)).d2_residual(x, h);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "computational superanalysis core";

    // translators run newest-first: the derived condition_error must be
    // registered after its base to be matched first
    py::register_exception<Error>(m, "Error");
    py::register_exception<condition_error>(m, "ConditionError");

    py::class_<PyAlgebra>(m, "Algebra")
        .def_property_readonly("name",
                               [](const PyAlgebra& a) { return a.get().name(); })
        .def_property_readonly("p_plus_1",
                               [](const PyAlgebra& a) { return a.get().p_plus_1(); })
        .def_property_readonly("q", [](const PyAlgebra& a) { return a.get().q(); })
        .def_property_readonly("dim", [](const PyAlgebra& a) { return a.get().dim(); })
        .def("multiply",
             [](const PyAlgebra& a, const VecD& x, const VecD& y) {
                 return a.get()
                     .mul(element_from_list(a.get(), x), element_from_list(a.get(), y))
                     .to_doubles();
             })
        .def("supercommutator",
             [](const PyAlgebra& a, const VecD& x, const VecD& y) {
                 return a.get()
                     .supercommutator(element_from_list(a.get(), x),
                                      element_from_list(a.get(), y))
                     .to_doubles();
             })
        .def("check_A0",
             [](const PyAlgebra& a) {
                 auto [s, ok] = a.get().check_A0();
                 return py::make_tuple(s.to_doubles(), ok);
             })
        .def("check_A1_pass",
             [](const PyAlgebra& a) { return a.get().check_A1().pass; })
        .def("is_valid_csa",
             [](const PyAlgebra& a) { return a.get().validate().valid(); })
        .def("annihilator",
             [](const PyAlgebra& a) {
                 std::vector<VecD> out;
                 for (const auto& e : a.get().annihilator())
                     out.push_back(e.to_doubles());
                 return out;
             })
        .def("report_json", &check_algebra_json)
        .def("to_json",
             [](const PyAlgebra& a) { return algebra_to_json(a.get()).dump(); });

    m.def("builtin",
          [](const std::string& name) { return PyAlgebra{Algebra::builtin(name)}; },
          py::arg("name"));
    m.def("algebra_from_json", [](const std::string& doc) {
        return PyAlgebra{algebra_from_json(Json::parse(doc))};
    });

    py::class_<PolyFunction>(m, "PolyFunction")
        .def("is_qS", [](const PolyFunction& f) { return is_qS(f); })
        .def("laplacian_is_zero",
             [](const PolyFunction& f) { return laplacian(f).is_zero(); })
        .def("eval",
             [](const PolyFunction& f, const VecD& coords) {
                 if (static_cast<int>(coords.size()) != f.shape().coords())
                     throw Error("coordinate count mismatch");
                 return f.eval_d(coords.data());
             })
        .def("degree", &PolyFunction::degree)
        .def("classify_json", &classify_json)
        .def("series_json", &series_json, py::arg("max_degree"),
             "series expansion at the origin in y and the Z block variables")
        .def("to_json", [](const PolyFunction& f) { return poly_to_json(f).dump(); });

    m.def("poly_from_json", &poly_from_json_str, py::arg("algebra"), py::arg("n"),
          py::arg("m"), py::arg("doc"));

    m.def("reproduce_disk_json", &reproduce_disk_json, py::arg("algebra"),
          py::arg("nodes") = 4096, py::arg("seed") = 1,
          "boundary reproduction of y^2 at 0.3 e0 + 0.1 e1 on the unit ball");
    m.def("divergence_selftest_json", &divergence_json, py::arg("dim"),
          py::arg("nodes") = 16384, py::arg("seed") = 1);
    m.def("kernel_d2_residual", &kernel_residual, py::arg("algebra"), py::arg("n"),
          py::arg("m"), py::arg("x"), py::arg("h") = 1e-5);
}
