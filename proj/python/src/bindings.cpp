#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "rmlattice/algorithms.hpp"
#include "rmlattice/errors.hpp"
#include "rmlattice/generator.hpp"
#include "rmlattice/io.hpp"
#include "rmlattice/oracle.hpp"
#include "rmlattice/quadratic_order.hpp"
#include "rmlattice/surface.hpp"

namespace py = pybind11;

// Arbitrary-precision integers cross the boundary as Python ints via their
// decimal representation.
namespace pybind11::detail {
template <>
struct type_caster<rmlattice::Int> {
  PYBIND11_TYPE_CASTER(rmlattice::Int, const_name("int"));

  bool load(handle src, bool convert) {
    if (!src || (!convert && !PyLong_Check(src.ptr()))) return false;
    if (!PyLong_Check(src.ptr()) && !PyIndex_Check(src.ptr())) return false;
    object as_int = reinterpret_steal<object>(PyNumber_Index(src.ptr()));
    if (!as_int) {
      PyErr_Clear();
      return false;
    }
    value = rmlattice::Int(py::str(as_int).cast<std::string>());
    return true;
  }

  static handle cast(const rmlattice::Int& v, return_value_policy, handle) {
    const std::string text = v.str();
    return PyLong_FromString(text.c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

using namespace rmlattice;

py::list to_rows(const Matrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(py::cast(m(i, j)));
    out.append(row);
  }
  return out;
}

py::dict step_dict(const IsogenyStep& st) {
  py::dict d;
  d["kind"] = to_string(st.kind);
  d["prime"] = st.prime;
  d["degree_before"] = st.degree_before;
  d["degree_after"] = st.degree_after;
  d["kernel_order"] = st.kernel ? py::cast(st.kernel->order()) : py::none();
  d["alpha"] = st.alpha ? py::cast(std::make_pair(st.alpha->x, st.alpha->y)) : py::none();
  d["t"] = st.t ? py::cast(*st.t) : py::none();
  d["branch"] = st.branch ? py::cast(*st.branch) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polarized abelian surfaces with real multiplication, as lattice data";

  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<RealQuadraticOrder>(m, "Order")
      .def(py::init(&make_order), py::arg("D"), py::arg("conductor") = 1)
      .def_readonly("D", &RealQuadraticOrder::D)
      .def_readonly("conductor", &RealQuadraticOrder::conductor)
      .def_readonly("discriminant", &RealQuadraticOrder::discriminant)
      .def_readonly("fundamental_discriminant", &RealQuadraticOrder::fundamental_discriminant)
      .def("splitting_type", [](const RealQuadraticOrder& o, const Int& ell) {
        return to_string(splitting_type(o, ell));
      })
      .def("fundamental_unit", [](const RealQuadraticOrder& o) {
        const auto u = fundamental_unit(o);
        return std::make_pair(u.x, u.y);
      })
      .def("norm", [](const RealQuadraticOrder& o, const Int& x, const Int& y) { return norm(o, {x, y}); })
      .def("solve_norm", [](const RealQuadraticOrder& o, const Int& ell) -> py::object {
        const auto a = solve_norm(o, ell);
        if (!a) return py::none();
        return py::cast(std::make_pair(a->x, a->y));
      })
      .def("__eq__", [](const RealQuadraticOrder& a, const RealQuadraticOrder& b) { return a == b; })
      .def("__repr__", [](const RealQuadraticOrder& o) {
        return "Order(D=" + o.D.str() + ", conductor=" + o.conductor.str() + ")";
      });

  py::class_<PolarizedRMSurface>(m, "Surface")
      .def_static("from_json", &parse_instance, py::arg("text"))
      .def_static("standard", [](const Int& D, const Int& f) { return standard_instance(make_order(D, f)); },
                  py::arg("D"), py::arg("conductor") = 1)
      .def("to_json", &serialize_instance)
      .def_readonly("order", &PolarizedRMSurface::order)
      .def_property_readonly("action", [](const PolarizedRMSurface& s) { return to_rows(s.action); })
      .def_property_readonly("gram", [](const PolarizedRMSurface& s) { return to_rows(s.gram); })
      .def_property_readonly("degree", [](const PolarizedRMSurface& s) { return degree(s); })
      .def_property_readonly("pfaffian", [](const PolarizedRMSurface& s) { return pfaffian(s); })
      .def_property_readonly("divisors", [](const PolarizedRMSurface& s) {
        const auto d = kernel_of_polarization(s).divisors;
        return py::make_tuple(d[0], d[1], d[2], d[3]);
      })
      .def_property_readonly("stabilizer", &stabilizer_order)
      .def("validate", [](const PolarizedRMSurface& s) {
        const auto v = validate(s);
        return std::make_pair(v.ok, v.diagnostic);
      })
      .def("__eq__", [](const PolarizedRMSurface& a, const PolarizedRMSurface& b) { return a == b; });

  py::class_<PipelineReport>(m, "Report")
      .def_static("from_json", &parse_certificate, py::arg("text"))
      .def("to_json", &serialize_certificate)
      .def_readonly("seed", &PipelineReport::seed)
      .def_readonly("output", &PipelineReport::output)
      .def_property_readonly("steps", [](const PipelineReport& r) {
        py::list out;
        for (const auto& st : r.steps) out.append(step_dict(st));
        return out;
      });

  m.def("generate", &generate_instance, py::arg("D"), py::arg("conductor") = 1,
        py::arg("degree_primes") = std::vector<Int>{}, py::arg("seed") = 0);
  m.def("principalize", &principalize, py::arg("surface"));
  m.def(
      "verify",
      [](const PolarizedRMSurface& s, const PipelineReport& r) {
        const auto v = verify_certificate(s, r);
        return std::make_pair(v.ok, v.diagnostic);
      },
      py::arg("surface"), py::arg("report"));
  m.def("humbert_nonempty", &humbert_nonempty, py::arg("discriminant"), py::arg("d"));
}
