#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gcodes/construct.hpp"
#include "gcodes/io.hpp"
#include "gcodes/sweep.hpp"

namespace py = pybind11;
using namespace gcodes;

namespace {

LinearCode make_code(std::uint64_t q, const std::vector<Vec>& rows, std::optional<std::size_t> n) {
  const FieldCtx& f = field_of_order(q);
  if (rows.empty()) {
    if (!n) throw Error(ErrorCode::DimensionMismatch, "pass n for a code with no rows");
    return LinearCode(Subspace(f, *n));
  }
  const Matrix g = n ? Matrix::from_rows(f, rows, *n) : Matrix::from_rows(f, rows);
  return LinearCode::from_generator(g);
}

std::vector<Vec> rows_of(const Subspace& s) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < s.dim(); ++r) out.push_back(s.basis().row_vector(r));
  return out;
}

py::object dist(std::size_t d) { return d == kInfinite ? py::none() : py::cast(d); }

py::int_ big(const BigInt& b) {
  std::ostringstream ss;
  ss << b;
  return py::int_(py::str(ss.str()));
}

py::dict map_dict(const MonomialMap& m) {
  py::dict d;
  d["perm"] = m.perm();
  d["scalars"] = m.scalars();
  return d;
}

std::string code_repr(const LinearCode& c) {
  std::string s = "Code(q=" + std::to_string(c.field().q()) + ", rows=[";
  for (std::size_t r = 0; r < c.k(); ++r) {
    s += r ? ", [" : "[";
    const Vec v = c.generator().row_vector(r);
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + std::to_string(v[j]);
    s += "]";
  }
  return s + "])";
}

CtCriterion criterion_of(const std::string& name) {
  if (name == "columns") return CtCriterion::ColumnsIndependent;
  if (name == "dual_distance") return CtCriterion::DualDistance;
  if (name == "coordinate_meet") return CtCriterion::CoordMeet;
  throw Error(ErrorCode::InvalidArgument, "criterion must be columns, dual_distance or coordinate_meet");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear codes as vertices of the Grassmann graph";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&] { return py::exception<Error>(m, "GcodesError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    const py::object& error = error_type.get_stored();
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PathFailedError& e) {
      py::list partial;
      for (const auto& c : e.partial()) partial.append(py::cast(c));
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.code())), e.what(), partial).ptr());
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.code())), e.what()).ptr());
    }
  });

  py::class_<LinearCode>(m, "Code")
      .def(py::init(&make_code), py::arg("q"), py::arg("rows"), py::arg("n") = py::none(),
           "Code spanned by the rows; k is their rank.")
      .def_property_readonly("q", [](const LinearCode& c) { return c.field().q(); })
      .def_property_readonly("n", &LinearCode::n)
      .def_property_readonly("k", &LinearCode::k)
      .def_property_readonly("rows", [](const LinearCode& c) { return rows_of(c.space()); }, "RREF generator rows")
      .def_property_readonly("t_max", &LinearCode::t_max)
      .def_property_readonly("dual_distance", [](const LinearCode& c) { return dist(c.dual_min_distance()); })
      .def_property_readonly("min_distance", [](const LinearCode& c) { return dist(min_distance(c).value); })
      .def("dual", [](const LinearCode& c) { return dual(c); })
      .def(
          "is_in_ct",
          [](const LinearCode& c, std::size_t t, const std::string& criterion) {
            return is_in_ct(c, t, criterion_of(criterion));
          },
          py::arg("t"), py::arg("criterion") = "columns")
      .def(
          "apply_monomial",
          [](const LinearCode& c, std::vector<std::size_t> perm, std::vector<Elem> scalars) {
            return apply_monomial(MonomialMap(c.field(), std::move(perm), std::move(scalars)), c);
          },
          py::arg("perm"), py::arg("scalars"))
      .def("to_text", &format_generator)
      .def_static("from_text", &parse_generator)
      .def("__eq__", [](const LinearCode& a, const LinearCode& b) { return a == b; })
      .def("__hash__", [](const LinearCode& c) { return py::hash(py::str(format_generator(c))); })
      .def("__repr__", &code_repr);

  m.def("intersection_dim", [](const LinearCode& a, const LinearCode& b) {
    return intersection_dim(a.space(), b.space());
  });
  m.def("grassmann_distance", [](const LinearCode& a, const LinearCode& b) {
    return a.k() - intersection_dim(a.space(), b.space());
  });
  m.def(
      "vandermonde_mds",
      [](std::uint64_t q, std::size_t n, std::size_t k, std::optional<std::vector<Elem>> points) {
        return vandermonde_mds(field_of_order(q), n, k, points);
      },
      py::arg("q"), py::arg("n"), py::arg("k"), py::arg("points") = py::none());

  m.def(
      "step_toward",
      [](const LinearCode& x, const LinearCode& y, std::size_t t) {
        const StepCertificate c = step_toward(x, y, t);
        py::dict d;
        d["z"] = c.z_code;
        d["hyperplane"] = rows_of(c.hyperplane_used);
        d["coset_rep"] = c.coset_rep;
        d["dim_x_meet_z"] = c.dim_x_meet_z;
        d["dim_z_meet_y"] = c.dim_z_meet_y;
        d["in_ct"] = c.in_ct;
        d["verified"] = verify_step(c, x, y, t);
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "count_step_codes",
      [](const LinearCode& x, const LinearCode& y, std::size_t t) { return big(count_step_codes(x, y, t).total); },
      py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "geodesic_path", [](const LinearCode& x, const LinearCode& y, std::size_t t) { return geodesic_path(x, y, t).codes; },
      py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "shrink",
      [](const LinearCode& x, const std::vector<Vec>& u, std::size_t t) {
        const Subspace us = u.empty() ? Subspace(x.field(), x.n()) : Subspace::span(Matrix::from_rows(x.field(), u, x.n()));
        return shrink(x, us, t);
      },
      py::arg("x"), py::arg("u"), py::arg("t"));
  m.def(
      "opposite_code",
      [](const LinearCode& c, std::size_t t) {
        const OppositeResult r = opposite_code(c, t);
        py::dict d;
        d["d"] = r.d;
        d["lambda"] = r.lambda;
        d["witness"] = map_dict(r.witness);
        d["rho"] = map_dict(r.rho);
        d["sigma"] = map_dict(r.sigma);
        return d;
      },
      py::arg("c"), py::arg("t"));

  m.def(
      "enumerate_class",
      [](std::uint64_t q, std::size_t n, std::size_t k, std::size_t t, std::uint64_t max_vertices) {
        auto index = std::make_shared<const SubspaceIndex>(field_of_order(q), n, k, max_vertices);
        const auto g = GrassmannGraph::delta(index, t, {.adjacency_cache_limit = 0});
        std::vector<LinearCode> out;
        out.reserve(g.vertex_count());
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v) out.emplace_back(g.vertex(v));
        return out;
      },
      py::arg("q"), py::arg("n"), py::arg("k"), py::arg("t"), py::arg("max_vertices") = kDefaultEnumerationCap);

  m.def(
      "verify_instance_json",
      [](std::uint64_t q, std::size_t n, std::size_t k, std::size_t t, std::uint64_t max_vertices,
         std::uint64_t max_pairs) {
        SweepConfig config;
        config.q_list = {q};
        config.n_range = {n, n};
        config.k_range = {k, k};
        config.t_range = {t, t};
        config.caps.max_vertices = max_vertices;
        config.caps.max_pairs = max_pairs;
        validate(config);
        py::gil_scoped_release release;
        return to_json(run_instance({q, n, k, t}, config)).dump();
      },
      py::arg("q"), py::arg("n"), py::arg("k"), py::arg("t"), py::arg("max_vertices") = Caps{}.max_vertices,
      py::arg("max_pairs") = Caps{}.max_pairs);
  m.def("bound_satisfied", &bound_satisfied, py::arg("q"), py::arg("n"), py::arg("t"));
}
