#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "parabolic/dyadic.hpp"
#include "parabolic/extension.hpp"
#include "parabolic/field_io.hpp"
#include "parabolic/harness.hpp"
#include "parabolic/heat.hpp"
#include "parabolic/norms.hpp"
#include "parabolic/spectral.hpp"

namespace py = pybind11;
using namespace parabolic;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const GridSpec& g, Domain d) {
  std::vector<py::ssize_t> s;
  if (d == Domain::space_time) s.push_back(g.nt);
  if (g.n == 2) s.push_back(g.nx);
  s.push_back(g.nx);
  return s;
}

carray to_numpy(const Field& f) {
  carray a(shape_of(f.spec, f.domain));
  std::copy(f.values.begin(), f.values.end(), a.mutable_data());
  return a;
}

Field from_numpy(const GridSpec& g, const carray& a, Domain d) {
  const auto want = shape_of(g, d);
  if (a.ndim() != static_cast<py::ssize_t>(want.size()))
    throw std::invalid_argument("array rank does not match the grid");
  for (std::size_t k = 0; k < want.size(); ++k)
    if (a.shape(static_cast<py::ssize_t>(k)) != want[k])
      throw std::invalid_argument("array shape does not match the grid (time slowest)");
  return Field(g, d, std::vector<cplx>(a.data(), a.data() + a.size()));
}

double exponent(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    const std::string s = p.cast<std::string>();
    if (s == "inf") return kInf;
    return std::stod(s);
  }
  return p.cast<double>();
}

Region region_of(const std::optional<double>& T) { return T ? Region::cyl(*T) : Region::full(); }

py::dict norm_dict(const NormResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["kind"] = to_string(r.kind);
  d["alpha"] = r.alpha;
  d["p"] = r.p;
  d["q"] = r.q;
  py::list br;
  for (const auto& t : r.breakdown) br.append(py::make_tuple(t.label, t.value));
  d["breakdown"] = br;
  d["truncation_energy"] = r.truncation_energy;
  d["flagged"] = r.flagged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parabolic function spaces on a periodic space-time lattice";

  py::enum_<Domain>(m, "Domain").value("space_time", Domain::space_time).value("space", Domain::space);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init(&make_grid), py::arg("n"), py::arg("nx"), py::arg("nt"), py::arg("lx"), py::arg("lt"),
           py::arg("T"))
      .def_readonly("n", &GridSpec::n)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("nt", &GridSpec::nt)
      .def_readonly("lx", &GridSpec::lx)
      .def_readonly("lt", &GridSpec::lt)
      .def_readonly("T", &GridSpec::T)
      .def_property_readonly("hx", &GridSpec::hx)
      .def_property_readonly("ht", &GridSpec::ht)
      .def_property_readonly("zero_slice", &GridSpec::zero_slice)
      .def_property_readonly("cylinder_slices", &GridSpec::cylinder_slices)
      .def("x", [](const GridSpec& g) {
        py::array_t<double> a(g.nx);
        for (int j = 0; j < g.nx; ++j) a.mutable_at(j) = g.x_coord(j);
        return a;
      }, "Sample coordinates along one spatial axis")
      .def("t", [](const GridSpec& g) {
        py::array_t<double> a(g.nt);
        for (int k = 0; k < g.nt; ++k) a.mutable_at(k) = g.t_coord(k);
        return a;
      }, "Sample times")
      .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
      .def("__repr__", [](const GridSpec& g) {
        return "Grid(n=" + std::to_string(g.n) + ", nx=" + std::to_string(g.nx) + ", nt=" + std::to_string(g.nt) +
               ", lx=" + std::to_string(g.lx) + ", lt=" + std::to_string(g.lt) + ", T=" + std::to_string(g.T) + ")";
      });

  py::class_<Field>(m, "Field")
      .def(py::init(&from_numpy), py::arg("grid"), py::arg("values"), py::arg("domain") = Domain::space_time)
      .def_readonly("grid", &Field::spec)
      .def_readonly("domain", &Field::domain)
      .def("numpy", &to_numpy, "Copy of the samples, time slowest")
      .def("slice", &Field::slice);

  m.def("load_field", [](const std::filesystem::path& p) { return load_field(p); });
  m.def("save_field", [](const std::filesystem::path& p, const Field& f) { save_field(p, f); });

  m.def("forward", [](const Field& f) {
    const Spectrum s = forward(f);
    carray a(shape_of(s.spec, s.domain));
    std::copy(s.coeffs.begin(), s.coeffs.end(), a.mutable_data());
    return a;
  }, "Centered Fourier coefficients scaled by the cell volume");

  m.def("partition", [](const Field& f) {
    const Partition part = build_partition(
        f.spec, f.domain == Domain::space_time ? PartitionKind::parabolic : PartitionKind::spatial);
    py::list blocks;
    for (int i = 0; i <= part.i_max; ++i) {
      const auto& b = part.block(i);
      py::array_t<double> a(shape_of(f.spec, f.domain));
      std::copy(b.begin(), b.end(), a.mutable_data());
      blocks.append(a);
    }
    return blocks;
  }, "psi, phi_1, ..., phi_Imax on the field's frequency lattice");
  m.def("block_project", [](const Field& f, int i) {
    const Partition part = build_partition(
        f.spec, f.domain == Domain::space_time ? PartitionKind::parabolic : PartitionKind::spatial);
    return block_project(part, i, f);
  });
  m.def("truncation_energy", &truncation_energy);

  m.def("apply_symbol", [](const std::string& name, const Field& f) {
    return apply_symbol(symbol_from_name(f.spec, name), f);
  }, py::arg("name"), py::arg("field"), "Apply a catalog symbol such as 'bessel:1.5' or 'riesz:1'");
  m.def("derivative", [](const Field& f, std::array<int, 2> beta, int l) { return derivative(f, beta, l); },
        py::arg("field"), py::arg("beta"), py::arg("l") = 0);
  m.def("half_derivative_spectral", &half_time_derivative_spectral);
  m.def("half_derivative_quadrature", &half_derivative_quadrature);

  m.def("lp_norm", [](const Field& f, const py::object& p, std::optional<double> T) {
    return lp_norm(f, exponent(p), region_of(T));
  }, py::arg("field"), py::arg("p") = 2.0, py::arg("T") = py::none());
  m.def("sobolev_norm", [](const Field& f, double alpha, const py::object& p) {
    return norm_dict(sobolev_norm(f, alpha, exponent(p)));
  }, py::arg("field"), py::arg("alpha"), py::arg("p") = 2.0);
  m.def("besov_lp_norm", [](const Field& f, double alpha, const py::object& p, const py::object& q) {
    const double pp = exponent(p);
    const double qq = q.is_none() ? pp : exponent(q);
    return norm_dict(besov_lp_norm(f, alpha, pp, qq, build_partition(f.spec, PartitionKind::parabolic)));
  }, py::arg("field"), py::arg("alpha"), py::arg("p") = 2.0, py::arg("q") = py::none());
  m.def("spatial_besov_norm", [](const Field& f, double alpha, const py::object& p, const py::object& q) {
    const double pp = exponent(p);
    const double qq = q.is_none() ? pp : exponent(q);
    return norm_dict(spatial_besov_norm(f, alpha, pp, qq, build_partition(f.spec, PartitionKind::spatial)));
  }, py::arg("field"), py::arg("alpha"), py::arg("p") = 2.0, py::arg("q") = py::none());
  m.def("besov_diff_norm", [](const Field& f, double alpha, const py::object& p, std::optional<double> T) {
    return norm_dict(besov_diff_norm(f, alpha, exponent(p), region_of(T)));
  }, py::arg("field"), py::arg("alpha"), py::arg("p") = 2.0, py::arg("T") = py::none());
  m.def("w2ii_norm", [](const Field& f, int i, const py::object& p, std::optional<double> T) {
    return norm_dict(w2ii_norm(f, i, exponent(p), region_of(T)));
  }, py::arg("field"), py::arg("i"), py::arg("p") = 2.0, py::arg("T") = py::none());
  m.def("besov_halfcyl_norm", [](const Field& f, double alpha, const py::object& p, double T) {
    return norm_dict(besov_halfcyl_norm(f, alpha, exponent(p), T));
  }, py::arg("field"), py::arg("alpha"), py::arg("p"), py::arg("T"));

  m.def("heat", [](const Field& initial, const GridSpec& g) { return propagate(initial, g).u; },
        py::arg("initial"), py::arg("grid"), "Heat extension on the full lattice (zero for t < 0)");

  m.def("reflection_coefficients", [](int i) { return solve_lambdas(i).lambdas; });
  m.def("extend", [](const Field& f, const std::string& op, int i, int depth) {
    if (op == "e2") return extend_E2(f, i, depth);
    if (op == "e4") return extend_E4(f, i, depth);
    if (op == "e3") return extend_E3(f, i, CutoffProfile::for_order(f.spec.T, i));
    throw std::invalid_argument("operator must be e2, e3 or e4");
  }, py::arg("field"), py::arg("op"), py::arg("i"), py::arg("depth") = -1);

  m.def("verify", [](const std::string& theorem, double alpha, const py::object& p, int i, double T,
                     std::uint64_t seed) {
    const TheoremId id = theorem_from_string(theorem);
    if (id == TheoremId::lemma5_2) {
      const DecayReport d = run_multiplier_decay(suite_decay_grid(), {2, 3, 4},
                                                 {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}, exponent(p));
      return py::module_::import("json").attr("loads")(decay_json(d));
    }
    ExperimentParams P;
    P.alpha = alpha;
    P.p = exponent(p);
    P.i = i;
    P.T = T;
    if (id == TheoremId::t3_3 || id == TheoremId::c3_4) P.control_shift = 2.0;
    const EquivalenceReport r = run_equivalence(id, suite_family(id, seed), suite_grid(id), P);
    return py::module_::import("json").attr("loads")(report_json(r));
  }, py::arg("theorem"), py::arg("alpha") = 1.0, py::arg("p") = 2.0, py::arg("i") = 1, py::arg("T") = 1.0,
     py::arg("seed") = 1, "Run one experiment on the default grid and family; returns the JSON report as a dict");
}
