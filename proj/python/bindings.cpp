#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jetcurv/cli.hpp"
#include "jetcurv/oracle.hpp"
#include "jetcurv/runner.hpp"

namespace py = pybind11;
using namespace jetcurv;

namespace {

Polynomial poly_from_coeffs(const std::vector<Complex>& coeffs) {
  return Polynomial(coeffs);
}

HoloFrame frame_from_coeffs(const std::vector<std::vector<std::vector<Complex>>>& rows) {
  std::vector<std::vector<Polynomial>> entries;
  entries.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Polynomial> r;
    r.reserve(row.size());
    for (const auto& coeffs : row) r.push_back(poly_from_coeffs(coeffs));
    entries.push_back(std::move(r));
  }
  return HoloFrame(std::move(entries));
}

py::dict verdict_to_dict(const IdentityVerdict& v) {
  py::dict d;
  d["name"] = v.name;
  d["residual"] = v.residual;
  d["tolerance"] = v.tolerance;
  d["pass"] = v.pass;
  return d;
}

py::dict equivalence_to_dict(const EquivalenceVerdict& v) {
  py::dict d;
  d["equivalent"] = v.equivalent;
  d["max_deviation"] = v.max_deviation;
  d["argmax"] = v.argmax;
  return d;
}

MatrixJet lift_for(const MetricModel& m, Complex z0, int k) {
  return m.lift(z0, lift_order(std::max(k, 1)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "jet-bundle metrics, curvatures and identity verification for Hermitian "
            "holomorphic vector bundles over planar domains";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "JetcurvError", PyExc_RuntimeError);

  py::class_<MetricModel>(m, "Model", "declarative metric model h(z)")
      .def_static("power", &MetricModel::power, py::arg("lam"),
                  "h = (1 - z conj z)^(-lam) on the unit disk")
      .def_static("exp", &MetricModel::exponential, "h = e^(z conj z) on the plane")
      .def_static("poly", &MetricModel::poly, py::arg("coeffs"),
                  "h = sum c_m (z conj z)^m")
      .def_static("kernel", &MetricModel::kernel, py::arg("weights"), py::arg("tail_ratio"),
                  "h = sum (z conj z)^m / w_m^2 with a geometric weight tail")
      .def_static(
          "diag", [](const std::vector<MetricModel>& blocks) { return MetricModel::diag(blocks); },
          py::arg("blocks"), "block-diagonal combination")
      .def_static(
          "scale",
          [](const std::vector<Complex>& phi, const MetricModel& base) {
            return MetricModel::scale(poly_from_coeffs(phi), base);
          },
          py::arg("phi_coeffs"), py::arg("base"), "h~ = |phi(z)|^2 h(z)")
      .def_static(
          "frame",
          [](const std::vector<std::vector<std::vector<Complex>>>& frame, const MetricModel& base) {
            return MetricModel::frame_conj(frame_from_coeffs(frame), base);
          },
          py::arg("frame_coeffs"), py::arg("base"),
          "h~ = A(z)* h(z) A(z) for a polynomial frame A (rows of coefficient lists)")
      .def_static("from_json", &parse_model, py::arg("text"))
      .def("to_json", &serialize_model)
      .def_property_readonly("rank", &MetricModel::rank)
      .def_property_readonly("domain_radius", &MetricModel::domain_radius)
      .def("eval", &MetricModel::eval, py::arg("z"), "metric value h(z)")
      .def(
          "frame_transform",
          [](const MetricModel& model, const std::vector<std::vector<std::vector<Complex>>>& f) {
            return model.frame_transform(frame_from_coeffs(f));
          },
          py::arg("frame_coeffs"))
      .def("__repr__", [](const MetricModel& model) {
        return "<jetcurv.Model rank=" + std::to_string(model.rank()) + " " +
               serialize_model(model) + ">";
      });

  m.def(
      "partial",
      [](const MetricModel& model, Complex z0, int p, int q) {
        return model.lift(z0, {p, q}).partial(p, q);
      },
      py::arg("model"), py::arg("z0"), py::arg("p"), py::arg("q"),
      "mixed Wirtinger partial d^p_z d^q_zbar h at z0 via the jet lift");

  m.def(
      "fd_partial",
      [](const MetricModel& model, Complex z0, int p, int q, int max_order) {
        FDConfig cfg;
        cfg.max_order = max_order;
        return fd_partial(model, z0, p, q, cfg);
      },
      py::arg("model"), py::arg("z0"), py::arg("p"), py::arg("q"), py::arg("max_order") = 4,
      "finite-difference oracle for the same partial");

  m.def(
      "curvature",
      [](const MetricModel& model, Complex z0) { return curvature_at(model, z0).theta; },
      py::arg("model"), py::arg("z0"),
      "curvature form coefficient of dconj(z)^dz at z0 (n x n)");

  m.def(
      "jet_metric",
      [](const MetricModel& model, Complex z0, int k) {
        return jet_metric(model.lift(z0, {k, k}), k);
      },
      py::arg("model"), py::arg("z0"), py::arg("k"),
      "the (k+1)n x (k+1)n jet metric J_k(h)(z0), verified positive definite");

  m.def(
      "jet_curvature",
      [](const MetricModel& model, Complex z0, int k) {
        return jet_curvature_at(model, z0, k).theta;
      },
      py::arg("model"), py::arg("z0"), py::arg("k"),
      "curvature of the order-k jet bundle (cross-checked block route)");

  m.def(
      "det_bundle_curvature",
      [](const MetricModel& model, Complex z0, int k) {
        return det_bundle_curvature_at(model, z0, k);
      },
      py::arg("model"), py::arg("z0"), py::arg("k"),
      "curvature of det J_k for a line-bundle metric");

  m.def(
      "quotient_curvature",
      [](const MetricModel& model, Complex z0, int k) {
        return quotient_curvature_at(model, z0, k);
      },
      py::arg("model"), py::arg("z0"), py::arg("k"), "curvature of J_k / J_{k-1}");

  m.def(
      "trace_formula_residual",
      [](const MetricModel& model, Complex z0, int k) {
        return trace_formula_residual_at(model, z0, k);
      },
      py::arg("model"), py::arg("z0"), py::arg("k"));

  m.def(
      "wedge_gram",
      [](const MetricModel& model, Complex z0, int k) {
        return wedge_gram(model.lift(z0, {k, k}), k, 0).value();
      },
      py::arg("model"), py::arg("z0"), py::arg("k"),
      "Gram matrix h_k of the wedge vectors at z0");

  m.def(
      "desnanot_jacobi",
      [](const Matrix& a, double tol) { return verdict_to_dict(desnanot_jacobi(a, tol)); },
      py::arg("a"), py::arg("tol") = 1e-9);

  m.def(
      "gram_quotient",
      [](const Matrix& g, int r, double tol) {
        return verdict_to_dict(gram_quotient_check(g, r, tol));
      },
      py::arg("gram"), py::arg("r"), py::arg("tol") = 1e-9);

  m.def(
      "det_recursion",
      [](const MetricModel& model, Complex z0, int k, double tol) {
        return verdict_to_dict(det_recursion_check(model, z0, k, tol));
      },
      py::arg("model"), py::arg("z0"), py::arg("k"), py::arg("tol") = 1e-9);

  m.def(
      "line_equivalent",
      [](const MetricModel& m1, const MetricModel& m2, const std::vector<Complex>& grid,
         double tol) { return equivalence_to_dict(line_equiv_test(m1, m2, grid, tol)); },
      py::arg("m1"), py::arg("m2"), py::arg("grid"), py::arg("tol") = 1e-8);

  m.def(
      "det_bundle_equivalent",
      [](const MetricModel& m1, const MetricModel& m2, int k, const std::vector<Complex>& grid,
         double tol) { return equivalence_to_dict(det_bundle_equiv_test(m1, m2, k, grid, tol)); },
      py::arg("m1"), py::arg("m2"), py::arg("k"), py::arg("grid"), py::arg("tol") = 1e-8);

  m.def(
      "sample_grid",
      [](const std::string& shape, double radius, int points, double margin) {
        GridSpec g;
        g.shape = shape;
        g.radius = radius;
        g.points = points;
        g.margin = margin;
        return sample_grid(g);
      },
      py::arg("shape") = "polar", py::arg("radius") = 0.5, py::arg("points") = 64,
      py::arg("margin") = 0.05);

  m.def("builtin_catalog", []() {
    py::dict d;
    for (const auto& e : builtin_catalog().entries) d[e.id.c_str()] = e.model;
    return d;
  });

  m.def(
      "load_catalog",
      [](const std::string& path) {
        py::dict d;
        for (const auto& e : load_catalog(path).entries) d[e.id.c_str()] = e.model;
        return d;
      },
      py::arg("path"));

  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return run_cli(args); },
      py::arg("args"), "invoke the command-line driver; returns its exit code");

  // Keep the low-level lift reachable for debugging without binding MatrixJet.
  m.def(
      "lift_coefficient",
      [](const MetricModel& model, Complex z0, int k, int p, int q) {
        return lift_for(model, z0, k).at(p, q);
      },
      py::arg("model"), py::arg("z0"), py::arg("k"), py::arg("p"), py::arg("q"),
      "coefficient matrix of u^p v^q in the policy lift for jet order k");
}
