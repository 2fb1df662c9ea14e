#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sharpsphere/certificates.hpp"
#include "sharpsphere/cli.hpp"
#include "sharpsphere/flows.hpp"
#include "sharpsphere/functionals.hpp"
#include "sharpsphere/minimizer.hpp"
#include "sharpsphere/spectral.hpp"

namespace py = pybind11;
using namespace sharpsphere;

namespace {

// Python-side handle on a basis; nodal data travels as numpy arrays sampled at `nodes`.
struct PyBasis {
  BasisPtr ptr;

  PyBasis(double d, int kmax, int nodes) : ptr(make_basis(d, kmax, nodes)) {}
  const Basis& operator*() const { return *ptr; }
  NodalFn nodal(const Eigen::VectorXd& v) const { return {ptr->rule(), v}; }
};

py::dict discriminant_dict(const DiscriminantReport& r) {
  py::dict out;
  out["p"] = r.p;
  out["d"] = r.d;
  out["beta"] = r.beta;
  out["lambda"] = r.lambda;
  out["a"] = r.a;
  out["b"] = r.b;
  out["c"] = r.c;
  out["A"] = r.A;
  out["B"] = r.B;
  out["delta"] = r.delta;
  out["feasible"] = r.feasible;
  return out;
}

Rational parse_rational(const std::string& s) { return Rational(s); }

std::string str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double optional_to_double(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::infinity();
}

}  // namespace

PYBIND11_MODULE(_sharpsphere, m) {
  m.doc() = "Interpolation inequalities on the sphere: quadrature, spectral basis, functionals, certificates, flows.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConstantInput>(m, "ConstantInput", base.ptr());
  py::register_exception<PositivityError>(m, "PositivityError", base.ptr());
  py::register_exception<DegreeOverflow>(m, "DegreeOverflow", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
  py::register_exception<StepSizeError>(m, "StepSizeError", base.ptr());
  py::register_exception<EmptyWindow>(m, "EmptyWindow", base.ptr());

  m.def("normalization_constant", &normalization_constant, py::arg("d"));
  m.def("two_star", &two_star, py::arg("d"));
  m.def("two_sharp", &two_sharp, py::arg("d"));
  m.def("eigenvalue", &eigenvalue, py::arg("k"), py::arg("d"));
  m.def(
      "quadrature_rule",
      [](double d, int n) {
        const RulePtr r = make_rule(d, n);
        return py::make_tuple(r->nodes, r->weights);
      },
      py::arg("d"), py::arg("n") = kDefaultNodes, "Gauss nodes and weights for nu_d.");

  py::class_<PyBasis>(m, "Basis")
      .def(py::init<double, int, int>(), py::arg("d"), py::arg("kmax") = 20, py::arg("nodes") = kDefaultNodes)
      .def_property_readonly("d", [](const PyBasis& b) { return b.ptr->dim(); })
      .def_property_readonly("kmax", [](const PyBasis& b) { return b.ptr->max_degree(); })
      .def_property_readonly("nodes", [](const PyBasis& b) { return b.ptr->rule()->nodes; })
      .def_property_readonly("weights", [](const PyBasis& b) { return b.ptr->rule()->weights; })
      .def_property_readonly("eigenvalues", [](const PyBasis& b) { return b.ptr->eigenvalues(); })
      .def("to_spectral", [](const PyBasis& b, const Eigen::VectorXd& v) { return to_spectral(b.nodal(v), *b).coeffs; })
      .def("to_nodal",
           [](const PyBasis& b, const Eigen::VectorXd& c) {
             return to_nodal(SpectralFn{Dim(b.ptr->dim()), c}, *b).values();
           })
      .def("derivative", [](const PyBasis& b, const Eigen::VectorXd& v) { return derivative(b.nodal(v), *b).values(); })
      .def("apply_L", [](const PyBasis& b, const Eigen::VectorXd& v) { return apply_L(b.nodal(v), *b).values(); })
      .def("integrate", [](const PyBasis& b, const Eigen::VectorXd& v) { return integrate(b.nodal(v)); })
      .def("norm", [](const PyBasis& b, const Eigen::VectorXd& v, double p) { return lp_norm(b.nodal(v), p); });

  m.def(
      "quotient_qp",
      [](const PyBasis& b, const Eigen::VectorXd& v, double p) {
        return quotient_Qp(b.nodal(v), Exponent(p, b.ptr->dim()), *b);
      },
      py::arg("basis"), py::arg("values"), py::arg("p"));
  m.def(
      "logsob_ratio", [](const PyBasis& b, const Eigen::VectorXd& v) { return logsob_ratio(b.nodal(v), *b); },
      py::arg("basis"), py::arg("values"));
  m.def(
      "onofri_deficit", [](const PyBasis& b, const Eigen::VectorXd& v) { return onofri_deficit(b.nodal(v), *b); },
      py::arg("basis"), py::arg("values"));
  m.def(
      "entropy_F",
      [](const PyBasis& b, const Eigen::VectorXd& g, double p) {
        return entropy_F(b.nodal(g), Exponent(p, b.ptr->dim()));
      },
      py::arg("basis"), py::arg("g"), py::arg("p"));
  m.def(
      "fisher_I",
      [](const PyBasis& b, const Eigen::VectorXd& g, double p) {
        return fisher_I(b.nodal(g), Exponent(p, b.ptr->dim()), *b);
      },
      py::arg("basis"), py::arg("g"), py::arg("p"));
  m.def(
      "fisher_form",
      [](const PyBasis& b, const Eigen::VectorXd& f, double p) {
        return fisher_form(b.nodal(f), Exponent(p, b.ptr->dim()), *b);
      },
      py::arg("basis"), py::arg("f"), py::arg("p"));
  m.def(
      "pointwise_h",
      [](const PyBasis& b, const Eigen::VectorXd& f, double p) {
        return pointwise_h(b.nodal(f), Exponent(p, b.ptr->dim()), *b).values();
      },
      py::arg("basis"), py::arg("f"), py::arg("p"));

  m.def(
      "critical_exponents",
      [](double d) {
        const auto c = critical_exponents(d);
        return py::make_tuple(optional_to_double(c.two_star), optional_to_double(c.two_sharp));
      },
      py::arg("d"));
  m.def(
      "discriminant", [](double p, double d, double beta) { return discriminant_dict(discriminant(p, d, beta)); },
      py::arg("p"), py::arg("d"), py::arg("beta"));
  m.def(
      "discriminant_exact",
      [](const std::string& p, const std::string& d, const std::string& beta) {
        const auto r = discriminant(parse_rational(p), parse_rational(d), parse_rational(beta));
        py::dict out;
        out["A"] = str(r.A);
        out["B"] = str(r.B);
        out["delta"] = str(r.delta);
        out["lambda"] = str(r.lambda);
        out["feasible"] = r.feasible;
        return out;
      },
      py::arg("p"), py::arg("d"), py::arg("beta"), "Rational evaluation; arguments like \"19/4\".");
  m.def("find_beta", &find_beta, py::arg("p"), py::arg("d"));
  m.def(
      "alpha_improved", [](double p, double d) { return alpha_improved(p, d); }, py::arg("p"), py::arg("d"));
  m.def("improved_constant", &improved_constant, py::arg("p"), py::arg("d"));
  m.def(
      "figure_curves",
      [](double dmin, double dmax, int steps) {
        std::vector<std::tuple<double, double, double>> rows;
        for (const auto& r : figure_curves(dmin, dmax, steps).rows) rows.emplace_back(r.d, r.two_sharp, r.two_star);
        return rows;
      },
      py::arg("dmin"), py::arg("dmax"), py::arg("steps"));

  m.def(
      "run_heat_flow",
      [](const PyBasis& b, const Eigen::VectorXd& f0, double p, std::vector<double> times) {
        if (times.empty()) times = default_time_grid(b.ptr->dim());
        const FlowTrace t = run_heat_flow(b.nodal(f0), Exponent(p, b.ptr->dim()), times, *b);
        py::dict out;
        out["t"] = t.times;
        out["F"] = t.F;
        out["I"] = t.I;
        out["mass"] = t.mass;
        out["min_g"] = t.min_g;
        return out;
      },
      py::arg("basis"), py::arg("f0"), py::arg("p"), py::arg("times") = std::vector<double>{});
  m.def(
      "hypercontractivity_run",
      [](const PyBasis& b, const Eigen::VectorXd& u, double p) {
        const HyperReport h = hypercontractivity_run(b.nodal(u), p, *b);
        py::dict out;
        out["t_star"] = h.t_star;
        out["lhs"] = h.lhs;
        out["rhs_p"] = h.rhs_p;
        out["rhs_2overp"] = h.rhs_2overp;
        out["spectral_identity_error"] = h.spectral_identity_error;
        out["holds"] = h.holds;
        return out;
      },
      py::arg("basis"), py::arg("u"), py::arg("p"));

  m.def(
      "minimize",
      [](const PyBasis& b, double p, int starts, std::uint64_t seed) {
        MinimizeOptions opt;
        opt.starts = starts;
        opt.seed = seed;
        const MinimizeResult r = [&] {
          py::gil_scoped_release release;
          return p == 2.0 ? minimize_logsob(*b, opt) : minimize_quotient(Exponent(p, b.ptr->dim()), *b, opt);
        }();
        py::dict out;
        out["best_value"] = r.best_value;
        out["argmin"] = r.argmin.values();
        out["converged"] = r.converged;
        out["gradient_norm"] = r.gradient_norm;
        out["start_values"] = r.start_values;
        return out;
      },
      py::arg("basis"), py::arg("p"), py::arg("starts") = 8, py::arg("seed") = 0);
  m.def(
      "perturbation_sharpness",
      [](const PyBasis& b, double p, const std::vector<double>& eps) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& r : perturbation_sharpness(Exponent(p, b.ptr->dim()), eps, *b).rows) {
          rows.emplace_back(r.eps, r.value);
        }
        return rows;
      },
      py::arg("basis"), py::arg("p"), py::arg("eps"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"sharpsphere"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command; returns (exit_code, stdout, stderr).");
}
