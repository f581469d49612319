#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spde/serialization.hpp"
#include "spde/verification.hpp"

namespace py = pybind11;
using namespace spde;

namespace {

SpectralField field_from_array(int dim, int cutoff,
                               py::array_t<std::complex<double>> coeffs) {
  SpectralField u(dim, cutoff);
  auto buf = coeffs.request();
  if (static_cast<std::size_t>(buf.size) != u.size())
    throw std::invalid_argument("coefficient array size mismatch");
  const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = data[i];
  u.hermitian_symmetrize();
  return u;
}

py::array_t<std::complex<double>> field_to_array(const SpectralField& u) {
  py::array_t<std::complex<double>> out(u.size());
  auto* data = static_cast<std::complex<double>*>(out.request().ptr);
  for (std::size_t i = 0; i < u.size(); ++i) data[i] = u[i];
  return out;
}

ExperimentConfig config_from_json_str(const std::string& text) {
  return parse_experiment_config(json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-spectral semilinear SPDE simulator on the torus";

  py::class_<GridField>(m, "GridField")
      .def_readonly("dim", &GridField::dim)
      .def_readonly("points_per_axis", &GridField::points_per_axis)
      .def_property_readonly("values", [](const GridField& g) {
        return py::array_t<double>(g.values.size(), g.values.data());
      });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<int, int>(), py::arg("dim"), py::arg("cutoff"))
      .def_static("constant", &SpectralField::constant)
      .def_static("from_coefficients", &field_from_array, py::arg("dim"),
                  py::arg("cutoff"), py::arg("coefficients"))
      .def_property_readonly("dim", &SpectralField::dim)
      .def_property_readonly("cutoff", &SpectralField::cutoff)
      .def_property_readonly("coefficients", &field_to_array)
      .def("eval", &SpectralField::eval)
      .def("hermitian_defect", &SpectralField::hermitian_defect)
      .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__mul__", [](const SpectralField& a, double s) { return a * s; })
      .def("__rmul__", [](const SpectralField& a, double s) { return a * s; });

  m.def("to_grid", &to_grid, py::arg("field"), py::arg("oversample") = 1);
  m.def("forward_transform",
        [](const GridField& g) { return forward_transform(g); });
  m.def("forward_transform_values",
        [](int dim, int points, py::array_t<double> values) {
          GridField g(dim, points);
          auto buf = values.request();
          if (static_cast<std::size_t>(buf.size) != g.points())
            throw std::invalid_argument("grid value count mismatch");
          const auto* data = static_cast<const double*>(buf.ptr);
          std::copy(data, data + g.points(), g.values.begin());
          return forward_transform(g);
        });
  m.def("derivative", [](const SpectralField& u, const std::vector<int>& alpha) {
    return derivative(u, MultiIndex(alpha));
  });
  m.def("lp_norm", &lp_norm);
  m.def("sobolev_norm", &sobolev_norm);
  m.def("sup_norm", &sup_norm);
  m.def("suite_random_field", &suite_random_field, py::arg("dim"), py::arg("cutoff"),
        py::arg("id"), py::arg("decay") = 1.0, py::arg("amplitude") = 1.0);

  py::class_<EllipticOperatorSpec>(m, "EllipticOperator")
      .def_static("diagonal", &EllipticOperatorSpec::diagonal, py::arg("ell"),
                  py::arg("mu"), py::arg("diffusivity") = 1.0)
      .def_property_readonly("order", &EllipticOperatorSpec::order)
      .def("symbol", &EllipticOperatorSpec::symbol);
  m.def("apply_semigroup", &apply_semigroup);
  m.def("apply_fractional_power", &apply_fractional_power);
  m.def("fractional_sobolev_norm", &fractional_sobolev_norm);
  py::class_<SmoothingCheck>(m, "SmoothingCheck")
      .def_readonly("measured", &SmoothingCheck::measured)
      .def_readonly("bound", &SmoothingCheck::bound);
  m.def("smoothing_bound_check", &smoothing_bound_check, py::arg("op"),
        py::arg("delta"), py::arg("t"), py::arg("dim"), py::arg("cutoff"));

  py::class_<ScalarFunction>(m, "ScalarFunction")
      .def_static("affine", &ScalarFunction::affine)
      .def_static("sine", &ScalarFunction::sine)
      .def_static("tanh_scaled", &ScalarFunction::tanh_scaled)
      .def_static("atan_scaled", &ScalarFunction::atan_scaled)
      .def_static("polynomial_clamped", &ScalarFunction::polynomial_clamped)
      .def("__call__", &ScalarFunction::operator())
      .def("derivative", &ScalarFunction::derivative)
      .def("derivative_bound", &ScalarFunction::derivative_bound)
      .def_property_readonly("name", &ScalarFunction::name);

  m.def("gaussian_moment_constant", &gaussian_moment_constant);
  m.def("faa_di_bruno_constants", [](const std::vector<int>& gamma) {
    std::vector<std::pair<int, long long>> out;
    for (const auto& t : faa_di_bruno_terms(MultiIndex(gamma)))
      out.emplace_back(t.outer_order, t.constant);
    return out;
  });
  m.def("chain_rule_eval", [](const ScalarFunction& g, const SpectralField& f,
                              const std::vector<int>& gamma) {
    return chain_rule_eval(g, f, MultiIndex(gamma));
  });
  m.def("holder_norm", &holder_norm);
  m.def(
      "moser_ratio",
      [](const ScalarFunction& g, const SpectralField& f, int m, double p) {
        return moser_check(g, f, m, p).ratio;
      },
      py::arg("G"), py::arg("f"), py::arg("m"), py::arg("p"));

  py::class_<WienerPath>(m, "WienerPath")
      .def_static("sample", &WienerPath::sample, py::arg("d"), py::arg("horizon"),
                  py::arg("steps"), py::arg("seed"), py::arg("path_index"))
      .def_property_readonly("steps", &WienerPath::steps)
      .def_property_readonly("dim", &WienerPath::dim)
      .def("value", &WienerPath::value)
      .def("increment", &WienerPath::increment);

  // Heavier operations run through the JSON configuration surface, the same
  // schema the CLI consumes.
  m.def("run_moments_json", [](const std::string& config_text) {
    MomentReport rep = run_moments(config_from_json_str(config_text));
    return moment_report_to_json(rep).dump();
  });
  m.def("scaling_study_json",
        [](const std::string& config_text, const std::vector<double>& scales) {
          ScalingStudy study =
              theorem_scaling_study(config_from_json_str(config_text), scales);
          return scaling_study_to_json(study).dump();
        });
  m.def("gamma_norm_closed_simple",
        [](double g_amplitude, const ScalarFunction& h, const SpectralField& u,
           double p) {
          DiffusionSpec spec;
          spec.components.push_back({Harmonic::constant(g_amplitude, u.dim()), h});
          return gamma_norm_closed(spec, u, p);
        });
  m.def("gamma_norm_mc_simple",
        [](double g_amplitude, const ScalarFunction& h, const SpectralField& u,
           double p, int samples, std::uint64_t seed) {
          DiffusionSpec spec;
          spec.components.push_back({Harmonic::constant(g_amplitude, u.dim()), h});
          auto est = gamma_norm_mc(spec, u, p, samples, seed);
          return py::make_tuple(est.estimate, est.std_error);
        });
  m.def("verify_json", [](const std::string& filter, const std::string& baseline_dir) {
    VerifyOptions opts;
    opts.filter = filter;
    opts.baseline_dir = baseline_dir;
    return verification_to_json(run_full_verification(opts)).dump();
  });
}
