#include "spde/serialization.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spde {

json field_to_json(const SpectralField& u) {
  json j;
  j["dimension"] = u.dim();
  j["cutoff"] = u.cutoff();
  std::vector<double> interleaved;
  interleaved.reserve(2 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    interleaved.push_back(u[i].real());
    interleaved.push_back(u[i].imag());
  }
  j["coefficients"] = interleaved;
  return j;
}

SpectralField field_from_json(const json& j) {
  SpectralField u(j.at("dimension").get<int>(), j.at("cutoff").get<int>());
  const auto coeffs = j.at("coefficients").get<std::vector<double>>();
  if (coeffs.size() != 2 * u.size())
    throw std::invalid_argument("field_from_json: coefficient count mismatch");
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = std::complex<double>(coeffs[2 * i], coeffs[2 * i + 1]);
  return u;
}

namespace {
constexpr char kFieldMagic[8] = {'S', 'P', 'D', 'E', 'F', 'L', 'D', '1'};
}

void write_field_binary(const SpectralField& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field_binary: cannot open " + path);
  out.write(kFieldMagic, sizeof(kFieldMagic));
  const std::int32_t dims[2] = {u.dim(), u.cutoff()};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double re = u[i].real(), im = u[i].imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(re));
    out.write(reinterpret_cast<const char*>(&im), sizeof(im));
  }
}

SpectralField read_field_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field_binary: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kFieldMagic, sizeof(magic)) != 0)
    throw std::runtime_error("read_field_binary: bad magic in " + path);
  std::int32_t dims[2];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  SpectralField u(dims[0], dims[1]);
  for (std::size_t i = 0; i < u.size(); ++i) {
    double re = 0.0, im = 0.0;
    in.read(reinterpret_cast<char*>(&re), sizeof(re));
    in.read(reinterpret_cast<char*>(&im), sizeof(im));
    u[i] = std::complex<double>(re, im);
  }
  if (!in) throw std::runtime_error("read_field_binary: truncated file " + path);
  return u;
}

json scalar_function_to_json(const ScalarFunction& f) {
  json j;
  j["name"] = f.name();
  const auto& prm = f.parameters();
  switch (f.family()) {
    case ScalarFunction::Family::Affine:
      j["a"] = prm[0];
      j["b"] = prm[1];
      break;
    case ScalarFunction::Family::Sine:
      j["amplitude"] = prm[0];
      j["frequency"] = prm[1];
      break;
    case ScalarFunction::Family::TanhScaled:
    case ScalarFunction::Family::AtanScaled:
      j["a"] = prm[0];
      break;
    case ScalarFunction::Family::PolynomialClamped:
      j["radius"] = prm[0];
      j["coefficients"] = std::vector<double>(prm.begin() + 1, prm.end());
      break;
  }
  return j;
}

ScalarFunction scalar_function_from_json(const json& j) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "affine")
    return ScalarFunction::affine(j.at("a").get<double>(), j.at("b").get<double>());
  if (name == "sine")
    return ScalarFunction::sine(j.at("amplitude").get<double>(),
                                j.at("frequency").get<double>());
  if (name == "tanh_scaled") return ScalarFunction::tanh_scaled(j.at("a").get<double>());
  if (name == "atan_scaled") return ScalarFunction::atan_scaled(j.at("a").get<double>());
  if (name == "polynomial_clamped")
    return ScalarFunction::polynomial_clamped(
        j.at("coefficients").get<std::vector<double>>(), j.at("radius").get<double>());
  throw std::invalid_argument("scalar function: unknown catalog name " + name);
}

namespace {

Harmonic harmonic_from_json(const json& j, int dim) {
  Harmonic h;
  h.amplitude = j.at("amplitude").get<double>();
  h.wavevector = j.value("wavevector", std::vector<int>(dim, 0));
  if (static_cast<int>(h.wavevector.size()) != dim)
    throw std::invalid_argument("harmonic: wavevector dimension mismatch");
  h.phase = j.value("phase", 0.0);
  return h;
}

json harmonic_to_json(const Harmonic& h) {
  return json{{"amplitude", h.amplitude}, {"wavevector", h.wavevector}, {"phase", h.phase}};
}

CoefficientFunction coefficient_from_json(const json& j, int dim) {
  CoefficientFunction fn;
  fn.constant = j.value("constant", 0.0);
  if (j.contains("harmonics"))
    for (const auto& hj : j.at("harmonics")) fn.harmonics.push_back(harmonic_from_json(hj, dim));
  return fn;
}

EllipticOperatorSpec operator_from_json(const json& j, int dim) {
  const std::string kind = j.value("kind", "diagonal");
  if (kind == "diagonal") {
    return EllipticOperatorSpec::diagonal(j.value("ell", 1), j.value("mu", 1.0),
                                          j.value("diffusivity", 1.0));
  }
  if (kind == "divergence") {
    std::vector<std::pair<std::pair<int, int>, CoefficientFunction>> coeffs;
    for (const auto& cj : j.at("coefficients")) {
      const int i = cj.at("i").get<int>();
      const int jj = cj.at("j").get<int>();
      coeffs.push_back({{i, jj}, coefficient_from_json(cj, dim)});
    }
    return EllipticOperatorSpec::divergence_form(dim, std::move(coeffs),
                                                 j.at("shift").get<double>());
  }
  throw std::invalid_argument("operator: unknown kind " + kind);
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j) {
  ExperimentConfig cfg;
  const json& sj = j.at("solver");
  cfg.solver.dim = sj.value("dimension", 1);
  cfg.solver.horizon = sj.at("T").get<double>();
  cfg.solver.steps = sj.at("steps").get<int>();
  cfg.solver.modes = sj.at("modes").get<int>();
  cfg.solver.p = sj.value("p", 2.0);
  cfg.solver.q = sj.value("q", 4.0);
  cfg.solver.m = sj.value("m", 1);
  cfg.solver.picard_depth = sj.value("picard_depth", 8);
  cfg.solver.tolerance = sj.value("tolerance", 0.0);
  cfg.solver.window = sj.value("window", 0.0);

  cfg.solver.op = operator_from_json(j.value("operator", json{{"kind", "diagonal"}}),
                                     cfg.solver.dim);

  if (j.contains("model")) {
    const json& mj = j.at("model");
    if (mj.contains("nonlinearity"))
      for (const auto& tj : mj.at("nonlinearity")) {
        NonlinearityTerm term{tj.at("a").get<double>(),
                              MultiIndex(tj.at("alpha").get<std::vector<int>>()),
                              scalar_function_from_json(tj.at("f"))};
        cfg.solver.model.nonlinearity.terms.push_back(std::move(term));
      }
    if (mj.contains("diffusion"))
      for (const auto& cj : mj.at("diffusion").at("components")) {
        SeparableFunction comp{harmonic_from_json(cj.at("g"), cfg.solver.dim),
                               scalar_function_from_json(cj.at("h"))};
        cfg.solver.model.diffusion.components.push_back(std::move(comp));
      }
  }

  const json& ej = j.at("experiment");
  cfg.paths = ej.value("paths", 100);
  cfg.master_seed = ej.value("master_seed", 2024ULL);
  cfg.snapshot_stride = ej.value("snapshot_stride", 0);
  if (ej.contains("initial")) {
    const json& ij = ej.at("initial");
    const std::string kind = ij.value("kind", "deterministic");
    if (kind == "deterministic") {
      cfg.initial.kind = InitialConditionSpec::Kind::Deterministic;
      cfg.initial.field = coefficient_from_json(ij, cfg.solver.dim);
    } else if (kind == "random_trig") {
      cfg.initial.kind = InitialConditionSpec::Kind::RandomTrig;
      cfg.initial.cutoff = ij.value("cutoff", 2);
      cfg.initial.decay = ij.value("decay", 1.0);
      if (ij.contains("target_norm")) {
        const json& tn = ij.at("target_norm");
        cfg.initial.target_m = tn.value("m", 1);
        cfg.initial.target_p = tn.value("p", 2.0);
        cfg.initial.target_value = tn.value("value", 1.0);
      }
    } else {
      throw std::invalid_argument("initial condition: unknown kind " + kind);
    }
    cfg.initial.scale = ij.value("scale", 1.0);
  }

  cfg.config_echo = j.dump();
  cfg.config_hash = fnv1a64(cfg.config_echo);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  in >> j;
  return parse_experiment_config(j);
}

json moment_report_to_json(const MomentReport& r) {
  json j;
  j["config_hash"] = hash_hex(r.config_hash);
  j["master_seed"] = r.master_seed;
  j["paths"] = r.paths;
  j["levels"] = json::array();
  for (std::size_t n = 0; n < r.levels.size(); ++n) {
    const auto& lm = r.levels[n];
    j["levels"].push_back({{"n", n},
                           {"e_sup_wmp_q", lm.e_sup_wmp_q},
                           {"se_wmp_q", lm.se_wmp_q},
                           {"e_sup_w1mp_mq", lm.e_sup_w1mp_mq},
                           {"se_w1mp_mq", lm.se_w1mp_mq}});
  }
  j["initial"] = {{"e_wmp_q", r.ic_moment_wmp_q},
                  {"se_wmp_q", r.ic_se_wmp_q},
                  {"e_w1mp_mq", r.ic_moment_w1mp_mq},
                  {"se_w1mp_mq", r.ic_se_w1mp_mq}};
  j["snapshots"] = {{"times", r.snapshot_times},
                    {"mean_norm_q", r.snapshot_mean_norm_q}};
  j["fitted_bound_constant"] = r.fitted_bound_constant;
  if (!r.config_echo.empty()) j["config_echo"] = json::parse(r.config_echo);
  return j;
}

json scaling_study_to_json(const ScalingStudy& s) {
  json j;
  j["rows"] = json::array();
  for (const auto& row : s.rows)
    j["rows"].push_back({{"scale", row.scale},
                         {"lhs", row.lhs},
                         {"rhs", row.rhs},
                         {"ratio", row.ratio}});
  j["fitted_c"] = s.fitted_c;
  return j;
}

json galerkin_to_json(const GalerkinMatrix& g) {
  json j;
  j["basis"] = g.basis_labels;
  j["matrix"] = g.matrix;
  j["symmetry_defect"] = g.symmetry_defect;
  j["max_eigenvalue"] = g.max_eigenvalue;
  return j;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace spde
