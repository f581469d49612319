#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "spde/serialization.hpp"
#include "spde/verification.hpp"

namespace {

using spde::json;

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int paths = 0;
  int steps = 0;
  int modes = 0;
};

spde::ExperimentConfig load_with_overrides(const CommonFlags& flags) {
  spde::ExperimentConfig cfg = spde::load_experiment_config(flags.config_path);
  if (flags.seed_set) cfg.master_seed = flags.seed;
  if (flags.paths > 0) cfg.paths = flags.paths;
  if (flags.steps > 0) cfg.solver.steps = flags.steps;
  if (flags.modes > 0) cfg.solver.modes = flags.modes;
  cfg.validate();
  return cfg;
}

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

std::string hash_header(const spde::ExperimentConfig& cfg) {
  return "# config_hash=" + spde::hash_hex(cfg.config_hash) +
         " master_seed=" + std::to_string(cfg.master_seed);
}

int cmd_simulate(const CommonFlags& flags, const std::string& mode,
                 bool dump_binary) {
  auto cfg = load_with_overrides(flags);
  ensure_dir(flags.out_dir);
  const auto& solver = cfg.solver;
  for (int pid = 0; pid < cfg.paths; ++pid) {
    spde::SpectralField u0 =
        cfg.initial.sample(solver.dim, solver.modes, cfg.master_seed, pid);
    spde::WienerPath path = spde::WienerPath::sample(
        std::max(1, solver.model.diffusion.noise_dim()), solver.horizon,
        solver.steps, cfg.master_seed, pid);
    spde::Trajectory traj;
    if (mode == "direct") {
      traj = spde::direct_solve(solver, path, u0);
    } else {
      auto pr = spde::picard_solve(solver, path, u0);
      traj = pr.levels.back();
      if (solver.tolerance > 0.0 && !pr.converged) {
        std::cerr << "simulate: path " << pid
                  << " did not meet the Picard tolerance\n";
        return 2;
      }
    }

    const std::string stem = flags.out_dir + "/path_" + std::to_string(pid);
    {
      std::ofstream csv(stem + "_norms.csv");
      csv << hash_header(cfg) << " path=" << pid << "\n";
      csv << "t,lp,wmp,w1mp\n";
      for (std::size_t j = 0; j < traj.times.size(); ++j) {
        const auto& f = traj.fields[j];
        csv << traj.times[j] << "," << spde::lp_norm(f, solver.p) << ","
            << spde::sobolev_norm(f, solver.m, solver.p) << ","
            << spde::sobolev_norm(f, 1, solver.m * solver.p) << "\n";
      }
    }
    {
      std::ofstream snap(stem + "_final.json");
      json j = spde::field_to_json(traj.fields.back());
      j["config_hash"] = spde::hash_hex(cfg.config_hash);
      j["t"] = traj.times.back();
      snap << j.dump(2) << "\n";
    }
    if (dump_binary)
      spde::write_field_binary(traj.fields.back(), stem + "_final.bin");
  }
  std::cout << "simulate: wrote " << cfg.paths << " path outputs to "
            << flags.out_dir << "\n";
  return 0;
}

int cmd_moments(const CommonFlags& flags) {
  auto cfg = load_with_overrides(flags);
  ensure_dir(flags.out_dir);
  spde::MomentReport rep = spde::run_moments(cfg);
  auto uc = spde::uniformity_check(rep);
  json j = spde::moment_report_to_json(rep);
  j["uniformity"] = {{"plateau_pass", uc.plateau_pass},
                     {"threshold", uc.threshold},
                     {"k_sequence", uc.k_sequence},
                     {"tail_ratio", uc.tail_ratio}};
  const std::string out = flags.out_dir + "/moment_report.json";
  std::ofstream(out) << j.dump(2) << "\n";
  std::cout << "moments: K_n levels " << rep.levels.size() << ", plateau "
            << (uc.plateau_pass ? "pass" : "FAIL") << ", report at " << out << "\n";
  return uc.plateau_pass ? 0 : 1;
}

int cmd_scaling(const CommonFlags& flags, std::vector<double> scales) {
  auto cfg = load_with_overrides(flags);
  ensure_dir(flags.out_dir);
  if (scales.empty()) scales = {0.0, 1.0, 2.0, 4.0};
  spde::ScalingStudy study = spde::theorem_scaling_study(cfg, scales);
  json j = spde::scaling_study_to_json(study);
  j["config_hash"] = spde::hash_hex(cfg.config_hash);
  std::ofstream(flags.out_dir + "/scaling_study.json") << j.dump(2) << "\n";
  std::ofstream csv(flags.out_dir + "/scaling_study.csv");
  csv << hash_header(cfg) << "\nscale,lhs,rhs,ratio\n";
  for (const auto& row : study.rows)
    csv << row.scale << "," << row.lhs << "," << row.rhs << "," << row.ratio << "\n";
  std::cout << "scaling: fitted C = " << study.fitted_c << "\n";
  return std::isfinite(study.fitted_c) ? 0 : 1;
}

int cmd_convergence(const CommonFlags& flags) {
  ensure_dir(flags.out_dir);
  auto setup = spde::linear_oracle_setup(flags.modes > 0 ? flags.modes : 8);
  const int steps = flags.steps > 0 ? flags.steps : 1024;
  const int paths = flags.paths > 0 ? flags.paths : 2000;
  const std::uint64_t seed = flags.seed_set ? flags.seed : 4242;
  auto rep = spde::linear_oracle(setup.op, setup.diffusion, setup.dim, setup.modes,
                                 0.5, steps, paths, seed);
  json j;
  j["strong_order"] = rep.strong_order;
  j["coupling_errors"] = rep.coupling_errors;
  j["variances"] = json::array();
  for (const auto& mv : rep.variances)
    j["variances"].push_back({{"wavevector", mv.wavevector},
                              {"coord", mv.coord},
                              {"measured", mv.measured},
                              {"exact", mv.exact},
                              {"std_error", mv.std_error}});
  std::ofstream(flags.out_dir + "/convergence.json") << j.dump(2) << "\n";
  std::cout << "convergence: strong order " << rep.strong_order << "\n";
  return rep.strong_order >= 0.9 ? 0 : 1;
}

int cmd_verify(const spde::VerifyOptions& options, const std::string& out_dir) {
  spde::VerificationReport report = spde::run_full_verification(options);
  ensure_dir(out_dir);
  std::ofstream(out_dir + "/verification_report.json")
      << spde::verification_to_json(report).dump(2) << "\n";
  for (const auto& suite : report.suites) {
    for (const auto& c : suite.checks)
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << suite.name << "/" << c.name
                << "  measured=" << c.measured << " threshold=" << c.threshold
                << (c.details.empty() ? "" : "  " + c.details) << "\n";
  }
  std::cout << (report.all_pass() ? "verify: all suites passed"
                                  : "verify: FAILURES present")
            << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator and verification suite for semilinear "
               "stochastic PDEs on the torus"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string mode = "picard";
  bool dump_binary = false;
  std::vector<double> scales;
  spde::VerifyOptions vopts;

  auto add_common = [&](CLI::App* cmd, bool need_config) {
    auto* opt = cmd->add_option("--config", flags.config_path, "experiment config file");
    if (need_config) opt->required();
    cmd->add_option("--out-dir", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "master seed override")
        ->each([&](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--paths", flags.paths, "path count override");
    cmd->add_option("--steps", flags.steps, "time step override");
    cmd->add_option("--modes", flags.modes, "mode cutoff override");
  };

  auto* sim = app.add_subcommand("simulate", "solve paths, write norm series");
  add_common(sim, true);
  sim->add_option("--mode", mode, "picard|direct")
      ->check(CLI::IsMember({"picard", "direct"}));
  sim->add_flag("--dump-binary", dump_binary, "also write binary field dumps");

  auto* mom = app.add_subcommand("moments", "Monte Carlo Sobolev moment report");
  add_common(mom, true);

  auto* sca = app.add_subcommand("scaling", "initial-condition scaling study");
  add_common(sca, true);
  sca->add_option("--scales", scales, "scale factors");

  auto* con = app.add_subcommand("convergence", "linear oracle and strong order");
  add_common(con, false);

  auto* ver = app.add_subcommand("verify", "run the frozen verification suites");
  ver->add_option("--filter", vopts.filter, "substring filter on suite names");
  ver->add_option("--baseline-dir", vopts.baseline_dir, "baseline directory");
  ver->add_flag("--regen-baselines", vopts.regen_baselines,
                "recompute and store suite baselines (deliberate operation)");
  std::string verify_out = ".";
  ver->add_option("--out-dir", verify_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(flags, mode, dump_binary);
    if (mom->parsed()) return cmd_moments(flags);
    if (sca->parsed()) return cmd_scaling(flags, scales);
    if (con->parsed()) return cmd_convergence(flags);
    if (ver->parsed()) return cmd_verify(vopts, verify_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
