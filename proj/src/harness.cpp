#include "spde/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "spde/rng.hpp"

namespace spde {

SpectralField InitialConditionSpec::sample(int dim, int modes, std::uint64_t seed,
                                           std::uint64_t path_index) const {
  if (kind == Kind::Deterministic) {
    SpectralField u = coefficient_field(field, dim, modes);
    return u * scale;
  }
  SpectralField u(dim, modes);
  const int active = std::min(cutoff, modes);
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto k = u.wavevector_of(i);
    double k2 = 0.0;
    bool inside = true;
    for (int v : k) {
      if (std::abs(v) > active) inside = false;
      k2 += static_cast<double>(v) * v;
    }
    if (!inside) continue;
    const double weight = std::pow(1.0 + k2, -decay);
    const double re =
        counter_gaussian(seed, RngStream::kInitialCondition, path_index, 2 * i);
    const double im =
        counter_gaussian(seed, RngStream::kInitialCondition, path_index, 2 * i + 1);
    u[i] = weight * std::complex<double>(re, im);
  }
  u.hermitian_symmetrize();
  const double norm = sobolev_norm(u, target_m, target_p);
  if (norm > 0.0) u *= target_value / norm;
  return u * scale;
}

void ExperimentConfig::validate() const {
  solver.validate();
  if (paths < 1) throw std::invalid_argument("experiment: paths must be >= 1");
  if (snapshot_stride < 0)
    throw std::invalid_argument("experiment: snapshot stride must be >= 0");
  if (initial.kind == InitialConditionSpec::Kind::RandomTrig) {
    if (initial.cutoff < 0 || initial.target_value < 0.0 || initial.target_p < 1.0)
      throw std::invalid_argument("experiment: bad random initial-condition spec");
  }
}

namespace {

int thread_count() {
  if (const char* env = std::getenv("SPDE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

struct PathMoments {
  std::vector<double> sup_q;    // per level: sup_t ||u^n||^q_{W^{m,p}}
  std::vector<double> sup_mq;   // per level: sup_t ||u^n||^{mq}_{W^{1,mp}}
  double ic_q = 0.0;
  double ic_mq = 0.0;
  std::vector<double> snapshot_norm_q;  // last level, per snapshot time
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Batch-means standard error over path order.
MeanSe batch_stats(const std::vector<double>& xs) {
  MeanSe out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  for (double v : xs) out.mean += v;
  out.mean /= static_cast<double>(n);
  if (n == 1) return out;
  const std::size_t batches = std::clamp<std::size_t>(n / 10, 2, 50);
  std::vector<double> bm(batches, 0.0);
  std::vector<std::size_t> bc(batches, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i * batches / n;
    bm[b] += xs[i];
    bc[b] += 1;
  }
  double var = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    bm[b] /= static_cast<double>(bc[b]);
    var += (bm[b] - out.mean) * (bm[b] - out.mean);
  }
  var /= static_cast<double>(batches - 1);
  out.se = std::sqrt(var / static_cast<double>(batches));
  return out;
}

}  // namespace

MomentReport run_moments(const ExperimentConfig& cfg) {
  cfg.validate();
  SolverConfig solver = cfg.solver;
  solver.tolerance = 0.0;  // level alignment needs the full depth everywhere

  const int levels = solver.picard_depth + 1;
  const int stride =
      cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, solver.steps / 32);
  const int m = solver.m;
  const double p = solver.p, q = solver.q;
  const bool same_norm = (m == 1);  // W^{m,p} == W^{1,mp} when m == 1

  std::vector<PathMoments> per_path(cfg.paths);
  std::vector<std::string> failures(cfg.paths);

  auto run_path = [&](int pid) {
    try {
      SpectralField u0 =
          cfg.initial.sample(solver.dim, solver.modes, cfg.master_seed, pid);
      WienerPath path =
          WienerPath::sample(std::max(1, solver.model.diffusion.noise_dim()),
                             solver.horizon, solver.steps, cfg.master_seed, pid);
      PicardResult pr = picard_solve(solver, path, u0);

      PathMoments pm;
      pm.ic_q = std::pow(sobolev_norm(u0, m, p), q);
      pm.ic_mq = std::pow(sobolev_norm(u0, 1, m * p), m * q);
      pm.sup_q.assign(levels, 0.0);
      pm.sup_mq.assign(levels, 0.0);
      for (int n = 0; n < levels; ++n) {
        const Trajectory& traj = pr.levels[n];
        double sup_w = 0.0, sup_w1 = 0.0;
        for (const auto& f : traj.fields) {
          const double nw = sobolev_norm(f, m, p);
          const double n1 = same_norm ? nw : sobolev_norm(f, 1, m * p);
          sup_w = std::max(sup_w, nw);
          sup_w1 = std::max(sup_w1, n1);
        }
        pm.sup_q[n] = std::pow(sup_w, q);
        pm.sup_mq[n] = std::pow(sup_w1, m * q);
      }
      const Trajectory& last = pr.levels.back();
      for (std::size_t j = 0; j < last.fields.size(); j += stride)
        pm.snapshot_norm_q.push_back(std::pow(sobolev_norm(last.fields[j], m, p), q));
      per_path[pid] = std::move(pm);
    } catch (const std::exception& e) {
      failures[pid] = e.what();
    }
  };

  const int workers = std::min(thread_count(), cfg.paths);
  if (workers <= 1) {
    for (int pid = 0; pid < cfg.paths; ++pid) run_path(pid);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int pid = next.fetch_add(1); pid < cfg.paths; pid = next.fetch_add(1))
          run_path(pid);
      });
    for (auto& th : pool) th.join();
  }
  for (int pid = 0; pid < cfg.paths; ++pid)
    if (!failures[pid].empty())
      throw std::runtime_error("run_moments: path " + std::to_string(pid) +
                               " failed: " + failures[pid]);

  MomentReport report;
  report.paths = cfg.paths;
  report.master_seed = cfg.master_seed;
  report.config_hash = cfg.config_hash;
  report.config_echo = cfg.config_echo;

  std::vector<double> buf(cfg.paths);
  for (int n = 0; n < levels; ++n) {
    LevelMoment lm;
    for (int pid = 0; pid < cfg.paths; ++pid) buf[pid] = per_path[pid].sup_q[n];
    auto s1 = batch_stats(buf);
    lm.e_sup_wmp_q = s1.mean;
    lm.se_wmp_q = s1.se;
    for (int pid = 0; pid < cfg.paths; ++pid) buf[pid] = per_path[pid].sup_mq[n];
    auto s2 = batch_stats(buf);
    lm.e_sup_w1mp_mq = s2.mean;
    lm.se_w1mp_mq = s2.se;
    report.levels.push_back(lm);
  }

  for (int pid = 0; pid < cfg.paths; ++pid) buf[pid] = per_path[pid].ic_q;
  auto ic1 = batch_stats(buf);
  report.ic_moment_wmp_q = ic1.mean;
  report.ic_se_wmp_q = ic1.se;
  for (int pid = 0; pid < cfg.paths; ++pid) buf[pid] = per_path[pid].ic_mq;
  auto ic2 = batch_stats(buf);
  report.ic_moment_w1mp_mq = ic2.mean;
  report.ic_se_w1mp_mq = ic2.se;

  const std::size_t snaps = per_path[0].snapshot_norm_q.size();
  report.snapshot_times.resize(snaps);
  report.snapshot_mean_norm_q.assign(snaps, 0.0);
  for (std::size_t s = 0; s < snaps; ++s) {
    report.snapshot_times[s] = static_cast<double>(s * stride) * solver.dt();
    for (int pid = 0; pid < cfg.paths; ++pid)
      report.snapshot_mean_norm_q[s] += per_path[pid].snapshot_norm_q[s];
    report.snapshot_mean_norm_q[s] /= cfg.paths;
  }

  report.fitted_bound_constant =
      report.levels.back().e_sup_wmp_q /
      (1.0 + report.ic_moment_wmp_q + report.ic_moment_w1mp_mq);
  return report;
}

UniformityRecord uniformity_check(const MomentReport& report) {
  const int n_max = static_cast<int>(report.levels.size()) - 1;
  if (n_max < 5)
    throw std::invalid_argument("uniformity_check: need picard depth >= 5");
  UniformityRecord rec;
  for (const auto& lm : report.levels) rec.k_sequence.push_back(lm.e_sup_wmp_q);

  const int mid = (n_max + 1) / 2;
  const double se = std::sqrt(report.levels[n_max].se_wmp_q * report.levels[n_max].se_wmp_q +
                              report.levels[mid].se_wmp_q * report.levels[mid].se_wmp_q);
  rec.threshold = 1.1 * rec.k_sequence[mid] + 3.0 * se;
  rec.plateau_pass = rec.k_sequence[n_max] <= rec.threshold;

  // Geometric tail of |K_{n+1} - K_n|, least squares on the log.
  std::vector<double> xs, ys;
  for (int n = 1; n < n_max; ++n) {
    const double d = std::abs(rec.k_sequence[n + 1] - rec.k_sequence[n]);
    if (d > 0.0) {
      xs.push_back(n);
      ys.push_back(std::log(d));
    }
  }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double n = static_cast<double>(xs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rec.tail_ratio = std::exp(slope);
  }
  return rec;
}

ScalingStudy theorem_scaling_study(const ExperimentConfig& cfg,
                                   const std::vector<double>& scales) {
  ScalingStudy study;
  for (double s : scales) {
    if (s < 0.0) throw std::invalid_argument("scaling study: scales must be >= 0");
    ExperimentConfig scaled = cfg;
    scaled.initial.scale = cfg.initial.scale * s;
    MomentReport rep = run_moments(scaled);
    ScalingRow row;
    row.scale = s;
    row.lhs = rep.levels.back().e_sup_wmp_q;
    row.rhs = 1.0 + rep.ic_moment_wmp_q + rep.ic_moment_w1mp_mq;
    row.ratio = row.lhs / row.rhs;
    study.rows.push_back(row);
    study.fitted_c = std::max(study.fitted_c, row.ratio);
  }
  return study;
}

}  // namespace spde
