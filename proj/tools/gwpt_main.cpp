// Command-line front end: run the transform pipeline, compare against the
// direct splitting reference, emit classical-limit and z-regularity tables.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gwpt/io.hpp"

namespace {

using namespace gwpt;

int exit_code_for(Stage s) {
  switch (s) {
    case Stage::config: return 1;
    case Stage::ode: return 2;
    case Stage::wprop: return 3;
    case Stage::reconstruct: return 4;
    case Stage::reference: return 5;
    case Stage::stats: return 6;
    case Stage::io: return 7;
  }
  return 1;
}

struct CommonOpts {
  std::string config_path;
  std::string test = "a1ii";
  std::string eps = "1/32";
  double T = -1.0;
  int nz1 = -1, nz2 = -1, nz3 = -1, nz4 = -1;
  unsigned threads = 0;
  std::string w_scheme;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--test", o.test, "builtin test id (a1i a1ii a2 a3 a4 b c d)");
  cmd->add_option("--eps", o.eps, "semiclassical parameter, e.g. 1/256");
  cmd->add_option("--T", o.T, "final time");
  cmd->add_option("--nz1", o.nz1, "collocation nodes for the parameter ODEs");
  cmd->add_option("--nz2", o.nz2, "collocation nodes for the w solves");
  cmd->add_option("--nz3", o.nz3, "collocation nodes for the reconstruction");
  cmd->add_option("--nz4", o.nz4, "collocation nodes for the reference solver");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  cmd->add_option("--w-scheme", o.w_scheme, "quadratic_exact | fourier_strang");
  cmd->add_option("--out", o.out_dir, "output directory");
}

ExperimentConfig build_config(const CommonOpts& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = ExperimentConfig::from_json_file(o.config_path);
  } else {
    cfg = ExperimentConfig::builtin(test_id_from_string(o.test), parse_rational(o.eps));
  }
  if (o.T > 0.0) cfg.T = o.T;
  if (o.nz1 > 0) cfg.nz1 = o.nz1;
  if (o.nz2 > 0) cfg.nz2 = o.nz2;
  if (o.nz3 > 0) cfg.nz3 = o.nz3;
  if (o.nz4 > 0) cfg.nz4 = o.nz4;
  if (o.threads > 0) cfg.threads = o.threads;
  if (!o.w_scheme.empty()) {
    if (o.w_scheme == "quadratic_exact") cfg.w_scheme = WScheme::quadratic_exact;
    else if (o.w_scheme == "fourier_strang") cfg.w_scheme = WScheme::fourier_strang;
    else throw StageError(Stage::config, "unknown w scheme: " + o.w_scheme);
  }
  cfg.validate();
  return cfg;
}

std::string tag_of(const ExperimentConfig& cfg) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_eps%g", test_id_string(cfg.test_id).c_str(), cfg.eps);
  std::string s(buf);
  for (char& c : s)
    if (c == '.' || c == '/') c = '_';
  return s;
}

int cmd_run(const CommonOpts& o) {
  ExperimentConfig cfg = build_config(o);
  cfg.outputs.insert(Output::rho);
  cfg.outputs.insert(Output::j);
  GwptResult res = run_gwpt(cfg);
  std::size_t ti = res.out_times.size() - 1;
  std::string base = o.out_dir + "/run_" + tag_of(cfg);
  write_profile_csv(base + "_profiles.csv", cfg.xgrid(), res.rho_stats[ti], res.j_stats[ti]);
  write_provenance(base + ".json", cfg, res.timings, "");
  Stats jt = stats_scalar(res.jt[ti], res.m3);
  std::printf("T=%.6g  gamma_norm=%.12g  E[jt]=%.12g  SD[jt]=%.12g\n", res.out_times[ti],
              res.gamma_norms[ti], jt.mean, jt.sd);
  std::printf("w_norm_drift=%.3e  support_warnings=%d\n", res.w_norm_drift,
              res.support_warnings);
  std::printf("wall: ode=%.3fs w=%.3fs rec=%.3fs\n", res.timings.ode_s, res.timings.w_s,
              res.timings.rec_s);
  std::printf("wrote %s_profiles.csv\n", base.c_str());
  return 0;
}

int cmd_compare(const CommonOpts& o, const std::string& sweep_kind,
                std::vector<std::string>& eps_list, std::vector<int>& nz2_list,
                std::vector<double>& time_list) {
  ExperimentConfig cfg = build_config(o);
  SweepSpec sweep;
  if (sweep_kind.empty()) {
    sweep.kind = Sweep::none;
  } else if (sweep_kind == "eps") {
    sweep.kind = Sweep::eps;
    for (const auto& e : eps_list) sweep.eps_values.push_back(parse_rational(e));
    if (sweep.eps_values.empty())
      sweep.eps_values = {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  } else if (sweep_kind == "nz2") {
    sweep.kind = Sweep::nz2;
    sweep.nz2_values = nz2_list.empty() ? std::vector<int>{2, 4, 8, 16, 32} : nz2_list;
  } else if (sweep_kind == "time") {
    sweep.kind = Sweep::time;
    sweep.times = time_list;
    if (sweep.times.empty())
      sweep.times = {1.0, std::sqrt(2.0), 2.0, 2.0 * std::sqrt(2.0), 4.0,
                     4.0 * std::sqrt(2.0), 8.0};
    double t_max = 0.0;
    for (double& t : sweep.times) {
      t = std::llround(t / cfg.dt_w) * cfg.dt_w;
      t_max = std::max(t_max, t);
    }
    if (cfg.T < t_max) cfg.T = t_max;
  } else {
    throw StageError(Stage::config, "unknown sweep: " + sweep_kind);
  }
  std::vector<ComparisonRow> rows = run_comparison(cfg, sweep);
  std::string path = o.out_dir + "/compare_" + tag_of(cfg) +
                     (sweep_kind.empty() ? "" : "_" + sweep_kind) + ".csv";
  write_comparison_csv(path, rows);
  write_provenance(path + ".json", cfg, StageTimings{}, "comparison sweep: " + sweep_kind);
  std::printf("%-10s %-6s %-8s %-12s %-12s %-12s\n", "eps", "Nz2", "T", "Er_psi", "Er1_j",
              "Er2_j");
  for (const auto& r : rows)
    std::printf("%-10.6g %-6d %-8.4g %-12.4e %-12.4e %-12.4e%s\n", r.eps, r.nz2, r.T,
                r.er_psi, r.er1_j, r.er2_j, r.j_absolute ? "  (absolute)" : "");
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_classical(const CommonOpts& o) {
  ExperimentConfig cfg = build_config(o);
  ClassicalResult res = run_classical(cfg);
  std::size_t ti = res.out_times.size() - 1;
  std::string path = o.out_dir + "/classical_" + tag_of(cfg) + ".csv";
  write_classical_csv(path, res.density[ti], res.current[ti]);
  const ClassicalMoments& m = res.moments[ti];
  std::printf("T=%.6g  E[q]=%.10g Var[q]=%.10g  E[p]=%.10g Var[p]=%.10g\n",
              res.out_times[ti], m.mean_q, m.var_q, m.mean_p, m.var_p);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_zdiag(const CommonOpts& o, std::vector<std::string>& eps_list) {
  std::vector<std::pair<double, ZDiag>> rows;
  std::vector<std::string> values =
      eps_list.empty() ? std::vector<std::string>{o.eps} : eps_list;
  for (const auto& e : values) {
    CommonOpts oo = o;
    oo.eps = e;
    ExperimentConfig cfg = build_config(oo);
    cfg.outputs.insert(Output::zdiag);
    GwptResult res = run_gwpt(cfg);
    ZDiag d = zdiag_from(res, res.out_times.size() - 1, cfg.threads);
    rows.emplace_back(cfg.eps, d);
    std::printf("eps=%-10.6g max|dz Re psi|=%-12.6g max|dz Re w|=%-12.6g\n", cfg.eps,
                d.max_dz_re_psi, d.max_dz_re_w);
  }
  std::string path = o.out_dir + "/zdiag.csv";
  write_zdiag_csv(path, rows);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian wave packet transform solver for the semiclassical "
               "Schrodinger equation with random inputs"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string sweep_kind;
  std::vector<std::string> eps_list;
  std::vector<int> nz2_list;
  std::vector<double> time_list;

  CLI::App* run = app.add_subcommand("run", "run the transform pipeline");
  add_common(run, o);
  CLI::App* cmp = app.add_subcommand("compare", "error tables against the reference solver");
  add_common(cmp, o);
  cmp->add_option("--sweep", sweep_kind, "eps | nz2 | time");
  cmp->add_option("--eps-list", eps_list, "eps values for --sweep eps");
  cmp->add_option("--nz2-list", nz2_list, "Nz2 values for --sweep nz2");
  cmp->add_option("--times", time_list, "output times for --sweep time");
  CLI::App* cls = app.add_subcommand("classical", "classical-limit densities and moments");
  add_common(cls, o);
  CLI::App* zd = app.add_subcommand("zdiag", "max |d/dz Re(psi)| and |d/dz Re(w)| diagnostics");
  add_common(zd, o);
  zd->add_option("--eps-list", eps_list, "eps values to scan");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(o);
    if (cmp->parsed()) return cmd_compare(o, sweep_kind, eps_list, nz2_list, time_list);
    if (cls->parsed()) return cmd_classical(o);
    if (zd->parsed()) return cmd_zdiag(o, eps_list);
  } catch (const gwpt::StageError& e) {
    std::fprintf(stderr, "error [stage=%s]: %s\n", gwpt::stage_name(e.stage()), e.what());
    return exit_code_for(e.stage());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
