#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>

#include "gwpt/experiment.hpp"
#include "gwpt/parallel.hpp"
#include "gwpt/spline.hpp"

namespace gwpt {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> spline_axis_transfer(const std::vector<double>& src_axis,
                                         const std::vector<double>& values,
                                         const std::vector<double>& dst_axis) {
  if (src_axis.size() == 1) return std::vector<double>(dst_axis.size(), values[0]);
  SplineR s(src_axis, values);
  std::vector<double> out(dst_axis.size());
  for (std::size_t i = 0; i < dst_axis.size(); ++i) out[i] = s.value(dst_axis[i]);
  return out;
}

void check_transfer_grids(const CollocationGrid& from, const CollocationGrid& to) {
  if (from.dim() != 1 || to.dim() != 1)
    throw StageError(Stage::config, "z transfers are only defined for 1-D z");
  if (from.dist() != to.dist())
    throw StageError(Stage::config, "z transfer across different distributions");
}

}  // namespace

std::vector<PacketParams> transfer_params(const std::vector<PacketParams>& src,
                                          const CollocationGrid& from,
                                          const CollocationGrid& to) {
  check_transfer_grids(from, to);
  const std::vector<double>& za = from.axis_nodes();
  const std::vector<double>& zb = to.axis_nodes();
  std::size_t n = src.size();
  std::vector<double> comp(n);
  std::vector<std::vector<double>> out_comp(7);
  auto get = [&](int c, const PacketParams& s) -> double {
    switch (c) {
      case 0: return s.q;
      case 1: return s.p;
      case 2: return s.alpha.real();
      case 3: return s.alpha.imag();
      case 4: return s.gamma.real();
      case 5: return s.gamma.imag();
      default: return s.B;
    }
  };
  for (int c = 0; c < 7; ++c) {
    for (std::size_t k = 0; k < n; ++k) comp[k] = get(c, src[k]);
    out_comp[c] = spline_axis_transfer(za, comp, zb);
  }
  std::vector<PacketParams> out(zb.size());
  for (std::size_t k = 0; k < zb.size(); ++k) {
    out[k].q = out_comp[0][k];
    out[k].p = out_comp[1][k];
    out[k].alpha = cplx(out_comp[2][k], out_comp[3][k]);
    out[k].gamma = cplx(out_comp[4][k], out_comp[5][k]);
    out[k].B = out_comp[6][k];
  }
  return out;
}

PacketTrajectory transfer_trajectory(const PacketTrajectory& src, const CollocationGrid& from,
                                     const CollocationGrid& to, unsigned threads) {
  check_transfer_grids(from, to);
  PacketTrajectory dst;
  dst.dt = src.dt;
  dst.times = src.times;
  dst.nodes.assign(to.size(), std::vector<PacketParams>(src.n_times()));
  std::vector<PacketParams> slice(src.n_nodes());
  parallel_for(src.n_times(), threads, [&](std::size_t s) {
    std::vector<PacketParams> col(src.n_nodes());
    for (std::size_t k = 0; k < src.n_nodes(); ++k) col[k] = src.at(k, s);
    std::vector<PacketParams> moved = transfer_params(col, from, to);
    for (std::size_t k = 0; k < to.size(); ++k) dst.nodes[k][s] = moved[k];
  });
  return dst;
}

std::vector<WField> transfer_wfields(const std::vector<WField>& src,
                                     const CollocationGrid& from, const CollocationGrid& to,
                                     unsigned threads) {
  check_transfer_grids(from, to);
  if (src.size() != from.size())
    throw StageError(Stage::wprop, "transfer_wfields: field count mismatch");
  std::vector<WField> out(to.size());
  for (auto& f : out) {
    f = src.front();
    for (auto& v : f.values) v = cplx(0.0, 0.0);
  }
  if (from.size() == 1) {
    for (auto& f : out) f = src.front();
    return out;
  }
  const std::vector<double>& za = from.axis_nodes();
  const std::vector<double>& zb = to.axis_nodes();
  int len = src.front().n();
  parallel_for(static_cast<std::size_t>(len), threads, [&](std::size_t jidx) {
    std::vector<cplx> col(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) col[k] = src[k].values[jidx];
    SplineC s(za, col);
    for (std::size_t k = 0; k < zb.size(); ++k) out[k].values[jidx] = s.value(zb[k]);
  });
  return out;
}

std::vector<WaveField> transfer_wavefields(const std::vector<WaveField>& src,
                                           const CollocationGrid& from,
                                           const CollocationGrid& to, unsigned threads) {
  check_transfer_grids(from, to);
  if (src.size() != from.size())
    throw StageError(Stage::stats, "transfer_wavefields: field count mismatch");
  std::vector<WaveField> out(to.size());
  for (auto& f : out) {
    f = src.front();
    for (auto& v : f.values) v = cplx(0.0, 0.0);
  }
  if (from.size() == 1) {
    for (auto& f : out) f = src.front();
    return out;
  }
  const std::vector<double>& za = from.axis_nodes();
  const std::vector<double>& zb = to.axis_nodes();
  int len = src.front().n();
  parallel_for(static_cast<std::size_t>(len), threads, [&](std::size_t i) {
    std::vector<cplx> col(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) col[k] = src[k].values[i];
    SplineC s(za, col);
    for (std::size_t k = 0; k < zb.size(); ++k) out[k].values[i] = s.value(zb[k]);
  });
  return out;
}

std::vector<double> transfer_scalars(const std::vector<double>& src,
                                     const CollocationGrid& from, const CollocationGrid& to) {
  check_transfer_grids(from, to);
  return spline_axis_transfer(from.axis_nodes(), src, to.axis_nodes());
}

GwptResult run_gwpt(const ExperimentConfig& cfg) {
  cfg.validate();
  GwptResult res;
  res.config_hash = cfg.hash();
  res.m1 = CollocationGrid::build(cfg.z_dist, cfg.nz1, cfg.z_dim, Level::m1);
  res.m2 = CollocationGrid::build(cfg.z_dist, cfg.nz2, cfg.z_dim, Level::m2);
  res.m3 = CollocationGrid::build(cfg.z_dist, cfg.nz3, cfg.z_dim, Level::m3);
  res.out_times = cfg.output_times();
  double t_end = 0.0;
  for (double t : res.out_times) t_end = std::max(t_end, t);
  if (t_end == 0.0) t_end = cfg.dt_w;  // keep the trajectory non-degenerate

  // Packet parameter ODEs on M1, transferred to M2 for the w solves.
  auto tic = std::chrono::steady_clock::now();
  std::vector<PacketParams> ics(res.m1.size());
  for (std::size_t k = 0; k < res.m1.size(); ++k) ics[k] = cfg.initial.at(res.m1.node(k));
  PacketTrajectory traj1 = integrate_packets(res.m1, cfg.potential, cfg.eps, ics, cfg.dt_ode,
                                             t_end, cfg.threads);
  PacketTrajectory traj2_storage;
  const PacketTrajectory* traj2 = &traj1;
  if (!res.m2.same_nodes(res.m1)) {
    traj2_storage = transfer_trajectory(traj1, res.m1, res.m2, cfg.threads);
    traj2 = &traj2_storage;
  }
  res.timings.ode_s = seconds_since(tic);

  // w equation per M2 node.
  tic = std::chrono::steady_clock::now();
  double amplitude = packet_amplitude(cfg.initial.alpha0.imag(), cfg.eps);
  WField w0 = w_initial(amplitude, cfg.eta_min, cfg.eta_max, cfg.n_eta);
  std::vector<WRun> wruns(res.m2.size());
  parallel_for_ctx(
      res.m2.size(), cfg.threads,
      [&] {
        return std::make_unique<WPropagator>(cfg.eta_min, cfg.eta_max, cfg.n_eta,
                                             cfg.w_scheme);
      },
      [&](std::unique_ptr<WPropagator>& prop, std::size_t k) {
        try {
          wruns[k] = propagate_w(w0, *traj2, k, cfg.potential, res.m2.node(k), cfg.eps,
                                 cfg.dt_w, res.out_times, *prop);
        } catch (const StageError& e) {
          throw StageError(Stage::wprop, "node " + std::to_string(k) + ": " + e.what());
        }
      });
  for (const WRun& r : wruns) res.w_norm_drift = std::max(res.w_norm_drift, r.norm_drift);
  res.timings.w_s = seconds_since(tic);

  // Per output time: transfer to M3 and reconstruct.
  tic = std::chrono::steady_clock::now();
  std::size_t n_times = res.out_times.size();
  res.psi.resize(n_times);
  res.w.resize(n_times);
  res.jt.resize(n_times);
  res.node_mass.resize(n_times);
  res.gamma_norms.resize(n_times);
  bool want_profiles = cfg.outputs.count(Output::rho) || cfg.outputs.count(Output::j) ||
                       cfg.outputs.count(Output::classical);
  if (want_profiles) {
    res.rho_stats.resize(n_times);
    res.j_stats.resize(n_times);
  }
  std::atomic<int> warnings{0};
  XGrid xg = cfg.xgrid();

  for (std::size_t ti = 0; ti < n_times; ++ti) {
    std::size_t step = traj1.step_of(res.out_times[ti]);
    std::vector<PacketParams> slice(res.m1.size());
    for (std::size_t k = 0; k < res.m1.size(); ++k) slice[k] = traj1.at(k, step);
    std::vector<PacketParams> params3 = res.m3.same_nodes(res.m1)
                                            ? slice
                                            : transfer_params(slice, res.m1, res.m3);
    std::vector<WField> w2(res.m2.size());
    for (std::size_t k = 0; k < res.m2.size(); ++k) w2[k] = wruns[k].snapshots[ti];
    res.w[ti] = w2;
    std::vector<WField> w3 = res.m3.same_nodes(res.m2)
                                 ? w2
                                 : transfer_wfields(w2, res.m2, res.m3, cfg.threads);

    auto& psi_t = res.psi[ti];
    psi_t.resize(res.m3.size());
    auto& jt_t = res.jt[ti];
    jt_t.resize(res.m3.size());
    auto& mass_t = res.node_mass[ti];
    mass_t.resize(res.m3.size());
    parallel_for_ctx(
        res.m3.size(), cfg.threads, [&] { return std::make_unique<Fft1D>(cfg.n_x); },
        [&](std::unique_ptr<Fft1D>& fft, std::size_t k) {
          double outside = 0.0;
          psi_t[k] = reconstruct_psi(w3[k], params3[k], xg, cfg.eps, &outside);
          psi_t[k].time = res.out_times[ti];
          if (outside > 1e-6) warnings.fetch_add(1);
          jt_t[k] = jtilde(psi_t[k], fft.get());
          mass_t[k] = psi_t[k].mass();
        });
    res.gamma_norms[ti] = std::sqrt(expect(mass_t, res.m3));

    if (want_profiles) {
      std::vector<std::vector<double>> rho_nodes(res.m3.size()), j_nodes(res.m3.size());
      parallel_for_ctx(
          res.m3.size(), cfg.threads, [&] { return std::make_unique<Fft1D>(cfg.n_x); },
          [&](std::unique_ptr<Fft1D>& fft, std::size_t k) {
            rho_nodes[k] = density(psi_t[k]);
            j_nodes[k] = current(psi_t[k], fft.get());
          });
      res.rho_stats[ti] = stats_profile(rho_nodes, res.m3, cfg.threads);
      res.j_stats[ti] = stats_profile(j_nodes, res.m3, cfg.threads);
    }
  }
  res.support_warnings = warnings.load();
  res.timings.rec_s = seconds_since(tic);
  return res;
}

ReferenceResult run_reference(const ExperimentConfig& cfg) {
  cfg.validate();
  ReferenceResult res;
  res.config_hash = cfg.hash();
  res.m4 = CollocationGrid::build(cfg.z_dist, cfg.nz4, cfg.z_dim, Level::m4);
  res.out_times = cfg.output_times();
  for (double t : res.out_times) {
    double r = t / cfg.dt_ds;
    if (std::abs(r - std::llround(r)) > 1e-6)
      throw StageError(Stage::reference, "output times must sit on the dt_ds grid");
  }

  auto tic = std::chrono::steady_clock::now();
  double amplitude = packet_amplitude(cfg.initial.alpha0.imag(), cfg.eps);
  XGrid xg = cfg.xgrid();
  std::vector<WaveField> psi0(res.m4.size());
  for (std::size_t k = 0; k < res.m4.size(); ++k)
    psi0[k] = ds_initial(cfg.initial.at(res.m4.node(k)), xg, cfg.eps, amplitude);
  std::vector<DsRun> runs = ds_solve(psi0, res.m4, cfg.potential, cfg.eps, cfg.dt_ds,
                                     res.out_times, cfg.threads);
  res.timings.ds_s = seconds_since(tic);

  std::size_t n_times = res.out_times.size();
  res.psi.resize(n_times);
  res.jt.resize(n_times);
  res.gamma_norms.resize(n_times);
  for (const DsRun& r : runs) res.mass_drift = std::max(res.mass_drift, r.mass_drift);
  for (std::size_t ti = 0; ti < n_times; ++ti) {
    res.psi[ti].resize(res.m4.size());
    res.jt[ti].resize(res.m4.size());
    for (std::size_t k = 0; k < res.m4.size(); ++k)
      res.psi[ti][k] = std::move(runs[k].snapshots[ti]);
    parallel_for_ctx(
        res.m4.size(), cfg.threads, [&] { return std::make_unique<Fft1D>(cfg.n_x); },
        [&](std::unique_ptr<Fft1D>& fft, std::size_t k) {
          res.jt[ti][k] = jtilde(res.psi[ti][k], fft.get());
        });
    res.gamma_norms[ti] = gamma_norm(res.psi[ti], res.m4);
  }
  return res;
}

ErrorMetrics compare_results(const GwptResult& g, const ReferenceResult& r,
                             std::size_t time_index, unsigned threads) {
  if (time_index >= g.out_times.size() || time_index >= r.out_times.size())
    throw StageError(Stage::stats, "compare_results: bad time index");
  if (std::abs(g.out_times[time_index] - r.out_times[time_index]) > 1e-9)
    throw StageError(Stage::stats, "compare_results: output times differ");

  const std::vector<WaveField>* ref_fields = &r.psi[time_index];
  std::vector<WaveField> moved_fields;
  const std::vector<double>* ref_jt = &r.jt[time_index];
  std::vector<double> moved_jt;
  if (!r.m4.same_nodes(g.m3)) {
    if (g.m3.dim() != 1)
      throw StageError(Stage::stats, "2-D z comparisons need M4 = M3");
    moved_fields = transfer_wavefields(r.psi[time_index], r.m4, g.m3, threads);
    ref_fields = &moved_fields;
    moved_jt = transfer_scalars(r.jt[time_index], r.m4, g.m3);
    ref_jt = &moved_jt;
  }
  ErrorMetrics m;
  m.er_psi = er_psi(g.psi[time_index], *ref_fields, g.m3);
  JError je = er_j(g.jt[time_index], *ref_jt, g.m3);
  m.er1_j = je.er1;
  m.er2_j = je.er2;
  m.j_absolute = je.absolute;
  return m;
}

std::vector<ComparisonRow> run_comparison(const ExperimentConfig& cfg, const SweepSpec& sweep) {
  std::vector<ComparisonRow> rows;
  auto push_row = [&](const GwptResult& g, const ErrorMetrics& m, double eps, int nz2,
                      double T, double ds_s) {
    ComparisonRow row;
    row.eps = eps;
    row.nz2 = nz2;
    row.T = T;
    row.er_psi = m.er_psi;
    row.er1_j = m.er1_j;
    row.er2_j = m.er2_j;
    row.j_absolute = m.j_absolute;
    row.wall_ode_s = g.timings.ode_s;
    row.wall_w_s = g.timings.w_s;
    row.wall_rec_s = g.timings.rec_s;
    row.wall_ds_s = ds_s;
    rows.push_back(row);
  };

  switch (sweep.kind) {
    case Sweep::none: {
      GwptResult g = run_gwpt(cfg);
      ReferenceResult r = run_reference(cfg);
      ErrorMetrics m = compare_results(g, r, g.out_times.size() - 1, cfg.threads);
      push_row(g, m, cfg.eps, cfg.nz2, g.out_times.back(), r.timings.ds_s);
      break;
    }
    case Sweep::eps: {
      for (double e : sweep.eps_values) {
        ExperimentConfig c = with_eps(cfg, e);
        GwptResult g = run_gwpt(c);
        ReferenceResult r = run_reference(c);
        ErrorMetrics m = compare_results(g, r, g.out_times.size() - 1, c.threads);
        push_row(g, m, e, c.nz2, g.out_times.back(), r.timings.ds_s);
      }
      break;
    }
    case Sweep::nz2: {
      for (int k : sweep.nz2_values) {
        ExperimentConfig lo = cfg;
        lo.nz2 = k;
        ExperimentConfig hi = cfg;
        hi.nz2 = 2 * k;
        GwptResult g_lo = run_gwpt(lo);
        GwptResult g_hi = run_gwpt(hi);
        std::size_t ti = g_lo.out_times.size() - 1;
        ErrorMetrics m;
        m.er_psi = er_psi(g_lo.psi[ti], g_hi.psi[ti], g_lo.m3);
        JError je = er_j(g_lo.jt[ti], g_hi.jt[ti], g_lo.m3);
        m.er1_j = je.er1;
        m.er2_j = je.er2;
        m.j_absolute = je.absolute;
        push_row(g_lo, m, cfg.eps, k, g_lo.out_times[ti], 0.0);
      }
      break;
    }
    case Sweep::time: {
      ExperimentConfig c = cfg;
      c.out_times = sweep.times;
      GwptResult g = run_gwpt(c);
      ReferenceResult r = run_reference(c);
      for (std::size_t ti = 0; ti < g.out_times.size(); ++ti) {
        ErrorMetrics m = compare_results(g, r, ti, c.threads);
        push_row(g, m, c.eps, c.nz2, g.out_times[ti], r.timings.ds_s);
      }
      break;
    }
  }
  return rows;
}

ClassicalResult run_classical(const ExperimentConfig& cfg, int aggregate) {
  cfg.validate();
  ClassicalResult res;
  res.grid = CollocationGrid::build(cfg.z_dist, cfg.nz1, cfg.z_dim, Level::m1);
  res.out_times = cfg.output_times();
  double t_end = 0.0;
  for (double t : res.out_times) t_end = std::max(t_end, t);
  ClassicalInitial ic{cfg.initial.q0_base, cfg.initial.q0_slope, cfg.initial.p0_base,
                      cfg.initial.p0_slope};
  ClassicalTrajectory traj =
      hamilton_integrate(res.grid, cfg.potential, ic, cfg.dt_ode, t_end, cfg.threads);
  XGrid xg = cfg.xgrid();
  for (double t : res.out_times) {
    std::vector<double> q = traj.q_at(t);
    std::vector<double> p = traj.p_at(t);
    res.density.push_back(classical_density(q, res.grid, xg, aggregate));
    res.current.push_back(classical_current(q, p, res.grid, xg, aggregate));
    res.moments.push_back(classical_moments(q, p, res.grid));
  }
  return res;
}

ZDiag zdiag_from(const GwptResult& res, std::size_t time_index, unsigned threads) {
  ZDiag d;
  d.max_dz_re_psi = z_derivative_max(res.psi[time_index], res.m3, 1, threads);
  d.max_dz_re_w = z_derivative_max(res.w[time_index], res.m2, 1, threads);
  return d;
}

}  // namespace gwpt
