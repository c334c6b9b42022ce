#include "gwpt/classical.hpp"

#include <cmath>
#include <string>

#include "gwpt/parallel.hpp"
#include "gwpt/spline.hpp"

namespace gwpt {

std::size_t ClassicalTrajectory::step_of(double t) const {
  double idx = t / dt;
  auto k = static_cast<std::size_t>(std::llround(idx));
  if (k >= times.size() || std::abs(idx - static_cast<double>(k)) > 1e-6)
    throw StageError(Stage::stats, "classical trajectory: time not on the grid");
  return k;
}

std::vector<double> ClassicalTrajectory::q_at(double t) const {
  std::size_t s = step_of(t);
  std::vector<double> out(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) out[k] = q[k][s];
  return out;
}

std::vector<double> ClassicalTrajectory::p_at(double t) const {
  std::size_t s = step_of(t);
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[k][s];
  return out;
}

ClassicalTrajectory hamilton_integrate(const CollocationGrid& grid, const Potential& V,
                                       const ClassicalInitial& ic, double dt, double T,
                                       unsigned threads) {
  double steps_real = T / dt;
  auto n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9)
    throw StageError(Stage::stats, "hamilton_integrate: dt does not divide T");

  ClassicalTrajectory traj;
  traj.dt = dt;
  traj.times.resize(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) traj.times[k] = k * dt;
  traj.q.assign(grid.size(), {});
  traj.p.assign(grid.size(), {});

  parallel_for(grid.size(), threads, [&](std::size_t k) {
    ZPoint z = grid.node(k);
    auto& qs = traj.q[k];
    auto& ps = traj.p[k];
    qs.resize(n_steps + 1);
    ps.resize(n_steps + 1);
    qs[0] = ic.q0_base + ic.q0_slope * z.z1;
    ps[0] = ic.p0_base + ic.p0_slope * z.z1;
    for (std::size_t s = 0; s < n_steps; ++s) {
      double q = qs[s], p = ps[s];
      auto f = [&](double qq, double pp, double& dq, double& dp) {
        dq = pp;
        dp = -V.dx(qq, z);
      };
      double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
      f(q, p, k1q, k1p);
      f(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p, k2q, k2p);
      f(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p, k3q, k3p);
      f(q + dt * k3q, p + dt * k3p, k4q, k4p);
      qs[s + 1] = q + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
      ps[s + 1] = p + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
  });
  return traj;
}

namespace {

double z_pdf(Dist dist, double z) {
  if (dist == Dist::uniform) return std::abs(z) <= 1.0 ? 0.5 : 0.0;
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * pi);
}

constexpr double caustic_tol = 1e-6;

// Shared estimator: `values` weights each node sample (1 for the density,
// p for the current).
ClassicalProfile estimate_profile(const std::vector<double>& q_nodes,
                                  const std::vector<double>& values,
                                  const CollocationGrid& grid, const XGrid& xg,
                                  int aggregate) {
  if (q_nodes.size() != grid.size() || values.size() != grid.size())
    throw StageError(Stage::stats, "classical profile: per-node arrays mismatch the grid");
  if (aggregate < 1) throw StageError(Stage::stats, "classical profile: bad aggregation");

  int n_cells = xg.n / aggregate;
  double width = xg.dx() * aggregate;

  ClassicalProfile prof;
  prof.cell_width = width;
  prof.x_centers.resize(n_cells);
  prof.histogram.assign(n_cells, 0.0);
  prof.derivative.assign(n_cells, 0.0);
  prof.caustic.assign(n_cells, 0);
  for (int c = 0; c < n_cells; ++c) prof.x_centers[c] = xg.x_min + (c + 0.5) * width;

  for (std::size_t k = 0; k < q_nodes.size(); ++k) {
    int c = static_cast<int>(std::floor((q_nodes[k] - xg.x_min) / width));
    if (c >= 0 && c < n_cells) prof.histogram[c] += grid.weight(k) * values[k] / width;
  }

  bool derivative_ok = grid.dim() == 1 && grid.size() >= 4;
  if (derivative_ok) {
    const std::vector<double>& zs = grid.axis_nodes();
    SplineR qs(zs, q_nodes);
    SplineR vs(zs, values);
    std::size_t fine_n = std::max<std::size_t>(512, 8 * zs.size());
    std::vector<double> zf(fine_n), qf(fine_n);
    for (std::size_t i = 0; i < fine_n; ++i) {
      zf[i] = zs.front() + (zs.back() - zs.front()) * i / (fine_n - 1);
      qf[i] = qs.value(zf[i]);
    }
    for (int c = 0; c < n_cells; ++c) {
      double target = prof.x_centers[c];
      double acc = 0.0;
      bool caustic = false;
      for (std::size_t i = 0; i + 1 < fine_n; ++i) {
        double f0 = qf[i] - target, f1 = qf[i + 1] - target;
        if (f0 == 0.0 && i > 0) continue;  // root already owned by the previous cell pair
        if (!(f0 * f1 <= 0.0) || (f0 == 0.0 && f1 == 0.0)) continue;
        double lo = zf[i], hi = zf[i + 1];
        for (int it = 0; it < 48; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = qs.value(mid) - target;
          if (f0 * fm <= 0.0) hi = mid; else { lo = mid; f0 = fm; }
        }
        double zr = 0.5 * (lo + hi);
        double slope = qs.derivative(zr);
        if (std::abs(slope) <= caustic_tol) {
          caustic = true;
          continue;
        }
        acc += z_pdf(grid.dist(), zr) / std::abs(slope) * vs.value(zr);
      }
      prof.derivative[c] = acc;
      prof.caustic[c] = caustic ? 1 : 0;
    }
  }

  prof.combined.resize(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    bool use_deriv = derivative_ok && !prof.caustic[c];
    prof.combined[c] = use_deriv ? prof.derivative[c] : prof.histogram[c];
  }
  return prof;
}

}  // namespace

ClassicalProfile classical_density(const std::vector<double>& q_nodes,
                                   const CollocationGrid& grid, const XGrid& xg,
                                   int aggregate) {
  std::vector<double> ones(q_nodes.size(), 1.0);
  return estimate_profile(q_nodes, ones, grid, xg, aggregate);
}

ClassicalProfile classical_current(const std::vector<double>& q_nodes,
                                   const std::vector<double>& p_nodes,
                                   const CollocationGrid& grid, const XGrid& xg,
                                   int aggregate) {
  return estimate_profile(q_nodes, p_nodes, grid, xg, aggregate);
}

ClassicalMoments classical_moments(const std::vector<double>& q_nodes,
                                   const std::vector<double>& p_nodes,
                                   const CollocationGrid& grid) {
  ClassicalMoments m;
  m.mean_q = expect(q_nodes, grid);
  m.var_q = variance(q_nodes, grid);
  m.mean_p = expect(p_nodes, grid);
  m.var_p = variance(p_nodes, grid);
  return m;
}

}  // namespace gwpt
