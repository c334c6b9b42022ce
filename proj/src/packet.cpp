#include "gwpt/packet.hpp"

#include <cmath>
#include <string>

#include "gwpt/parallel.hpp"

namespace gwpt {

namespace {

PacketParams axpy(const PacketParams& s, double c, const PacketParams& d) {
  PacketParams r;
  r.q = s.q + c * d.q;
  r.p = s.p + c * d.p;
  r.alpha = s.alpha + c * d.alpha;
  r.gamma = s.gamma + c * d.gamma;
  r.B = s.B + c * d.B;
  return r;
}

}  // namespace

PacketParams packet_rhs(const PacketParams& s, const Potential& V, const ZPoint& z,
                        double eps, PhaseConvention pc) {
  PacketParams d;
  d.q = s.p;
  d.p = -V.dx(s.q, z);
  d.alpha = -2.0 * s.alpha * s.alpha - 0.5 * V.dxx(s.q, z);
  cplx phase_term = pc == PhaseConvention::transform ? cplx(s.alpha.real(), 0.0) : s.alpha;
  d.gamma = 0.5 * s.p * s.p - V.value(s.q, z) + cplx(0.0, eps) * phase_term;
  d.B = -2.0 * s.B * s.alpha.real();
  return d;
}

PacketParams rk4_step(const PacketParams& s, const Potential& V, const ZPoint& z,
                      double eps, double dt, PhaseConvention pc) {
  PacketParams k1 = packet_rhs(s, V, z, eps, pc);
  PacketParams k2 = packet_rhs(axpy(s, 0.5 * dt, k1), V, z, eps, pc);
  PacketParams k3 = packet_rhs(axpy(s, 0.5 * dt, k2), V, z, eps, pc);
  PacketParams k4 = packet_rhs(axpy(s, dt, k3), V, z, eps, pc);
  PacketParams r = s;
  r.q += dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  r.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  r.alpha += dt / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
  r.gamma += dt / 6.0 * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma);
  r.B += dt / 6.0 * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B);
  if (!(r.alpha.imag() > 0.0))
    throw StageError(Stage::ode, "packet width collapsed: Im(alpha) <= 0");
  return r;
}

std::size_t PacketTrajectory::step_of(double t) const {
  double idx = t / dt;
  auto k = static_cast<std::size_t>(std::llround(idx));
  if (k >= times.size() || std::abs(idx - static_cast<double>(k)) > 1e-6)
    throw StageError(Stage::ode, "time " + std::to_string(t) + " not on the ODE grid");
  return k;
}

PacketTrajectory integrate_packets(const CollocationGrid& grid, const Potential& V,
                                   double eps, const std::vector<PacketParams>& initial,
                                   double dt, double T, unsigned threads,
                                   PhaseConvention pc) {
  if (initial.size() != grid.size())
    throw StageError(Stage::ode, "integrate_packets: one initial state per node required");
  double steps_real = T / dt;
  auto n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9)
    throw StageError(Stage::ode, "dt_ode does not divide T");

  PacketTrajectory traj;
  traj.dt = dt;
  traj.times.resize(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) traj.times[k] = k * dt;
  traj.nodes.assign(grid.size(), {});

  parallel_for(grid.size(), threads, [&](std::size_t k) {
    ZPoint z = grid.node(k);
    auto& series = traj.nodes[k];
    series.resize(n_steps + 1);
    series[0] = initial[k];
    if (!(initial[k].alpha.imag() > 0.0))
      throw StageError(Stage::ode, "node " + std::to_string(k) + ": Im(alpha0) <= 0");
    for (std::size_t s = 0; s < n_steps; ++s) {
      try {
        series[s + 1] = rk4_step(series[s], V, z, eps, dt, pc);
      } catch (const StageError& e) {
        throw StageError(Stage::ode, "node " + std::to_string(k) + " at t=" +
                                         std::to_string(traj.times[s]) + ": " + e.what());
      }
    }
  });
  return traj;
}

double u_r_eval(const Potential& V, const ZPoint& z, double q, double B, double eta,
                double eps) {
  double s = std::sqrt(eps) * eta / B;
  return V.value(q + s, z) - V.value(q, z) - s * V.dx(q, z) - 0.5 * s * s * V.dxx(q, z);
}

}  // namespace gwpt
