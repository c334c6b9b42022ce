#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gwpt/wprop.hpp"

using namespace gwpt;

namespace {

PacketTrajectory constant_traj(const PacketParams& s, double dt, double T) {
  PacketTrajectory traj;
  traj.dt = dt;
  auto n = static_cast<std::size_t>(std::llround(T / dt));
  traj.times.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) traj.times[k] = k * dt;
  traj.nodes.assign(1, std::vector<PacketParams>(n + 1, s));
  return traj;
}

PacketTrajectory integrate_single(const Potential& V, const ZPoint& z, double eps,
                                  double dt, double T) {
  PacketParams ic;
  ic.q = 0.5 * pi;
  ic.p = 0.0;
  ic.alpha = cplx(0.0, 1.0);
  ic.B = 1.0;
  PacketTrajectory traj;
  traj.dt = dt;
  auto n = static_cast<std::size_t>(std::llround(T / dt));
  traj.times.resize(n + 1);
  traj.nodes.assign(1, std::vector<PacketParams>(n + 1));
  traj.nodes[0][0] = ic;
  for (std::size_t k = 0; k <= n; ++k) traj.times[k] = k * dt;
  for (std::size_t k = 0; k < n; ++k)
    traj.nodes[0][k + 1] = rk4_step(traj.nodes[0][k], V, z, eps, dt);
  return traj;
}

double rel_l2(const WField& a, const WField& b) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < a.n(); ++j) {
    num += std::norm(a.values[j] - b.values[j]);
    den += std::norm(b.values[j]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("w_initial: Gaussian profile and norm") {
  WField w = w_initial(1.0, -20.0, 20.0, 128);
  CHECK(w.values[64].real() == doctest::Approx(1.0).epsilon(1e-14));  // eta = 0
  CHECK(w.max_abs() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.norm2() == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-10));
  double a = 2.1;
  WField wa = w_initial(a, -20.0, 20.0, 128);
  CHECK(wa.norm2() == doctest::Approx(a * a * std::sqrt(pi / 2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(w_initial(0.0, -20.0, 20.0, 128), StageError);
  CHECK_THROWS_AS(w_initial(1.0, -20.0, 20.0, 100), StageError);
}

TEST_CASE("discretized quadratic operator has the oscillator ground state") {
  WPropagator prop(-20.0, 20.0, 128, WScheme::quadratic_exact);
  CHECK(std::abs(prop.lambda0() - 1.0) <= 1e-9);
}

TEST_CASE("frozen coefficients: exp(-eta^2) rotates as exp(-i t)") {
  // Ground state of -1/2 d^2 + 2 eta^2 with eigenvalue 1; U_r = 0 for any
  // quadratic potential.
  Potential V = Potential::quadratic_random(1.0, 0.0);
  PacketParams s;
  s.q = 0.0;
  s.alpha = cplx(0.0, 1.0);
  s.B = 1.0;
  double dt_w = 1e-3;
  PacketTrajectory traj = constant_traj(s, dt_w / 4.0, 1.0);
  WField w0 = w_initial(1.0, -20.0, 20.0, 128);
  WPropagator prop(-20.0, 20.0, 128, WScheme::quadratic_exact);
  WRun run = propagate_w(w0, traj, 0, V, {}, 1.0 / 64.0, dt_w, {1.0}, prop);
  const WField& w1 = run.snapshots[0];
  cplx rot = std::polar(1.0, -1.0);
  double max_err = 0.0;
  for (int j = 0; j < w0.n(); ++j)
    max_err = std::max(max_err, std::abs(w1.values[j] - rot * w0.values[j]));
  CHECK(max_err <= 1e-8);
  CHECK(run.norm_drift <= 1e-10);
}

TEST_CASE("norm conservation over a cosine-potential run") {
  Potential V = Potential::cosine_random(1.0, 0.9);
  ZPoint z{0.6, 0.0};
  double eps = 1.0 / 64.0;
  PacketTrajectory traj = integrate_single(V, z, eps, 2.5e-4, 1.0);
  WField w0 = w_initial(packet_amplitude(1.0, eps), -20.0, 20.0, 128);
  for (WScheme scheme : {WScheme::quadratic_exact, WScheme::fourier_strang}) {
    WPropagator prop(-20.0, 20.0, 128, scheme);
    WRun run = propagate_w(w0, traj, 0, V, z, eps, 0.01, {1.0}, prop);
    CHECK(run.norm_drift <= 1e-10);
    CHECK(run.snapshots[0].boundary_ratio() <= 1e-8);
  }
}

TEST_CASE("T = 0 returns the initial data unchanged") {
  Potential V = Potential::quadratic_random(1.0, 0.0);
  PacketParams s;
  PacketTrajectory traj = constant_traj(s, 2.5e-4, 0.01);
  WField w0 = w_initial(1.0, -20.0, 20.0, 64);
  WPropagator prop(-20.0, 20.0, 64);
  WRun run = propagate_w(w0, traj, 0, V, {}, 0.1, 0.001, {0.0}, prop);
  for (int j = 0; j < w0.n(); ++j) CHECK(run.snapshots[0].values[j] == w0.values[j]);
}

TEST_CASE("quadratic potentials: |w| stays frozen and the phase is global") {
  Potential V = Potential::quadratic_random(1.0, 0.95);
  ZPoint z{0.37, 0.0};
  double eps = 1.0 / 32.0;
  PacketTrajectory traj = integrate_single(V, z, eps, 2.5e-4, 1.0);
  WField w0 = w_initial(1.0, -20.0, 20.0, 128);
  WPropagator prop(-20.0, 20.0, 128);
  WRun run = propagate_w(w0, traj, 0, V, z, eps, 0.01, {1.0}, prop);
  const WField& w1 = run.snapshots[0];
  double max_amp_err = 0.0;
  cplx ratio0 = w1.values[64] / w0.values[64];
  double max_phase_spread = 0.0;
  for (int j = 0; j < w0.n(); ++j) {
    max_amp_err = std::max(max_amp_err, std::abs(std::abs(w1.values[j]) - std::abs(w0.values[j])));
    if (std::abs(w0.values[j]) > 1e-4)
      max_phase_spread = std::max(max_phase_spread,
                                  std::abs(w1.values[j] / w0.values[j] - ratio0));
  }
  CHECK(max_amp_err <= 1e-9);
  CHECK(max_phase_spread <= 1e-8);
  CHECK(std::abs(std::abs(ratio0) - 1.0) <= 1e-11);
  // Up to one global phase the state is unchanged.
  double num = 0.0, den = 0.0;
  for (int j = 0; j < w0.n(); ++j) {
    num += std::norm(w1.values[j] - ratio0 * w0.values[j]);
    den += std::norm(w0.values[j]);
  }
  CHECK(std::sqrt(num / den) <= 1e-9);
}

TEST_CASE("fourier_strang converges at second order in dt_w") {
  Potential V = Potential::cosine_random(1.0, 0.9);
  ZPoint z{0.5, 0.0};
  double eps = 1.0 / 32.0;
  double dt_ode = 6.25e-4 / 4.0;
  PacketTrajectory traj = integrate_single(V, z, eps, dt_ode, 0.5);
  WField w0 = w_initial(1.0, -20.0, 20.0, 128);
  auto run_at = [&](double dt_w) {
    WPropagator prop(-20.0, 20.0, 128, WScheme::fourier_strang);
    return propagate_w(w0, traj, 0, V, z, eps, dt_w, {0.5}, prop).snapshots[0];
  };
  WField ref = run_at(0.00125);
  double e1 = rel_l2(run_at(0.01), ref);
  double e2 = rel_l2(run_at(0.005), ref);
  CHECK(e1 / e2 >= 3.3);
  CHECK(e1 / e2 <= 4.7);
}

TEST_CASE("quadratic_exact self-converges on non-quadratic potentials") {
  Potential V = Potential::cosine_random(1.0, 0.9);
  ZPoint z{-0.4, 0.0};
  double eps = 1.0 / 64.0;
  double dt_ode = 6.25e-4 / 4.0;
  PacketTrajectory traj = integrate_single(V, z, eps, dt_ode, 0.5);
  WField w0 = w_initial(1.0, -20.0, 20.0, 128);
  auto run_at = [&](double dt_w) {
    WPropagator prop(-20.0, 20.0, 128, WScheme::quadratic_exact);
    return propagate_w(w0, traj, 0, V, z, eps, dt_w, {0.5}, prop).snapshots[0];
  };
  WField ref = run_at(0.00125);
  double e1 = rel_l2(run_at(0.01), ref);
  double e2 = rel_l2(run_at(0.005), ref);
  // U_r splitting keeps plain second order; the constant is eps-small.
  CHECK(e1 / e2 >= 3.0);
  CHECK(e1 / e2 <= 5.0);
  CHECK(e1 <= 1e-6);
}

TEST_CASE("doubling n_eta leaves the solution unchanged to spectral accuracy") {
  Potential V = Potential::cosine_random(1.0, 0.9);
  ZPoint z{0.2, 0.0};
  double eps = 1.0 / 64.0;
  PacketTrajectory traj = integrate_single(V, z, eps, 2.5e-4, 0.5);
  auto run_n = [&](int n) {
    WField w0 = w_initial(1.0, -20.0, 20.0, n);
    WPropagator prop(-20.0, 20.0, n);
    return propagate_w(w0, traj, 0, V, z, eps, 0.01, {0.5}, prop).snapshots[0];
  };
  WField a = run_n(128);
  WField b = run_n(256);
  double max_err = 0.0;
  for (int j = 0; j < a.n(); ++j)
    max_err = std::max(max_err, std::abs(a.values[j] - b.values[2 * j]));
  CHECK(max_err <= 1e-8);
}

TEST_CASE("support reaching the boundary raises a wprop error") {
  Potential V = Potential::quadratic_random(1.0, 0.0);
  PacketParams s;
  PacketTrajectory traj = constant_traj(s, 2.5e-4, 0.1);
  WField w0 = w_initial(1.0, -20.0, 20.0, 128);
  for (int j = 0; j < w0.n(); ++j) {
    double e = w0.eta(j) - 19.5;
    w0.values[j] = std::exp(-e * e);
  }
  WPropagator prop(-20.0, 20.0, 128);
  CHECK_THROWS_AS(propagate_w(w0, traj, 0, V, {}, 0.1, 0.01, {0.1}, prop), StageError);
}

TEST_CASE("dt_w must be an even multiple of the trajectory step") {
  Potential V = Potential::quadratic_random(1.0, 0.0);
  PacketParams s;
  PacketTrajectory traj = constant_traj(s, 2.5e-4, 0.1);
  WField w0 = w_initial(1.0, -20.0, 20.0, 64);
  WPropagator prop(-20.0, 20.0, 64);
  CHECK_THROWS_AS(propagate_w(w0, traj, 0, V, {}, 0.1, 2.5e-4, {0.1}, prop), StageError);
  CHECK_THROWS_AS(propagate_w(w0, traj, 0, V, {}, 0.1, 7.5e-4, {0.1}, prop), StageError);
}
