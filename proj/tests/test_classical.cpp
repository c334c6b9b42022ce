#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gwpt/classical.hpp"

using namespace gwpt;

TEST_CASE("free motion is integrated exactly") {
  auto grid = CollocationGrid::build(Dist::uniform, 8, 1);
  Potential V = Potential::quadratic_random(0.0, 0.0);
  ClassicalInitial ic{0.2, 0.1, 0.5, 0.25};
  ClassicalTrajectory traj = hamilton_integrate(grid, V, ic, 1e-3, 1.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double z = grid.node(k).z1;
    double q0 = 0.2 + 0.1 * z, p0 = 0.5 + 0.25 * z;
    CHECK(traj.q[k].back() == doctest::Approx(q0 + p0).epsilon(1e-13));
    CHECK(traj.p[k].back() == doctest::Approx(p0).epsilon(1e-13));
  }
}

TEST_CASE("harmonic oscillator matches the analytic solution") {
  auto grid = CollocationGrid::build(Dist::uniform, 4, 1);
  Potential V = Potential::quadratic_random(1.0, 0.0);  // omega^2 = 2
  ClassicalInitial ic{0.5 * pi, 0.0, 0.0, 0.0};
  ClassicalTrajectory traj = hamilton_integrate(grid, V, ic, 2.5e-4, 1.0);
  double w = std::sqrt(2.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(traj.q[k].back() - 0.5 * pi * std::cos(w)) <= 1e-10);
    CHECK(std::abs(traj.p[k].back() + 0.5 * pi * w * std::sin(w)) <= 1e-10);
  }
}

TEST_CASE("energy is conserved along the cosine potential") {
  auto grid = CollocationGrid::build(Dist::uniform, 8, 1);
  Potential V = Potential::cosine_random(1.0, 0.9);
  ClassicalInitial ic{0.5 * pi, 0.0, 0.0, 0.0};
  ClassicalTrajectory traj = hamilton_integrate(grid, V, ic, 2.5e-4, 1.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ZPoint z = grid.node(k);
    double e0 = 0.5 * traj.p[k].front() * traj.p[k].front() + V.value(traj.q[k].front(), z);
    double e1 = 0.5 * traj.p[k].back() * traj.p[k].back() + V.value(traj.q[k].back(), z);
    CHECK(std::abs(e1 - e0) <= 1e-8);
  }
}

TEST_CASE("density of q(z) = z under the uniform law is 1/2") {
  auto grid = CollocationGrid::build(Dist::uniform, 64, 1);
  std::vector<double> q(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = grid.node(k).z1;
  XGrid xg{-pi, pi, 4800};
  ClassicalProfile prof = classical_density(q, grid, xg, 32);
  for (std::size_t c = 0; c < prof.x_centers.size(); ++c) {
    double x = prof.x_centers[c];
    if (std::abs(x) < 0.9) CHECK(prof.combined[c] == doctest::Approx(0.5).epsilon(1e-3));
    if (std::abs(x) > 1.1) CHECK(prof.combined[c] == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("density of q(z) = 2z is 1/4 on [-2, 2]") {
  auto grid = CollocationGrid::build(Dist::uniform, 64, 1);
  std::vector<double> q(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = 2.0 * grid.node(k).z1;
  XGrid xg{-pi, pi, 4800};
  ClassicalProfile prof = classical_density(q, grid, xg, 32);
  for (std::size_t c = 0; c < prof.x_centers.size(); ++c) {
    double x = prof.x_centers[c];
    if (std::abs(x) < 1.8) CHECK(prof.combined[c] == doctest::Approx(0.25).epsilon(1e-3));
  }
}

TEST_CASE("histogram and derivative estimators agree away from caustics") {
  auto grid = CollocationGrid::build(Dist::uniform, 1000, 1);
  Potential V = Potential::quadratic_random(1.0, 0.0);
  ClassicalInitial ic{0.5 * pi, 0.25 * pi, 0.0, 0.0};  // random q0
  ClassicalTrajectory traj = hamilton_integrate(grid, V, ic, 1e-3, 0.4);
  std::vector<double> q = traj.q_at(0.4);
  // Wide cells so each holds many weighted samples; the histogram noise per
  // cell scales with the node spacing over the cell width.
  XGrid xg{-pi, pi, 1920};
  ClassicalProfile prof = classical_density(q, grid, xg, 64);
  // Compare strictly inside the support: at the hard support edge the
  // histogram holds partial-cell mass while the derivative form samples the
  // cell center, so those cells differ by construction.
  double qmin = *std::min_element(q.begin(), q.end());
  double qmax = *std::max_element(q.begin(), q.end());
  double l1_diff = 0.0, l1 = 0.0;
  for (std::size_t c = 0; c < prof.x_centers.size(); ++c) {
    if (prof.caustic[c]) continue;
    double x = prof.x_centers[c];
    if (x - prof.cell_width < qmin || x + prof.cell_width > qmax) continue;
    l1_diff += std::abs(prof.histogram[c] - prof.derivative[c]) * prof.cell_width;
    l1 += std::abs(prof.derivative[c]) * prof.cell_width;
  }
  CHECK(l1 > 0.5);
  CHECK(l1_diff / l1 <= 0.02);
}

TEST_CASE("density estimators integrate to one") {
  // Histogram: exact by construction. Derivative form: cell-center sampling
  // is exact for smooth densities; a hard support edge (uniform z, linear q)
  // costs up to one cell of mass at each end.
  auto grid = CollocationGrid::build(Dist::uniform, 200, 1);
  std::vector<double> q(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = 0.7 * grid.node(k).z1 - 0.2;
  XGrid xg{-pi, pi, 4800};
  ClassicalProfile prof = classical_density(q, grid, xg, 32);
  double hist_mass = 0.0, deriv_mass = 0.0;
  for (std::size_t c = 0; c < prof.x_centers.size(); ++c) {
    hist_mass += prof.histogram[c] * prof.cell_width;
    deriv_mass += prof.derivative[c] * prof.cell_width;
  }
  CHECK(hist_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(deriv_mass == doctest::Approx(1.0).epsilon(2e-2));

  auto gh = CollocationGrid::build(Dist::gaussian, 200, 1);
  std::vector<double> qg(gh.size());
  for (std::size_t k = 0; k < gh.size(); ++k) qg[k] = 0.4 * gh.node(k).z1 + 0.1;
  XGrid wide{-3.0, 3.0, 4800};
  ClassicalProfile smooth = classical_density(qg, gh, wide, 32);
  double smooth_mass = 0.0;
  for (std::size_t c = 0; c < smooth.x_centers.size(); ++c)
    smooth_mass += smooth.derivative[c] * smooth.cell_width;
  CHECK(smooth_mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("current profiles: constant momentum scales the density") {
  auto grid = CollocationGrid::build(Dist::uniform, 64, 1);
  std::vector<double> q(grid.size()), p(grid.size(), 0.75);
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = grid.node(k).z1;
  XGrid xg{-pi, pi, 4800};
  ClassicalProfile rho = classical_density(q, grid, xg, 32);
  ClassicalProfile jc = classical_current(q, p, grid, xg, 32);
  for (std::size_t c = 0; c < rho.x_centers.size(); ++c)
    CHECK(jc.combined[c] == doctest::Approx(0.75 * rho.combined[c]).epsilon(1e-9));

  std::vector<double> rest(grid.size(), 0.0);
  ClassicalProfile j0 = classical_current(q, rest, grid, xg, 32);
  for (std::size_t c = 0; c < j0.x_centers.size(); ++c)
    CHECK(std::abs(j0.combined[c]) <= 1e-12);
}

TEST_CASE("caustic cells fall back to the histogram") {
  auto grid = CollocationGrid::build(Dist::uniform, 64, 1);
  std::vector<double> q(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = std::pow(grid.node(k).z1, 3);
  // Cell centers land exactly on 0 where dq/dz vanishes.
  XGrid xg{-1.01, 1.01, 101};
  ClassicalProfile prof = classical_density(q, grid, xg, 1);
  bool flagged = false;
  for (std::size_t c = 0; c < prof.x_centers.size(); ++c)
    if (prof.caustic[c]) {
      flagged = true;
      CHECK(prof.combined[c] == prof.histogram[c]);
    }
  CHECK(flagged);
}

TEST_CASE("moments of q(z) = z and a deterministic ensemble") {
  auto grid = CollocationGrid::build(Dist::uniform, 32, 1);
  std::vector<double> q(grid.size()), p(grid.size(), 0.3);
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = grid.node(k).z1;
  ClassicalMoments m = classical_moments(q, p, grid);
  CHECK(m.mean_q == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(m.var_q == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(m.mean_p == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(m.var_p == doctest::Approx(0.0).epsilon(1e-13));
}
