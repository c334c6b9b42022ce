#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gwpt/observables.hpp"
#include "gwpt/reconstruct.hpp"
#include "gwpt/reference.hpp"

using namespace gwpt;

namespace {

PacketParams standard_ic() {
  PacketParams s;
  s.q = 0.5 * pi;
  s.p = 0.0;
  s.alpha = cplx(0.0, 1.0);
  s.B = 1.0;
  return s;
}

WaveField plane_wave(double amp, int mode, double eps, int n) {
  WaveField psi;
  psi.values.resize(n);
  psi.eps = eps;
  for (int i = 0; i < n; ++i) psi.values[i] = amp * std::polar(1.0, mode * psi.x(i));
  return psi;
}

}  // namespace

TEST_CASE("density of a plane wave is the squared amplitude") {
  WaveField psi = plane_wave(1.7, 5, 0.1, 256);
  for (double r : density(psi)) CHECK(r == doctest::Approx(1.7 * 1.7).epsilon(1e-13));
}

TEST_CASE("current of a plane wave is amplitude^2 times momentum") {
  double eps = 1.0 / 32.0;
  int mode = 6;
  double amp = 0.8;
  WaveField psi = plane_wave(amp, mode, eps, 512);
  double p = eps * mode;
  for (double v : current(psi)) CHECK(v == doctest::Approx(amp * amp * p).epsilon(1e-11));
  CHECK(jtilde(psi) == doctest::Approx(2.0 * pi * amp * amp * p).epsilon(1e-11));
}

TEST_CASE("real-valued states carry no current") {
  WaveField psi;
  psi.values.resize(256);
  psi.eps = 0.05;
  for (int i = 0; i < 256; ++i) psi.values[i] = std::exp(-2.0 * std::pow(psi.x(i), 2));
  for (double v : current(psi)) CHECK(std::abs(v) <= 1e-14);
  CHECK(std::abs(jtilde(psi)) <= 1e-10);
}

TEST_CASE("expectation values of the initial packet are (q0, p0)") {
  double eps = 1.0 / 64.0;
  PacketParams s = standard_ic();
  s.q = 0.3;
  s.p = 0.25;
  WaveField psi = ds_initial(s, XGrid{-pi, pi, 2048}, eps, packet_amplitude(1.0, eps));
  auto [q, p] = expectation_values(psi);
  CHECK(q == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(p == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("Ehrenfest: quadratic potentials track the packet ODEs exactly") {
  Potential V = Potential::quadratic_random(1.0, 0.0);
  double eps = 1.0 / 64.0;
  double dt = 2.5e-4;
  PacketParams s = standard_ic();
  XGrid xg{-pi, pi, 4096};
  double amp = packet_amplitude(1.0, eps);
  WaveField psi = ds_initial(s, xg, eps, amp);
  Fft1D fft(xg.n);
  PacketParams hp = s;
  for (int i = 0; i < 2000; ++i) hp = rk4_step(hp, V, {}, eps, dt, PhaseConvention::full_alpha);
  WaveField h = heller_exact(hp, xg, eps, amp);
  auto [q, p] = expectation_values(h, &fft);
  CHECK(std::abs(q - hp.q) <= 1e-6);
  CHECK(std::abs(p - hp.p) <= 1e-6);
  // j-tilde of a Gaussian packet equals p * mass.
  CHECK(jtilde(h, &fft) == doctest::Approx(hp.p * h.mass()).epsilon(1e-8));
}

TEST_CASE("gamma_norm of normalized per-node fields is one and quadrature-stable") {
  double eps = 1.0 / 32.0;
  XGrid xg{-pi, pi, 1024};
  auto make_fields = [&](const CollocationGrid& g) {
    std::vector<WaveField> fields(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      PacketParams s = standard_ic();
      s.q = 0.5 * pi + 0.3 * g.node(k).z1;
      fields[k] = ds_initial(s, xg, eps, packet_amplitude(1.0, eps));
    }
    return fields;
  };
  auto g16 = CollocationGrid::build(Dist::uniform, 16, 1);
  auto g32 = CollocationGrid::build(Dist::uniform, 32, 1);
  double n16 = gamma_norm(make_fields(g16), g16);
  double n32 = gamma_norm(make_fields(g32), g32);
  CHECK(n16 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(n16 - n32) <= 1e-6);
}

TEST_CASE("er_psi: zero on identical input, |e^{i theta} - 1| on a global phase") {
  double eps = 1.0 / 32.0;
  auto g = CollocationGrid::build(Dist::uniform, 8, 1);
  XGrid xg{-pi, pi, 512};
  std::vector<WaveField> fields(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    PacketParams s = standard_ic();
    s.q += 0.2 * g.node(k).z1;
    fields[k] = ds_initial(s, xg, eps, packet_amplitude(1.0, eps));
  }
  CHECK(er_psi(fields, fields, g) == 0.0);

  double theta = 1e-3;
  std::vector<WaveField> rotated = fields;
  for (auto& f : rotated)
    for (auto& v : f.values) v *= std::polar(1.0, theta);
  double expected = std::abs(std::polar(1.0, theta) - 1.0);
  CHECK(er_psi(rotated, fields, g) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("er_j: identities, homogeneity and the degenerate guard") {
  auto g = CollocationGrid::build(Dist::uniform, 8, 1);
  std::vector<double> jd(g.size()), jg(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    jd[k] = 1.0 + 0.3 * g.node(k).z1;
    jg[k] = jd[k] + 1e-6 * (1.0 + g.node(k).z1 * g.node(k).z1);
  }
  JError same = er_j(jd, jd, g);
  CHECK(same.er1 == 0.0);
  CHECK(same.er2 == 0.0);
  CHECK_FALSE(same.absolute);

  JError e = er_j(jg, jd, g);
  std::vector<double> jg2(jg), jd2(jd);
  for (auto& v : jg2) v *= 7.5;
  for (auto& v : jd2) v *= 7.5;
  JError e2 = er_j(jg2, jd2, g);
  CHECK(e.er1 == doctest::Approx(e2.er1).epsilon(1e-12));
  CHECK(e.er2 == doctest::Approx(e2.er2).epsilon(1e-12));

  std::vector<double> zero(g.size(), 0.0);
  JError guard = er_j(jg, zero, g);
  CHECK(guard.absolute);
}

TEST_CASE("z_derivative_max: zero for z-independent fields, slopes for sin(3z)") {
  auto g = CollocationGrid::build(Dist::uniform, 48, 1);
  int len = 64;
  std::vector<std::vector<cplx>> values(g.size(), std::vector<cplx>(len));
  std::vector<const cplx*> ptrs(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int i = 0; i < len; ++i) values[k][i] = cplx(0.7, 0.2);  // constant
    ptrs[k] = values[k].data();
  }
  CHECK(z_derivative_max(ptrs, len, g, 1) <= 1e-10);

  for (std::size_t k = 0; k < g.size(); ++k) {
    double z = g.node(k).z1;
    for (int i = 0; i < len; ++i) {
      double f = 0.5 + 0.5 * std::cos(2.0 * pi * i / len);
      values[k][i] = cplx(std::sin(3.0 * z) * f, 0.3);
    }
  }
  double d1 = z_derivative_max(ptrs, len, g, 1);
  CHECK(d1 == doctest::Approx(3.0).epsilon(2e-3));
  double d2 = z_derivative_max(ptrs, len, g, 2);
  CHECK(d2 == doctest::Approx(9.0).epsilon(2e-2));

  auto small = CollocationGrid::build(Dist::uniform, 4, 1);
  CHECK_THROWS_AS(z_derivative_max(ptrs, len, small, 1), StageError);
}

TEST_CASE("stats of profiles and scalars") {
  auto g = CollocationGrid::build(Dist::uniform, 12, 1);
  std::vector<double> lin(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) lin[k] = 2.0 * g.node(k).z1;
  Stats s = stats_scalar(lin, g);
  CHECK(s.mean == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(s.var == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(s.sd == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-12));

  std::vector<std::vector<double>> prof(g.size(), std::vector<double>(5));
  for (std::size_t k = 0; k < g.size(); ++k)
    for (int i = 0; i < 5; ++i) prof[k][i] = i + g.node(k).z1;
  ProfileStats ps = stats_profile(prof, g);
  for (int i = 0; i < 5; ++i) {
    CHECK(ps.mean[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-12));
    CHECK(ps.sd[i] == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  }
}
