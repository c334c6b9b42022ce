#include "gwpt/reconstruct.hpp"

#include <cmath>

#include "gwpt/fft.hpp"

namespace gwpt {

WaveField reconstruct_psi(const WField& w, const PacketParams& s, const XGrid& xg,
                          double eps, double* w_mass_outside) {
  if (!(s.alpha.imag() > 0.0))
    throw StageError(Stage::reconstruct, "reconstruct: Im(alpha) must be > 0");
  if (!(s.B > 0.0)) throw StageError(Stage::reconstruct, "reconstruct: B must be > 0");

  int n_eta = w.n();
  Fft1D fft(n_eta);
  std::vector<cplx> coef(w.values);
  fft.forward(coef.data());
  // Reorder to ascending modes -n/2 .. n/2-1 for Horner evaluation.
  std::vector<cplx> ord(n_eta);
  double inv_n = 1.0 / n_eta;
  for (int t = 0; t < n_eta; ++t) {
    int m = t - n_eta / 2;
    ord[t] = coef[(m + n_eta) % n_eta] * inv_n;
  }
  double dk = 2.0 * pi / w.length();
  double guard = w.eta_max - 2.0;
  double scale = s.B / std::sqrt(eps);

  WaveField psi;
  psi.x_min = xg.x_min;
  psi.x_max = xg.x_max;
  psi.values.assign(xg.n, cplx(0.0, 0.0));
  psi.time = w.time;
  psi.eps = eps;

  double alpha_r = s.alpha.real();
  double re_gamma = s.gamma.real();
  double amp = std::exp(-s.gamma.imag() / eps);
  double half_len = 0.5 * xg.length();

  for (int i = 0; i < xg.n; ++i) {
    double xi = wrap_periodic(xg.x(i) - s.q, -half_len, xg.length());
    double eta = scale * xi;
    if (std::abs(eta) > guard) continue;
    // Trig interpolant of w at eta, Horner over ascending modes.
    double phi = dk * (eta - w.eta_min);
    cplx b = std::polar(1.0, phi);
    cplx acc(0.0, 0.0);
    for (int t = n_eta - 1; t >= 0; --t) acc = acc * b + ord[t];
    cplx wval = acc * std::polar(1.0, -phi * (n_eta / 2));
    double phase = (alpha_r * xi * xi + s.p * xi + re_gamma) / eps;
    psi.values[i] = wval * std::polar(amp, phase);
  }

  if (w_mass_outside) {
    double window = scale * half_len;
    double inside = 0.0, total = 0.0;
    for (int j = 0; j < n_eta; ++j) {
      double m2 = std::norm(w.values[j]);
      total += m2;
      if (std::abs(w.eta(j)) <= window) inside += m2;
    }
    *w_mass_outside = total > 0.0 ? 1.0 - inside / total : 0.0;
  }
  return psi;
}

WaveField heller_exact(const PacketParams& s, const XGrid& xg, double eps,
                       double amplitude) {
  WaveField psi;
  psi.x_min = xg.x_min;
  psi.x_max = xg.x_max;
  psi.values.resize(xg.n);
  psi.eps = eps;
  double half_len = 0.5 * xg.length();
  for (int i = 0; i < xg.n; ++i) {
    double xi = wrap_periodic(xg.x(i) - s.q, -half_len, xg.length());
    double decay = (-s.alpha.imag() * xi * xi - s.gamma.imag()) / eps;
    double phase = (s.alpha.real() * xi * xi + s.p * xi + s.gamma.real()) / eps;
    psi.values[i] = amplitude * std::exp(decay) * std::polar(1.0, phase);
  }
  return psi;
}

}  // namespace gwpt
