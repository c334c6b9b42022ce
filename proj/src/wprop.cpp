#include "gwpt/wprop.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

namespace gwpt {

namespace {
constexpr double boundary_tol = 1e-8;
}

WPropagator::WPropagator(double eta_min, double eta_max, int n_eta, WScheme scheme)
    : scheme_(scheme), n_(n_eta), eta_min_(eta_min), eta_max_(eta_max), fft_(n_eta),
      scratch_(n_eta) {
  if (!is_pow2(n_eta)) throw StageError(Stage::wprop, "n_eta must be a power of two");
  if (scheme_ != WScheme::quadratic_exact) return;

  // H0 = -1/2 d_eta^2 + 2 eta^2 with the spectral periodic second derivative;
  // symmetric circulant kinetic part, so one dense eigensolve suffices.
  double L = eta_max - eta_min;
  double dk = 2.0 * pi / L;
  std::vector<double> kin_row(n_);
  for (int d = 0; d < n_; ++d) {
    double acc = 0.0;
    for (int m = 0; m < n_; ++m) {
      double k = dk * fft_.mode(m);
      acc += k * k * std::cos(2.0 * pi * m * d / n_);
    }
    kin_row[d] = 0.5 * acc / n_;  // row of -1/2 d^2
  }
  double d_eta = L / n_;
  std::vector<double> h(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    double eta = eta_min + i * d_eta;
    for (int j = 0; j < n_; ++j) {
      int d = (i - j + n_) % n_;
      h[static_cast<std::size_t>(i) * n_ + j] = kin_row[d] + (i == j ? 2.0 * eta * eta : 0.0);
    }
  }
  lambda_.assign(n_, 0.0);
  lapack_int info =
      LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', n_, h.data(), n_, lambda_.data());
  if (info != 0) throw StageError(Stage::wprop, "eigensolve of the quadratic operator failed");
  q_ = std::move(h);  // column m holds eigenvector m: q_[i*n + m]
}

void WPropagator::phase_half(WField& w, const WCoeffs& c, const Potential& V,
                             const ZPoint& z, double eps, double dt,
                             bool include_eta2) const {
  double half = 0.5 * dt;
  for (int j = 0; j < n_; ++j) {
    double eta = w.eta(j);
    double u = u_r_eval(V, z, c.q, c.B, eta, eps) / eps;
    if (include_eta2) u += 2.0 * c.alpha_I * eta * eta;
    w.values[j] *= std::polar(1.0, -u * half);
  }
}

void WPropagator::quadratic_flow(WField& w, double theta) {
  // w <- Q exp(-i theta Lambda) Q^T w
  for (int m = 0; m < n_; ++m) scratch_[m] = cplx(0.0, 0.0);
  for (int i = 0; i < n_; ++i) {
    const double* row = &q_[static_cast<std::size_t>(i) * n_];
    cplx wi = w.values[i];
    for (int m = 0; m < n_; ++m) scratch_[m] += row[m] * wi;
  }
  for (int m = 0; m < n_; ++m) scratch_[m] *= std::polar(1.0, -theta * lambda_[m]);
  for (int i = 0; i < n_; ++i) {
    const double* row = &q_[static_cast<std::size_t>(i) * n_];
    cplx acc(0.0, 0.0);
    for (int m = 0; m < n_; ++m) acc += row[m] * scratch_[m];
    w.values[i] = acc;
  }
}

void WPropagator::kinetic_fourier(WField& w, double theta) {
  double dk = 2.0 * pi / w.length();
  fft_.forward(w.values.data());
  double inv_n = 1.0 / n_;
  for (int m = 0; m < n_; ++m) {
    double k = dk * fft_.mode(m);
    w.values[m] *= std::polar(inv_n, -0.5 * theta * k * k);
  }
  fft_.backward(w.values.data());
}

void WPropagator::step(WField& w, const WCoeffs& c0, const WCoeffs& chalf,
                       const WCoeffs& c1, const Potential& V, const ZPoint& z, double eps,
                       double dt) {
  if (w.n() != n_) throw StageError(Stage::wprop, "w grid size mismatch");
  if (scheme_ == WScheme::quadratic_exact) {
    // Simpson integral of alpha_I over the step drives the exact flow.
    double theta = dt / 6.0 * (c0.alpha_I + 4.0 * chalf.alpha_I + c1.alpha_I);
    phase_half(w, c0, V, z, eps, dt, false);
    quadratic_flow(w, theta);
    phase_half(w, c1, V, z, eps, dt, false);
  } else {
    double theta = dt * 0.5 * (c0.alpha_I + c1.alpha_I);
    phase_half(w, c0, V, z, eps, dt, true);
    kinetic_fourier(w, theta);
    phase_half(w, c1, V, z, eps, dt, true);
  }
  w.time += dt;
  double br = w.boundary_ratio();
  if (br > boundary_tol)
    throw StageError(Stage::wprop,
                     "w support reached the eta boundary (edge/max = " + std::to_string(br) + ")");
}

WRun propagate_w(const WField& w0, const PacketTrajectory& traj, std::size_t node,
                 const Potential& V, const ZPoint& z, double eps, double dt_w,
                 const std::vector<double>& out_times, WPropagator& prop) {
  double ratio = dt_w / traj.dt;
  auto m = static_cast<std::size_t>(std::llround(ratio));
  if (m < 2 || m % 2 != 0 || std::abs(ratio - static_cast<double>(m)) > 1e-9)
    throw StageError(Stage::wprop, "dt_w must be an even integer multiple of dt_ode");

  double t_end = 0.0;
  for (double t : out_times) t_end = std::max(t_end, t);
  auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt_w));
  if (std::abs(n_steps * dt_w - t_end) > 1e-9)
    throw StageError(Stage::wprop, "output times must lie on the dt_w grid");
  if (n_steps * m >= traj.n_times())
    throw StageError(Stage::wprop, "packet trajectory shorter than the w horizon");

  WRun run;
  run.snapshots.resize(out_times.size());
  WField w = w0;
  w.time = 0.0;
  double norm0 = w.norm2();

  auto record = [&](std::size_t step) {
    for (std::size_t i = 0; i < out_times.size(); ++i) {
      auto want = static_cast<std::size_t>(std::llround(out_times[i] / dt_w));
      if (want == step && std::abs(out_times[i] - step * dt_w) < 1e-9)
        run.snapshots[i] = w;
    }
  };

  record(0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const PacketParams& s0 = traj.at(node, k * m);
    const PacketParams& sh = traj.at(node, k * m + m / 2);
    const PacketParams& s1 = traj.at(node, (k + 1) * m);
    try {
      prop.step(w, w_coeffs(s0), w_coeffs(sh), w_coeffs(s1), V, z, eps, dt_w);
    } catch (const StageError& e) {
      throw StageError(Stage::wprop,
                       "t=" + std::to_string((k + 1) * dt_w) + ": " + e.what());
    }
    run.norm_drift = std::max(run.norm_drift, std::abs(w.norm2() / norm0 - 1.0));
    record(k + 1);
  }
  return run;
}

}  // namespace gwpt
