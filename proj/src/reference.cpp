#include "gwpt/reference.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "gwpt/parallel.hpp"

namespace gwpt {

WaveField ds_initial(const PacketParams& s, const XGrid& xg, double eps, double amplitude) {
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

namespace {

struct PhaseTables {
  std::vector<cplx> pot_half;  // exp(-i V dt / (2 eps))
  std::vector<cplx> kin;       // exp(-i eps k^2 dt / 2) / n
};

PhaseTables make_tables(const WaveField& psi, const Potential& V, const ZPoint& z,
                        double eps, double dt, const Fft1D& fft) {
  int n = psi.n();
  PhaseTables tb;
  tb.pot_half.resize(n);
  tb.kin.resize(n);
  for (int i = 0; i < n; ++i)
    tb.pot_half[i] = std::polar(1.0, -V.value(psi.x(i), z) * dt / (2.0 * eps));
  double dk = 2.0 * pi / psi.length();
  double inv_n = 1.0 / n;
  for (int m = 0; m < n; ++m) {
    double k = dk * fft.mode(m);
    tb.kin[m] = std::polar(inv_n, -0.5 * eps * k * k * dt);
  }
  return tb;
}

void strang_step(WaveField& psi, const PhaseTables& tb, Fft1D& fft) {
  int n = psi.n();
  for (int i = 0; i < n; ++i) psi.values[i] *= tb.pot_half[i];
  fft.forward(psi.values.data());
  for (int m = 0; m < n; ++m) psi.values[m] *= tb.kin[m];
  fft.backward(psi.values.data());
  for (int i = 0; i < n; ++i) psi.values[i] *= tb.pot_half[i];
}

}  // namespace

void ds_step(WaveField& psi, const Potential& V, const ZPoint& z, double eps, double dt,
             Fft1D& fft) {
  if (fft.size() != psi.n()) throw StageError(Stage::reference, "ds_step: fft size mismatch");
  PhaseTables tb = make_tables(psi, V, z, eps, dt, fft);
  strang_step(psi, tb, fft);
  psi.time += dt;
}

DsRun ds_evolve(const WaveField& psi0, const Potential& V, const ZPoint& z, double eps,
                double dt, const std::vector<double>& out_times, Fft1D& fft) {
  double t_end = 0.0;
  for (double t : out_times) t_end = std::max(t_end, t);
  auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
  if (std::abs(n_steps * dt - t_end) > 1e-9)
    throw StageError(Stage::reference, "output times must be multiples of the DS step");

  DsRun run;
  run.snapshots.resize(out_times.size());
  WaveField psi = psi0;
  psi.time = 0.0;
  double mass0 = psi.mass();
  PhaseTables tb = make_tables(psi, V, z, eps, dt, fft);

  auto record = [&](std::size_t step) {
    for (std::size_t i = 0; i < out_times.size(); ++i) {
      auto want = static_cast<std::size_t>(std::llround(out_times[i] / dt));
      if (want == step && std::abs(out_times[i] - step * dt) < 1e-9) run.snapshots[i] = psi;
    }
  };

  record(0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    strang_step(psi, tb, fft);
    psi.time = (k + 1) * dt;
    record(k + 1);
  }
  run.mass_drift = std::abs(psi.mass() / mass0 - 1.0);
  return run;
}

std::vector<DsRun> ds_solve(const std::vector<WaveField>& psi0, const CollocationGrid& m4,
                            const Potential& V, double eps, double dt,
                            const std::vector<double>& out_times, unsigned threads) {
  if (psi0.size() != m4.size())
    throw StageError(Stage::reference, "ds_solve: one initial field per node required");
  for (const auto& f : psi0)
    if (f.n() != psi0.front().n())
      throw StageError(Stage::reference, "ds_solve: all nodes must share the x grid");

  std::vector<DsRun> out(psi0.size());
  int n = psi0.front().n();
  parallel_for_ctx(
      psi0.size(), threads, [n] { return std::make_unique<Fft1D>(n); },
      [&](std::unique_ptr<Fft1D>& fft, std::size_t k) {
        try {
          out[k] = ds_evolve(psi0[k], V, m4.node(k), eps, dt, out_times, *fft);
        } catch (const StageError& e) {
          throw StageError(Stage::reference, "node " + std::to_string(k) + ": " + e.what());
        }
      });
  return out;
}

}  // namespace gwpt
