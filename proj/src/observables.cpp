#include "gwpt/observables.hpp"

#include <atomic>
#include <cmath>
#include <memory>

#include "gwpt/parallel.hpp"

namespace gwpt {

std::vector<double> density(const WaveField& psi) {
  std::vector<double> rho(psi.values.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.values[i]);
  return rho;
}

namespace {

// d_x psi by spectral differentiation.
std::vector<cplx> spectral_dx(const WaveField& psi, Fft1D* fft) {
  std::unique_ptr<Fft1D> own;
  if (!fft) {
    own = std::make_unique<Fft1D>(psi.n());
    fft = own.get();
  }
  std::vector<cplx> d(psi.values);
  fft->forward(d.data());
  double dk = 2.0 * pi / psi.length();
  int n = psi.n();
  double inv_n = 1.0 / n;
  for (int m = 0; m < n; ++m) {
    double k = dk * fft->mode(m);
    if (2 * m == n) k = 0.0;  // Nyquist mode has no well-defined odd derivative
    d[m] *= cplx(0.0, k * inv_n);
  }
  fft->backward(d.data());
  return d;
}

}  // namespace

std::vector<double> current(const WaveField& psi, Fft1D* fft) {
  std::vector<cplx> d = spectral_dx(psi, fft);
  std::vector<double> j(psi.values.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    j[i] = psi.eps * std::imag(std::conj(psi.values[i]) * d[i]);
  return j;
}

double jtilde(const WaveField& psi, Fft1D* fft) {
  std::vector<double> j = current(psi, fft);
  return pairwise_sum(j) * psi.dx();
}

std::pair<double, double> expectation_values(const WaveField& psi, Fft1D* fft) {
  double m = psi.mass();
  std::vector<double> xq(psi.values.size());
  for (int i = 0; i < psi.n(); ++i) xq[i] = psi.x(i) * std::norm(psi.values[i]);
  double q = pairwise_sum(xq) * psi.dx() / m;
  double p = jtilde(psi, fft) / m;
  return {q, p};
}

double gamma_norm(const std::vector<WaveField>& fields, const CollocationGrid& grid) {
  if (fields.size() != grid.size())
    throw StageError(Stage::stats, "gamma_norm: fields/nodes length mismatch");
  std::vector<double> masses(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) masses[k] = fields[k].mass();
  return std::sqrt(expect(masses, grid));
}

Stats stats_scalar(const std::vector<double>& per_node, const CollocationGrid& grid) {
  Stats s;
  s.mean = expect(per_node, grid);
  s.var = variance(per_node, grid);
  s.sd = std::sqrt(s.var);
  return s;
}

ProfileStats stats_profile(const std::vector<std::vector<double>>& per_node,
                           const CollocationGrid& grid, unsigned threads) {
  if (per_node.size() != grid.size())
    throw StageError(Stage::stats, "stats_profile: profiles/nodes length mismatch");
  std::size_t len = per_node.front().size();
  ProfileStats out;
  out.mean.resize(len);
  out.sd.resize(len);
  parallel_for(len, threads, [&](std::size_t i) {
    std::vector<double> col(per_node.size());
    for (std::size_t k = 0; k < per_node.size(); ++k) col[k] = per_node[k][i];
    Stats s = stats_scalar(col, grid);
    out.mean[i] = s.mean;
    out.sd[i] = s.sd;
  });
  return out;
}

double er_psi(const std::vector<WaveField>& gwpt, const std::vector<WaveField>& ref,
              const CollocationGrid& m5) {
  if (gwpt.size() != m5.size() || ref.size() != m5.size())
    throw StageError(Stage::stats, "er_psi: per-node field counts must match the grid");
  std::vector<double> diff2(m5.size()), ref2(m5.size());
  for (std::size_t k = 0; k < m5.size(); ++k) {
    const WaveField& g = gwpt[k];
    const WaveField& d = ref[k];
    if (g.n() != d.n()) throw StageError(Stage::stats, "er_psi: mismatched x grids");
    std::vector<double> dd(g.values.size()), rr(g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      dd[i] = std::norm(g.values[i] - d.values[i]);
      rr[i] = std::norm(d.values[i]);
    }
    diff2[k] = pairwise_sum(dd) * g.dx();
    ref2[k] = pairwise_sum(rr) * d.dx();
  }
  return std::sqrt(expect(diff2, m5) / expect(ref2, m5));
}

JError er_j(const std::vector<double>& jg, const std::vector<double>& jd,
            const CollocationGrid& grid) {
  if (jg.size() != jd.size() || jg.size() != grid.size())
    throw StageError(Stage::stats, "er_j: per-node value counts must match the grid");
  std::vector<double> delta(jg.size());
  for (std::size_t k = 0; k < jg.size(); ++k) delta[k] = jg[k] - jd[k];
  double mean_delta = expect(delta, grid);
  double sd_delta = sd(delta, grid);
  double mean_ref = expect(jd, grid);
  double sd_ref = sd(jd, grid);

  JError e;
  if (std::abs(mean_ref) < 1e-14 || sd_ref < 1e-14) {
    e.absolute = true;
    e.er1 = std::abs(mean_delta);
    e.er2 = sd_delta;
  } else {
    e.er1 = std::abs(mean_delta / mean_ref);
    e.er2 = std::abs(sd_delta / sd_ref);
  }
  return e;
}

double z_derivative_max(const std::vector<const cplx*>& per_node, std::size_t space_len,
                        const CollocationGrid& grid, int order, unsigned threads) {
  if (grid.dim() != 1) throw StageError(Stage::stats, "z_derivative_max needs 1-D z");
  if (grid.size() < 8) throw StageError(Stage::stats, "z_derivative_max needs >= 8 z nodes");
  if (order != 1 && order != 2)
    throw StageError(Stage::stats, "z_derivative_max: order must be 1 or 2");
  const std::vector<double>& zs = grid.axis_nodes();
  const int refine = 4;

  std::vector<double> partial(space_len, 0.0);
  parallel_for(space_len, threads, [&](std::size_t i) {
    std::vector<double> col(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) col[k] = per_node[k][i].real();
    SplineR s(zs, col);
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < zs.size(); ++k) {
      for (int r = 0; r < refine; ++r) {
        double z = zs[k] + (zs[k + 1] - zs[k]) * r / refine;
        double v = order == 1 ? s.derivative(z) : s.second_derivative(z);
        best = std::max(best, std::abs(v));
      }
    }
    double v = order == 1 ? s.derivative(zs.back()) : s.second_derivative(zs.back());
    partial[i] = std::max(best, std::abs(v));
  });
  double global = 0.0;
  for (double v : partial) global = std::max(global, v);
  return global;
}

double z_derivative_max(const std::vector<WaveField>& fields, const CollocationGrid& grid,
                        int order, unsigned threads) {
  std::vector<const cplx*> ptrs(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) ptrs[k] = fields[k].values.data();
  return z_derivative_max(ptrs, fields.front().values.size(), grid, order, threads);
}

double z_derivative_max(const std::vector<WField>& fields, const CollocationGrid& grid,
                        int order, unsigned threads) {
  std::vector<const cplx*> ptrs(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) ptrs[k] = fields[k].values.data();
  return z_derivative_max(ptrs, fields.front().values.size(), grid, order, threads);
}

}  // namespace gwpt
