#pragma once

#include <vector>

#include "gwpt/fft.hpp"
#include "gwpt/field.hpp"
#include "gwpt/grid.hpp"
#include "gwpt/spline.hpp"

namespace gwpt {

// Position density |psi|^2.
std::vector<double> density(const WaveField& psi);

// Current density eps * Im(conj(psi) d_x psi), x-derivative spectral.
std::vector<double> current(const WaveField& psi, Fft1D* fft = nullptr);

// Signed x-integral of the current density (the scalar observable used for
// the error statistics).
double jtilde(const WaveField& psi, Fft1D* fft = nullptr);

// (<q>, <p>) of the state.
std::pair<double, double> expectation_values(const WaveField& psi, Fft1D* fft = nullptr);

// sqrt( sum_k nu_k sum_i |psi_k(x_i)|^2 dx ) over aligned per-node fields.
double gamma_norm(const std::vector<WaveField>& fields, const CollocationGrid& grid);

struct Stats {
  double mean = 0.0, var = 0.0, sd = 0.0;
};
Stats stats_scalar(const std::vector<double>& per_node, const CollocationGrid& grid);

struct ProfileStats {
  std::vector<double> mean, sd;
};
ProfileStats stats_profile(const std::vector<std::vector<double>>& per_node,
                           const CollocationGrid& grid, unsigned threads = 0);

// Relative Gamma-norm error between two per-node solution sets on a common
// grid (M5).
double er_psi(const std::vector<WaveField>& gwpt, const std::vector<WaveField>& ref,
              const CollocationGrid& m5);

struct JError {
  double er1 = 0.0;  // |E(jg - jd) / E(jd)|
  double er2 = 0.0;  // |SD(jg - jd) / SD(jd)|
  bool absolute = false;  // denominators below 1e-14: values are absolute errors
};
JError er_j(const std::vector<double>& jtilde_gwpt, const std::vector<double>& jtilde_ref,
            const CollocationGrid& grid);

// Max over (space, z) of |d^order/dz^order Re(field)|, the real part splined
// across the 1-D z nodes per spatial point and sampled on a refined z grid.
double z_derivative_max(const std::vector<const cplx*>& per_node, std::size_t space_len,
                        const CollocationGrid& grid, int order = 1, unsigned threads = 0);
double z_derivative_max(const std::vector<WaveField>& fields, const CollocationGrid& grid,
                        int order = 1, unsigned threads = 0);
double z_derivative_max(const std::vector<WField>& fields, const CollocationGrid& grid,
                        int order = 1, unsigned threads = 0);

}  // namespace gwpt
