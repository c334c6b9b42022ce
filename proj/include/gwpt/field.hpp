#pragma once

#include <vector>

#include "gwpt/util.hpp"

namespace gwpt {

// Rescaled non-oscillatory field w(t, eta) on a uniform periodic grid.
// The propagator is unitary, so the discrete L2 norm is a conserved
// diagnostic, and |w| at the box edge must stay negligible.
struct WField {
  double eta_min = -20.0;
  double eta_max = 20.0;
  std::vector<cplx> values;
  double time = 0.0;

  int n() const { return static_cast<int>(values.size()); }
  double length() const { return eta_max - eta_min; }
  double d_eta() const { return length() / n(); }
  double eta(int j) const { return eta_min + j * d_eta(); }

  double norm2() const;           // sum |w|^2 * d_eta
  double max_abs() const;
  double boundary_ratio() const;  // |w| at the box edge over max |w|
};

WField w_initial(double amplitude, double eta_min, double eta_max, int n_eta);

struct XGrid {
  double x_min = -pi;
  double x_max = pi;
  int n = 9600;

  double length() const { return x_max - x_min; }
  double dx() const { return length() / n; }
  double x(int i) const { return x_min + i * dx(); }
};

// Wave function on a uniform periodic x grid.
struct WaveField {
  double x_min = -pi;
  double x_max = pi;
  std::vector<cplx> values;
  double time = 0.0;
  double eps = 0.0;

  int n() const { return static_cast<int>(values.size()); }
  double length() const { return x_max - x_min; }
  double dx() const { return length() / n(); }
  double x(int i) const { return x_min + i * dx(); }
  XGrid grid() const { return XGrid{x_min, x_max, n()}; }

  double mass() const;  // sum |psi|^2 * dx
};

// Amplitude giving the initial Gaussian packet unit mass.
double packet_amplitude(double alpha_I0, double eps);

}  // namespace gwpt
