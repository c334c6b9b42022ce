#include "gwpt/field.hpp"

#include <cmath>

namespace gwpt {

double WField::norm2() const {
  std::vector<double> sq(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) sq[j] = std::norm(values[j]);
  return pairwise_sum(sq) * d_eta();
}

double WField::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

double WField::boundary_ratio() const {
  double m = max_abs();
  if (m == 0.0) return 0.0;
  double edge = std::max(std::abs(values.front()), std::abs(values.back()));
  return edge / m;
}

WField w_initial(double amplitude, double eta_min, double eta_max, int n_eta) {
  if (!(amplitude > 0.0)) throw StageError(Stage::wprop, "w_initial: amplitude must be > 0");
  if (!is_pow2(n_eta)) throw StageError(Stage::wprop, "w_initial: n_eta must be a power of two");
  WField w;
  w.eta_min = eta_min;
  w.eta_max = eta_max;
  w.values.resize(n_eta);
  for (int j = 0; j < n_eta; ++j) {
    double e = w.eta(j);
    w.values[j] = amplitude * std::exp(-e * e);
  }
  return w;
}

double WaveField::mass() const {
  std::vector<double> sq(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) sq[j] = std::norm(values[j]);
  return pairwise_sum(sq) * dx();
}

double packet_amplitude(double alpha_I0, double eps) {
  return std::pow(2.0 * alpha_I0 / (pi * eps), 0.25);
}

}  // namespace gwpt
