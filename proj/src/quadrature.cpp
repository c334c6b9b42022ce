#include "gwpt/grid.hpp"

#include <lapacke.h>

#include <cmath>

namespace gwpt {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, probability
// weights the squared first eigenvector components. The recurrences below are
// for Legendre (uniform density on [-1,1]) and probabilists' Hermite
// (standard normal density); in both normalizations the density is already
// absorbed, so weights sum to one.
void gauss_rule(Dist dist, int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  std::vector<double> off(n > 1 ? n - 1 : 1, 0.0);
  for (int i = 1; i < n; ++i) {
    off[i - 1] = dist == Dist::uniform ? i / std::sqrt(4.0 * i * i - 1.0)
                                       : std::sqrt(static_cast<double>(i));
  }
  std::vector<double> vec(static_cast<std::size_t>(n) * n, 0.0);
  lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', n, nodes.data(), off.data(),
                                  vec.data(), n);
  if (info != 0) throw StageError(Stage::config, "quadrature eigensolve failed");

  weights.assign(n, 0.0);
  for (int j = 0; j < n; ++j) weights[j] = vec[j] * vec[j];

  // Enforce exact node symmetry about zero and unit weight sum.
  for (int j = 0; j < n / 2; ++j) {
    int k = n - 1 - j;
    double x = 0.5 * (nodes[k] - nodes[j]);
    nodes[j] = -x;
    nodes[k] = x;
    double w = 0.5 * (weights[j] + weights[k]);
    weights[j] = weights[k] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  double total = pairwise_sum(weights);
  for (double& w : weights) w /= total;
}

}  // namespace

CollocationGrid CollocationGrid::build(Dist dist, int n_per_axis, int dim, Level level) {
  if (n_per_axis < 1)
    throw StageError(Stage::config, "collocation grid needs n_per_axis >= 1");
  if (dim != 1 && dim != 2)
    throw StageError(Stage::config, "collocation grid dim must be 1 or 2");

  CollocationGrid g;
  g.dist_ = dist;
  g.dim_ = dim;
  g.n_axis_ = n_per_axis;
  g.level_ = level;

  std::vector<double> w1;
  gauss_rule(dist, n_per_axis, g.axis_, w1);

  if (dim == 1) {
    g.weights_ = w1;
  } else {
    g.weights_.resize(static_cast<std::size_t>(n_per_axis) * n_per_axis);
    for (int i = 0; i < n_per_axis; ++i)
      for (int j = 0; j < n_per_axis; ++j)
        g.weights_[static_cast<std::size_t>(i) * n_per_axis + j] = w1[i] * w1[j];
  }
  return g;
}

ZPoint CollocationGrid::node(std::size_t k) const {
  ZPoint z;
  if (dim_ == 1) {
    z.z1 = axis_[k];
  } else {
    z.z1 = axis_[k / n_axis_];
    z.z2 = axis_[k % n_axis_];
  }
  return z;
}

double expect(const std::vector<double>& values, const CollocationGrid& grid) {
  if (values.size() != grid.size())
    throw StageError(Stage::stats, "expect: values/nodes length mismatch");
  std::vector<double> terms(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) terms[k] = values[k] * grid.weight(k);
  return pairwise_sum(terms);
}

double variance(const std::vector<double>& values, const CollocationGrid& grid) {
  std::vector<double> sq(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) sq[k] = values[k] * values[k];
  double m = expect(values, grid);
  double v = expect(sq, grid) - m * m;
  return v > 0.0 ? v : 0.0;
}

double sd(const std::vector<double>& values, const CollocationGrid& grid) {
  return std::sqrt(variance(values, grid));
}

}  // namespace gwpt
