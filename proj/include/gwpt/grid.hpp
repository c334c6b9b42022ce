#pragma once

#include <vector>

#include "gwpt/util.hpp"

namespace gwpt {

enum class Dist { uniform, gaussian };  // U(-1,1) / standard normal, per axis
enum class Level { m1, m2, m3, m4, m5 };

struct ZPoint {
  double z1 = 0.0;
  double z2 = 0.0;
};

// Collocation nodes z_k and probability weights nu_k. The weights absorb the
// density pi(z), so expectations are plain weighted sums and the weights sum
// to one. Tensor grids (dim = 2) order nodes axis-1 major.
class CollocationGrid {
public:
  static CollocationGrid build(Dist dist, int n_per_axis, int dim, Level level = Level::m1);

  Dist dist() const { return dist_; }
  int dim() const { return dim_; }
  int n_per_axis() const { return n_axis_; }
  Level level() const { return level_; }
  void set_level(Level l) { level_ = l; }
  std::size_t size() const { return weights_.size(); }

  ZPoint node(std::size_t k) const;
  const std::vector<double>& axis_nodes() const { return axis_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t k) const { return weights_[k]; }

  // Same nodes and weights would be produced: dist, size and dim all match.
  bool same_nodes(const CollocationGrid& other) const {
    return dist_ == other.dist_ && dim_ == other.dim_ && n_axis_ == other.n_axis_;
  }

private:
  Dist dist_ = Dist::uniform;
  int dim_ = 1;
  int n_axis_ = 0;
  Level level_ = Level::m1;
  std::vector<double> axis_;     // per-axis nodes, strictly increasing
  std::vector<double> weights_;  // probability weights, one per node
};

double expect(const std::vector<double>& values, const CollocationGrid& grid);
double variance(const std::vector<double>& values, const CollocationGrid& grid);
double sd(const std::vector<double>& values, const CollocationGrid& grid);

}  // namespace gwpt
