#pragma once

#include <cstdint>
#include <vector>

#include "gwpt/field.hpp"
#include "gwpt/grid.hpp"
#include "gwpt/potential.hpp"

namespace gwpt {

// Hamilton dynamics per collocation node, the epsilon -> 0 comparator.
struct ClassicalTrajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> q, p;  // [node][time index]

  std::size_t step_of(double t) const;
  std::vector<double> q_at(double t) const;  // per-node slice
  std::vector<double> p_at(double t) const;
};

struct ClassicalInitial {
  double q0_base = 0.0, q0_slope = 0.0;  // q0(z) = q0_base + q0_slope * z1
  double p0_base = 0.0, p0_slope = 0.0;
};

ClassicalTrajectory hamilton_integrate(const CollocationGrid& grid, const Potential& V,
                                       const ClassicalInitial& ic, double dt, double T,
                                       unsigned threads = 0);

// Position (or current) density on x cells of width aggregate * xg.dx().
// Two estimators: weighted histogram of the node samples, and the
// derivative form summing pi(z)/|dq/dz| over the roots of q(z) = x on a
// fine splined z grid. `combined` prefers the derivative form away from
// caustic cells.
struct ClassicalProfile {
  std::vector<double> x_centers;
  std::vector<double> histogram;
  std::vector<double> derivative;
  std::vector<std::uint8_t> caustic;  // 1 where only the histogram is reliable
  std::vector<double> combined;
  double cell_width = 0.0;
};

ClassicalProfile classical_density(const std::vector<double>& q_nodes,
                                   const CollocationGrid& grid, const XGrid& xg,
                                   int aggregate = 32);
ClassicalProfile classical_current(const std::vector<double>& q_nodes,
                                   const std::vector<double>& p_nodes,
                                   const CollocationGrid& grid, const XGrid& xg,
                                   int aggregate = 32);

struct ClassicalMoments {
  double mean_q = 0.0, var_q = 0.0;
  double mean_p = 0.0, var_p = 0.0;
};
ClassicalMoments classical_moments(const std::vector<double>& q_nodes,
                                   const std::vector<double>& p_nodes,
                                   const CollocationGrid& grid);

}  // namespace gwpt
