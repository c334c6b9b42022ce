#pragma once

#include <vector>

#include "gwpt/potential.hpp"

namespace gwpt {

// Gaussian packet parameters: position, momentum, complex width alpha
// (Im(alpha) > 0), complex phase gamma, and the rescaling factor with
// B^2 = Im(alpha) in one dimension.
struct PacketParams {
  double q = 0.0;
  double p = 0.0;
  cplx alpha{0.0, 1.0};
  cplx gamma{0.0, 0.0};
  double B = 1.0;
};

// gamma convention: the transform evolves gamma with the i*eps*Re(alpha)
// norm correction; the closed-form quadratic-potential solution carries the
// full i*eps*alpha, the difference being the phase the w field accumulates.
enum class PhaseConvention { transform, full_alpha };

PacketParams packet_rhs(const PacketParams& s, const Potential& V, const ZPoint& z,
                        double eps, PhaseConvention pc = PhaseConvention::transform);

// Classical RK4 update of all five components; rejects steps that lose the
// Gaussian decay (Im(alpha) <= 0).
PacketParams rk4_step(const PacketParams& s, const Potential& V, const ZPoint& z,
                      double eps, double dt, PhaseConvention pc = PhaseConvention::transform);

struct PacketTrajectory {
  double dt = 0.0;
  std::vector<double> times;                      // 0 .. T inclusive
  std::vector<std::vector<PacketParams>> nodes;   // [node][time index]

  std::size_t n_nodes() const { return nodes.size(); }
  std::size_t n_times() const { return times.size(); }
  const PacketParams& at(std::size_t node, std::size_t step) const {
    return nodes[node][step];
  }
  std::size_t step_of(double t) const;  // nearest fine index, validated
};

PacketTrajectory integrate_packets(const CollocationGrid& grid, const Potential& V,
                                   double eps, const std::vector<PacketParams>& initial,
                                   double dt, double T, unsigned threads = 0,
                                   PhaseConvention pc = PhaseConvention::transform);

// Taylor remainder of V about q at displacement s = sqrt(eps) eta / B.
double u_r_eval(const Potential& V, const ZPoint& z, double q, double B, double eta,
                double eps);

}  // namespace gwpt
