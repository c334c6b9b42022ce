#pragma once

#include <vector>

#include "gwpt/fft.hpp"
#include "gwpt/field.hpp"
#include "gwpt/packet.hpp"

namespace gwpt {

// Coefficient sample feeding one w step.
struct WCoeffs {
  double alpha_I = 1.0;
  double q = 0.0;
  double B = 1.0;
};

inline WCoeffs w_coeffs(const PacketParams& s) { return {s.alpha.imag(), s.q, s.B}; }

// In eta the equation reads  w_t = -i alpha_I(t) [ -1/2 d_eta^2 + 2 eta^2 ] w
//                                  - i (U_r / eps) w,
// a fixed quadratic operator scaled by alpha_I(t) plus a small multiplicative
// remainder.
//
// quadratic_exact (default): Strang split between U_r/eps and the quadratic
// part; the latter is advanced through its precomputed eigenbasis with the
// Simpson-integrated alpha_I, hence exactly for quadratic potentials where
// U_r vanishes identically.
//
// fourier_strang: pointwise half steps of the full multiplier
// 2 alpha_I eta^2 + U_r/eps around one Fourier kinetic step with the
// trapezoid-averaged alpha_I. Plain second order in dt.
enum class WScheme { quadratic_exact, fourier_strang };

class WPropagator {
public:
  WPropagator(double eta_min, double eta_max, int n_eta,
              WScheme scheme = WScheme::quadratic_exact);

  WScheme scheme() const { return scheme_; }
  int n() const { return n_; }

  // One Strang step of size dt with coefficient samples at t, t+dt/2, t+dt.
  // Signals when the eta-boundary invariant breaks (support escaped the box).
  void step(WField& w, const WCoeffs& c0, const WCoeffs& chalf, const WCoeffs& c1,
            const Potential& V, const ZPoint& z, double eps, double dt);

  // Ground-state eigenvalue of the discretized quadratic operator; ~1 for
  // the [-20,20] box. Exposed for diagnostics.
  double lambda0() const { return lambda_.empty() ? 0.0 : lambda_[0]; }

private:
  void phase_half(WField& w, const WCoeffs& c, const Potential& V, const ZPoint& z,
                  double eps, double dt, bool include_eta2) const;
  void quadratic_flow(WField& w, double theta);
  void kinetic_fourier(WField& w, double theta);

  WScheme scheme_;
  int n_;
  double eta_min_, eta_max_;
  Fft1D fft_;
  std::vector<double> q_;       // eigenvectors of H0, row-major [space][mode]
  std::vector<double> lambda_;  // ascending eigenvalues
  std::vector<cplx> scratch_;
};

struct WRun {
  std::vector<WField> snapshots;  // aligned with the requested output times
  double norm_drift = 0.0;        // max relative deviation from the initial norm
};

// Chains steps over [0, max(out_times)], recording snapshots. dt_w must be an
// even multiple of the trajectory step so the midpoint sample exists.
WRun propagate_w(const WField& w0, const PacketTrajectory& traj, std::size_t node,
                 const Potential& V, const ZPoint& z, double eps, double dt_w,
                 const std::vector<double>& out_times, WPropagator& prop);

}  // namespace gwpt
