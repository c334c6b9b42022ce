#pragma once

#include "gwpt/field.hpp"
#include "gwpt/packet.hpp"

namespace gwpt {

// Assembles psi(x) = w(B (x-q)/sqrt(eps)) exp(i (alpha_R xi^2 + p xi + gamma)/eps)
// on a periodic x grid; xi is the nearest periodic image of x - q. w is
// evaluated by trigonometric interpolation (periodic, compactly supported
// data) and taken as zero beyond |eta| > eta_max - 2. The complex gamma
// supplies the normalization through exp(-Im(gamma)/eps).
//
// w_mass_outside, when given, receives the fraction of the w mass mapping
// outside the x domain; callers warn above 1e-6.
WaveField reconstruct_psi(const WField& w, const PacketParams& s, const XGrid& xg,
                          double eps, double* w_mass_outside = nullptr);

// Closed-form Gaussian solution for potentials quadratic in x, from the
// full-alpha parameter system. Used as the exactness oracle.
WaveField heller_exact(const PacketParams& s, const XGrid& xg, double eps,
                       double amplitude);

}  // namespace gwpt
