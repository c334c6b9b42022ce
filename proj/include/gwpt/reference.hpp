#pragma once

#include <vector>

#include "gwpt/fft.hpp"
#include "gwpt/field.hpp"
#include "gwpt/grid.hpp"
#include "gwpt/packet.hpp"
#include "gwpt/potential.hpp"

namespace gwpt {

// Initial Gaussian packet sampled on the x grid.
WaveField ds_initial(const PacketParams& s, const XGrid& xg, double eps, double amplitude);

// One Strang step of the direct splitting spectral solver: half potential
// phase, full kinetic Fourier multiplier exp(-i eps k^2 dt / 2), half
// potential phase. Every factor is unimodular, so the mass is conserved to
// roundoff per step.
void ds_step(WaveField& psi, const Potential& V, const ZPoint& z, double eps, double dt,
             Fft1D& fft);

struct DsRun {
  std::vector<WaveField> snapshots;  // aligned with the requested output times
  double mass_drift = 0.0;           // max relative deviation from the initial mass
};

// Chained steps with precomputed phase tables; snapshots at the requested
// times, which must be multiples of dt.
DsRun ds_evolve(const WaveField& psi0, const Potential& V, const ZPoint& z, double eps,
                double dt, const std::vector<double>& out_times, Fft1D& fft);

// Independent per-node evolution over the collocation grid, parallel across
// nodes with deterministic slot assembly.
std::vector<DsRun> ds_solve(const std::vector<WaveField>& psi0, const CollocationGrid& m4,
                            const Potential& V, double eps, double dt,
                            const std::vector<double>& out_times, unsigned threads = 0);

}  // namespace gwpt
