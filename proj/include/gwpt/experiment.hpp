#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gwpt/classical.hpp"
#include "gwpt/grid.hpp"
#include "gwpt/observables.hpp"
#include "gwpt/packet.hpp"
#include "gwpt/potential.hpp"
#include "gwpt/reconstruct.hpp"
#include "gwpt/reference.hpp"
#include "gwpt/wprop.hpp"

namespace gwpt {

enum class TestId { a1i, a1ii, a2, a3, a4, b, c, d, custom };
std::string test_id_string(TestId id);
TestId test_id_from_string(const std::string& s);

struct InitialSpec {
  double q0_base = 0.5 * pi;
  double q0_slope = 0.0;  // q0(z) = q0_base + q0_slope * z1
  double p0_base = 0.0;
  double p0_slope = 0.0;
  cplx alpha0{0.0, 1.0};
  cplx gamma0{0.0, 0.0};

  PacketParams at(const ZPoint& z) const;
};

enum class Output { psi, rho, j, stats, errors, zdiag, classical, timing };
std::string output_string(Output o);
Output output_from_string(const std::string& s);

// Full description of one experiment: potential, initial data, eps, the
// collocation sizes Nz1..Nz4 (M5 = M3), meshes and time steps, outputs.
struct ExperimentConfig {
  TestId test_id = TestId::custom;
  double eps = 1.0 / 32.0;
  double T = 1.0;
  Potential potential = Potential::cosine_deterministic();
  InitialSpec initial;
  Dist z_dist = Dist::uniform;
  int z_dim = 1;
  int nz1 = 500, nz2 = 32, nz3 = 500, nz4 = 500;
  double dt_ode = 2.5e-4;
  double dt_w = 0.01;
  double dt_ds = 1.0 / 600.0;
  double eta_min = -20.0, eta_max = 20.0;
  int n_eta = 128;
  double x_min = -pi, x_max = pi;
  int n_x = 9600;
  WScheme w_scheme = WScheme::quadratic_exact;
  std::set<Output> outputs{Output::stats};
  std::vector<double> out_times;  // empty means {T}; entries snap to the dt_w grid
  unsigned threads = 0;

  XGrid xgrid() const { return XGrid{x_min, x_max, n_x}; }
  std::vector<double> output_times() const;
  void validate() const;  // throws StageError(config) naming the offending field

  static ExperimentConfig builtin(TestId id, double eps);

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::uint64_t hash() const { return fnv1a(to_json()); }
};

// z-space transfers between collocation grids: componentwise natural cubic
// splines, evaluated at the destination nodes.
std::vector<PacketParams> transfer_params(const std::vector<PacketParams>& src,
                                          const CollocationGrid& from,
                                          const CollocationGrid& to);
PacketTrajectory transfer_trajectory(const PacketTrajectory& src, const CollocationGrid& from,
                                     const CollocationGrid& to, unsigned threads = 0);
std::vector<WField> transfer_wfields(const std::vector<WField>& src,
                                     const CollocationGrid& from, const CollocationGrid& to,
                                     unsigned threads = 0);
std::vector<WaveField> transfer_wavefields(const std::vector<WaveField>& src,
                                           const CollocationGrid& from,
                                           const CollocationGrid& to, unsigned threads = 0);
std::vector<double> transfer_scalars(const std::vector<double>& src,
                                     const CollocationGrid& from, const CollocationGrid& to);

struct StageTimings {
  double ode_s = 0.0, w_s = 0.0, rec_s = 0.0, ds_s = 0.0;
};

struct GwptResult {
  CollocationGrid m1, m2, m3;
  std::vector<double> out_times;
  std::vector<std::vector<WaveField>> psi;  // [time][node], on M3
  std::vector<std::vector<WField>> w;       // [time][node], on M2
  std::vector<std::vector<double>> jt;      // [time][node]
  std::vector<std::vector<double>> node_mass;
  std::vector<double> gamma_norms;          // per time
  std::vector<ProfileStats> rho_stats, j_stats;  // per time, when requested
  double w_norm_drift = 0.0;
  int support_warnings = 0;
  StageTimings timings;
  std::uint64_t config_hash = 0;
};

GwptResult run_gwpt(const ExperimentConfig& cfg);

struct ReferenceResult {
  CollocationGrid m4;
  std::vector<double> out_times;
  std::vector<std::vector<WaveField>> psi;  // [time][node], on M4
  std::vector<std::vector<double>> jt;
  std::vector<double> gamma_norms;
  double mass_drift = 0.0;
  StageTimings timings;
  std::uint64_t config_hash = 0;
};

ReferenceResult run_reference(const ExperimentConfig& cfg);

struct ErrorMetrics {
  double er_psi = 0.0;
  double er1_j = 0.0, er2_j = 0.0;
  bool j_absolute = false;
};

// Interpolates the reference onto M5 = M3 and evaluates the error metrics at
// one output time.
ErrorMetrics compare_results(const GwptResult& g, const ReferenceResult& r,
                             std::size_t time_index, unsigned threads = 0);

struct ComparisonRow {
  double eps = 0.0;
  int nz2 = 0;
  double T = 0.0;
  double er_psi = 0.0, er1_j = 0.0, er2_j = 0.0;
  bool j_absolute = false;
  double wall_ode_s = 0.0, wall_w_s = 0.0, wall_rec_s = 0.0, wall_ds_s = 0.0;
};

enum class Sweep { none, eps, nz2, time };

struct SweepSpec {
  Sweep kind = Sweep::none;
  std::vector<double> eps_values;
  std::vector<int> nz2_values;
  std::vector<double> times;
};

// none: one row at cfg.eps / cfg.T.
// eps:  rows over eps_values; for the builtin eps-scaled potentials (a3, a4)
//       the perturbation follows eps.
// nz2:  rows over nz2_values; the reference is the same pipeline at 2*Nz2.
// time: rows over times (snapped to the dt_w grid), one run with snapshots.
std::vector<ComparisonRow> run_comparison(const ExperimentConfig& cfg, const SweepSpec& sweep);

// Rebuilds the eps-dependent pieces of a builtin config for a new eps.
ExperimentConfig with_eps(ExperimentConfig cfg, double eps);

struct ClassicalResult {
  CollocationGrid grid;
  std::vector<double> out_times;
  std::vector<ClassicalProfile> density, current;  // per time
  std::vector<ClassicalMoments> moments;
};

ClassicalResult run_classical(const ExperimentConfig& cfg, int aggregate = 32);

struct ZDiag {
  double max_dz_re_psi = 0.0;
  double max_dz_re_w = 0.0;
};

ZDiag zdiag_from(const GwptResult& res, std::size_t time_index, unsigned threads = 0);

}  // namespace gwpt
