#pragma once

#include <string>
#include <vector>

#include "gwpt/experiment.hpp"

namespace gwpt {

// Shortest round-trippable decimal form; keeps CSV output bit-stable.
std::string format_g17(double v);

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows);
void write_profile_csv(const std::string& path, const XGrid& xg, const ProfileStats& rho,
                       const ProfileStats& j);
void write_classical_csv(const std::string& path, const ClassicalProfile& rho,
                         const ClassicalProfile& j);
void write_zdiag_csv(const std::string& path,
                     const std::vector<std::pair<double, ZDiag>>& rows);

// JSON sidecar: config echo, hash, wall-clock per stage, diagnostics.
void write_provenance(const std::string& path, const ExperimentConfig& cfg,
                      const StageTimings& timings, const std::string& notes);

}  // namespace gwpt
