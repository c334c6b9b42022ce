#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwpt {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

enum class Stage { config, ode, wprop, reconstruct, reference, stats, io };

const char* stage_name(Stage s);

// Error carrying the pipeline stage that produced it; the CLI maps
// stages to distinct exit codes.
class StageError : public std::runtime_error {
public:
  StageError(Stage stage, const std::string& msg)
      : std::runtime_error(msg), stage_(stage) {}
  Stage stage() const { return stage_; }

private:
  Stage stage_;
};

// Deterministic pairwise reduction, independent of thread count.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

// Wraps x into [lo, lo + period).
double wrap_periodic(double x, double lo, double period);

// Accepts "1/256" as well as plain decimals.
double parse_rational(const std::string& s);

bool is_pow2(int n);

std::uint64_t fnv1a(const std::string& s);

}  // namespace gwpt
