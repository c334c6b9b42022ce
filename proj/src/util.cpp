#include "gwpt/util.hpp"

#include <cmath>
#include <cstdlib>

namespace gwpt {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::config: return "config";
    case Stage::ode: return "ode";
    case Stage::wprop: return "wprop";
    case Stage::reconstruct: return "reconstruct";
    case Stage::reference: return "reference";
    case Stage::stats: return "stats";
    case Stage::io: return "io";
  }
  return "unknown";
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

double wrap_periodic(double x, double lo, double period) {
  double y = std::fmod(x - lo, period);
  if (y < 0.0) y += period;
  return lo + y;
}

double parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw StageError(Stage::config, "bad number: " + s);
    return v;
  }
  std::size_t pos = 0;
  double num = std::stod(s.substr(0, slash), &pos);
  double den = std::stod(s.substr(slash + 1), &pos);
  if (den == 0.0) throw StageError(Stage::config, "zero denominator: " + s);
  return num / den;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace gwpt
