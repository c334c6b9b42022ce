#include "gwpt/potential.hpp"

#include <cmath>

namespace gwpt {

Potential Potential::quadratic_random(double a, double b1) {
  return Potential(Id::quadratic_random, a, b1, 0.0);
}

Potential Potential::cosine_random(double a, double b1, double b2) {
  return Potential(Id::cosine_random, a, b1, b2);
}

Potential Potential::cosine_deterministic() {
  return Potential(Id::cosine_deterministic, 1.0, 0.0, 0.0);
}

std::string Potential::id_string() const {
  switch (id_) {
    case Id::quadratic_random: return "quadratic_random";
    case Id::cosine_random: return "cosine_random";
    case Id::cosine_deterministic: return "cosine_deterministic";
  }
  return "unknown";
}

Potential Potential::from_id_string(const std::string& id, double a, double b1, double b2) {
  if (id == "quadratic_random") return quadratic_random(a, b1);
  if (id == "cosine_random") return cosine_random(a, b1, b2);
  if (id == "cosine_deterministic") return cosine_deterministic();
  throw StageError(Stage::config, "unknown potential id: " + id);
}

}  // namespace gwpt
