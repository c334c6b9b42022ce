#pragma once

#include <cmath>
#include <string>

#include "gwpt/grid.hpp"

namespace gwpt {

// Scalar potentials V(x, z) with hand-coded first and second x-derivatives.
// Every registered form factors as c(z) * shape(x) with c(z) affine in z.
class Potential {
public:
  enum class Id { quadratic_random, cosine_random, cosine_deterministic };

  // (a + b1 z1) x^2
  static Potential quadratic_random(double a, double b1);
  // (1 - cos x)(a + b1 z1 + b2 z2)
  static Potential cosine_random(double a, double b1, double b2 = 0.0);
  // 1 - cos x
  static Potential cosine_deterministic();

  Id id() const { return id_; }
  bool quadratic() const { return id_ == Id::quadratic_random; }
  double coeff(const ZPoint& z) const { return a_ + b1_ * z.z1 + b2_ * z.z2; }
  double a() const { return a_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }

  double value(double x, const ZPoint& z) const {
    return quadratic() ? coeff(z) * x * x : coeff(z) * (1.0 - std::cos(x));
  }
  double dx(double x, const ZPoint& z) const {
    return quadratic() ? coeff(z) * 2.0 * x : coeff(z) * std::sin(x);
  }
  double dxx(double x, const ZPoint& z) const {
    return quadratic() ? coeff(z) * 2.0 : coeff(z) * std::cos(x);
  }

  std::string id_string() const;
  static Potential from_id_string(const std::string& id, double a, double b1, double b2);

private:
  Potential(Id id, double a, double b1, double b2) : id_(id), a_(a), b1_(b1), b2_(b2) {}

  Id id_;
  double a_, b1_, b2_;
};

}  // namespace gwpt
