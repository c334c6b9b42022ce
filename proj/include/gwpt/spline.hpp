#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gwpt/util.hpp"

namespace gwpt {

// Cubic spline through strictly increasing knots with not-a-knot end
// conditions (third derivative continuous across the first and last interior
// knots): full fourth-order accuracy up to the ends, no derivative data
// needed, and it reproduces cubics exactly. Complex data is fitted
// componentwise through the same (real) tridiagonal system. Outside the knot
// range the end value and slope continue linearly.
//
// Implementation lives in the header because the class is a template.
template <class T>
class Spline1D {
public:
  Spline1D(std::vector<double> xs, std::vector<T> ys)
      : x_(std::move(xs)), y_(std::move(ys)) {
    if (x_.size() != y_.size())
      throw StageError(Stage::config, "spline: xs/ys length mismatch");
    if (x_.size() < 4) throw StageError(Stage::config, "spline: need at least 4 points");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1]))
        throw StageError(Stage::config, "spline: knots must be strictly increasing");
    solve_moments();
  }

  const std::vector<double>& knots() const { return x_; }

  T value(double x) const {
    std::size_t n = x_.size();
    if (x <= x_.front()) return y_.front() + slope_at(0) * (x - x_.front());
    if (x >= x_.back()) return y_.back() + slope_at(n - 2, true) * (x - x_.back());
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
  }

  T derivative(double x) const {
    std::size_t n = x_.size();
    if (x <= x_.front()) return slope_at(0);
    if (x >= x_.back()) return slope_at(n - 2, true);
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * (h / 6.0);
  }

  T second_derivative(double x) const {
    if (x <= x_.front() || x >= x_.back()) return T{};
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - x) / h;
    double b = (x - x_[i]) / h;
    return a * m_[i] + b * m_[i + 1];
  }

private:
  std::size_t interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
  }

  // Spline slope at knot edge of interval i (0 = left end of interval).
  T slope_at(std::size_t i, bool right = false) const {
    double h = x_[i + 1] - x_[i];
    T base = (y_[i + 1] - y_[i]) / h;
    if (right) return base + (2.0 * m_[i + 1] + m_[i]) * (h / 6.0);
    return base - (2.0 * m_[i] + m_[i + 1]) * (h / 6.0);
  }

  void solve_moments() {
    std::size_t n = x_.size();
    m_.assign(n, T{});
    // Thomas solve on the interior second-derivative system. The end moments
    // are eliminated through the not-a-knot relations
    //   m0 = ((h0 + h1) m1 - h0 m2) / h1,
    //   m_{n-1} = ((h_e + h_p) m_{n-2} - h_e m_{n-3}) / h_p,
    // which fold into the first and last interior equations.
    std::size_t k = n - 2;  // interior unknowns m_[1..n-2]
    std::vector<double> diag(k), sub(k), sup(k);
    std::vector<T> rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double h0 = x_[i] - x_[i - 1];
      double h1 = x_[i + 1] - x_[i];
      sub[i - 1] = h0 / 6.0;
      diag[i - 1] = (h0 + h1) / 3.0;
      sup[i - 1] = h1 / 6.0;
      rhs[i - 1] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    {
      double h0 = x_[1] - x_[0];
      double h1 = x_[2] - x_[1];
      diag[0] += sub[0] * (h0 + h1) / h1;
      sup[0] -= sub[0] * h0 / h1;
      double he = x_[n - 1] - x_[n - 2];
      double hp = x_[n - 2] - x_[n - 3];
      diag[k - 1] += sup[k - 1] * (he + hp) / hp;
      sub[k - 1] -= sup[k - 1] * he / hp;
    }
    for (std::size_t i = 1; i < k; ++i) {
      double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] = rhs[i] - w * rhs[i - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i >= 1; --i)
      m_[i] = (rhs[i - 1] - sup[i - 1] * m_[i + 1]) / diag[i - 1];
    {
      double h0 = x_[1] - x_[0];
      double h1 = x_[2] - x_[1];
      m_[0] = ((h0 + h1) * m_[1] - h0 * m_[2]) / h1;
      double he = x_[n - 1] - x_[n - 2];
      double hp = x_[n - 2] - x_[n - 3];
      m_[n - 1] = ((he + hp) * m_[n - 2] - he * m_[n - 3]) / hp;
    }
  }

  std::vector<double> x_;
  std::vector<T> y_;
  std::vector<T> m_;  // second derivatives at knots, m_[0] = m_[n-1] = 0
};

using SplineR = Spline1D<double>;
using SplineC = Spline1D<cplx>;

}  // namespace gwpt
