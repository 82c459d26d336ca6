#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mbie/errors.hpp"

namespace mbie {

// Natural cubic spline on strictly increasing abscissae. Evaluation outside
// the data window clamps to the boundary value; callers keep their data
// decayed to ~0 at the ends, so clamping is the right tail behavior here.
class CubicSpline {
public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw ValidationError("CubicSpline: need >= 2 matching nodes");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1])) throw ValidationError("CubicSpline: abscissae not increasing");
    m_.assign(n, 0.0);
    if (n == 2) return;

    // tridiagonal solve for second derivatives, natural ends
    std::vector<double> c(n, 0.0), rhs(n, 0.0);
    std::vector<double> diag(n, 1.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      diag[i] = 2.0 * (h0 + h1);
      c[i] = h0;
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
      double w = c[i] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double operator()(double t) const {
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin() - 1;
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  double derivative(double t) const {
    if (t <= x_.front() || t >= x_.back()) return 0.0;
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin() - 1;
    double h = x_[i + 1] - x_[i];
    double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
  }

private:
  std::vector<double> x_, y_, m_;
};

} // namespace mbie
