#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mbie/numeric.hpp"

namespace mbie {

// Complex samples on a geometric grid t_k = t_min * rho^k over (0, inf).
// The log abscissa x = ln t is uniform, which is what every transform and
// convolution in this library exploits.
struct LogGridFunction {
  double t_min = 1e-6;
  double t_max = 1e6;
  int n = 2048;
  std::vector<cd> values;
  bool truncation_warning = false;

  LogGridFunction() = default;
  LogGridFunction(double tmin, double tmax, int count);

  static LogGridFunction zeros(double tmin = 1e-6, double tmax = 1e6, int count = 2048);
  static LogGridFunction sample(const std::function<cd(double)>& f, double tmin = 1e-6,
                                double tmax = 1e6, int count = 2048);

  void validate() const;

  double log_step() const { return (std::log(t_max) - std::log(t_min)) / (n - 1); }
  double node(int k) const {
    if (k == 0) return t_min;
    if (k == n - 1) return t_max;
    return std::exp(log_node(k));
  }
  double log_node(int k) const { return std::log(t_min) + k * log_step(); }
  std::vector<double> nodes() const;

  double max_abs() const;
  // Endpoint magnitudes <= threshold * max magnitude.
  bool decays(double threshold = 1e-10) const;

  // Spline interpolation of Re/Im in the log abscissa, clamped tails.
  cd eval(double t) const;

  bool same_shape(const LogGridFunction& other) const {
    return n == other.n && t_min == other.t_min && t_max == other.t_max;
  }

  LogGridFunction& operator+=(const LogGridFunction& rhs);
  LogGridFunction& operator-=(const LogGridFunction& rhs);
  LogGridFunction& operator*=(cd scale);
};

LogGridFunction operator+(LogGridFunction a, const LogGridFunction& b);
LogGridFunction operator-(LogGridFunction a, const LogGridFunction& b);
LogGridFunction operator*(cd scale, LogGridFunction a);

// Relative L2 grid distance in the dt/t measure.
double rel_l2_distance(const LogGridFunction& a, const LogGridFunction& b);
double l2_norm(const LogGridFunction& a);

// Reusable spline evaluator for hot loops; LogGridFunction::eval rebuilds the
// spline on every call.
class LogGridInterpolant {
public:
  explicit LogGridInterpolant(const LogGridFunction& f);
  cd operator()(double t) const;

private:
  class Impl;
  std::shared_ptr<const Impl> impl_;
};

// CSV columns: t, re, im.
void write_csv(const LogGridFunction& f, const std::string& path);
LogGridFunction read_log_grid_csv(const std::string& path);

} // namespace mbie
