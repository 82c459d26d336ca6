#include "mbie/log_grid.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbie/spline.hpp"

namespace mbie {

LogGridFunction::LogGridFunction(double tmin, double tmax, int count)
    : t_min(tmin), t_max(tmax), n(count), values(count, cd(0.0, 0.0)) {
  validate();
}

LogGridFunction LogGridFunction::zeros(double tmin, double tmax, int count) {
  return LogGridFunction(tmin, tmax, count);
}

LogGridFunction LogGridFunction::sample(const std::function<cd(double)>& f, double tmin,
                                        double tmax, int count) {
  LogGridFunction g(tmin, tmax, count);
  for (int k = 0; k < count; ++k) g.values[k] = f(g.node(k));
  return g;
}

void LogGridFunction::validate() const {
  if (!(t_min > 0.0) || !(t_min < t_max)) throw ValidationError("LogGridFunction: need 0 < t_min < t_max");
  if (n < 2) throw ValidationError("LogGridFunction: need n >= 2");
  if (!values.empty() && static_cast<int>(values.size()) != n)
    throw ValidationError("LogGridFunction: value count does not match n");
}

std::vector<double> LogGridFunction::nodes() const {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = node(k);
  return t;
}

double LogGridFunction::max_abs() const { return mbie::max_abs(values); }

bool LogGridFunction::decays(double threshold) const {
  double m = max_abs();
  if (m == 0.0) return true;
  return std::abs(values.front()) <= threshold * m && std::abs(values.back()) <= threshold * m;
}

cd LogGridFunction::eval(double t) const {
  if (!(t > 0.0)) throw ValidationError("LogGridFunction::eval: t must be positive");
  std::vector<double> x(n), re(n), im(n);
  for (int k = 0; k < n; ++k) {
    x[k] = log_node(k);
    re[k] = values[k].real();
    im[k] = values[k].imag();
  }
  CubicSpline sre(x, re), sim(x, im);
  double lx = std::log(t);
  return cd(sre(lx), sim(lx));
}

LogGridFunction& LogGridFunction::operator+=(const LogGridFunction& rhs) {
  if (!same_shape(rhs)) throw ValidationError("LogGridFunction: shape mismatch");
  for (int k = 0; k < n; ++k) values[k] += rhs.values[k];
  return *this;
}

LogGridFunction& LogGridFunction::operator-=(const LogGridFunction& rhs) {
  if (!same_shape(rhs)) throw ValidationError("LogGridFunction: shape mismatch");
  for (int k = 0; k < n; ++k) values[k] -= rhs.values[k];
  return *this;
}

LogGridFunction& LogGridFunction::operator*=(cd scale) {
  for (auto& v : values) v *= scale;
  return *this;
}

LogGridFunction operator+(LogGridFunction a, const LogGridFunction& b) { return a += b; }
LogGridFunction operator-(LogGridFunction a, const LogGridFunction& b) { return a -= b; }
LogGridFunction operator*(cd scale, LogGridFunction a) { return a *= scale; }

double l2_norm(const LogGridFunction& a) {
  double s = 0.0;
  for (cd v : a.values) s += std::norm(v);
  return std::sqrt(s * a.log_step());
}

double rel_l2_distance(const LogGridFunction& a, const LogGridFunction& b) {
  if (!a.same_shape(b)) throw ValidationError("rel_l2_distance: shape mismatch");
  double num = 0.0, den = 0.0;
  for (int k = 0; k < a.n; ++k) {
    num += std::norm(a.values[k] - b.values[k]);
    den += std::norm(b.values[k]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num * a.log_step());
}

class LogGridInterpolant::Impl {
public:
  explicit Impl(const LogGridFunction& f) {
    std::vector<double> x(f.n), re(f.n), im(f.n);
    for (int k = 0; k < f.n; ++k) {
      x[k] = f.log_node(k);
      re[k] = f.values[k].real();
      im[k] = f.values[k].imag();
    }
    sre_ = CubicSpline(x, re);
    sim_ = CubicSpline(x, im);
  }
  cd eval(double t) const {
    double lx = std::log(t);
    return cd(sre_(lx), sim_(lx));
  }

private:
  CubicSpline sre_, sim_;
};

LogGridInterpolant::LogGridInterpolant(const LogGridFunction& f)
    : impl_(std::make_shared<const Impl>(f)) {}

cd LogGridInterpolant::operator()(double t) const { return impl_->eval(t); }

void write_csv(const LogGridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  char line[128];
  out << "t,re,im\n";
  for (int k = 0; k < f.n; ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", f.node(k), f.values[k].real(),
                  f.values[k].imag());
    out << line;
  }
}

LogGridFunction read_log_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::vector<double> t;
  std::vector<cd> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double tt, re, im;
    char comma;
    if (!(ss >> tt >> comma >> re >> comma >> im)) throw IoError("bad CSV row in " + path);
    t.push_back(tt);
    v.push_back(cd(re, im));
  }
  if (t.size() < 2) throw IoError("CSV too short: " + path);
  LogGridFunction g(t.front(), t.back(), static_cast<int>(t.size()));
  g.values = std::move(v);
  return g;
}

} // namespace mbie
