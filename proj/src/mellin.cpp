#include "mbie/mellin.hpp"

#include <algorithm>

#include "mbie/spline.hpp"

namespace mbie {

namespace {

constexpr double kDecayThreshold = 1e-10;

bool positive_real(cd c) { return c.imag() == 0.0 && c.real() > 0.0; }

// pi / sin(pi z) for z = beta - i*xi, overflow-safe.
cd pi_over_sin(double beta, double xi) { return pi * std::exp(-log_sin_pi(beta, xi)); }

// Gamma(z) Gamma(m - z) / Gamma(m) = [pi/sin(pi z)] * prod_{j=1}^{m-1}(j - z)/(m-1)!
cd gamma_ratio(double beta, double xi, int m) {
  cd z(beta, -xi);
  cd res = pi_over_sin(beta, xi);
  double fact = 1.0;
  for (int j = 1; j < m; ++j) {
    res *= (cd(double(j), 0.0) - z);
    fact *= double(j);
  }
  return res / fact;
}

// Trapezoid window so that |e^{beta x} / (e^x - c)^m| < eps at both ends.
struct Window {
  double x_lo, x_hi, h;
  int n;
};

Window term_window(cd d, cd c, int m, double beta, double xi) {
  const double eps = 1e-16;
  double ad = std::max(std::abs(d), 1e-300);
  double ac = std::abs(c);
  double x_lo = (std::log(eps) + double(m) * std::log(ac) - std::log(ad)) / beta - 5.0;
  double x_hi = (std::log(eps) - std::log(ad)) / (beta - double(m)) + 5.0;
  // strip of analyticity: poles at log c + 2 pi i k
  double a = arg_0_2pi(c);
  double delta = positive_real(c) ? 2.0 * pi : std::min(a, 2.0 * pi - a);
  double h = 2.0 * pi / (std::abs(xi) + 40.0 / delta);
  int n = static_cast<int>(std::ceil((x_hi - x_lo) / h)) + 1;
  n = std::clamp(n, 512, 400000);
  return {x_lo, x_hi, (x_hi - x_lo) / (n - 1), n};
}

// int_0^inf t^{z-1} d/(t-c)^m dt by log trapezoid; c off the positive axis.
cd term_quadrature(cd d, cd c, int m, double beta, double xi) {
  Window w = term_window(d, c, m, beta, xi);
  cd z(beta, -xi);
  cd sum(0.0, 0.0);
  for (int k = 0; k < w.n; ++k) {
    double x = w.x_lo + k * w.h;
    cd den = std::exp(cd(x, 0.0)) - c;
    cd p = den;
    for (int j = 1; j < m; ++j) p *= den;
    double weight = (k == 0 || k == w.n - 1) ? 0.5 : 1.0;
    sum += weight * std::exp(z * x) / p;
  }
  return d * sum * w.h;
}

// pv int_0^inf t^{z-1} d/(t-c) dt for c > 0 real. The simple pole sits at
// x0 = log c on the contour; subtract the Gaussian-windowed pole model
// R e^{-(x-x0)^2/2}/(x-x0) whose pv over a symmetric window vanishes.
cd term_quadrature_pv(cd d, double c, double beta, double xi) {
  Window w = term_window(d, cd(c, 0.0), 1, beta, xi);
  double x0 = std::log(c);
  double half = std::max(std::abs(w.x_lo - x0), std::abs(w.x_hi - x0));
  int n = static_cast<int>(std::ceil(2.0 * half / w.h));
  if (n % 2 != 0) ++n; // even count => x0 is the middle node
  double h = 2.0 * half / n;
  cd z(beta, -xi);
  cd residue = d * std::pow(cd(c, 0.0), z - 1.0); // d c^{z-1}, c > 0 so branch-free
  cd sum(0.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    double x = x0 - half + k * h;
    double dx = x - x0;
    cd val;
    if (k == n / 2) {
      val = residue * (z - 0.5); // removable-singularity limit
    } else {
      cd den = std::exp(cd(x, 0.0)) - c;
      val = d * std::exp(z * x) / den - residue * std::exp(-0.5 * dx * dx) / dx;
    }
    double weight = (k == 0 || k == n) ? 0.5 : 1.0;
    sum += weight * val;
  }
  return sum * h;
}

} // namespace

std::vector<double> default_xi_grid(const LogGridFunction& shape) {
  const int n = shape.n;
  const double h = shape.log_step();
  std::vector<double> xi(n);
  for (int j = 0; j < n; ++j) xi[j] = (double(j) - double(n) / 2.0) * 2.0 * pi / (double(n) * h);
  return xi;
}

MellinData mellin_forward(const LogGridFunction& u, MellinLine line,
                          const std::vector<double>& xi_grid) {
  line.validate();
  u.validate();
  MellinData out;
  out.xi = xi_grid;
  out.values.assign(xi_grid.size(), cd(0.0, 0.0));
  const double h = u.log_step();
  const int n = u.n;

  std::vector<double> x(n);
  std::vector<cd> weighted(n);
  for (int k = 0; k < n; ++k) {
    x[k] = u.log_node(k);
    double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    weighted[k] = w * std::exp(line.beta * x[k]) * u.values[k];
  }
  for (std::size_t j = 0; j < xi_grid.size(); ++j) {
    cd sum(0.0, 0.0);
    for (int k = 0; k < n; ++k) sum += weighted[k] * expi(-xi_grid[j] * x[k]);
    out.values[j] = sum * h;
  }
  if (!u.decays(kDecayThreshold)) out.truncation_warning = true;
  double m = max_abs(out.values);
  if (m > 0.0 && (std::abs(out.values.front()) > kDecayThreshold * m ||
                  std::abs(out.values.back()) > kDecayThreshold * m))
    out.truncation_warning = true;
  return out;
}

MellinData mellin_forward(const LogGridFunction& u, MellinLine line) {
  return mellin_forward(u, line, default_xi_grid(u));
}

LogGridFunction mellin_inverse(const MellinData& hat, MellinLine line,
                               const LogGridFunction& shape) {
  line.validate();
  if (hat.xi.size() < 2) throw ValidationError("mellin_inverse: frequency grid too short");
  LogGridFunction out = LogGridFunction::zeros(shape.t_min, shape.t_max, shape.n);
  const double dxi = hat.xi[1] - hat.xi[0];
  const std::size_t m = hat.xi.size();
  for (int k = 0; k < out.n; ++k) {
    double x = out.log_node(k);
    cd sum(0.0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      double w = (j == 0 || j == m - 1) ? 0.5 : 1.0;
      sum += w * hat.values[j] * expi(hat.xi[j] * x);
    }
    out.values[k] = sum * dxi / (2.0 * pi) * std::exp(-line.beta * x);
  }
  double mv = max_abs(hat.values);
  if (mv > 0.0 && (std::abs(hat.values.front()) > kDecayThreshold * mv ||
                   std::abs(hat.values.back()) > kDecayThreshold * mv))
    out.truncation_warning = true;
  return out;
}

cd mellin_symbol(const MellinOperator& op, MellinLine line, double xi) {
  line.validate();
  if (!op.kernel.admissible()) throw ValidationError("mellin_symbol: kernel not admissible");
  cd value = op.c0;
  if (op.c1 != cd(0.0, 0.0)) value += op.c1 * coth(pi * (iu * line.beta + xi));
  for (const auto& term : op.kernel.terms) {
    if (positive_real(term.c))
      value += term_quadrature_pv(term.d, term.c.real(), line.beta, xi);
    else
      value += term_quadrature(term.d, term.c, term.m, line.beta, xi);
  }
  return value;
}

cd mellin_symbol_closed(const MellinOperator& op, MellinLine line, double xi) {
  line.validate();
  if (!op.kernel.admissible()) throw ValidationError("mellin_symbol_closed: kernel not admissible");
  cd value = op.c0;
  if (op.c1 != cd(0.0, 0.0)) value += op.c1 * coth(pi * (iu * line.beta + xi));
  cd z(line.beta, -xi);
  for (const auto& term : op.kernel.terms) {
    if (positive_real(term.c)) {
      // pv int t^{z-1}/(t-c) dt = -pi cot(pi z) c^{z-1}
      cd cotz = std::cos(pi * z) * std::exp(-log_sin_pi(line.beta, xi));
      value += term.d * std::pow(cd(term.c.real(), 0.0), z - 1.0) * (-pi * cotz);
    } else {
      value += term.d * pow_principal(-term.c, z - double(term.m)) *
               gamma_ratio(line.beta, xi, term.m);
    }
  }
  return value;
}

LogGridFunction apply_mellin_convolution(const MellinOperator& op, const LogGridFunction& u) {
  u.validate();
  if (!op.kernel.admissible()) throw ValidationError("apply_mellin_convolution: kernel not admissible");
  const int n = u.n;
  const double h = u.log_step();
  LogGridFunction out = LogGridFunction::zeros(u.t_min, u.t_max, n);
  if (!u.decays(kDecayThreshold)) out.truncation_warning = true;

  // identity part
  if (op.c0 != cd(0.0, 0.0))
    for (int k = 0; k < n; ++k) out.values[k] = op.c0 * u.values[k];

  // Cauchy pv part: kernel e^y/(e^y - e^x) = 1/2 + coth((y-x)/2)/2 in log
  // coordinates. The punctured-node sum of the coth part needs the diagonal
  // correction 2h u'(x) (regular part of coth(d/2) u(x+d) at d = 0), after
  // which the rule is spectrally accurate on the uniform grid.
  if (op.c1 != cd(0.0, 0.0)) {
    std::vector<double> cth(n, 0.0);
    for (int l = 1; l < n; ++l) cth[l] = 1.0 / std::tanh(0.5 * double(l) * h);
    cd mean(0.0, 0.0);
    for (int j = 0; j < n; ++j) mean += u.values[j];
    // d/dy u(e^y) by 4th order centered differences
    std::vector<cd> du(n, cd(0.0, 0.0));
    for (int i = 2; i < n - 2; ++i)
      du[i] = (-u.values[i + 2] + 8.0 * u.values[i + 1] - 8.0 * u.values[i - 1] + u.values[i - 2]) /
              (12.0 * h);
    const cd scale = op.c1 / (pi * iu);
    for (int i = 0; i < n; ++i) {
      cd s(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        double k = (j > i) ? cth[j - i] : -cth[i - j];
        s += k * u.values[j];
      }
      out.values[i] += scale * 0.5 * h * (mean + s + 2.0 * du[i]);
    }
  }

  // meromorphic kernel part, by lag in the log variable
  MeromorphicKernel smooth;
  std::vector<KernelTerm> pv_terms;
  for (const auto& term : op.kernel.terms) {
    if (positive_real(term.c))
      pv_terms.push_back(term);
    else
      smooth.terms.push_back(term);
  }
  if (!smooth.terms.empty()) {
    std::vector<cd> lag(2 * n - 1);
    for (int l = -(n - 1); l <= n - 1; ++l) lag[l + n - 1] = smooth.eval(std::exp(l * h));
    for (int i = 0; i < n; ++i) {
      cd s(0.0, 0.0);
      for (int j = 0; j < n; ++j) s += lag[i - j + n - 1] * u.values[j];
      out.values[i] += s * h;
    }
  }
  for (const auto& term : pv_terms) {
    // pv int u(e^y) d/(e^{x-y} - c) dy, singular at y* = x - log c
    const double logc = std::log(term.c.real());
    LogGridInterpolant interp(u);
    for (int i = 0; i < n; ++i) {
      double x = u.log_node(i);
      double ystar = x - logc;
      double frac = (ystar - u.log_node(0)) / h;
      double offset = frac - std::round(frac);
      if (std::abs(offset) < 1e-9)
        throw NumericalError("apply_mellin_convolution: pv singularity collides with a grid node");
      // residue of the integrand in y at y*: d u(e^{y*}) / (-c) * ... note
      // d/dy (e^{x-y} - c) = -e^{x-y} -> -c at y*
      cd ustar = (ystar >= u.log_node(0) && ystar <= u.log_node(n - 1)) ? interp(std::exp(ystar))
                                                                        : cd(0.0, 0.0);
      cd residue = -term.d * ustar / term.c;
      cd s(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        double y = u.log_node(j);
        double dy = y - ystar;
        cd den = std::exp(cd(x - y, 0.0)) - term.c;
        cd val = term.d * u.values[j] / den - residue * std::exp(-0.5 * dy * dy) / dy;
        s += val;
      }
      // pv of the subtracted model over the asymmetric grid window
      double a = u.log_node(0) - ystar, b = u.log_node(n - 1) - ystar;
      double lo = std::min(std::abs(a), std::abs(b)), hi = std::max(std::abs(a), std::abs(b));
      double sign = (std::abs(b) > std::abs(a)) ? 1.0 : -1.0;
      double tail = 0.0;
      const int q = 2000;
      double dq = (hi - lo) / q;
      if (dq > 0.0) {
        for (int k = 0; k <= q; ++k) {
          double t = lo + k * dq;
          double w = (k == 0 || k == q) ? 0.5 : 1.0;
          tail += w * std::exp(-0.5 * t * t) / t;
        }
        tail *= dq * sign;
      }
      out.values[i] += s * h + residue * tail;
    }
  }
  return out;
}

} // namespace mbie
