#include "mbie/symbols.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

namespace mbie {

namespace {

bool is_pos_inf(double x) { return std::isinf(x) && x > 0; }
bool is_neg_inf(double x) { return std::isinf(x) && x < 0; }

// Mobius base (eta - gamma)/(eta + gamma); for eta in (0, inf) and
// 0 < arg gamma < pi the image is an arc from -1 to 1 in the lower half
// plane, so the principal power is continuous on the open edge.
cd mobius_base(double eta, cd gamma) { return (cd(eta, 0.0) - gamma) / (cd(eta, 0.0) + gamma); }

cd blaschke(double xi) {
  if (std::isinf(xi)) return cd(1.0, 0.0);
  return cd(xi, -1.0) / cd(xi, 1.0);
}

cd ipow(cd z, long n) {
  if (n == 0) return cd(1.0, 0.0);
  cd base = n > 0 ? z : 1.0 / z;
  long m = std::labs(n);
  cd r(1.0, 0.0);
  while (m) {
    if (m & 1) r *= base;
    base *= base;
    m >>= 1;
  }
  return r;
}

// Sweep of the argument along a sampled open arc. Assumes no sample is zero.
double arg_sweep(const std::vector<cd>& z) {
  double s = 0.0;
  for (std::size_t k = 1; k < z.size(); ++k) s += std::arg(z[k] / z[k - 1]);
  return s;
}

} // namespace

void SpaceParams::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("SpaceParams: need 1 < p < inf");
  if (!std::isfinite(s)) throw ValidationError("SpaceParams: order must be finite");
}

void SymbolSpec::validate() const {
  params.validate();
  double ag = std::arg(gamma);
  if (!(ag > 0.0 && ag < pi)) throw ValidationError("SymbolSpec: need 0 < arg gamma < pi");
  for (const auto& term : terms) {
    if (term.c == cd(0.0, 0.0)) throw ValidationError("SymbolSpec: zero pole");
    if (term.c.imag() == 0.0 && term.c.real() > 0.0)
      throw ValidationError("SymbolSpec: poles on the positive axis are not supported");
    double acg = std::arg(term.c * gamma);
    if (acg == 0.0 || std::abs(acg) >= pi)
      throw ValidationError("SymbolSpec: need 0 < |arg(c gamma)| < pi");
  }
}

cd identity_symbol(const SpaceParams& params, const RectanglePoint& omega, cd gamma) {
  params.validate();
  omega.validate();
  const double s = params.s;
  switch (omega.edge) {
    case Edge::Gamma1: {
      if (is_neg_inf(omega.coord)) return cd(1.0, 0.0);
      if (is_pos_inf(omega.coord)) return expi(2.0 * pi * s);
      return expi(pi * s) * sin_pi_ratio(1.0 / params.p, s, omega.coord);
    }
    case Edge::Gamma3:
      return expi(pi * s);
    case Edge::Gamma2Minus: {
      if (is_pos_inf(omega.coord)) return cd(1.0, 0.0);
      if (omega.coord == 0.0) return expi(pi * s);
      return pow_principal(mobius_base(omega.coord, gamma), cd(-s, 0.0));
    }
    case Edge::Gamma2Plus: {
      if (is_pos_inf(omega.coord)) return expi(2.0 * pi * s);
      if (omega.coord == 0.0) return expi(pi * s);
      return expi(2.0 * pi * s) * pow_principal(mobius_base(omega.coord, gamma), cd(s, 0.0));
    }
  }
  throw ValidationError("identity_symbol: bad edge");
}

cd k1_symbol(cd c, const SpaceParams& params, const RectanglePoint& omega) {
  params.validate();
  omega.validate();
  if (c == cd(0.0, 0.0)) throw ValidationError("k1_symbol: zero pole");
  if (c.imag() == 0.0 && c.real() > 0.0)
    throw ValidationError("k1_symbol: arg c = 0 branch is unsupported");
  switch (omega.edge) {
    case Edge::Gamma2Minus:
    case Edge::Gamma2Plus:
      return cd(0.0, 0.0);
    case Edge::Gamma1:
    case Edge::Gamma3: {
      double xi = omega.coord;
      if (std::isinf(xi)) return cd(0.0, 0.0);
      const double a = 1.0 / params.p;
      cd Xi(a, -xi);
      cd logc(std::log(std::abs(c)), arg_0_2pi(c));
      // exp(-i pi (Xi - 1) + (Xi - s - 1) log c) / sin(pi Xi), single exp
      cd expo = -iu * pi * (Xi - 1.0) + (Xi - params.s - 1.0) * logc - log_sin_pi(a, xi);
      return std::exp(expo);
    }
  }
  throw ValidationError("k1_symbol: bad edge");
}

cd composite_symbol(const SymbolSpec& spec, const RectanglePoint& omega) {
  spec.validate();
  cd value = spec.d0 * identity_symbol(spec.params, omega, spec.gamma);
  for (const auto& term : spec.terms) value += term.d * k1_symbol(term.c, spec.params, omega);
  return value;
}

SymbolMatrix system_symbol(const SpaceParams& params, const RectanglePoint& omega) {
  SymbolMatrix m;
  m.diag = identity_symbol(params, omega);
  m.off = k1_symbol(cd(-1.0, 0.0), params, omega);
  return m;
}

namespace {

// Shared closure logic: fill det samples along the path; on G3 place the
// corner-matched closure arc D0 * B(xi)^n whose loop count n makes the total
// winding equal to the continuation index.
DetCurve assemble_curve(const RectanglePath& path, const std::function<cd(const RectanglePoint&)>& det_of,
                        cd corner_value, double order_sweep) {
  DetCurve curve;
  curve.path = path;
  curve.det.assign(path.points.size(), cd(0.0, 0.0));

  std::vector<cd> gamma1;
  std::vector<std::size_t> g3_index;
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    const auto& pt = path.points[k];
    if (pt.edge == Edge::Gamma3) {
      g3_index.push_back(k);
      continue;
    }
    cd d = det_of(pt);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
      throw NumericalError("sample_det_curve: non-finite determinant on " + edge_name(pt.edge) +
                           " at coord " + std::to_string(pt.coord));
    curve.det[k] = d;
    if (pt.edge == Edge::Gamma1) gamma1.push_back(d);
  }

  // G1 is traversed xi: +inf -> -inf; the forward sweep flips the sign.
  long n = 0;
  double mx = max_abs(gamma1);
  double mn = mx;
  for (cd z : gamma1) mn = std::min(mn, std::abs(z));
  if (std::abs(corner_value) > 0.0 && mx > 0.0 && mn > 1e-12 * mx) {
    double s1_forward = -arg_sweep(gamma1);
    n = std::lround((s1_forward - order_sweep) / (2.0 * pi));
  }
  curve.closure_loops = n;

  for (std::size_t k : g3_index) {
    const auto& pt = path.points[k];
    curve.det[k] = corner_value * ipow(blaschke(pt.coord), n);
  }
  return curve;
}

} // namespace

DetCurve sample_det_curve(const SymbolSpec& spec, const RectanglePath& path) {
  spec.validate();
  const double s = spec.params.s;
  cd corner = spec.d0 * expi(pi * s);
  return assemble_curve(
      path, [&](const RectanglePoint& pt) { return composite_symbol(spec, pt); }, corner,
      2.0 * pi * s);
}

DetCurve sample_det_curve_system(const SpaceParams& params, const RectanglePath& path) {
  params.validate();
  cd corner = expi(2.0 * pi * params.s);
  return assemble_curve(
      path, [&](const RectanglePoint& pt) { return system_symbol(params, pt).det(); }, corner,
      4.0 * pi * params.s);
}

void write_csv(const DetCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << "u,edge,re_det,im_det\n";
  char line[160];
  for (std::size_t k = 0; k < curve.det.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%s,%.17g,%.17g\n", curve.path.params[k],
                  edge_name(curve.path.points[k].edge).c_str(), curve.det[k].real(),
                  curve.det[k].imag());
    out << line;
  }
}

} // namespace mbie
