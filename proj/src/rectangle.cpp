#include "mbie/rectangle.hpp"

namespace mbie {

std::string edge_name(Edge e) {
  switch (e) {
    case Edge::Gamma1: return "Gamma1";
    case Edge::Gamma2Minus: return "Gamma2-";
    case Edge::Gamma2Plus: return "Gamma2+";
    case Edge::Gamma3: return "Gamma3";
  }
  return "?";
}

void RectanglePoint::validate() const {
  if (edge == Edge::Gamma2Minus || edge == Edge::Gamma2Plus) {
    if (!(coord >= 0.0)) throw ValidationError("RectanglePoint: eta must be >= 0 on Gamma2");
  }
}

double xi_from_u(double u) {
  if (u <= -1.0) return -inf;
  if (u >= 1.0) return inf;
  return std::tan(pi * u / 2.0);
}

double eta_from_v(double v) {
  if (v >= 1.0) return inf;
  if (v <= 0.0) return 0.0;
  return std::tan(pi * v / 2.0);
}

RectanglePath RectanglePath::standard(int per_edge) {
  if (per_edge < 8) throw ValidationError("RectanglePath: need at least 8 samples per edge");
  RectanglePath path;
  path.per_edge = per_edge;
  path.points.reserve(4 * per_edge + 4);
  path.params.reserve(4 * per_edge + 4);
  auto push = [&](Edge e, double coord, double param) {
    path.points.push_back({e, coord});
    path.params.push_back(param);
  };
  const int n = per_edge;
  // G1: xi from +inf to -inf (u: 1 -> -1)
  for (int k = 0; k <= n; ++k) {
    double u = 1.0 - 2.0 * double(k) / n;
    push(Edge::Gamma1, xi_from_u(u), u);
  }
  // G2-: eta from inf to 0 (v: 1 -> 0), skipping the shared corner sample
  for (int k = 1; k <= n; ++k) {
    double v = 1.0 - double(k) / n;
    push(Edge::Gamma2Minus, eta_from_v(v), v);
  }
  // G3: xi from -inf to +inf
  for (int k = 1; k <= n; ++k) {
    double u = -1.0 + 2.0 * double(k) / n;
    push(Edge::Gamma3, xi_from_u(u), u);
  }
  // G2+: eta from 0 to inf, ending at the corner identified with (G1, +inf)
  for (int k = 1; k <= n; ++k) {
    double v = double(k) / n;
    push(Edge::Gamma2Plus, eta_from_v(v), v);
  }
  return path;
}

} // namespace mbie
