#pragma once

#include <string>
#include <vector>

#include "mbie/numeric.hpp"

namespace mbie {

// Edges of the infinite rectangle R = G1 u G2- u G2+ u G3 on which lifted
// symbols live. G1 and G3 are parametrized by xi in [-inf, inf], the side
// edges G2-/G2+ by eta in [0, inf]. Corner identification:
//   (G1, xi=-inf) = (G2-, eta=inf),  (G2-, eta=0)  = (G3, xi=-inf),
//   (G3, xi=+inf) = (G2+, eta=0),    (G2+, eta=inf) = (G1, xi=+inf).
enum class Edge { Gamma1, Gamma2Minus, Gamma2Plus, Gamma3 };

std::string edge_name(Edge e);

struct RectanglePoint {
  Edge edge = Edge::Gamma1;
  double coord = 0.0; // xi on G1/G3 (+-inf allowed), eta >= 0 on G2 (+inf allowed)

  void validate() const;
};

// Oriented discretization of the full contour. Traversal order follows the
// corner chain: G1 (xi: +inf -> -inf), G2- (eta: inf -> 0),
// G3 (xi: -inf -> +inf), G2+ (eta: 0 -> inf); consecutive edge endpoints are
// the identified corners, so the sampled curve closes.
struct RectanglePath {
  int per_edge = 512;
  std::vector<RectanglePoint> points;
  // compactification parameter of each sample (u on xi-edges, v on eta-edges)
  std::vector<double> params;

  static RectanglePath standard(int per_edge);
};

// Compactification maps: xi = tan(pi u / 2), u in (-1, 1); eta = tan(pi v / 2),
// v in [0, 1). Endpoint parameters map to +-inf markers.
double xi_from_u(double u);
double eta_from_v(double v);

} // namespace mbie
