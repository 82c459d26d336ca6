#pragma once

#include <vector>

#include "mbie/kernel.hpp"
#include "mbie/log_grid.hpp"

namespace mbie {

// Samples of a Mellin-transformed function on a frequency grid.
struct MellinData {
  std::vector<double> xi;
  std::vector<cd> values;
  bool truncation_warning = false;
};

// Conjugate frequency grid for a log grid with n nodes and log step h:
// xi_j = (j - n/2) * 2*pi/(n*h). Forward followed by inverse on this grid is
// a discrete Fourier identity, so the round trip is exact to rounding.
std::vector<double> default_xi_grid(const LogGridFunction& shape);

// M_beta u(xi) = int_0^inf t^{beta - i xi} u(t) dt/t, trapezoid in log t.
MellinData mellin_forward(const LogGridFunction& u, MellinLine line,
                          const std::vector<double>& xi_grid);
MellinData mellin_forward(const LogGridFunction& u, MellinLine line);

// Inverse transform onto the shape of `shape` (values of shape are ignored).
LogGridFunction mellin_inverse(const MellinData& hat, MellinLine line,
                               const LogGridFunction& shape);

// Symbol a_beta(xi) = c0 + c1 coth(pi(i beta + xi)) + M_beta K(xi), with the
// kernel transform computed by log-trapezoid quadrature (pv for simple poles
// on the positive axis). Requires an admissible kernel and beta in (0, 1).
cd mellin_symbol(const MellinOperator& op, MellinLine line, double xi);

// Same symbol through the gamma-function closed form; the independent route
// used to cross-check the quadrature.
cd mellin_symbol_closed(const MellinOperator& op, MellinLine line, double xi);

// Quadrature application of the operator on the grid of u. The Cauchy term is
// evaluated as a principal value; kernel terms with positive real simple
// poles get a pv treatment with singularity subtraction.
LogGridFunction apply_mellin_convolution(const MellinOperator& op, const LogGridFunction& u);

} // namespace mbie
