#pragma once

#include "mbie/mellin.hpp"

namespace mbie {

// Model system on the half axis:
//   phi + K psi = G,  psi + K phi = H,   K v(t) = (1/pi) int v(tau)/(t+tau) dtau.
struct ModelSystemInstance {
  LogGridFunction G;
  LogGridFunction H;
  MellinLine line{0.25}; // solution Mellin line

  void validate() const;
};

enum class SolveMethod { MellinDiagonal, Nystrom };

struct SystemSolution {
  LogGridFunction phi;
  LogGridFunction psi;
  double residual_norm = 0.0;
  SolveMethod method = SolveMethod::MellinDiagonal;
};

// The operator K = K^1_{-1} as a Mellin convolution: kernel 1/(pi(t + tau)).
MellinOperator k_operator();
LogGridFunction apply_k(const LogGridFunction& u);

// Symmetric decoupling u+- = phi +- psi: (I +- K) u+- = G +- H.
struct DecoupledRhs {
  LogGridFunction plus;  // G + H
  LogGridFunction minus; // G - H
};
DecoupledRhs decouple(const ModelSystemInstance& instance);

// Diagonalize each decoupled equation in the Mellin domain:
// u_hat = rhs_hat / (1 +- 1/sin(pi(beta - i xi))). The minus symbol vanishes
// on beta = 1/2 at xi = 0; such lines are rejected.
SystemSolution solve_mellin(const ModelSystemInstance& instance);

// Geometric collocation mesh graded toward 0 from t_max. A nonpositive
// t_max means "follow the instance grid".
struct NystromMesh {
  double t_max = 0.0;
  double ratio = 1.15;
  int n = 512;

  std::vector<double> nodes() const;
  std::vector<double> weights() const; // log-trapezoid: h * t_j
};

// Dense 2n x 2n collocation solve; the solution is evaluated back on the
// instance grid through the Nystrom interpolant of the equations.
SystemSolution solve_nystrom(const ModelSystemInstance& instance, const NystromMesh& mesh = {});

// Relative L2 residual of both equations, evaluated by the mellin_core
// convolution quadrature (independent of either solve path).
double residual(const ModelSystemInstance& instance, const LogGridFunction& phi,
                const LogGridFunction& psi);

} // namespace mbie
