#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mbie/bie_solver.hpp"

namespace mbie {

// Uniform grid on [-L, L] for boundary densities, with an optional smooth
// cos^2 taper to zero between cutoff_start and cutoff_end. The taper is off
// by default (cutoffs at the window edge): tapering decaying traces plants
// spurious density mass near the cutoff whose log potential is long-ranged.
struct BoundaryGrid {
  double half_width = 200.0;
  int n = 16384;
  double cutoff_start = 200.0;
  double cutoff_end = 200.0;

  double step() const { return 2.0 * half_width / (n - 1); }
  double node(int k) const { return -half_width + k * step(); }
  std::vector<double> nodes() const;
  double taper(double t) const;
  std::vector<double> sample(const std::function<double(double)>& f) const;
};

// Layer potentials of the upper half plane at interior points x2 > 0.
double double_layer(const std::vector<double>& v, const BoundaryGrid& grid, double x1, double x2);
double single_layer(const std::vector<double>& v, const BoundaryGrid& grid, double x1, double x2,
                    bool* growth_warning = nullptr);

// Newton volume potential of f over a rectangle, tensor trapezoid; only a
// smoke-level capability, the manufactured suite runs with f = 0.
struct VolumeBox {
  double x1_lo = -5, x1_hi = 5, x2_lo = 0, x2_hi = 5;
  int n1 = 200, n2 = 100;
};
double newton_potential(const std::function<double(double, double)>& f, const VolumeBox& box,
                        double x1, double x2);

// Boundary traces of the potentials. The order-0 traces vanish identically on
// the line; the single layer trace uses the lattice log rule, the
// hypersingular trace the regularized Cauchy pv form -v + (1/2pi) pv int v'/(t-tau).
std::vector<double> trace_single_layer(const std::vector<double>& v, const BoundaryGrid& grid);
std::vector<double> trace_double_layer_zero(const BoundaryGrid& grid);   // identically 0
std::vector<double> trace_adjoint_double_layer_zero(const BoundaryGrid& grid); // identically 0
std::vector<double> trace_hypersingular(const std::vector<double>& v, const BoundaryGrid& grid);

// 4th order centered first derivative on the uniform grid.
std::vector<double> derivative4(const std::vector<double>& v, double h);

// Closed-form decaying harmonic function on the upper half plane with its
// boundary traces; f = 0.
struct HarmonicTestCase {
  std::string name;
  std::function<double(double, double)> u;
  std::function<double(double)> dirichlet; // u(t, 0)
  std::function<double(double)> neumann;   // -d2 u (t, 0)
};
HarmonicTestCase harmonic_case_1(); // Re 1/(z + i)
HarmonicTestCase harmonic_case_2(); // (x2+1)/(x1^2 + (x2+1)^2)

// Mixed-problem assembly: from full-line extensions g0 (Dirichlet) and h0
// (Neumann) build the half-line system G = 2 d/dt G1, H = 2 H1(-t) together
// with the model instance on a log grid.
struct AssembledSystem {
  ModelSystemInstance instance;
  std::vector<double> G1; // on the boundary grid (meaningful for t > 0)
  std::vector<double> H1; // on the boundary grid (meaningful for t < 0)
};
AssembledSystem assemble_model_system(const std::vector<double>& g0, const std::vector<double>& h0,
                                      const BoundaryGrid& grid, double t_min = 1e-8,
                                      double t_max = 1e8, int n_log = 2048, double beta = 0.25);

// Corrections phi0 (supported t > 0) and psi0 (supported t < 0) on the
// boundary grid, recovered from the model-system solution by undoing the
// derivative and reflection maps.
struct BvpCorrections {
  std::vector<double> phi0;
  std::vector<double> psi0;
  double system_residual = 0.0;
};
BvpCorrections solve_mixed_bvp(const std::vector<double>& g0, const std::vector<double>& h0,
                               const BoundaryGrid& grid);

// Representation u = W(g0 + phi0) - V(h0 + psi0) at an interior point.
double reconstruct(const std::vector<double>& g_total, const std::vector<double>& h_total,
                   const BoundaryGrid& grid, double x1, double x2);

struct ProbeResult {
  double x1, x2;
  double u_reconstructed;
  double u_exact;
  double abs_err;
};
// CSV columns: x1, x2, u_reconstructed, u_exact, abs_err.
void write_csv(const std::vector<ProbeResult>& probes, const std::string& path);

} // namespace mbie
