#include "mbie/bie_solver.hpp"

#include <Eigen/Dense>

#include "mbie/fft.hpp"

namespace mbie {

void ModelSystemInstance::validate() const {
  G.validate();
  H.validate();
  line.validate();
  if (!G.same_shape(H)) throw ValidationError("ModelSystemInstance: G and H shapes differ");
}

MellinOperator k_operator() {
  MellinOperator op;
  op.kernel.terms.push_back({cd(1.0 / pi, 0.0), cd(-1.0, 0.0), 1});
  return op;
}

LogGridFunction apply_k(const LogGridFunction& u) { return apply_mellin_convolution(k_operator(), u); }

DecoupledRhs decouple(const ModelSystemInstance& instance) {
  instance.validate();
  return {instance.G + instance.H, instance.G - instance.H};
}

namespace {

// 1 +- 1/sin(pi(beta - i xi)) on the line
cd scalar_symbol(double beta, double xi, double sign) {
  return 1.0 + sign * inv_sin_pi(beta, xi);
}

} // namespace

namespace {

// Diagonal solve of (I + sign*K) u = rhs by FFT on a zero-padded copy of the
// grid, along the internal line beta_line; the central slice is returned in
// `out` (preallocated to the rhs shape). The wrap layers of the transform
// route decay into the slice like exp(-dist * pad_units), dist being the
// distance from beta_line to the nearest real zero of the symbol, so the
// caller picks beta_line deep inside the pole-free strip of the solution
// class and pad_units large enough.
void diagonal_solve(const LogGridFunction& rhs, double beta_line, double sign, double pad_units,
                    LogGridFunction& out) {
  const int n = rhs.n;
  const double h = rhs.log_step();
  const int pad = static_cast<int>(std::ceil(pad_units / h));
  std::size_t total = 1;
  while (total < std::size_t(n + 2 * pad)) total <<= 1;

  const double x0 = rhs.log_node(0) - pad * h;
  std::vector<cd> w(total, cd(0.0, 0.0));
  for (int k = 0; k < n; ++k)
    w[pad + k] = std::exp(beta_line * rhs.log_node(k)) * rhs.values[k];

  fft_pow2(w, -1);
  // frequencies of the unshifted FFT bins
  const std::size_t half = total / 2;
  for (std::size_t j = 0; j < total; ++j) {
    double jj = (j <= half) ? double(j) : double(j) - double(total);
    double xi = 2.0 * pi * jj / (double(total) * h);
    cd sym = 1.0 + sign * inv_sin_pi(beta_line, xi);
    if (std::abs(sym) < 1e-6)
      throw NumericalError("solve_mellin: decoupled symbol vanishes on the internal line");
    w[j] /= sym;
  }
  fft_pow2(w, +1);
  const double scale = 1.0 / double(total);
  for (int k = 0; k < n; ++k)
    out.values[k] = w[pad + k] * scale * std::exp(-beta_line * rhs.log_node(k));
  (void)x0;
}

} // namespace

SystemSolution solve_mellin(const ModelSystemInstance& instance) {
  instance.validate();
  const double beta = instance.line.beta;
  // The requested line selects the solution class of each decoupled
  // component: the plus symbol 1 + 1/sin(pi z) has real zeros at -1/2 + 2Z,
  // the minus symbol at 1/2 + 2Z. beta = 1/2 sits on a minus zero and is
  // rejected; otherwise each component is solved on an internal line chosen
  // deep inside its strip, which does not change the solution but makes the
  // transform wrap layers decay fast.
  if (std::abs(beta - 0.5) < 1e-9)
    throw NumericalError(
        "solve_mellin: the minus symbol 1 - 1/sin(pi(beta - i xi)) vanishes at xi = 0 on "
        "beta = 1/2; choose a different beta");
  const double beta_plus = 0.5;                      // strip (-1/2, 3/2)
  const double beta_minus = beta < 0.5 ? 0.05 : 0.95; // strip (-3/2,1/2) or (1/2,5/2)
  const double pad_units = 34.0;

  DecoupledRhs rhs = decouple(instance);
  LogGridFunction u_plus = LogGridFunction::zeros(instance.G.t_min, instance.G.t_max, instance.G.n);
  LogGridFunction u_minus = u_plus;
  diagonal_solve(rhs.plus, beta_plus, 1.0, pad_units, u_plus);
  diagonal_solve(rhs.minus, beta_minus, -1.0, pad_units, u_minus);

  SystemSolution sol;
  sol.method = SolveMethod::MellinDiagonal;
  sol.phi = LogGridFunction::zeros(instance.G.t_min, instance.G.t_max, instance.G.n);
  sol.psi = sol.phi;
  for (int k = 0; k < instance.G.n; ++k) {
    sol.phi.values[k] = 0.5 * (u_plus.values[k] + u_minus.values[k]);
    sol.psi.values[k] = 0.5 * (u_plus.values[k] - u_minus.values[k]);
  }
  sol.phi.truncation_warning = !instance.G.decays() || !instance.H.decays();
  sol.psi.truncation_warning = sol.phi.truncation_warning;
  sol.residual_norm = residual(instance, sol.phi, sol.psi);
  return sol;
}

std::vector<double> NystromMesh::nodes() const {
  if (n < 2 || !(ratio > 1.0) || !(t_max > 0.0)) throw ValidationError("NystromMesh: bad parameters");
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = t_max * std::pow(ratio, double(j - (n - 1)));
  return t;
}

std::vector<double> NystromMesh::weights() const {
  std::vector<double> t = nodes();
  const double h = std::log(ratio);
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    double trap = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    w[j] = trap * h * t[j];
  }
  return w;
}

SystemSolution solve_nystrom(const ModelSystemInstance& instance, const NystromMesh& mesh_in) {
  instance.validate();
  NystromMesh mesh = mesh_in;
  if (mesh.t_max <= 0.0) {
    // follow the data window with a bounded margin below it: meshes that
    // reach far below the data admit the t^{-1/2}-type homogeneous modes of
    // I - K through the end truncation
    mesh.t_max = instance.G.t_max;
    double t_lo = instance.G.t_min * 1e-4;
    int needed = static_cast<int>(std::ceil(std::log(mesh.t_max / t_lo) / std::log(mesh.ratio))) + 1;
    mesh.n = std::clamp(needed, 64, mesh.n);
  }
  const std::vector<double> t = mesh.nodes();
  const std::vector<double> w = mesh.weights();
  const int n = mesh.n;

  LogGridInterpolant G_interp(instance.G), H_interp(instance.H);

  // Collocate in the class selected by the instance's Mellin line: unknowns
  // v = t^{1/2-beta} u turn K into the kernel (t/tau)^{1/2-beta}/(pi(t+tau)).
  // Conjugating by sqrt(w) keeps the condition estimate about the operator
  // rather than the weight range of the mesh. The window section is uniformly
  // solvable for data whose minus combination G - H carries no t^{-1/2} tail
  // moments (the symbol 1 - 1/sin(pi z) has a double zero at z = 1/2, so
  // t^{-1/2} and t^{-1/2} log t solve the homogeneous equation); for data
  // outside that class the far tail of the solution leaves the window and
  // the reported residual shows the deficit.
  const double beta = instance.line.beta;
  if (std::abs(beta - 0.5) < 1e-9)
    throw NumericalError("solve_nystrom: beta = 1/2 does not select a solution class");
  const double q = 0.5 - beta;
  std::vector<double> sw(n), tq(n);
  for (int i = 0; i < n; ++i) {
    sw[i] = std::sqrt(w[i]);
    tq[i] = std::pow(t[i], q);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::VectorXd rhs(2 * n), rhs_im(2 * n);
  bool complex_data = false;
  for (int i = 0; i < n; ++i) {
    M(i, i) = 1.0;
    M(n + i, n + i) = 1.0;
    for (int j = 0; j < n; ++j) {
      double a = sw[i] * sw[j] * (tq[i] / tq[j]) / (pi * (t[i] + t[j]));
      M(i, n + j) += a;
      M(n + i, j) += a;
    }
    cd g = G_interp(t[i]), h = H_interp(t[i]);
    rhs(i) = sw[i] * tq[i] * g.real();
    rhs(n + i) = sw[i] * tq[i] * h.real();
    rhs_im(i) = sw[i] * tq[i] * g.imag();
    rhs_im(n + i) = sw[i] * tq[i] * h.imag();
    if (rhs_im(i) != 0.0 || rhs_im(n + i) != 0.0) complex_data = true;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  if (!(lu.rcond() > 1e-12))
    throw NumericalError("solve_nystrom: collocation matrix condition estimate exceeds 1e12");
  Eigen::VectorXd sol_re = lu.solve(rhs);
  Eigen::VectorXd sol_im =
      complex_data ? lu.solve(rhs_im).eval() : Eigen::VectorXd::Zero(2 * n).eval();

  std::vector<cd> phi_nodes(n), psi_nodes(n);
  for (int i = 0; i < n; ++i) {
    phi_nodes[i] = cd(sol_re(i), sol_im(i)) / (sw[i] * tq[i]);
    psi_nodes[i] = cd(sol_re(n + i), sol_im(n + i)) / (sw[i] * tq[i]);
  }

  // Nystrom interpolant: phi(t) = G(t) - (A psi)(t), psi(t) = H(t) - (A phi)(t)
  auto apply_a = [&](const std::vector<cd>& dens, double at) {
    cd s(0.0, 0.0);
    for (int j = 0; j < n; ++j) s += w[j] * dens[j] / (at + t[j]);
    return s / pi;
  };
  SystemSolution sol;
  sol.method = SolveMethod::Nystrom;
  sol.phi = LogGridFunction::zeros(instance.G.t_min, instance.G.t_max, instance.G.n);
  sol.psi = LogGridFunction::zeros(instance.G.t_min, instance.G.t_max, instance.G.n);
  for (int k = 0; k < instance.G.n; ++k) {
    double at = sol.phi.node(k);
    sol.phi.values[k] = G_interp(at) - apply_a(psi_nodes, at);
    sol.psi.values[k] = H_interp(at) - apply_a(phi_nodes, at);
  }
  sol.residual_norm = residual(instance, sol.phi, sol.psi);
  return sol;
}

double residual(const ModelSystemInstance& instance, const LogGridFunction& phi,
                const LogGridFunction& psi) {
  instance.validate();
  if (!phi.same_shape(instance.G) || !psi.same_shape(instance.G))
    throw ValidationError("residual: grids are not compatible");
  LogGridFunction r1 = phi + apply_k(psi) - instance.G;
  LogGridFunction r2 = psi + apply_k(phi) - instance.H;
  double num = sqr(l2_norm(r1)) + sqr(l2_norm(r2));
  double den = sqr(l2_norm(instance.G)) + sqr(l2_norm(instance.H));
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace mbie
