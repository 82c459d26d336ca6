#include <doctest.h>

#include "mbie/mellin.hpp"
#include "oracles.hpp"

using namespace mbie;

namespace {

MeromorphicKernel poisson_kernel() {
  // 1/(pi (t + 1)): single term d = 1/pi, c = -1, m = 1
  MeromorphicKernel k;
  k.terms.push_back({cd(1.0 / pi, 0.0), cd(-1.0, 0.0), 1});
  return k;
}

LogGridFunction smooth_profile(double t_min = 1e-6, double t_max = 1e6, int n = 2048) {
  // log-Gaussian bump, decays at both grid ends
  return LogGridFunction::sample(
      [](double t) {
        double x = std::log(t);
        return cd(std::exp(-0.5 * x * x), 0.0);
      },
      t_min, t_max, n);
}

// Relative l2 over the interior window |log t| <= x_half. The transform
// route carries an O(1) wrap layer at the grid ends (the e^{-beta x} weight
// amplifies the circular wrap), so symbol-consistency comparisons mask it.
double interior_rel_l2(const LogGridFunction& a, const LogGridFunction& b, double x_half) {
  double num = 0.0, den = 0.0;
  for (int k = 0; k < a.n; ++k) {
    if (std::abs(a.log_node(k)) > x_half) continue;
    num += std::norm(a.values[k] - b.values[k]);
    den += std::norm(b.values[k]);
  }
  return std::sqrt(num / den);
}

} // namespace

TEST_CASE("admissibility predicate") {
  MeromorphicKernel k = poisson_kernel();
  CHECK(check_admissible(k));

  MeromorphicKernel bad;
  bad.terms.push_back({cd(1.0, 0.0), cd(1.0, 0.0), 2}); // positive pole, multiplicity 2
  CHECK_FALSE(check_admissible(bad));

  MeromorphicKernel empty;
  CHECK(check_admissible(empty));

  MeromorphicKernel zero_pole;
  zero_pole.terms.push_back({cd(1.0, 0.0), cd(0.0, 0.0), 1});
  CHECK_THROWS_AS(check_admissible(zero_pole), ValidationError);

  MeromorphicKernel pos_simple;
  pos_simple.terms.push_back({cd(1.0, 0.0), cd(3.0, 0.0), 1});
  CHECK(check_admissible(pos_simple));
}

TEST_CASE("mellin symbol of the model kernel") {
  MellinOperator op;
  op.kernel = poisson_kernel();

  // beta = 1/2, xi = 0: 1/sin(pi/2) = 1
  cd v = mellin_symbol(op, MellinLine{0.5}, 0.0);
  CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-10);

  // identity-only operator
  MellinOperator ident;
  ident.c0 = cd(5.0, 0.0);
  CHECK(std::abs(mellin_symbol(ident, MellinLine{0.3}, 1.7) - cd(5.0, 0.0)) < 1e-14);

  // beta = 1/4, xi = 1: frozen from the adaptive-quadrature oracle, equal to
  // 1/sin(pi(1/4 - i))
  cd frozen(6.1227622122453994e-02, 6.0999370213996783e-02);
  cd got = mellin_symbol(op, MellinLine{0.25}, 1.0);
  CHECK(std::abs(got - frozen) < 1e-10);

  // the oracle quadrature agrees with both
  cd oracle = oracles::mellin_transform([](double t) { return cd(1.0 / (pi * (1.0 + t)), 0.0); },
                                        0.25, 1.0, -140.0, 50.0);
  CHECK(std::abs(oracle - frozen) < 1e-9);

  // closed-form route matches the quadrature route
  CHECK(std::abs(mellin_symbol_closed(op, MellinLine{0.25}, 1.0) - got) < 1e-10);
}

TEST_CASE("mellin symbol general poles, quadrature vs closed form") {
  oracles::Rng rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    double argc = rng.uniform(0.15, 2.0 * pi - 0.15);
    double absc = rng.uniform(0.3, 4.0);
    int m = rng.uniform_int(1, 3);
    MellinOperator op;
    op.kernel.terms.push_back({cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
                               std::polar(absc, argc), m});
    MellinLine line{rng.uniform(0.12, 0.88)};
    double xi = rng.uniform(-10.0, 10.0);
    cd quad = mellin_symbol(op, line, xi);
    cd closed = mellin_symbol_closed(op, line, xi);
    CAPTURE(argc);
    CAPTURE(m);
    CAPTURE(xi);
    CHECK(std::abs(quad - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("mellin symbol pv pole on the positive axis") {
  MellinOperator op;
  op.kernel.terms.push_back({cd(1.0 / pi, 0.0), cd(2.0, 0.0), 1});
  MellinLine line{0.4};
  for (double xi : {0.0, 0.8, -2.5}) {
    cd quad = mellin_symbol(op, line, xi);
    cd closed = mellin_symbol_closed(op, line, xi);
    CHECK(std::abs(quad - closed) < 2e-7 * std::max(1.0, std::abs(closed)));
  }
  // non-admissible kernel is rejected
  MellinOperator bad;
  bad.kernel.terms.push_back({cd(1.0, 0.0), cd(2.0, 0.0), 2});
  CHECK_THROWS_AS(mellin_symbol(bad, line, 0.0), ValidationError);
  // beta outside (0,1) is a domain error
  CHECK_THROWS_AS(mellin_symbol(op, MellinLine{1.2}, 0.0), ValidationError);
}

TEST_CASE("forward transform values and round trip") {
  // u = e^{-t}: M u(xi) = Gamma(1/2 - i xi) on beta = 1/2. The left end must
  // sit deep enough that t^{1/2} e^{-t} is below the target accuracy.
  LogGridFunction u = LogGridFunction::sample([](double t) { return cd(std::exp(-t), 0.0); },
                                              1e-18, 1e4, 8192);
  MellinLine half{0.5};
  MellinData hat = mellin_forward(u, half, {0.0, 0.7});
  CHECK(std::abs(hat.values[0] - cd(1.7724538509055159, 0.0)) < 1e-8); // Gamma(1/2)
  CHECK(std::abs(hat.values[1] - cd(0.527419857318371423, 0.640449474845219018)) < 1e-8);

  // round trip identity on a smooth concentrated profile
  LogGridFunction f = smooth_profile();
  MellinData fh = mellin_forward(f, MellinLine{0.25});
  LogGridFunction back = mellin_inverse(fh, MellinLine{0.25}, f);
  double sup = 0.0;
  for (int k = 0; k < f.n; ++k) sup = std::max(sup, std::abs(back.values[k] - f.values[k]));
  CHECK(sup < 1e-8);

  // zero maps to zero
  LogGridFunction z = LogGridFunction::zeros(1e-6, 1e6, 512);
  MellinData zh = mellin_forward(z, half);
  CHECK(max_abs(zh.values) == 0.0);
}

TEST_CASE("truncation warnings") {
  LogGridFunction bad = LogGridFunction::sample([](double) { return cd(1.0, 0.0); }, 1e-3, 1e3, 256);
  MellinData hat = mellin_forward(bad, MellinLine{0.5});
  CHECK(hat.truncation_warning);
  LogGridFunction good = smooth_profile(1e-6, 1e6, 512);
  CHECK_FALSE(mellin_forward(good, MellinLine{0.5}).truncation_warning);
}

TEST_CASE("apply identity and linearity") {
  MellinOperator ident;
  ident.c0 = cd(1.0, 0.0);
  LogGridFunction u = smooth_profile(1e-6, 1e6, 512);
  LogGridFunction v = apply_mellin_convolution(ident, u);
  CHECK(rel_l2_distance(v, u) < 1e-14);

  MellinOperator op;
  op.c0 = cd(0.3, 0.1);
  op.kernel = poisson_kernel();
  LogGridFunction a = smooth_profile(1e-6, 1e6, 512);
  LogGridFunction b = LogGridFunction::sample(
      [](double t) {
        double x = std::log(t) - 1.0;
        return cd(0.0, std::exp(-x * x));
      },
      1e-6, 1e6, 512);
  LogGridFunction lhs = apply_mellin_convolution(op, a + b);
  LogGridFunction rhs = apply_mellin_convolution(op, a) + apply_mellin_convolution(op, b);
  CHECK(rel_l2_distance(lhs, rhs) < 1e-12);
}

TEST_CASE("symbol consistency: apply vs forward-multiply-inverse") {
  // includes identity, Cauchy pv term, and the meromorphic kernel. The input
  // has zero log-mean so the operator output decays at the 0-end too and the
  // transform route represents it on the (wide) window.
  MellinOperator op;
  op.c0 = cd(0.5, 0.0);
  op.c1 = cd(0.25, 0.0);
  op.kernel = poisson_kernel();

  LogGridFunction u = LogGridFunction::sample(
      [](double t) {
        double x = std::log(t);
        return cd(-x * std::exp(-0.5 * x * x), 0.0);
      },
      1e-14, 1e14, 4096);
  MellinLine line{0.5};
  LogGridFunction direct = apply_mellin_convolution(op, u);

  MellinData hat = mellin_forward(u, line);
  for (std::size_t j = 0; j < hat.xi.size(); ++j)
    hat.values[j] *= mellin_symbol_closed(op, line, hat.xi[j]);
  LogGridFunction via_symbol = mellin_inverse(hat, line, u);

  CHECK(interior_rel_l2(direct, via_symbol, 15.0) < 1e-6);
}

TEST_CASE("narrow bump maps to kernel profile") {
  // K against a bump concentrating at t = 1 approaches (1/pi) / (t + 1)
  MellinOperator op;
  op.kernel = poisson_kernel();
  double prev_err = 1e9;
  for (double width : {0.2, 0.1, 0.05}) {
    double w = width;
    LogGridFunction bump = LogGridFunction::sample(
        [w](double t) {
          double x = std::log(t);
          // unit mass in dtau/tau
          return cd(std::exp(-0.5 * x * x / (w * w)) / (w * std::sqrt(2.0 * pi)), 0.0);
        },
        1e-6, 1e6, 4096);
    LogGridFunction out = apply_mellin_convolution(op, bump);
    double err = 0.0;
    for (int k = 0; k < out.n; ++k) {
      double t = out.node(k);
      if (t < 1e-2 || t > 1e2) continue;
      err = std::max(err, std::abs(out.values[k] - cd(1.0 / (pi * (t + 1.0)), 0.0)));
    }
    CHECK(err < prev_err + 1e-12); // refining the bump improves the match
    prev_err = err;
  }
  CHECK(prev_err < 2e-3);
}

TEST_CASE("kernel pv term in apply") {
  // positive-axis simple pole: check against the symbol route
  MellinOperator op;
  op.kernel.terms.push_back({cd(1.0 / pi, 0.0), cd(2.0, 0.0), 1});
  LogGridFunction u = LogGridFunction::sample(
      [](double t) {
        double x = std::log(t);
        return cd(-x * std::exp(-0.5 * x * x), 0.0);
      },
      1e-14, 1e14, 4096);
  MellinLine line{0.5};
  LogGridFunction direct = apply_mellin_convolution(op, u);
  MellinData hat = mellin_forward(u, line);
  for (std::size_t j = 0; j < hat.xi.size(); ++j)
    hat.values[j] *= mellin_symbol_closed(op, line, hat.xi[j]);
  LogGridFunction via_symbol = mellin_inverse(hat, line, u);
  CHECK(interior_rel_l2(direct, via_symbol, 15.0) < 1e-4);
}

TEST_CASE("kernel and operator json round trip") {
  MellinOperator op;
  op.c0 = cd(1.0, -0.5);
  op.c1 = cd(0.0, 2.0);
  op.kernel.terms.push_back({cd(0.3, 0.1), cd(-1.0, 0.4), 2});
  MellinOperator back = mellin_operator_from_json(to_json(op));
  CHECK(back.c0 == op.c0);
  CHECK(back.c1 == op.c1);
  REQUIRE(back.kernel.terms.size() == 1);
  CHECK(back.kernel.terms[0].c == op.kernel.terms[0].c);
  CHECK(back.kernel.terms[0].m == 2);
}

TEST_CASE("log grid csv round trip") {
  LogGridFunction f = smooth_profile(1e-3, 1e3, 64);
  write_csv(f, "/tmp/mbie_test_grid.csv");
  LogGridFunction g = read_log_grid_csv("/tmp/mbie_test_grid.csv");
  REQUIRE(g.n == f.n);
  CHECK(rel_l2_distance(g, f) < 1e-12);
}
