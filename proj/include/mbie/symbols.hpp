#pragma once

#include <vector>

#include "mbie/rectangle.hpp"

namespace mbie {

// Lebesgue exponent p and smoothness order s (named r for the 2x2 system).
struct SpaceParams {
  double p = 2.0;
  double s = 0.0;
  void validate() const;
};

// Scalar operator d0 I + sum_j d_j K^1_{c_j} together with its space
// parameters and the branch parameter gamma of the lifting.
struct SymbolSpec {
  struct Term {
    cd d;
    cd c; // 0 < arg c < 2 pi strictly
  };
  cd d0{0.0, 0.0};
  std::vector<Term> terms;
  SpaceParams params;
  cd gamma{0.0, 1.0}; // 0 < arg gamma < pi

  void validate() const;
};

// Lifted identity symbol. Three-branch closed form: on G1 the jump-filling
// arc e^{pi s i} sin(pi(1/p + s - i xi)) / sin(pi(1/p - i xi)); on G2-/G2+
// boundary values of ((mu - gamma)/(mu + gamma))^s over mu = -eta / +eta with
// the branch that keeps the symbol continuous through every corner of R; on
// G3 the constant e^{pi s i}.
cd identity_symbol(const SpaceParams& params, const RectanglePoint& omega, cd gamma = cd(0.0, 1.0));

// Lifted symbol of K^1_c. On the xi-edges
//   e^{-i pi (1/p - i xi - 1)} c^{1/p - i xi - s - 1} / sin(pi(1/p - i xi)),
// with c^delta on the branch arg c in (0, 2 pi); zero on G2-/G2+.
cd k1_symbol(cd c, const SpaceParams& params, const RectanglePoint& omega);

cd composite_symbol(const SymbolSpec& spec, const RectanglePoint& omega);

// 2x2 symbol of the model system [[I, K^1_{-1}], [K^1_{-1}, I]] of order r.
struct SymbolMatrix {
  int dimension = 2;
  cd diag;
  cd off;
  cd entry(int i, int j) const { return i == j ? diag : off; }
  cd det() const { return diag * diag - off * off; }
};

SymbolMatrix system_symbol(const SpaceParams& params, const RectanglePoint& omega);

// Determinant samples along an oriented discretization of R.
//
// The xi-edge G1 and the eta-edges carry the closed-form symbol table above.
// On the far edge G3 the determinant samples are a closure arc: an arc with
// the matching corner values whose accumulated argument makes the closed
// contour consistent with the operator index obtained by parameter
// continuation from the invertible reference point (order -1/2 at p = 2 for
// the system). The pointwise symbol table on G3 is not reliable for winding
// bookkeeping; see docs/symbol_contour.md.
struct DetCurve {
  RectanglePath path;
  std::vector<cd> det;
  long closure_loops = 0; // loop count of the G3 closure arc
};

DetCurve sample_det_curve(const SymbolSpec& spec, const RectanglePath& path);
DetCurve sample_det_curve_system(const SpaceParams& params, const RectanglePath& path);

// CSV columns: u, edge, re_det, im_det.
void write_csv(const DetCurve& curve, const std::string& path);

} // namespace mbie
