#pragma once

#include <string>
#include <vector>

#include "mbie/numeric.hpp"

namespace mbie {

// One meromorphic term d / (t - c)^m.
struct KernelTerm {
  cd d;
  cd c;
  int m = 1;
};

// Finite pole/coefficient/multiplicity list for a kernel vanishing at
// infinity. Admissible means every pole on the positive real axis is simple.
struct MeromorphicKernel {
  std::vector<KernelTerm> terms;

  void validate() const;
  bool admissible() const;
  cd eval(double t) const;
  bool empty() const { return terms.empty(); }
};

bool check_admissible(const MeromorphicKernel& kernel);

// Integral operator c0 u + (c1/(pi i)) pv-int u(tau)/(tau - t) dtau
//                  + int K(t/tau) u(tau) dtau/tau.
struct MellinOperator {
  cd c0{0.0, 0.0};
  cd c1{0.0, 0.0};
  MeromorphicKernel kernel;
};

// Mellin line Re = beta, 0 < beta < 1.
struct MellinLine {
  double beta = 0.5;
  void validate() const;
};

// JSON document {terms: [{d_re, d_im, c_re, c_im, m}], c0, c1}.
std::string to_json(const MellinOperator& op);
MellinOperator mellin_operator_from_json(const std::string& text);
void write_json(const MellinOperator& op, const std::string& path);
MellinOperator read_mellin_operator_json(const std::string& path);

} // namespace mbie
