#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbie/symbols.hpp"

namespace mbie {

struct EllipticityReport {
  double min_abs_det = 0.0;
  double max_abs_det = 0.0;
  RectanglePoint arg_min;
  bool elliptic = false;
  double rel_tolerance = 1e-8;
};

// Minimum determinant modulus over the sampled contour; elliptic when the
// minimum exceeds rel_tolerance times the curve maximum.
EllipticityReport ellipticity(const DetCurve& curve, double rel_tolerance = 1e-8);

struct IndexReport {
  long winding_number = 0;
  long operator_index = 0; // = -winding_number
  double residual = 0.0;   // |accumulated/2pi - winding|
};

// Winding of a closed nonvanishing sampled curve by summed argument
// increments. Throws NumericalError if the curve passes near 0 or if the
// accumulation residual indicates under-resolution.
IndexReport winding_number(const std::vector<cd>& closed_curve, double zero_rel_tol = 1e-8);

IndexReport winding_number(const DetCurve& curve, double zero_rel_tol = 1e-8);

// Ellipticity over the G1 edge only (local invertibility at the origin).
EllipticityReport local_invertibility_at_zero(const SymbolSpec& spec, int per_edge = 2048);
EllipticityReport local_invertibility_at_zero(const SpaceParams& system_params, int per_edge = 2048);

enum class Verdict { Fredholm, NotFredholm, UniquelySolvable };

std::string verdict_name(Verdict v);

struct RegionMap {
  std::vector<double> p_grid;
  std::vector<double> r_grid;
  std::vector<Verdict> verdicts;   // row-major: [ip * r_grid.size() + ir]
  std::vector<long> windings;      // meaningful where elliptic; 0 otherwise
  std::vector<std::pair<int, int>> exceptional_cells; // labeled by closed form

  Verdict at(int ip, int ir) const { return verdicts[ip * r_grid.size() + ir]; }
};

struct ScanOptions {
  int per_edge = 384;
  double rel_tolerance = 1e-8;
  int threads = 1;
};

// Per-cell Fredholm verdict from full-contour ellipticity of the system
// symbol; UniquelySolvable where Fredholm holds with winding 0 inside the
// band -1 < r < 0 continued from the invertible anchor (p, r) = (2, -1/2).
// Cells within one grid step of {p = 2} x Z are labeled by the closed-form
// predicate: NotFredholm iff p = 2 and r in {0, 1, 2, ...}.
RegionMap scan_region(const std::vector<double>& p_grid, const std::vector<double>& r_grid,
                      const ScanOptions& options = {});

// Closed-form predicate the scan must reproduce.
bool predicate_not_fredholm(double p, double r);

// Mixed-problem solvability in (p, s): maps to r = s - 1/p and applies the
// system criterion; throws when s <= 1/p (no trace).
Verdict bvp_criterion(double p, double s);

// CSV (p, r, verdict) and JSON {counts, exceptional_cells}.
void write_csv(const RegionMap& map, const std::string& path);
std::string region_summary_json(const RegionMap& map);

} // namespace mbie
