#pragma once

#include <string>
#include <vector>

namespace fracext {

enum class BoundaryKind { Thm32, Thm34, Trainor, TopLid, Suff31, LinearST };
std::string to_string(BoundaryKind k);

// Forbidden: the region q < boundary is ruled out (necessary condition q >= boundary).
// Admissible: q >= boundary is sufficient.
enum class Direction { Forbidden, Admissible };

struct RegionBoundary {
  BoundaryKind kind = BoundaryKind::Thm32;
  double d = 1.0;
  std::vector<double> alphas;    // Thm32, Thm34, LinearST (first entry)
  std::vector<double> betas;     // Thm32, LinearST (first entry)
  std::vector<double> gammas;    // Trainor
  std::vector<double> box_dims;  // TopLid: upper box dimensions of the supports
  double p0_available = 0.0;     // Suff31: largest admissible p0 (inf allowed)
  bool strict = false;           // forbidden side excludes the boundary itself

  Direction direction() const;
};

RegionBoundary thm32(std::vector<double> alphas, std::vector<double> betas);
RegionBoundary thm34(std::vector<double> alphas);
RegionBoundary trainor(double d, std::vector<double> gammas);
RegionBoundary top_lid(double d, std::vector<double> box_dims);
RegionBoundary suff31(double p0_available);
RegionBoundary linear_st(double d, double alpha, double beta);

// Boundary q at exponent p > 1; may be <= 0 (empty forbidden region) or +inf.
double evaluate_boundary(const RegionBoundary& b, double p);

struct RegionSample {
  std::string kind;
  double inv_p, inv_q;
  Direction direction;
};

struct ContainmentRow {
  double p;
  double thm32, trainor, top_lid;
  bool contains;        // Thm32 forbidden set strictly contains Trainor's
  bool visible;         // the difference lies above the TopLid cut
};

struct RegionReport {
  std::vector<RegionSample> samples;
  std::vector<ContainmentRow> containment;
  bool containment_holds = false;
  bool sum_alpha_below_one = false;
  // p = 2 gap between the multilinear threshold and the linear one via Hoelder
  double gap_lo = 0.0, gap_hi = 0.0;
  bool gap_nonempty = false;
  std::vector<std::string> flags;
};

// Pass an empty p_grid to use 256 points of 1/p in (0,1).
RegionReport region_report(const std::vector<RegionBoundary>& boundaries, std::vector<double> p_grid,
                           const std::vector<double>& alphas, const std::vector<double>& betas);

std::string region_csv(const RegionReport& r);
std::string region_svg(const std::vector<RegionBoundary>& boundaries);

}  // namespace fracext
