#pragma once

#include "fracext/extension.hpp"
#include "fracext/measure.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fracext {

inline constexpr double kDefaultConvolutionCap = 1e11;

struct DensityEstimate {
  double origin;      // left edge of cell 0
  double cell_width;
  std::vector<double> values;  // density per unit length

  double centre(std::size_t i) const { return origin + (static_cast<double>(i) + 0.5) * cell_width; }
  double mass() const;
  // As a Block measure with one block per cell (for transform checks).
  DiscreteMeasure as_measure() const;
};

// Bins each measure at the cell holding its atom (block centre), then convolves.
// Cap bounds cells^2 + sum of atom counts.
DensityEstimate convolve_grid(std::span<const DiscreteMeasure> measures, int cells,
                              double cap = kDefaultConvolutionCap);

double density_lp_norm(const DensityEstimate& d, double p);

struct ExtendedExponent {
  enum class Kind { Finite, Infinite, Undefined };
  Kind kind;
  double value;  // meaningful for Finite; +inf for Infinite; NaN otherwise

  bool usable() const { return kind != Kind::Undefined; }
};
ExtendedExponent theorem31_exponent(double p, double q);

struct Theorem31Level {
  std::vector<DiscreteMeasure> measures;
  int cells;  // convolution grid for the hypothesis check
};

struct Theorem31Report {
  double p, q;
  ExtendedExponent p0;
  std::vector<int> cells;
  std::vector<double> norms;  // L^{p0} norm of the density per level
  bool hypothesis_holds;
  std::vector<double> max_ratio_by_level;
  double ratio_growth;  // last level over previous, minus 1
  std::string verdict;  // PASS | FAIL | HYPOTHESIS_FAIL
};

// Levels must be ordered coarse to fine (at least two).
Theorem31Report verify_theorem31(std::span<const Theorem31Level> levels, double p, double q, int trials,
                                 std::uint64_t seed, const FrequencyGrid& grid);

struct Cor32Params {
  double d = 1.0;
  double lq_dimension;  // D_{p0}(mu)
  double fourier_dimension;  // dim_F(nu)
};

struct HomogeneousSpec {
  std::vector<double> probs;
  double ratio;
};

struct Cor33Params {
  HomogeneousSpec first, second;
  double p0;
  // log|l2|/log|l1| irrational cannot be decided from floats; caller asserts it.
  bool irrationality_asserted = false;
};

struct Ex34Params {
  std::vector<double> rho;  // probabilities for the 1/4-IFS
  double gamma;             // (gamma, 1-gamma) for the 1/3-IFS
  double p0;
};

struct CorollaryCheck {
  bool holds;
  double margin;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> flags;
};

CorollaryCheck check_corollary_hypotheses(const Cor32Params& params);
CorollaryCheck check_corollary_hypotheses(const Cor33Params& params);
CorollaryCheck check_corollary_hypotheses(const Ex34Params& params);

// log m1/|log l1| + log m2/|log l2|
double similarity_dimension_sum(std::size_t m1, double l1, std::size_t m2, double l2);

}  // namespace fracext
