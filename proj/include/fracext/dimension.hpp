#pragma once

#include "fracext/measure.hpp"

#include <span>
#include <vector>

namespace fracext {

// D_q of a self-similar measure with equal ratio lambda under OSC. q may be +inf.
double lq_dimension_homogeneous(std::span<const double> probs, double ratio, double q);

// sum_{i != j} w_i w_j |x_i - x_j|^{-s}; block atoms at their centres.
double energy_integral(const DiscreteMeasure& m, double s);

// Closed-ball mass mu([c - r, c + r]); block measures use exact overlap lengths.
double ball_mass(const DiscreteMeasure& m, double centre, double radius);

// Prefix sums reused across many ball queries on one measure.
class BallMassIndex {
 public:
  explicit BallMassIndex(const DiscreteMeasure& m);
  double operator()(double centre, double radius) const;

 private:
  const DiscreteMeasure& m_;
  std::vector<double> cum_;
};

struct FrostmanFit {
  double upper_exponent;
  double lower_exponent;
};
FrostmanFit frostman_fit(const DiscreteMeasure& m, std::span<const double> radii);

struct BoxCount {
  Rational delta;
  std::size_t count;
};
// Cells are [j delta, (j+1) delta).
std::vector<BoxCount> box_counts(const DiscreteMeasure& m, std::span<const Rational> deltas);

struct DecaySample {
  double xi;
  double abs_fhat;
  double envelope;
};

struct DecayFit {
  double exponent;
  double constant;
  double sup_product;
  double xi_min;
  double xi_max;
  std::vector<DecaySample> samples;
};
DecayFit fourier_decay_fit(const DiscreteMeasure& m, double xi_min, double xi_max, int samples);
// max over the same log-uniform samples of xi^e |mu^(xi)| for a given e.
double decay_sup_product(const DiscreteMeasure& m, double exponent, double xi_min, double xi_max, int samples);

}  // namespace fracext
