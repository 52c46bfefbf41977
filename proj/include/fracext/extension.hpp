#pragma once

#include "fracext/measure.hpp"

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace fracext {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Symmetric uniform grid on [-R, R]; the last step may be shorter so R is hit exactly.
class FrequencyGrid {
 public:
  FrequencyGrid(double radius, double step);

  double radius() const { return radius_; }
  double step() const { return step_; }
  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  // Nyquist-style guard for norm quadrature: step <= 1/(4 diam).
  bool resolves(double diameter) const;

 private:
  double radius_, step_;
  std::vector<double> points_;
};

// sin(pi x)/(pi x)
double sinc(double x);

// f empty means f = 1.
std::complex<double> extension_transform(const DiscreteMeasure& m, std::span<const double> f, double xi);
std::vector<std::complex<double>> extension_transform(const DiscreteMeasure& m, std::span<const double> f,
                                                      std::span<const double> xis);

// Trapezoid rule of |v|^q over the grid, then q-th root; q = inf gives the max.
double lq_freq_norm(std::span<const double> abs_values, double q, const FrequencyGrid& grid);

double lp_norm(const DiscreteMeasure& m, std::span<const double> f, double p);

// |prod_m transform(mu_m, f_m)| sampled on the grid.
std::vector<double> product_modulus(std::span<const DiscreteMeasure> measures,
                                    std::span<const std::vector<double>> fs, const FrequencyGrid& grid);

double multilinear_ratio(std::span<const DiscreteMeasure> measures, std::span<const std::vector<double>> fs, double p,
                         double q, const FrequencyGrid& grid);

// Fourier transform of sinc^n: the centred cardinal B-spline of order n.
double bspline_hatK(int n, double x);

}  // namespace fracext
