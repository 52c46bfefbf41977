#include "fracext/extension.hpp"

#include "fracext/error.hpp"
#include "fracext/kernels/kernels.hpp"
#include "fracext/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracext {

FrequencyGrid::FrequencyGrid(double radius, double step) : radius_(radius), step_(step) {
  if (!(radius > 0) || !std::isfinite(radius)) throw InvalidArgument("FrequencyGrid: R must be positive and finite");
  if (!(step > 0) || !std::isfinite(step)) throw InvalidArgument("FrequencyGrid: step must be positive");
  const double steps = std::ceil(2.0 * radius / step - 1e-9);
  if (steps > 5e8) throw ResourceLimit("FrequencyGrid: too many points");
  const auto n = static_cast<std::size_t>(steps);
  points_.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) points_.push_back(-radius + static_cast<double>(i) * step);
  points_.push_back(radius);
}

bool FrequencyGrid::resolves(double diameter) const { return diameter <= 0 || step_ <= 1.0 / (4.0 * diameter) * (1 + 1e-12); }

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  // sin(pi x) evaluated with the argument reduced mod 2 for accuracy at large x
  return std::sin(std::numbers::pi * std::remainder(x, 2.0)) / px;
}

namespace {

std::vector<double> effective_weights(const DiscreteMeasure& m, std::span<const double> f) {
  std::vector<double> w(m.weights());
  if (!f.empty()) {
    if (f.size() != m.size()) throw InvalidArgument("extension_transform: f has " + std::to_string(f.size()) +
                                                    " values for " + std::to_string(m.size()) + " atoms");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= f[i];
  }
  return w;
}

}  // namespace

std::vector<std::complex<double>> extension_transform(const DiscreteMeasure& m, std::span<const double> f,
                                                      std::span<const double> xis) {
  const std::vector<double> w = effective_weights(m, f);
  std::vector<double> re(xis.size()), im(xis.size());
  const auto& k = kernels::active();
  parallel_for(
      xis.size(),
      [&](std::size_t b, std::size_t e) {
        k.phasor_sum(m.points().data(), w.data(), w.size(), xis.data() + b, e - b, re.data() + b, im.data() + b);
      },
      std::max<std::size_t>(1, 4096 / std::max<std::size_t>(1, w.size())));
  std::vector<std::complex<double>> out(xis.size());
  const bool block = m.kind() == MeasureKind::Block;
  const double h = block ? to_double(m.block_width()) : 0.0;
  for (std::size_t j = 0; j < xis.size(); ++j) {
    std::complex<double> v(re[j], im[j]);
    if (block && xis[j] != 0.0) {
      // block [a, a+h): e^{-2 pi i a xi} * e^{-pi i h xi} sinc(h xi)
      double t = 0.5 * h * xis[j];
      t -= std::nearbyint(t);
      const double ang = 2.0 * std::numbers::pi * t;
      v *= std::complex<double>(std::cos(ang), -std::sin(ang)) * sinc(h * xis[j]);
    }
    out[j] = v;
  }
  return out;
}

std::complex<double> extension_transform(const DiscreteMeasure& m, std::span<const double> f, double xi) {
  const double x[1] = {xi};
  return extension_transform(m, f, std::span<const double>(x, 1))[0];
}

double lq_freq_norm(std::span<const double> v, double q, const FrequencyGrid& grid) {
  if (v.size() != grid.size()) throw InvalidArgument("lq_freq_norm: sample count does not match grid");
  if (q == kInfinity) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx;
  }
  if (!(q >= 1)) throw InvalidArgument("lq_freq_norm: q must be >= 1");
  const auto& pts = grid.points();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1] - pts[i];
    s += 0.5 * dx * (std::pow(std::abs(v[i]), q) + std::pow(std::abs(v[i + 1]), q));
  }
  return std::pow(s, 1.0 / q);
}

double lp_norm(const DiscreteMeasure& m, std::span<const double> f, double p) {
  if (!(p >= 1)) throw InvalidArgument("lp_norm: p must be >= 1");
  if (!f.empty() && f.size() != m.size()) throw InvalidArgument("lp_norm: f length mismatch");
  if (p == kInfinity) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.weights()[i] > 0) mx = std::max(mx, f.empty() ? 1.0 : std::abs(f[i]));
    return mx;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += std::pow(f.empty() ? 1.0 : std::abs(f[i]), p) * m.weights()[i];
  return std::pow(s, 1.0 / p);
}

std::vector<double> product_modulus(std::span<const DiscreteMeasure> measures, std::span<const std::vector<double>> fs,
                                    const FrequencyGrid& grid) {
  if (measures.empty()) throw InvalidArgument("product_modulus: need at least one measure");
  if (!fs.empty() && fs.size() != measures.size()) throw InvalidArgument("product_modulus: fs/measures length mismatch");
  std::vector<double> prod(grid.size(), 1.0);
  for (std::size_t m = 0; m < measures.size(); ++m) {
    std::span<const double> f = fs.empty() ? std::span<const double>() : std::span<const double>(fs[m]);
    auto t = extension_transform(measures[m], f, grid.points());
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] *= std::abs(t[j]);
  }
  return prod;
}

double multilinear_ratio(std::span<const DiscreteMeasure> measures, std::span<const std::vector<double>> fs, double p,
                         double q, const FrequencyGrid& grid) {
  double denom = 1.0;
  for (std::size_t m = 0; m < measures.size(); ++m) {
    std::span<const double> f = fs.empty() ? std::span<const double>() : std::span<const double>(fs[m]);
    const double n = lp_norm(measures[m], f, p);
    if (n == 0) throw InvalidArgument("multilinear_ratio: f_" + std::to_string(m + 1) + " has zero L^p norm");
    denom *= n;
  }
  return lq_freq_norm(product_modulus(measures, fs, grid), q, grid) / denom;
}

double bspline_hatK(int n, double x) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("bspline_hatK: order must be even and >= 2");
  const double ax = std::abs(x);
  const double half = n / 2.0;
  if (ax >= half) return 0.0;
  // M_n(x) = 1/(n-1)! sum_j (-1)^j C(n,j) (x + n/2 - j)_+^{n-1}
  double s = 0.0, binom = 1.0, fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  for (int j = 0; j <= n; ++j) {
    const double u = ax + half - j;
    if (u <= 0) break;
    s += ((j % 2) ? -1.0 : 1.0) * binom * std::pow(u, n - 1);
    binom = binom * (n - j) / (j + 1);
  }
  return std::max(0.0, s / fact);
}

}  // namespace fracext
