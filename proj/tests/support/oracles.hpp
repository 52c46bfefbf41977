#pragma once
// Reference computations that share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

// 64-point Gauss-Legendre nodes/weights on [-1,1], by Newton on P_64.
inline const std::pair<std::array<double, 64>, std::array<double, 64>>& gl64() {
  static const auto table = [] {
    std::array<double, 64> x{}, w{};
    const int n = 64;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (z * p1 - p0) / (z * z - 1.0);
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return std::make_pair(x, w);
  }();
  return table;
}

// Composite 64-point Gauss-Legendre on [a,b] with `panels` panels.
template <class F>
auto integrate(F f, double a, double b, int panels = 1) {
  const auto& [x, w] = gl64();
  using R = decltype(f(a));
  R s{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, mid = lo + h / 2;
    for (int i = 0; i < 64; ++i) s += w[i] * f(mid + h / 2 * x[i]);
  }
  return s * (h / 2);
}

// Fourier transform of sum_i w_i delta_{x_i} (or blocks [x_i, x_i + h) when h > 0), by quadrature.
inline std::complex<double> transform(const std::vector<double>& x, const std::vector<double>& w, double h, double xi) {
  const double tau = 2 * std::numbers::pi;
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (h == 0) {
      s += w[i] * std::polar(1.0, -tau * x[i] * xi);
    } else {
      const int panels = 1 + static_cast<int>(std::abs(h * xi));
      const auto blk = integrate([&](double t) { return std::polar(1.0, -tau * t * xi); }, x[i], x[i] + h, panels);
      s += w[i] / h * blk;
    }
  }
  return s;
}

// Number of 2kr-tuples with sum_{n<=r,m} a_{n,m} = sum_{n<=r,m} b_{n,m}, by nested enumeration.
inline std::uint64_t tuple_count(const std::vector<std::vector<std::int64_t>>& sets, int r) {
  std::vector<const std::vector<std::int64_t>*> slots;
  for (int n = 0; n < r; ++n)
    for (const auto& s : sets) slots.push_back(&s);
  std::map<std::int64_t, std::uint64_t> reps;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t acc) {
    if (i == slots.size()) {
      ++reps[acc];
      return;
    }
    for (auto v : *slots[i]) rec(i + 1, acc + v);
  };
  rec(0, 0);
  // pairs of tuples with equal sums, counted tuple by tuple
  std::uint64_t pairs = 0;
  for (const auto& [s, c] : reps) pairs += c * c;
  return pairs;
}

// Beta(a, b) by Gauss-Legendre after removing the endpoint singularities.
inline double beta(double a, double b) {
  auto half = [](double e, double other) {
    const double top = std::pow(0.5, e);
    return oracle::integrate([&](double u) { return std::pow(1.0 - std::pow(u, 1.0 / e), other - 1.0) / e; }, 0.0, top, 8);
  };
  return half(a, b) + half(b, a);
}

}  // namespace oracle
