#include "fracext/dimension.hpp"

#include "fracext/error.hpp"
#include "fracext/extension.hpp"
#include "fracext/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fracext {

double lq_dimension_homogeneous(std::span<const double> probs, double ratio, double q) {
  if (!(q >= 0)) throw InvalidArgument("lq_dimension_homogeneous: q must be >= 0");
  if (!(ratio > 0 && ratio < 1)) throw InvalidArgument("lq_dimension_homogeneous: ratio must lie in (0,1)");
  if (probs.empty()) throw InvalidArgument("lq_dimension_homogeneous: empty probability vector");
  const double ll = std::log(ratio);
  if (q == kInfinity) {
    double pmax = *std::max_element(probs.begin(), probs.end());
    return std::log(pmax) / ll;
  }
  if (q == 1.0) {
    double h = 0.0;
    for (double p : probs)
      if (p > 0) h += p * std::log(p);
    return h / ll;
  }
  double s = 0.0;
  for (double p : probs)
    if (p > 0) s += (q == 0.0) ? 1.0 : std::pow(p, q);
  return std::log(s) / ((q - 1.0) * ll);
}

double energy_integral(const DiscreteMeasure& m, double s) {
  if (m.size() < 2) throw InvalidArgument("energy_integral: need at least two atoms");
  if (!(s > 0 && s < 1)) throw InvalidArgument("energy_integral: s must lie in (0,1)");
  const auto& pos = m.positions();
  for (std::size_t i = 1; i < pos.size(); ++i)
    if (pos[i] == pos[i - 1]) throw InvalidArgument("energy_integral: coincident atoms; merge first");
  std::vector<double> x(m.points());
  if (m.kind() == MeasureKind::Block) {
    const double h2 = 0.5 * to_double(m.block_width());
    for (double& v : x) v += h2;
  }
  const auto& w = m.weights();
  const std::size_t n = x.size();
  // each i accumulates its own row so the result does not depend on thread count
  std::vector<double> row(n, 0.0);
  parallel_for(
      n,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          double acc = 0.0;
          for (std::size_t j = i + 1; j < n; ++j) acc += w[j] * std::pow(x[j] - x[i], -s);
          row[i] = w[i] * acc;
        }
      },
      16);
  double total = 0.0;
  for (double r : row) total += r;
  return 2.0 * total;
}

namespace {

std::vector<double> prefix(const std::vector<double>& w) {
  std::vector<double> cum(w.size() + 1, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) cum[i + 1] = cum[i] + w[i];
  return cum;
}

double ball_mass_impl(const DiscreteMeasure& m, const std::vector<double>& cum, double c, double r) {
  const auto& x = m.points();
  const double lo = c - r, hi = c + r;
  if (m.kind() == MeasureKind::Atomic) {
    auto b = std::lower_bound(x.begin(), x.end(), lo);
    auto e = std::upper_bound(x.begin(), x.end(), hi);
    if (e <= b) return 0.0;
    return cum[e - x.begin()] - cum[b - x.begin()];
  }
  const double h = to_double(m.block_width());
  const std::size_t i0 = std::lower_bound(x.begin(), x.end(), lo - h) - x.begin();
  const std::size_t i1 = std::upper_bound(x.begin(), x.end(), hi) - x.begin();
  std::size_t fb = std::lower_bound(x.begin(), x.end(), lo) - x.begin();
  std::size_t fe = std::upper_bound(x.begin(), x.end(), hi - h) - x.begin();
  double mass = 0.0;
  if (fe > fb) {
    mass = cum[fe] - cum[fb];
  } else {
    fb = fe = i1;
  }
  auto partial = [&](std::size_t i) {
    const double a = std::max(lo, x[i]), b = std::min(hi, x[i] + h);
    if (b > a) mass += m.weights()[i] * (b - a) / h;
  };
  for (std::size_t i = i0; i < std::min(fb, i1); ++i) partial(i);
  for (std::size_t i = std::max(fe, i0); i < i1; ++i) partial(i);
  return mass;
}

}  // namespace

double ball_mass(const DiscreteMeasure& m, double centre, double radius) {
  return ball_mass_impl(m, prefix(m.weights()), centre, radius);
}

BallMassIndex::BallMassIndex(const DiscreteMeasure& m) : m_(m), cum_(prefix(m.weights())) {}

double BallMassIndex::operator()(double centre, double radius) const { return ball_mass_impl(m_, cum_, centre, radius); }

FrostmanFit frostman_fit(const DiscreteMeasure& m, std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("frostman_fit: empty scale list");
  for (double r : radii)
    if (!(r > 0) || r == 1.0) throw InvalidArgument("frostman_fit: radii must be positive and != 1");
  const auto cum = prefix(m.weights());
  const double total = m.total_mass();
  const std::size_t n = m.size();
  std::vector<double> lo(n, kInfinity), hi(n, -kInfinity);
  parallel_for(
      n,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          if (m.weights()[i] <= 0) continue;
          for (double r : radii) {
            const double mass = ball_mass_impl(m, cum, m.points()[i], r) / total;
            const double v = std::log(std::min(1.0, mass)) / std::log(r);
            lo[i] = std::min(lo[i], v);
            hi[i] = std::max(hi[i], v);
          }
        }
      },
      64);
  FrostmanFit out{kInfinity, -kInfinity};
  for (std::size_t i = 0; i < n; ++i) {
    out.upper_exponent = std::min(out.upper_exponent, lo[i]);
    out.lower_exponent = std::max(out.lower_exponent, hi[i]);
  }
  out.upper_exponent = std::max(0.0, out.upper_exponent);
  out.lower_exponent = std::max(0.0, out.lower_exponent);
  return out;
}

std::vector<BoxCount> box_counts(const DiscreteMeasure& m, std::span<const Rational> deltas) {
  std::vector<BoxCount> out;
  for (const auto& d : deltas) {
    if (d <= 0) throw InvalidArgument("box_counts: delta must be positive");
    std::set<BigInt> cells;
    auto floor_div = [](const Rational& x) {
      BigInt q = numerator(x) / denominator(x);
      if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
      return q;
    };
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.weights()[i] <= 0) continue;
      const Rational& a = m.positions()[i];
      BigInt c0 = floor_div(a / d);
      if (m.kind() == MeasureKind::Atomic) {
        cells.insert(c0);
        continue;
      }
      // [a, a+h) meets cells c0 .. ceil((a+h)/d)-1
      Rational end = (a + m.block_width()) / d;
      BigInt c1 = floor_div(end);
      if (Rational(c1) == end) c1 -= 1;
      for (BigInt c = c0; c <= c1; ++c) cells.insert(c);
    }
    out.push_back({d, cells.size()});
  }
  return out;
}

namespace {

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> xi(n);
  const double la = std::log(a), lb = std::log(b);
  for (int j = 0; j < n; ++j) xi[j] = std::exp(la + (lb - la) * j / (n - 1));
  xi.front() = a;
  xi.back() = b;
  return xi;
}

}  // namespace

DecayFit fourier_decay_fit(const DiscreteMeasure& m, double xi_min, double xi_max, int samples) {
  if (!(xi_min >= 1)) throw InvalidArgument("fourier_decay_fit: xi_min must be >= 1");
  if (!(xi_max > xi_min)) throw InvalidArgument("fourier_decay_fit: xi_max must exceed xi_min");
  if (samples < 100) throw InvalidArgument("fourier_decay_fit: need at least 100 samples");
  const auto xi = log_grid(xi_min, xi_max, samples);
  const auto t = extension_transform(m, {}, xi);
  std::vector<double> a(samples);
  for (int j = 0; j < samples; ++j) a[j] = std::abs(t[j]);

  const int windows = samples / 20;
  std::vector<double> env(samples);
  std::vector<double> lx, ly;
  for (int w = 0; w < windows; ++w) {
    const int b = static_cast<int>(static_cast<long>(w) * samples / windows);
    const int e = static_cast<int>(static_cast<long>(w + 1) * samples / windows);
    int arg = b;
    for (int j = b; j < e; ++j)
      if (a[j] > a[arg]) arg = j;
    for (int j = b; j < e; ++j) env[j] = a[arg];
    if (a[arg] > 0) {
      lx.push_back(std::log(xi[arg]));
      ly.push_back(std::log(a[arg]));
    }
  }
  // tail sup: the envelope at xi bounds |mu^| on all of [xi, xi_max]
  for (int j = samples - 2; j >= 0; --j) env[j] = std::max(env[j], env[j + 1]);
  for (std::size_t i = ly.size(); i-- > 1;) ly[i - 1] = std::max(ly[i - 1], ly[i]);
  double e_fit = 0.0, c_fit = 0.0;
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= lx.size();
    my /= lx.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    e_fit = sxx > 0 ? std::max(0.0, -sxy / sxx) : 0.0;
    c_fit = std::exp(my + e_fit * mx);
  } else if (lx.size() == 1) {
    c_fit = std::exp(ly[0]);
  }
  DecayFit fit{e_fit, c_fit, 0.0, xi_min, xi_max, {}};
  fit.samples.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    fit.sup_product = std::max(fit.sup_product, std::pow(xi[j], e_fit) * a[j]);
    fit.samples.push_back({xi[j], a[j], env[j]});
  }
  return fit;
}

double decay_sup_product(const DiscreteMeasure& m, double exponent, double xi_min, double xi_max, int samples) {
  if (!(xi_max > xi_min) || samples < 2) throw InvalidArgument("decay_sup_product: bad range");
  const auto xi = log_grid(xi_min, xi_max, samples);
  const auto t = extension_transform(m, {}, xi);
  double sup = 0.0;
  for (int j = 0; j < samples; ++j) sup = std::max(sup, std::pow(xi[j], exponent) * std::abs(t[j]));
  return sup;
}

}  // namespace fracext
