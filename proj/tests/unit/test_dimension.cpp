#include "doctest.h"
#include "oracles.hpp"

#include "fracext/dimension.hpp"
#include "fracext/error.hpp"
#include "fracext/extension.hpp"

#include <cmath>

using namespace fracext;

namespace {
SimilarityIFS cantor() {
  return SimilarityIFS({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}}, {Rational(1, 2), Rational(1, 2)});
}
const double kCantorDim = std::log(2.0) / std::log(3.0);
}  // namespace

TEST_CASE("L^q dimensions of homogeneous measures") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(lq_dimension_homogeneous(half, 1.0 / 3, 2.0) == doctest::Approx(kCantorDim).epsilon(1e-14));
  CHECK(std::abs(lq_dimension_homogeneous(half, 1.0 / 3, 1.0) - kCantorDim) < 1e-14);
  const std::vector<double> rho{0.1, 0.65, 0.25};
  CHECK(lq_dimension_homogeneous(rho, 0.25, 2.0) == doctest::Approx(std::log(0.495) / -std::log(4.0)).epsilon(1e-14));
  CHECK(lq_dimension_homogeneous(rho, 0.25, 2.0) == doctest::Approx(0.507250).epsilon(1e-6));
  for (const auto& p : {half, rho, std::vector<double>{0.7, 0.2, 0.1}}) {
    double prev = 2.0;
    for (double q : {0.0, 0.5, 1.0, 2.0, 4.0, 64.0, kInfinity}) {
      const double v = lq_dimension_homogeneous(p, 0.25, q);
      CHECK(v <= prev + 1e-15);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
  CHECK_THROWS_AS(lq_dimension_homogeneous(half, 1.0 / 3, -1.0), InvalidArgument);
}

TEST_CASE("energy integral") {
  const auto two = DiscreteMeasure::atomic({{Rational(0), 0.5}, {Rational(1), 0.5}});
  CHECK(energy_integral(two, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(energy_integral(two, 1.0), InvalidArgument);
  CHECK_THROWS_AS(energy_integral(DiscreteMeasure::atomic({{Rational(0), 1.0}}), 0.5), InvalidArgument);

  // against a direct double loop
  const auto m = build_self_similar(cantor(), 5);
  double ref = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) ref += m.weights()[i] * m.weights()[j] * std::pow(std::abs(m.points()[i] - m.points()[j]), -0.4);
  CHECK(energy_integral(m, 0.4) == doctest::Approx(ref).epsilon(1e-12));

  // Dropping the diagonal at depth n leaves out about 2^-n 3^{ns} of the limit, so consecutive
  // increments shrink by 3^s/2 per level below the dimension and grow above it.
  std::vector<double> e5, e7;
  for (int n = 6; n <= 11; ++n) {
    const auto mu = build_self_similar(cantor(), n);
    e5.push_back(energy_integral(mu, 0.5));
    e7.push_back(energy_integral(mu, 0.7));
  }
  for (std::size_t i = 2; i < e5.size(); ++i) {
    const double rate = (e5[i] - e5[i - 1]) / (e5[i - 1] - e5[i - 2]);
    CHECK(rate == doctest::Approx(std::sqrt(3.0) / 2).epsilon(0.02));
    CHECK((e7[i] - e7[i - 1]) / (e7[i - 1] - e7[i - 2]) > 1.0);
  }
  CHECK(e7[2] / e7[0] - 1.0 >= 0.20);
}

TEST_CASE("energy and frequency-side integral track each other") {
  // int_{|xi| <= R} |mu^|^2 |xi|^{s-1} with R tied to the resolution 3^n
  auto freq_side = [](const DiscreteMeasure& mu, double s, double R) {
    return 2.0 * oracle::integrate(
                     [&](double xi) { return std::norm(extension_transform(mu, {}, xi)) * std::pow(xi, s - 1.0); }, 0.0, R,
                     static_cast<int>(R / 4) + 1);
  };
  const double s = 0.5;
  const auto a = build_self_similar(cantor(), 5), b = build_self_similar(cantor(), 7);
  const double ra = energy_integral(a, s) / freq_side(a, s, std::pow(3.0, 5));
  const double rb = energy_integral(b, s) / freq_side(b, s, std::pow(3.0, 7));
  CHECK(std::abs(rb / ra - 1.0) < 0.5);
}

TEST_CASE("ball masses") {
  const auto u = uniform_blocks(8);
  CHECK(ball_mass(u, 0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ball_mass(u, 0.0, 0.1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(ball_mass(u, 2.0, 0.1) == 0.0);
  const auto m = build_self_similar(cantor(), 4);
  const BallMassIndex idx(m);
  for (double c : {0.0, 0.3, 2.0 / 3, 0.95})
    for (double r : {0.01, 0.1, 0.5}) CHECK(idx(c, r) == doctest::Approx(ball_mass(m, c, r)).epsilon(1e-14));
  // closed ball: the atom at exactly 2/3 counts along with the left half
  CHECK(ball_mass(m, 0.0, 2.0 / 3) == doctest::Approx(0.5 + 1.0 / 16));
}

TEST_CASE("Frostman fits") {
  std::vector<double> dy;
  for (int j = 2; j <= 8; ++j) dy.push_back(std::ldexp(1.0, -j));
  const auto u = uniform_blocks(1024);
  const auto f = frostman_fit(u, dy);
  // pointwise log mu(B)/log r: interior balls carry 2r, the ball at 0 carries exactly r
  CHECK(f.upper_exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.lower_exponent == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.upper_exponent <= f.lower_exponent);

  const auto single = DiscreteMeasure::atomic({{Rational(1, 2), 1.0}});
  const auto s = frostman_fit(single, dy);
  CHECK(s.upper_exponent == 0.0);
  CHECK(s.lower_exponent == 0.0);

  std::vector<double> tri;
  for (int j = 2; j <= 8; ++j) tri.push_back(std::pow(3.0, -j));
  const auto c = frostman_fit(build_self_similar(cantor(), 10), tri);
  CHECK(c.upper_exponent == doctest::Approx(kCantorDim).epsilon(1e-9));
  CHECK(c.lower_exponent == doctest::Approx(kCantorDim).epsilon(1e-9));
  CHECK_THROWS_AS(frostman_fit(u, {}), InvalidArgument);
}

TEST_CASE("box counts") {
  const Rational quarter(1, 4);
  CHECK(box_counts(uniform_blocks(4), std::vector<Rational>{quarter})[0].count == 4);

  std::vector<Atom> at;
  const auto c4 = build_self_similar(cantor(), 4);
  for (const auto& x : c4.positions()) at.push_back({x, 1.0 / 16});
  const auto blocks = DiscreteMeasure::block(at, Rational(1, 81));
  CHECK(box_counts(blocks, std::vector<Rational>{Rational(1, 27)})[0].count == 8);

  const auto single = DiscreteMeasure::atomic({{Rational(1, 3), 1.0}});
  for (const auto& bc : box_counts(single, std::vector<Rational>{Rational(1, 2), Rational(1, 7), Rational(1, 1000)}))
    CHECK(bc.count == 1);

  // nested meshes: counts never increase with delta, and stay under diam/delta + 1
  const auto deep = build_self_similar(cantor(), 9);
  std::vector<Rational> ds;
  for (int j = 0; j <= 12; ++j) ds.push_back(Rational(1, 1 << j));
  const auto counts = box_counts(deep, ds);
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i].count >= counts[i - 1].count);
  for (const auto& bc : counts) {
    const double bound = std::ceil(to_double(deep.diameter()) / to_double(bc.delta)) + 1;
    CHECK(double(bc.count) <= bound);
  }
}

TEST_CASE("Fourier decay fits") {
  const auto u = uniform_blocks(1024);
  const auto fu = fourier_decay_fit(u, 1.0, 1e3, 1000);
  CHECK(fu.exponent == doctest::Approx(1.0).epsilon(0.1));
  CHECK(fu.exponent >= 0.0);
  CHECK(fu.sup_product >= 0.0);

  const auto single = DiscreteMeasure::atomic({{Rational(0), 1.0}});
  const auto fs = fourier_decay_fit(single, 1.0, 1e3, 500);
  CHECK(fs.exponent == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fs.sup_product == doctest::Approx(1.0).epsilon(1e-9));

  const auto c = build_self_similar(cantor(), 12);
  const auto fc = fourier_decay_fit(c, 1.0, std::pow(3.0, 10), 1000);
  CHECK(fc.exponent < 0.1);
  // |mu^(3^k)| barely moves with k: only factors cos(2 pi / 3^i), i > 5, differ
  const double a = std::abs(extension_transform(c, {}, 3.0)), b = std::abs(extension_transform(c, {}, 3.0 * 729));
  CHECK(a == doctest::Approx(b).epsilon(1e-3));
  CHECK(a > 0.1);

  CHECK_THROWS_AS(fourier_decay_fit(u, 0.5, 10.0, 500), InvalidArgument);
  CHECK_THROWS_AS(fourier_decay_fit(u, 1.0, 10.0, 50), InvalidArgument);
}
