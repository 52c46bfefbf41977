#include "doctest.h"
#include "oracles.hpp"

#include "fracext/error.hpp"
#include "fracext/extension.hpp"
#include "fracext/parallel.hpp"
#include "fracext/rng.hpp"

#include <cmath>
#include <numbers>

using namespace fracext;

namespace {
std::vector<double> xs_of(const DiscreteMeasure& m) { return m.points(); }
}  // namespace

TEST_CASE("transform closed cases") {
  const auto one = DiscreteMeasure::atomic({{Rational(0), 1.0}});
  for (double xi : {-3.7, 0.0, 1.0, 1e4}) {
    const auto v = extension_transform(one, {}, xi);
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
  const auto two = DiscreteMeasure::atomic({{Rational(0), 0.5}, {Rational(1, 2), 0.5}});
  CHECK(std::abs(extension_transform(two, {}, 1.0)) < 1e-15);
  const auto unit = DiscreteMeasure::block({{Rational(0), 1.0}}, Rational(1));
  CHECK(std::abs(extension_transform(unit, {}, 1.0)) < 1e-15);
  CHECK(extension_transform(unit, {}, 0.0) == std::complex<double>(1.0, 0.0));
  const std::vector<double> bad{1.0, 2.0};
  CHECK_THROWS_AS(extension_transform(one, bad, 1.0), InvalidArgument);
}

TEST_CASE("transform invariants") {
  const auto blocks = discretize_power_density({0.3}, 64);
  const auto atoms = build_self_similar(
      SimilarityIFS({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}}, {Rational(1, 4), Rational(3, 4)}), 7);
  Rng rng(11);
  for (const auto* m : {&blocks, &atoms}) {
    CHECK(extension_transform(*m, {}, 0.0).real() == m->total_mass());
    for (int t = 0; t < 200; ++t) {
      const double xi = (rng.uniform() - 0.5) * 2000.0;
      const auto a = extension_transform(*m, {}, xi), b = extension_transform(*m, {}, -xi);
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * m->total_mass());
      CHECK(std::abs(a) <= m->total_mass() * (1 + 1e-12));
    }
  }
}

TEST_CASE("transform against direct quadrature") {
  Rng rng(3);
  std::vector<Atom> at;
  for (int i = 0; i < 9; ++i) at.push_back({Rational(i, 9), 0.05 + rng.uniform()});
  const auto m = DiscreteMeasure::block(at, Rational(1, 9));
  std::vector<double> f;
  for (std::size_t i = 0; i < m.size(); ++i) f.push_back(rng.uniform() - 0.3);
  std::vector<double> fw;
  for (std::size_t i = 0; i < m.size(); ++i) fw.push_back(f[i] * m.weights()[i]);
  // h |xi| up to 1e3
  for (double xi : {0.3, 1.0, 7.25, 100.0, 2345.6, 9000.0}) {
    const auto ours = extension_transform(m, f, xi);
    const auto ref = oracle::transform(xs_of(m), fw, 1.0 / 9, xi);
    CHECK(std::abs(ours - ref) <= 1e-10);
  }
  const auto am = DiscreteMeasure::atomic(at);
  std::vector<double> w = am.weights();
  for (double xi : {0.1, 3.3, 77.0})
    CHECK(std::abs(extension_transform(am, {}, xi) - oracle::transform(xs_of(am), w, 0.0, xi)) <= 1e-12);
}

TEST_CASE("vector transform is thread-count independent") {
  const auto m = discretize_power_density({0.6}, 4096);
  const FrequencyGrid g(200.0, 0.37);
  set_thread_count(1);
  const auto a = extension_transform(m, {}, g.points());
  set_thread_count(7);
  const auto b = extension_transform(m, {}, g.points());
  set_thread_count(0);
  REQUIRE(a.size() == b.size());
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  CHECK(worst <= 1e-12);
  for (std::size_t i = 0; i < a.size(); i += 97) CHECK(std::abs(a[i] - extension_transform(m, {}, g.points()[i])) <= 1e-12);
}

TEST_CASE("frequency grid") {
  const FrequencyGrid g(1.0, 0.3);
  CHECK(g.points().front() == -1.0);
  CHECK(g.points().back() == 1.0);
  CHECK(g.resolves(0.5));
  CHECK_FALSE(g.resolves(1.0));
  CHECK_THROWS_AS(FrequencyGrid(0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid(1.0, -0.1), InvalidArgument);
}

TEST_CASE("frequency norms") {
  const FrequencyGrid g(1.0, 0.01);
  std::vector<double> ones(g.size(), 1.0);
  CHECK(lq_freq_norm(ones, 2.0, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  const FrequencyGrid big(100.0, 0.01);
  std::vector<double> s, s2;
  for (double x : big.points()) {
    s.push_back(std::abs(sinc(x)));
    s2.push_back(sinc(x) * sinc(x));
  }
  CHECK(lq_freq_norm(s, kInfinity, big) == 1.0);
  CHECK(lq_freq_norm(s2, 1.0, big) == doctest::Approx(1.0).epsilon(0.02));
  CHECK_THROWS_AS(lq_freq_norm(s, 0.5, big), InvalidArgument);
}

TEST_CASE("multilinear ratio") {
  const auto one = DiscreteMeasure::atomic({{Rational(0), 1.0}});
  const auto prob = build_self_similar(
      SimilarityIFS({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}}, {Rational(1, 2), Rational(1, 2)}), 5);
  const FrequencyGrid g(10.0, 0.01);
  const std::vector<DiscreteMeasure> single{prob};
  CHECK(multilinear_ratio(single, {}, 2.0, kInfinity, g) == doctest::Approx(1.0).epsilon(1e-12));

  const FrequencyGrid unit(1.0, 0.01);
  const std::vector<DiscreteMeasure> pair{one, one};
  for (double q : {1.0, 2.0, 3.5})
    CHECK(multilinear_ratio(pair, {}, 2.0, q, unit) == doctest::Approx(std::pow(2.0, 1.0 / q)).epsilon(1e-9));

  const std::vector<std::vector<double>> zero{{0.0}, {1.0}};
  CHECK_THROWS_AS(multilinear_ratio(pair, zero, 2.0, 2.0, unit), InvalidArgument);
  const std::vector<double> f{2.0};
  CHECK(lp_norm(one, f, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("B-spline kernel") {
  CHECK(bspline_hatK(2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bspline_hatK(2, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // n = 4 at 0 against int sinc^4
  const double s4 = 2.0 * oracle::integrate([](double x) { return std::pow(sinc(x), 4); }, 0.0, 400.0, 800);
  CHECK(bspline_hatK(4, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s4 == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  for (int n : {2, 4, 6, 8, 12}) {
    double sum = 0;
    for (int j = -n / 2; j <= n / 2; ++j) sum += bspline_hatK(n, j);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (double x : {0.1, 0.77, 1.5, 2.9}) CHECK(bspline_hatK(n, x) == bspline_hatK(n, -x));
    CHECK(bspline_hatK(n, n / 2.0) == 0.0);
    CHECK(bspline_hatK(n, n / 2.0 + 0.3) == 0.0);
    // against quadrature of sinc^n cos(2 pi x eta)
    // sinc^2 tails decay too slowly for a truncated reference
    for (double x : {0.0, 0.5, 1.25}) {
      if (n < 4) break;
      const double ref =
          2.0 * oracle::integrate([&](double e) { return std::pow(sinc(e), n) * std::cos(2 * std::numbers::pi * x * e); }, 0.0, 200.0, 800);
      CHECK(bspline_hatK(n, x) == doctest::Approx(ref).epsilon(1e-4));
    }
  }
  CHECK_THROWS_AS(bspline_hatK(3, 0.0), InvalidArgument);
  CHECK_THROWS_AS(bspline_hatK(0, 0.0), InvalidArgument);
}
