#include "doctest.h"

#include "fracext/error.hpp"
#include "fracext/measure.hpp"
#include "fracext/rng.hpp"

#include <cmath>
#include <map>

using namespace fracext;

namespace {
SimilarityIFS cantor() {
  return SimilarityIFS({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}}, {Rational(1, 2), Rational(1, 2)});
}
DiscreteMeasure two_atoms() { return DiscreteMeasure::atomic({{Rational(0), 0.5}, {Rational(2, 3), 0.5}}); }
}  // namespace

TEST_CASE("IFS validation") {
  CHECK_THROWS_AS(SimilarityIFS({}, {}), InvalidArgument);
  CHECK_THROWS_AS(SimilarityIFS({{Rational(1, 3), Rational(0)}}, {Rational(1, 2)}), InvalidArgument);
  CHECK_THROWS_AS(SimilarityIFS({{Rational(1), Rational(0)}}, {Rational(1)}), InvalidArgument);
  CHECK_THROWS_AS(SimilarityIFS({{Rational(0), Rational(0)}}, {Rational(1)}), InvalidArgument);
  CHECK_NOTHROW(SimilarityIFS({{Rational(-1, 2), Rational(1)}}, {Rational(1)}));
  CHECK(cantor().homogeneous());
}

TEST_CASE("self-similar construction") {
  const auto d1 = build_self_similar(cantor(), 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1.positions()[0] == 0);
  CHECK(d1.positions()[1] == Rational(2, 3));
  CHECK(d1.weights()[0] == 0.5);

  const auto d2 = build_self_similar(cantor(), 2);
  REQUIRE(d2.size() == 4);
  const Rational expect[] = {Rational(0), Rational(2, 9), Rational(2, 3), Rational(8, 9)};
  for (int i = 0; i < 4; ++i) {
    CHECK(d2.positions()[i] == expect[i]);
    CHECK(d2.weights()[i] == 0.25);
  }

  const SimilarityIFS fixed({{Rational(1, 2), Rational(0)}}, {Rational(1)});
  for (int depth : {1, 5, 20}) {
    const auto m = build_self_similar(fixed, depth);
    REQUIRE(m.size() == 1);
    CHECK(m.positions()[0] == 0);
    CHECK(m.weights()[0] == 1.0);
  }
  CHECK_THROWS_AS(build_self_similar(cantor(), 0), InvalidArgument);
  CHECK_THROWS_AS(build_self_similar(cantor(), 24), ResourceLimit);
  CHECK_THROWS_AS(build_self_similar(cantor(), 5, 16), ResourceLimit);
}

TEST_CASE("refinement keeps cylinder masses") {
  // unequal probabilities, so merged weights are not all alike
  const SimilarityIFS ifs({{Rational(1, 4), Rational(0)}, {Rational(1, 4), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}},
                          {Rational(1, 10), Rational(13, 20), Rational(1, 4)});
  for (int n = 1; n <= 5; ++n) {
    const auto a = build_self_similar(ifs, n);
    const auto b = build_self_similar(ifs, n + 1);
    Rational cell(1);
    for (int i = 0; i < n; ++i) cell /= 4;
    // depth-n cylinder containing x has left end x itself; children lie in [x, x + 4^-n)
    for (std::size_t i = 0; i < a.size(); ++i) {
      double child = 0.0;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (b.positions()[j] >= a.positions()[i] && b.positions()[j] < a.positions()[i] + cell) child += b.weights()[j];
      CHECK(child == doctest::Approx(a.weights()[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("mass conservation across constructors") {
  for (int depth = 1; depth <= 12; ++depth) {
    const auto m = build_self_similar(cantor(), depth);
    double s = 0;
    for (double w : m.weights()) s += w;
    CHECK(std::abs(s - m.total_mass()) <= 1e-12 * m.total_mass());
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(DiscreteMeasure::with_total(MeasureKind::Atomic, {{Rational(0), 0.5}}, Rational(0), 0.6), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::atomic({{Rational(1), 0.5}, {Rational(0), 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::block({{Rational(0), 0.5}, {Rational(1, 4), 0.5}}, Rational(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::atomic({{Rational(0), -0.5}}), InvalidArgument);
}

TEST_CASE("merge_atoms sums coincident positions") {
  const auto merged = merge_atoms({{Rational(1, 2), 0.25}, {Rational(0), 0.5}, {Rational(1, 2), 0.25}});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].position == 0);
  CHECK(merged[1].position == Rational(1, 2));
  CHECK(merged[1].weight == 0.5);
}

TEST_CASE("pushforward by scaling") {
  const auto m = two_atoms();
  const auto s3 = pushforward_scale(m, Rational(3));
  CHECK(s3.positions()[0] == 0);
  CHECK(s3.positions()[1] == 2);
  CHECK(pushforward_scale(m, Rational(1)) == m);
  const auto neg = pushforward_scale(m, Rational(-1));
  CHECK(neg.positions()[0] == Rational(-2, 3));
  CHECK(neg.positions()[1] == 0);
  CHECK(neg.weights()[0] == 0.5);
  CHECK_THROWS_AS(pushforward_scale(m, Rational(0)), InvalidArgument);

  Rng rng(5);
  const auto deep = build_self_similar(cantor(), 6);
  for (int t = 0; t < 20; ++t) {
    const auto num = static_cast<long>(rng.below(19)) - 9;
    const auto den = static_cast<long>(1 + rng.below(7));
    if (num == 0) continue;
    const Rational u(num, den);
    CHECK(pushforward_scale(pushforward_scale(deep, u), 1 / u) == deep);
  }
  // blocks: reflected support keeps the same extent
  const auto blocks = DiscreteMeasure::block({{Rational(0), 0.5}, {Rational(1, 2), 0.5}}, Rational(1, 4));
  const auto r = pushforward_scale(blocks, Rational(-2));
  CHECK(r.block_width() == Rational(1, 2));
  CHECK(r.support_min() == Rational(-3, 2));
  CHECK(r.support_max() == Rational(0));
  CHECK(pushforward_scale(r, Rational(-1, 2)) == blocks);
}

TEST_CASE("power densities") {
  const auto u = discretize_power_density({0.0}, 4);
  REQUIRE(u.size() == 4);
  for (double w : u.weights()) CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.kind() == MeasureKind::Block);
  CHECK(u.block_width() == Rational(1, 4));

  const auto h = discretize_power_density({0.5}, 2);
  CHECK(h.weights()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h.weights()[1] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));

  const auto big = discretize_power_density({0.6}, 1 << 14);
  CHECK(std::abs(big.total_mass() - 2.5) <= 1e-12);
  CHECK(discretize_power_density({0.6}, 1 << 15).total_mass() == big.total_mass());
  double s = 0;
  for (double w : big.weights()) s += w;
  CHECK(std::abs(s - 2.5) <= 1e-12 * 2.5);

  CHECK_THROWS_AS(discretize_power_density({1.0}, 8), InvalidArgument);
  CHECK_THROWS_AS(discretize_power_density({0.3}, 1), InvalidArgument);
}

TEST_CASE("separation certificates") {
  CHECK(check_separation(cantor()) == Separation::SSC);
  const SimilarityIFS halves({{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(1, 2)}}, {Rational(1, 2), Rational(1, 2)});
  CHECK(check_separation(halves) == Separation::OscInterval);
  const SimilarityIFS overlap({{Rational(3, 5), Rational(0)}, {Rational(3, 5), Rational(2, 5)}}, {Rational(1, 2), Rational(1, 2)});
  CHECK(check_separation(overlap) == Separation::Unverified);
  const auto hull = attractor_hull(cantor());
  CHECK(hull.first == 0);
  CHECK(hull.second == 1);
  // reflected map: x -> -x/3 + 1 and x -> x/3 still span [0,1]
  const SimilarityIFS refl({{Rational(1, 3), Rational(0)}, {Rational(-1, 3), Rational(1)}}, {Rational(1, 2), Rational(1, 2)});
  CHECK(attractor_hull(refl) == std::make_pair(Rational(0), Rational(1)));
  CHECK(check_separation(refl) == Separation::SSC);
}
