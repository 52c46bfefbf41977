#include "doctest.h"

#include "fracext/error.hpp"
#include "fracext/kernels/kernels.hpp"
#include "fracext/rng.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

using namespace fracext;
namespace K = fracext::kernels;

namespace {
std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

struct Restore {
  ~Restore() { K::reset_to_default(); }
};
}  // namespace

TEST_CASE("scalar phasor sum against a direct loop") {
  Rng rng(3);
  const auto x = random_vec(rng, 37, 0.0, 1.0);
  const auto w = random_vec(rng, 37, 0.0, 1.0);
  const auto xi = random_vec(rng, 11, -500.0, 500.0);
  std::vector<double> re(xi.size()), im(xi.size());
  K::scalar_table().phasor_sum(x.data(), w.data(), x.size(), xi.data(), xi.size(), re.data(), im.data());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    long double sr = 0, si = 0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const long double ph = -2.0L * std::numbers::pi_v<long double> * x[a] * xi[j];
      sr += w[a] * std::cos(ph);
      si += w[a] * std::sin(ph);
    }
    CHECK(std::abs(re[j] - double(sr)) < 1e-11);
    CHECK(std::abs(im[j] - double(si)) < 1e-11);
  }
}

TEST_CASE("AVX2 kernels match scalar") {
  const K::Table* v = K::avx2_table();
  if (!v) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  const K::Table& s = K::scalar_table();
  Rng rng(11);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 257u}) {
    const auto x = random_vec(rng, n, 0.0, 1.0);
    const auto w = random_vec(rng, n, -1.0, 1.0);
    const auto xi = random_vec(rng, 13, -2000.0, 2000.0);
    std::vector<double> r1(13), i1(13), r2(13), i2(13);
    s.phasor_sum(x.data(), w.data(), n, xi.data(), xi.size(), r1.data(), i1.data());
    v->phasor_sum(x.data(), w.data(), n, xi.data(), xi.size(), r2.data(), i2.data());
    for (std::size_t j = 0; j < 13; ++j) {
      CHECK(std::abs(r1[j] - r2[j]) < 1e-10);
      CHECK(std::abs(i1[j] - i2[j]) < 1e-10);
    }

    const auto b = random_vec(rng, n + 2, -1.0, 1.0);
    std::vector<double> c1(2 * n + 1, 7.0), c2(2 * n + 1, -7.0);
    s.convolve(w.data(), n, b.data(), b.size(), c1.data());
    v->convolve(w.data(), n, b.data(), b.size(), c2.data());
    CHECK(std::memcmp(c1.data(), c2.data(), c1.size() * sizeof(double)) == 0);

    auto re1 = random_vec(rng, n, -1, 1), im1 = random_vec(rng, n, -1, 1);
    const auto bre = random_vec(rng, n, -1, 1), bim = random_vec(rng, n, -1, 1);
    auto re2 = re1, im2 = im1;
    s.complex_mul(re1.data(), im1.data(), bre.data(), bim.data(), n);
    v->complex_mul(re2.data(), im2.data(), bre.data(), bim.data(), n);
    CHECK(std::memcmp(re1.data(), re2.data(), n * sizeof(double)) == 0);
    CHECK(std::memcmp(im1.data(), im2.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("dispatch") {
  Restore restore;
  K::force(K::Isa::Scalar);
  CHECK(K::active().isa == K::Isa::Scalar);
  if (K::avx2_table()) {
    K::force(K::Isa::Avx2);
    CHECK(K::active().isa == K::Isa::Avx2);
  } else {
    CHECK_THROWS_AS(K::force(K::Isa::Avx2), InvalidArgument);
  }
  K::reset_to_default();
  CHECK(K::name(K::active().isa).size() > 0);
  CHECK(K::name(K::Isa::Scalar) == "scalar");
}
