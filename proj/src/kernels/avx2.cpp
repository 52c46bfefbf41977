#include "internal.hpp"

#include <immintrin.h>

#include <cmath>
#include <numbers>

namespace fracext::kernels::detail {

namespace {

// sin and cos of theta for |theta| <= pi/4, Taylor to degree 15/16.
inline void sincos_reduced(__m256d th, __m256d& s, __m256d& c) {
  const __m256d z = _mm256_mul_pd(th, th);
  __m256d ps = _mm256_set1_pd(-1.0 / 1307674368000.0);  // -1/15!
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 6227020800.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 39916800.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 362880.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 5040.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 120.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 6.0));
  ps = _mm256_mul_pd(ps, z);
  s = _mm256_fmadd_pd(ps, th, th);

  __m256d pc = _mm256_set1_pd(1.0 / 20922789888000.0);  // 1/16!
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 87178291200.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 479001600.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 3628800.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 40320.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 720.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 24.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-0.5));
  c = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

}  // namespace

void phasor_sum_avx2(const double* x, const double* w, std::size_t n_atoms, const double* xi, std::size_t n_xi,
                     double* out_re, double* out_im) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const __m256d v_two_pi = _mm256_set1_pd(two_pi);
  const __m256d v_quarter = _mm256_set1_pd(0.25);
  const __m256d v_four = _mm256_set1_pd(4.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const std::size_t vec_end = n_atoms & ~std::size_t{3};
  constexpr int round_mode = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;

  for (std::size_t j = 0; j < n_xi; ++j) {
    const __m256d vxi = _mm256_set1_pd(xi[j]);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t a = 0; a < vec_end; a += 4) {
      __m256d t = _mm256_mul_pd(_mm256_loadu_pd(x + a), vxi);
      t = _mm256_sub_pd(t, _mm256_round_pd(t, round_mode));
      // quadrant n in {-2..2}, residual in [-1/8, 1/8] turns
      const __m256d nq = _mm256_round_pd(_mm256_mul_pd(t, v_four), round_mode);
      const __m256d r = _mm256_sub_pd(t, _mm256_mul_pd(nq, v_quarter));
      __m256d s, c;
      sincos_reduced(_mm256_mul_pd(r, v_two_pi), s, c);
      // n mod 4 via the low two bits of the two's complement integer
      const __m128i n32 = _mm256_cvtpd_epi32(nq);
      const __m256i n64 = _mm256_cvtepi32_epi64(n32);
      const __m256i odd = _mm256_cmpeq_epi64(_mm256_and_si256(n64, one), one);
      const __m256i hi = _mm256_cmpeq_epi64(_mm256_and_si256(n64, two), two);
      const __m256d oddm = _mm256_castsi256_pd(odd);
      // quadrants 1 and 3 swap sin and cos
      __m256d cs = _mm256_blendv_pd(c, s, oddm);
      __m256d sn = _mm256_blendv_pd(s, c, oddm);
      // cos(theta + n pi/2): negate for n mod 4 in {1,2}; sin: negate for {2,3}
      const __m256i neg_c = _mm256_xor_si256(odd, hi);
      cs = _mm256_xor_pd(cs, _mm256_and_pd(_mm256_castsi256_pd(neg_c), sign));
      sn = _mm256_xor_pd(sn, _mm256_and_pd(_mm256_castsi256_pd(hi), sign));
      const __m256d wv = _mm256_loadu_pd(w + a);
      acc_re = _mm256_fmadd_pd(wv, cs, acc_re);
      acc_im = _mm256_fnmadd_pd(wv, sn, acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (std::size_t a = vec_end; a < n_atoms; ++a) {
      double t = x[a] * xi[j];
      t -= std::nearbyint(t);
      const double ang = two_pi * t;
      re += w[a] * std::cos(ang);
      im -= w[a] * std::sin(ang);
    }
    out_re[j] = re;
    out_im[j] = im;
  }
}

// mul then add, never fused, so results match the scalar reference exactly.
void convolve_avx2(const double* a, std::size_t na, const double* b, std::size_t nb, double* out) {
  const std::size_t n = na + nb - 1;
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  const std::size_t vec_end = nb & ~std::size_t{3};
  for (std::size_t i = 0; i < na; ++i) {
    const __m256d ai = _mm256_set1_pd(a[i]);
    double* o = out + i;
    std::size_t j = 0;
    for (; j < vec_end; j += 4) {
      __m256d prod = _mm256_mul_pd(ai, _mm256_loadu_pd(b + j));
      _mm256_storeu_pd(o + j, _mm256_add_pd(_mm256_loadu_pd(o + j), prod));
    }
    for (; j < nb; ++j) {
      o[j] = o[j] + a[i] * b[j];
    }
  }
}

void complex_mul_avx2(double* re, double* im, const double* bre, const double* bim, std::size_t n) {
  const std::size_t vec_end = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < vec_end; i += 4) {
    const __m256d ar = _mm256_loadu_pd(re + i), ai = _mm256_loadu_pd(im + i);
    const __m256d br = _mm256_loadu_pd(bre + i), bi = _mm256_loadu_pd(bim + i);
    const __m256d r = _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(re + i, r);
    _mm256_storeu_pd(im + i, s);
  }
  for (; i < n; ++i) {
    const double r = re[i] * bre[i] - im[i] * bim[i];
    const double s = re[i] * bim[i] + im[i] * bre[i];
    re[i] = r;
    im[i] = s;
  }
}

}  // namespace fracext::kernels::detail
