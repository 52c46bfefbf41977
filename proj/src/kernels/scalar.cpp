#include "internal.hpp"

#include <cmath>
#include <numbers>

namespace fracext::kernels::detail {

void phasor_sum_scalar(const double* x, const double* w, std::size_t n_atoms, const double* xi, std::size_t n_xi,
                       double* out_re, double* out_im) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t j = 0; j < n_xi; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t a = 0; a < n_atoms; ++a) {
      // reduce the phase in turns first; x*xi can be ~1e6
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

void convolve_scalar(const double* a, std::size_t na, const double* b, std::size_t nb, double* out) {
  const std::size_t n = na + nb - 1;
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    const double ai = a[i];
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = out[i + j] + ai * b[j];
  }
}

void complex_mul_scalar(double* re, double* im, const double* bre, const double* bim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = re[i] * bre[i] - im[i] * bim[i];
    const double s = re[i] * bim[i] + im[i] * bre[i];
    re[i] = r;
    im[i] = s;
  }
}

}  // namespace fracext::kernels::detail
