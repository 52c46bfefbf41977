#pragma once

#include "fracext/kernels/kernels.hpp"

namespace fracext::kernels::detail {

void phasor_sum_scalar(const double* x, const double* w, std::size_t n_atoms, const double* xi, std::size_t n_xi,
                       double* out_re, double* out_im);
void convolve_scalar(const double* a, std::size_t na, const double* b, std::size_t nb, double* out);
void complex_mul_scalar(double* re, double* im, const double* bre, const double* bim, std::size_t n);

#if defined(FRACEXT_HAVE_AVX2)
void phasor_sum_avx2(const double* x, const double* w, std::size_t n_atoms, const double* xi, std::size_t n_xi,
                     double* out_re, double* out_im);
void convolve_avx2(const double* a, std::size_t na, const double* b, std::size_t nb, double* out);
void complex_mul_avx2(double* re, double* im, const double* bre, const double* bim, std::size_t n);
#endif

}  // namespace fracext::kernels::detail
