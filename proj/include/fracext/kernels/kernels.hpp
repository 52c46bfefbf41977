#pragma once

#include <cstddef>
#include <string_view>

namespace fracext::kernels {

enum class Isa { Scalar, Avx2 };

// out_re/out_im[j] = sum_a w[a] * exp(-2 pi i x[a] xi[j]).
using PhasorSumFn = void (*)(const double* x, const double* w, std::size_t n_atoms, const double* xi,
                             std::size_t n_xi, double* out_re, double* out_im);
// out has na + nb - 1 entries and is overwritten.
using ConvolveFn = void (*)(const double* a, std::size_t na, const double* b, std::size_t nb, double* out);
// (re, im) *= (bre, bim) elementwise.
using ComplexMulFn = void (*)(double* re, double* im, const double* bre, const double* bim, std::size_t n);

struct Table {
  Isa isa;
  PhasorSumFn phasor_sum;
  ConvolveFn convolve;
  ComplexMulFn complex_mul;
};

const Table& scalar_table();
// nullptr when not compiled in or unsupported by the running CPU.
const Table* avx2_table();

// Selected table. Defaults to the best supported ISA unless FRACEXT_KERNELS=scalar.
const Table& active();
void force(Isa isa);  // throws InvalidArgument if unavailable
void reset_to_default();
std::string_view name(Isa isa);

}  // namespace fracext::kernels
