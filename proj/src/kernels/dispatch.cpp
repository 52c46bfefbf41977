#include "fracext/error.hpp"
#include "internal.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fracext::kernels {

namespace {

const Table kScalar{Isa::Scalar, detail::phasor_sum_scalar, detail::convolve_scalar, detail::complex_mul_scalar};

#if defined(FRACEXT_HAVE_AVX2)
const Table kAvx2{Isa::Avx2, detail::phasor_sum_avx2, detail::convolve_avx2, detail::complex_mul_avx2};
#endif

const Table& default_table() {
  if (const char* env = std::getenv("FRACEXT_KERNELS"); env && std::string(env) == "scalar") return kScalar;
  if (const Table* t = avx2_table()) return *t;
  return kScalar;
}

std::atomic<const Table*> g_active{nullptr};

}  // namespace

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() {
#if defined(FRACEXT_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  const Table* t = g_active.load();
  if (!t) {
    t = &default_table();
    g_active.store(t);
  }
  return *t;
}

void force(Isa isa) {
  if (isa == Isa::Scalar) {
    g_active = &kScalar;
    return;
  }
  const Table* t = avx2_table();
  if (!t) throw InvalidArgument("AVX2 kernels unavailable on this machine/build");
  g_active = t;
}

void reset_to_default() { g_active = &default_table(); }

std::string_view name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace fracext::kernels
