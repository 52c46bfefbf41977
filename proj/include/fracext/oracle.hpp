#pragma once

#include "fracext/extension.hpp"
#include "fracext/knapp.hpp"
#include "fracext/rational.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace fracext {

inline constexpr double kSumsetCap = 1e8;
inline constexpr double kHistogramCap = 1e9;

// |V_1 + ... + V_k| by materializing every sum.
std::uint64_t sumset_cardinality(std::span<const std::vector<std::int64_t>> sets, double cap = kSumsetCap);

struct SumHistogram {
  std::vector<std::pair<std::int64_t, BigInt>> entries;  // sorted by z, all counts >= 1
  int r = 1;
  std::vector<std::size_t> source_sizes;

  BigInt l1() const;
  std::size_t support_size() const { return entries.size(); }
  // g(z), zero off the support
  BigInt at(std::int64_t z) const;
};

// Distribution of sum_{n<=r} sum_m a_{n,m}, a_{n,m} in sets[m].
SumHistogram g_histogram(std::span<const std::vector<std::int64_t>> sets, int r, double cap = kHistogramCap);
BigInt count_solutions(const SumHistogram& h);
Rational cs_lower_bound(const SumHistogram& h);
// (g * g~)(delta) = sum_z g(z) g(z + delta)
BigInt autocorrelation(const SumHistogram& h, std::int64_t delta);

struct GammaBound {
  double inverse;         // Gamma(ell)^{-1}, up to the unrecorded absolute constant
  double gamma;
  double main_term;       // r^{k ell + 1} prod tau^{1+q/p-q} t^{q-q/p}
  double lower_order;     // r L_{<k} prod tau^{q/p-q} t^{q-q/p}
  double factored_gamma;  // r prod (r(tau-1)+1) tau^{q/p-q} t^{q-q/p} / Psi(ell)
  BigInt lower_order_count;  // L_{<k}
};
GammaBound gamma_bound(const KnappFamily& fam, int ell, double q, double p, int r);
int default_r(const KnappFamily& fam);

struct IdentityReport {
  double lhs, rhs, rel_error, R, step;
};

// Atoms are blocks [a/Psi, (a+1)/Psi) of mass weight[m] for a in sets[m].
IdentityReport norm_identity_check(std::span<const std::vector<std::int64_t>> sets, std::int64_t Psi,
                                   std::span<const double> weights, int r, const FrequencyGrid& grid);
// F_{ell,m} restricted to the level-N atoms of a built family.
IdentityReport norm_identity_check(const KnappFamily& fam, int ell, int N, int r, const FrequencyGrid& grid);

}  // namespace fracext
