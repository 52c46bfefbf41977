#pragma once

#include "fracext/measure.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fracext {

// phi(t) = (log t)^epsilon
struct PhiSpec {
  double epsilon = 1.0;
  double operator()(double t) const;
};

struct KnappParams {
  std::vector<double> alphas;
  std::vector<double> betas;
  PhiSpec phi;
  int n_max = 4;
  std::uint64_t seed = 0;

  std::size_t k() const { return alphas.size(); }
  // Throws InfeasibleParameters naming the violated invariant.
  void validate() const;
};

struct PsiEntry {
  std::int64_t psi;
  std::int64_t Psi;
};
// Entry n-1 holds psi(n), Psi(n).
std::vector<PsiEntry> psi_sequence(const PhiSpec& phi, int n_max);

struct Profiles {
  int n0;
  // [level-1][m]
  std::vector<std::vector<std::int64_t>> t, tau;
  std::vector<std::vector<double>> theta, vartheta;
  // max over N >= n0 and m of the multiplicative distance between
  // prod tau/t and Psi(N)^{-beta/2}; 1 when no level reaches n0
  double ratio_constant;
};
// psis must extend to n_max + 1 (the targets look one level ahead).
Profiles choose_profiles(const KnappParams& params, std::span<const PsiEntry> psis);

std::vector<std::int64_t> mli_set(std::int64_t M, int k);

struct MliCheck {
  bool independent;
  bool exhaustive;  // false: only the sufficient growth condition was applied
};
inline constexpr double kMliExhaustiveCap = 1e8;
MliCheck is_mli(std::span<const std::int64_t> ds, std::int64_t M);

struct KnappLevel {
  std::int64_t psi = 0;
  std::int64_t Psi = 0;
  std::int64_t M = 1;
  std::vector<std::int64_t> t, tau, d;
  std::vector<double> theta, vartheta;
  std::vector<std::vector<std::int64_t>> W;  // per m, digits
};

enum class KnappConstruction { Cantor, SingleScale };

struct KnappFamily {
  KnappConstruction construction = KnappConstruction::Cantor;
  std::vector<double> alphas, betas;
  int n0 = 1;
  double ratio_constant = 1.0;
  int attempts = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.0;  // phi exponent; 0 for the single-scale construction
  std::vector<KnappLevel> levels;  // levels[N-1]
  // endpoints[N][m]: sorted integers e, endpoint e / Psi(N); N = 0 is {0}
  std::vector<std::vector<std::vector<std::int64_t>>> endpoints;
  // progression[N][m]: the P-endpoints, a subset of endpoints[N][m]
  std::vector<std::vector<std::vector<std::int64_t>>> progression;
  // single-scale extras
  std::int64_t base = 0;  // N0_base
  int n0_exponent = 0;

  int depth() const { return static_cast<int>(levels.size()); }
  std::size_t k() const { return alphas.size(); }
  std::int64_t Psi(int N) const { return N == 0 ? 1 : levels[N - 1].Psi; }
  // mu_{N,m}: uniform block measure on E_{N,m}
  DiscreteMeasure measure(int m, int N) const;
};

struct BuildOptions {
  bool redraw_on_decay_failure = true;
  int max_attempts = 16;
  double decay_bound = 8.0;  // admissible sup of xi^{beta/2}|mu^(xi)|
  double xi_min = 1.0, xi_max = 1e3;
  int samples = 1000;
};

KnappFamily build_family(const KnappParams& params, const BuildOptions& opts = {});

// Single-scale construction. n0 = 0 searches the least n0 <= 8 that fits.
KnappFamily build_family_hl(std::int64_t base, std::span<const std::int64_t> t0, int n0, std::uint64_t seed,
                            int levels = 2);

// 1 on atoms of mu_{N,m} whose level-ell ancestor is a P-endpoint.
std::vector<double> knapp_indicator(const KnappFamily& fam, int ell, int m, int N = -1);

// Over centres at level-N endpoints and lengths |I| = 1/Psi(j), j <= N:
//   upper = max mu(I) * U(|I|) / |I|^alpha,  lower = min mu(I) * L(|I|) / |I|^alpha
// with U = log(1/|I|), L = phi(1/|I|) log(1/|I|) when beta = alpha and U = 1,
// L = phi(1/|I|) otherwise, so  lower |I|^a / L <= mu(I) <= upper |I|^a / U.
struct BallCheck {
  double upper_constant;
  double lower_constant;
  std::size_t intervals;
};

struct MeasureValidation {
  BallCheck ball;
  double decay_sup_product;  // at exponent beta/2
  bool ball_ok;
  bool decay_ok;
};

struct FamilyValidation {
  int level;
  std::vector<MeasureValidation> per_measure;
  bool ok;
};

FamilyValidation validate_family(const KnappFamily& fam, int N, double xi_min = 1.0, double xi_max = 1e3,
                                 int samples = 1000, double decay_bound = 8.0);

}  // namespace fracext
