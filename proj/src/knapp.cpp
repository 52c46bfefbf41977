#include "fracext/knapp.hpp"

#include "fracext/dimension.hpp"
#include "fracext/error.hpp"
#include "fracext/extension.hpp"
#include "fracext/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

namespace fracext {

double PhiSpec::operator()(double t) const { return std::pow(std::log(t), epsilon); }

void KnappParams::validate() const {
  const std::size_t k = alphas.size();
  if (k < 1) throw InfeasibleParameters("KnappParams: need at least one measure");
  if (betas.size() != k) throw InfeasibleParameters("KnappParams: alphas and betas differ in length");
  if (!(phi.epsilon > 0)) throw InfeasibleParameters("PhiSpec: epsilon must be > 0");
  if (n_max < 1) throw InfeasibleParameters("KnappParams: N_max must be >= 1");
  for (std::size_t m = 0; m < k; ++m) {
    if (!(alphas[m] >= 0 && alphas[m] < 1))
      throw InfeasibleParameters("KnappParams: alpha_" + std::to_string(m + 1) + " must lie in [0,1)");
    if (!(betas[m] >= 0 && betas[m] <= alphas[m]))
      throw InfeasibleParameters("KnappParams: need 0 <= beta_m <= alpha_m (violated at m = " + std::to_string(m + 1) + ")");
  }
  auto g = [&](std::size_t m) { return alphas[m] - betas[m] / 2; };
  for (std::size_t j = 0; j + 1 < k; ++j)
    if (g(j + 1) > g(j) + 1e-15)
      throw InfeasibleParameters("KnappParams: alpha_{j+1} - beta_{j+1}/2 <= alpha_j - beta_j/2 fails at j = " +
                                 std::to_string(j + 1));
  if (k >= 2 && !(g(k - 1) + (k - 1) * g(0) < 1))
    throw InfeasibleParameters("KnappParams: (alpha_k - beta_k/2) + (k-1)(alpha_1 - beta_1/2) < 1 fails");
}

std::vector<PsiEntry> psi_sequence(const PhiSpec& phi, int n_max) {
  if (n_max < 1) throw InvalidArgument("psi_sequence: N_max must be >= 1");
  std::vector<PsiEntry> out;
  std::int64_t Psi = 1;
  for (int n = 1; n <= n_max; ++n) {
    // phi(2^n) = (n log 2)^eps, computed without forming 2^n
    const double v = std::pow(n * std::log(2.0), phi.epsilon);
    const double root = std::sqrt(v);
    auto c = static_cast<std::int64_t>(std::ceil(root));
    // guard against ceil of a value that is an integer up to rounding
    if (std::abs(root - std::round(root)) < 1e-12) c = static_cast<std::int64_t>(std::round(root));
    const std::int64_t psi = c + 2;
    Psi = checked_mul(Psi, psi);
    out.push_back({psi, Psi});
  }
  return out;
}

std::vector<std::int64_t> mli_set(std::int64_t M, int k) {
  if (M < 1) throw InvalidArgument("mli_set: M must be >= 1");
  if (k < 1) throw InvalidArgument("mli_set: k must be >= 1");
  std::vector<std::int64_t> d{2};
  std::int64_t sum = 2;
  for (int m = 2; m <= k; ++m) {
    const std::int64_t dm = checked_add(checked_mul(M, sum), 1);
    d.push_back(dm);
    sum = checked_add(sum, dm);
  }
  return d;
}

MliCheck is_mli(std::span<const std::int64_t> ds, std::int64_t M) {
  if (M < 1) throw InvalidArgument("is_mli: M must be >= 1");
  const std::size_t k = ds.size();
  if (k == 0) return {true, true};
  const double work = static_cast<double>(k) * std::pow(2.0 * M - 1.0, static_cast<double>(k));
  if (work > kMliExhaustiveCap) {
    // growth condition d_m > M * sum_{i<m} d_i (strict index range)
    long double sum = static_cast<long double>(std::abs(ds[0]));
    bool ok = ds[0] != 0;
    for (std::size_t m = 1; m < k && ok; ++m) {
      if (!(static_cast<long double>(ds[m]) > M * sum)) ok = false;
      sum += static_cast<long double>(std::abs(ds[m]));
    }
    return {ok, false};
  }
  // enumerate l_1..l_{k-1} and solve for l_k
  const std::int64_t lim = M - 1;
  std::vector<std::int64_t> l(k - 1, -lim);
  const std::int64_t dk = ds[k - 1];
  for (;;) {
    __int128 s = 0;
    bool all_zero = true;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      s += static_cast<__int128>(l[i]) * ds[i];
      all_zero = all_zero && l[i] == 0;
    }
    if (dk == 0) {
      if (s == 0 && (!all_zero || lim >= 1)) return {false, true};
    } else if (s % dk == 0) {
      const __int128 lk = -s / dk;
      if (lk >= -lim && lk <= lim && !(all_zero && lk == 0)) return {false, true};
    }
    std::size_t i = 0;
    while (i < l.size() && l[i] == lim) l[i++] = -lim;
    if (i == l.size()) break;
    ++l[i];
  }
  return {true, true};
}

namespace {

bool in_allowed(double x) { return (x >= 0.25 && x <= 0.5) || (x >= 2.0 && x <= 4.0); }

std::int64_t tau_cap(std::int64_t d, std::int64_t psi) {
  // largest tau with 1 + (tau-1) d <= psi - 1, i.e. W inside the digit range {0..psi-1}
  if (psi < 2) return 0;
  if (d <= 0) return psi;
  return 1 + (psi - 2) / d;
}

std::int64_t ceil_inv_sum(const std::vector<double>& betas) {
  double s = 0.0;
  for (double b : betas) s += b;
  if (s <= 0) return 0;
  return static_cast<std::int64_t>(std::ceil(1.0 / s - 1e-12));
}

std::int64_t level_M(std::int64_t rc, std::int64_t tau_max) {
  if (tau_max <= 1) return 1;
  return checked_add(checked_mul(rc, tau_max - 1), 1);
}

struct Cost {
  double corridor = 0, outside = 0, tracking = 0;
  bool operator<(const Cost& o) const {
    constexpr double eps = 1e-12;
    if (std::abs(corridor - o.corridor) > eps) return corridor < o.corridor;
    if (std::abs(outside - o.outside) > eps) return outside < o.outside;
    return tracking < o.tracking - eps;
  }
  Cost& operator+=(const Cost& o) {
    corridor += o.corridor;
    outside += o.outside;
    tracking += o.tracking;
    return *this;
  }
};

}  // namespace

Profiles choose_profiles(const KnappParams& params, std::span<const PsiEntry> psis) {
  const std::size_t k = params.alphas.size();
  const int n_max = params.n_max;
  if (static_cast<int>(psis.size()) < n_max + 1)
    throw InvalidArgument("choose_profiles: psi table must reach N_max + 1");
  const auto& al = params.alphas;
  const auto& be = params.betas;
  const std::int64_t rc = ceil_inv_sum(be);

  // N0: least level where each m with alpha > 0 admits an integral t <= psi with theta allowed
  int n0 = -1;
  for (int N = 1; N <= n_max && n0 < 0; ++N) {
    const std::int64_t psi = psis[N - 1].psi;
    bool ok = true;
    for (std::size_t m = 0; m < k && ok; ++m) {
      if (al[m] <= 0) continue;
      bool found = false;
      for (std::int64_t t = 1; t <= psi && !found; ++t) found = in_allowed(t / std::pow(double(psi), al[m]));
      ok = found;
    }
    if (ok) n0 = N;
  }
  if (n0 < 0)
    throw InfeasibleParameters("choose_profiles: no level N0 <= N_max admits integral t with theta in [1/4,1/2] U [2,4]");

  Profiles pr;
  pr.n0 = n0;
  pr.ratio_constant = 1.0;
  std::vector<double> R(k, 1.0), Pth(k, 1.0), Pvt(k, 1.0);  // running prod tau/t, theta, vartheta
  auto target = [&](int n, double a) {
    return std::pow(double(psis[n - 1].psi), a) * std::log(8.0 * double(psis[n - 1].Psi));
  };
  for (int N = 1; N <= n_max; ++N) {
    const double psi = double(psis[N - 1].psi);
    const double Psi = double(psis[N - 1].Psi);
    std::vector<std::int64_t> t(k, 1), tau(k, 1);
    if (N >= n0) {
      Cost best_total;
      bool have = false;
      std::vector<std::int64_t> best_t, best_tau;
      for (std::int64_t tn = 1; tn <= psis[N - 1].psi; ++tn) {
        const std::int64_t M = level_M(rc, tn);
        std::vector<std::int64_t> d;
        try {
          d = mli_set(M, static_cast<int>(k));
        } catch (const ResourceLimit&) {
          break;
        }
        Cost total;
        std::vector<std::int64_t> ct(k, 1), ctau(k, 1);
        for (std::size_t m = 0; m < k; ++m) {
          if (al[m] <= 0) continue;
          const std::int64_t cap = std::min(tn, tau_cap(d[m], psis[N - 1].psi));
          Cost bm;
          bool hm = false;
          for (std::int64_t tt = 1; tt <= psis[N - 1].psi; ++tt) {
            for (std::int64_t ta = 1; ta <= std::min(tt, cap); ++ta) {
              const double th = tt / std::pow(psi, al[m]);
              const double vt = ta / std::pow(psi, al[m] - be[m] / 2);
              Cost c;
              c.corridor = std::max(0.0, std::abs(std::log(R[m] * ta / tt) + be[m] / 2 * std::log(Psi)) - std::log(4.0));
              c.outside = (in_allowed(th) ? 0 : 1) + (in_allowed(vt) ? 0 : 1);
              const double T = target(N + 1, al[m]);
              c.tracking = std::abs(std::log(Pth[m] * th / T)) + std::abs(std::log(Pvt[m] * vt / T));
              if (!hm || c < bm) {
                bm = c;
                ct[m] = tt;
                ctau[m] = ta;
                hm = true;
              }
            }
          }
          total += bm;
        }
        if (!have || total < best_total) {
          best_total = total;
          best_t = ct;
          best_tau = ctau;
          have = true;
        }
      }
      t = best_t;
      tau = best_tau;
    }
    std::vector<double> th(k), vt(k);
    for (std::size_t m = 0; m < k; ++m) {
      th[m] = t[m] / std::pow(psi, al[m]);
      vt[m] = tau[m] / std::pow(psi, al[m] - be[m] / 2);
      Pth[m] *= th[m];
      Pvt[m] *= vt[m];
      R[m] *= double(tau[m]) / double(t[m]);
      if (N >= n0) pr.ratio_constant = std::max(pr.ratio_constant, std::exp(std::abs(std::log(R[m]) + be[m] / 2 * std::log(Psi))));
    }
    pr.t.push_back(t);
    pr.tau.push_back(tau);
    pr.theta.push_back(th);
    pr.vartheta.push_back(vt);
  }
  return pr;
}

DiscreteMeasure KnappFamily::measure(int m, int N) const {
  if (m < 0 || m >= static_cast<int>(k())) throw InvalidArgument("KnappFamily::measure: bad index m");
  if (N < 0 || N > depth()) throw InvalidArgument("KnappFamily::measure: level exceeds built depth");
  const auto& e = endpoints[N][m];
  const std::int64_t P = Psi(N);
  const double w = 1.0 / static_cast<double>(e.size());
  std::vector<Atom> atoms;
  atoms.reserve(e.size());
  for (auto v : e) atoms.push_back({Rational(v, P), w});
  return DiscreteMeasure::with_total(MeasureKind::Block, std::move(atoms), Rational(1, P), 1.0);
}

namespace {

// Draw per-parent digit sets containing `must` and extend endpoints.
std::vector<std::int64_t> extend_level(const std::vector<std::int64_t>& parents, std::int64_t base, std::int64_t t,
                                       const std::vector<std::int64_t>& must, Rng& rng) {
  std::vector<std::int64_t> rest;
  for (std::int64_t x = 0; x < base; ++x)
    if (!std::binary_search(must.begin(), must.end(), x)) rest.push_back(x);
  const auto extra = static_cast<std::uint64_t>(t - static_cast<std::int64_t>(must.size()));
  std::vector<std::int64_t> out;
  out.reserve(parents.size() * static_cast<std::size_t>(t));
  for (auto a : parents) {
    std::vector<std::int64_t> digits(must);
    for (auto idx : rng.sample_indices(rest.size(), extra)) digits.push_back(rest[idx]);
    std::sort(digits.begin(), digits.end());
    const std::int64_t base_e = checked_mul(a, base);
    for (auto dg : digits) out.push_back(base_e + dg);
  }
  return out;
}

std::vector<std::int64_t> extend_progression(const std::vector<std::int64_t>& parents, std::int64_t base,
                                             const std::vector<std::int64_t>& digits) {
  std::vector<std::int64_t> out;
  for (auto a : parents)
    for (auto dg : digits) out.push_back(checked_mul(a, base) + dg);
  return out;
}

void check_capacity(double atoms) {
  if (atoms > static_cast<double>(kDefaultAtomCap)) throw ResourceLimit("Knapp family exceeds the atom cap");
}

}  // namespace

KnappFamily build_family(const KnappParams& params, const BuildOptions& opts) {
  params.validate();
  const std::size_t k = params.k();
  const auto psis = psi_sequence(params.phi, params.n_max + 1);
  const Profiles pr = choose_profiles(params, psis);
  const std::int64_t rc = ceil_inv_sum(params.betas);

  KnappFamily fam;
  fam.construction = KnappConstruction::Cantor;
  fam.alphas = params.alphas;
  fam.betas = params.betas;
  fam.n0 = pr.n0;
  fam.ratio_constant = pr.ratio_constant;
  fam.seed = params.seed;
  fam.epsilon = params.phi.epsilon;

  for (int N = 1; N <= params.n_max; ++N) {
    KnappLevel lv;
    lv.psi = psis[N - 1].psi;
    lv.Psi = psis[N - 1].Psi;
    lv.t = pr.t[N - 1];
    lv.tau = pr.tau[N - 1];
    lv.theta = pr.theta[N - 1];
    lv.vartheta = pr.vartheta[N - 1];
    const std::int64_t tau_max = *std::max_element(lv.tau.begin(), lv.tau.end());
    lv.M = level_M(rc, tau_max);
    lv.d = mli_set(lv.M, static_cast<int>(k));
    for (std::size_t m = 0; m < k; ++m) {
      const std::string where = " at N = " + std::to_string(N) + ", m = " + std::to_string(m + 1);
      if (lv.t[m] > lv.psi) throw InfeasibleParameters("t_{N,m} <= psi(N) fails" + where);
      if (lv.tau[m] > lv.t[m]) throw InfeasibleParameters("tau_{N,m} <= t_{N,m} fails" + where);
      const std::int64_t top = 1 + (lv.tau[m] - 1) * lv.d[m];
      if (top > lv.psi) throw InfeasibleParameters("1 + (tau-1) d <= psi(N) fails" + where);
      if (top > lv.psi - 1) throw InfeasibleParameters("W_{N,m} not contained in [psi(N)] = {0..psi-1}" + where);
      std::vector<std::int64_t> W;
      for (std::int64_t j = 0; j < lv.tau[m]; ++j) W.push_back(1 + j * lv.d[m]);
      lv.W.push_back(std::move(W));
    }
    fam.levels.push_back(std::move(lv));
  }

  const int max_attempts = opts.redraw_on_decay_failure ? std::max(1, opts.max_attempts) : 1;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(params.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    fam.endpoints.assign(1, std::vector<std::vector<std::int64_t>>(k, {0}));
    fam.progression.assign(1, std::vector<std::vector<std::int64_t>>(k, {0}));
    for (int N = 1; N <= params.n_max; ++N) {
      const auto& lv = fam.levels[N - 1];
      std::vector<std::vector<std::int64_t>> E(k), P(k);
      for (std::size_t m = 0; m < k; ++m) {
        check_capacity(double(fam.endpoints[N - 1][m].size()) * double(lv.t[m]));
        E[m] = extend_level(fam.endpoints[N - 1][m], lv.psi, lv.t[m], lv.W[m], rng);
        P[m] = extend_progression(fam.progression[N - 1][m], lv.psi, lv.W[m]);
      }
      fam.endpoints.push_back(std::move(E));
      fam.progression.push_back(std::move(P));
    }
    fam.attempts = attempt + 1;
    if (!opts.redraw_on_decay_failure) break;
    bool ok = true;
    for (std::size_t m = 0; m < k && ok; ++m) {
      const double sup = decay_sup_product(fam.measure(static_cast<int>(m), fam.depth()), fam.betas[m] / 2,
                                           opts.xi_min, opts.xi_max, opts.samples);
      ok = sup <= opts.decay_bound;
    }
    if (ok) break;
  }
  return fam;
}

KnappFamily build_family_hl(std::int64_t base, std::span<const std::int64_t> t0, int n0, std::uint64_t seed, int levels) {
  const std::size_t k = t0.size();
  if (k < 1) throw InfeasibleParameters("build_family_hl: need at least one t0");
  if (base < 2) throw InfeasibleParameters("build_family_hl: N0 must be >= 2");
  if (levels < 1) throw InvalidArgument("build_family_hl: levels must be >= 1");
  if (n0 < 0) throw InvalidArgument("build_family_hl: n0 must be >= 0");
  std::vector<double> al(k);
  double asum = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    if (!(t0[m] > 1 && t0[m] < base)) throw InfeasibleParameters("build_family_hl: need 1 < t0_m < N0");
    al[m] = std::log(double(t0[m])) / std::log(double(base));
    asum += al[m];
    if (m > 0 && !(t0[m] < t0[m - 1])) throw InfeasibleParameters("build_family_hl: need alpha_k < ... < alpha_1");
  }
  if (!((k - 1) * al[0] + al[k - 1] < 2)) throw InfeasibleParameters("build_family_hl: (k-1) alpha_1 + alpha_k < 2 fails");
  const std::int64_t rc = static_cast<std::int64_t>(std::ceil(1.0 / asum - 1e-12));

  auto ipow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
  };
  struct Shape {
    std::int64_t N, M;
    std::vector<std::int64_t> t, L, d;
  };
  auto try_n0 = [&](int n) -> std::optional<Shape> {
    Shape s;
    try {
      s.N = ipow(base, 2 * n);
      for (std::size_t m = 0; m < k; ++m) {
        s.L.push_back(ipow(t0[m], n));
        s.t.push_back(ipow(t0[m], 2 * n));
      }
      s.M = checked_add(checked_mul(rc, s.L[0] - 1), 1);
      s.d = mli_set(s.M, static_cast<int>(k));
      for (std::size_t m = 0; m < k; ++m)
        if (checked_mul(s.d[m], s.L[m]) > s.N) return std::nullopt;  // d_m <= N^{1 - alpha_m/2}
    } catch (const ResourceLimit&) {
      return std::nullopt;
    }
    return s;
  };
  std::optional<Shape> shape;
  int chosen = n0;
  if (n0 == 0) {
    for (int n = 1; n <= 8 && !shape; ++n) {
      shape = try_n0(n);
      chosen = n;
    }
    if (!shape) throw InfeasibleParameters("build_family_hl: no n0 <= 8 satisfies d_m <= N0^{2 n0 (1 - alpha_m/2)}");
  } else {
    shape = try_n0(n0);
    if (!shape) throw InfeasibleParameters("build_family_hl: n0 = " + std::to_string(n0) + " violates d_m <= N0^{2 n0 (1 - alpha_m/2)}");
  }

  KnappFamily fam;
  fam.construction = KnappConstruction::SingleScale;
  fam.alphas = al;
  fam.betas = al;
  fam.seed = seed;
  fam.base = base;
  fam.n0_exponent = chosen;
  fam.n0 = 1;
  std::vector<std::vector<std::int64_t>> Pm(k);
  for (std::size_t m = 0; m < k; ++m)
    for (std::int64_t j = 0; j < shape->L[m]; ++j) Pm[m].push_back(j * shape->d[m]);  // offset x_m = 0
  std::int64_t Psi = 1;
  for (int j = 1; j <= levels; ++j) {
    KnappLevel lv;
    lv.psi = shape->N;
    Psi = checked_mul(Psi, shape->N);
    lv.Psi = Psi;
    lv.M = shape->M;
    lv.t = shape->t;
    lv.tau = shape->L;
    lv.d = shape->d;
    lv.W = Pm;
    for (std::size_t m = 0; m < k; ++m) {
      lv.theta.push_back(1.0);
      lv.vartheta.push_back(1.0);
    }
    fam.levels.push_back(std::move(lv));
  }
  Rng rng(seed);
  fam.endpoints.assign(1, std::vector<std::vector<std::int64_t>>(k, {0}));
  fam.progression.assign(1, std::vector<std::vector<std::int64_t>>(k, {0}));
  for (int j = 1; j <= levels; ++j) {
    std::vector<std::vector<std::int64_t>> E(k), P(k);
    for (std::size_t m = 0; m < k; ++m) {
      check_capacity(double(fam.endpoints[j - 1][m].size()) * double(shape->t[m]));
      E[m] = extend_level(fam.endpoints[j - 1][m], shape->N, shape->t[m], Pm[m], rng);
      P[m] = extend_progression(fam.progression[j - 1][m], shape->N, Pm[m]);
    }
    fam.endpoints.push_back(std::move(E));
    fam.progression.push_back(std::move(P));
  }
  return fam;
}

std::vector<double> knapp_indicator(const KnappFamily& fam, int ell, int m, int N) {
  if (N < 0) N = fam.depth();
  if (N > fam.depth()) throw InvalidArgument("knapp_indicator: N exceeds built depth");
  if (ell < 0 || ell > N) throw InvalidArgument("knapp_indicator: level ell exceeds depth");
  if (m < 0 || m >= static_cast<int>(fam.k())) throw InvalidArgument("knapp_indicator: bad index m");
  const auto& E = fam.endpoints[N][m];
  std::vector<double> f(E.size(), 1.0);
  if (ell == 0) return f;
  const std::int64_t scale = fam.Psi(N) / fam.Psi(ell);
  const auto& P = fam.progression[ell][m];
  for (std::size_t i = 0; i < E.size(); ++i) f[i] = std::binary_search(P.begin(), P.end(), E[i] / scale) ? 1.0 : 0.0;
  return f;
}

FamilyValidation validate_family(const KnappFamily& fam, int N, double xi_min, double xi_max, int samples,
                                 double decay_bound) {
  if (N < 1 || N > fam.depth()) throw InvalidArgument("validate_family: level outside built depth");
  FamilyValidation out{N, {}, true};
  for (std::size_t m = 0; m < fam.k(); ++m) {
    const auto mu = fam.measure(static_cast<int>(m), N);
    const double a = fam.alphas[m];
    const bool equal = std::abs(fam.betas[m] - a) < 1e-15;
    MeasureValidation v{};
    v.ball = {0.0, kInfinity, 0};
    const BallMassIndex ball(mu);
    for (int j = 1; j <= N; ++j) {
      const double len = 1.0 / static_cast<double>(fam.Psi(j));
      const double lg = std::log(1.0 / len);
      const double phi = fam.epsilon > 0 ? std::pow(lg, fam.epsilon) : 1.0;
      const double U = equal ? lg : 1.0;
      const double L = equal ? phi * lg : phi;
      const double scale = std::pow(len, a);
      for (std::size_t i = 0; i < mu.size(); ++i) {
        // the block's left endpoint lies in E_m
        const double mass = ball(mu.points()[i], len / 2);
        v.ball.upper_constant = std::max(v.ball.upper_constant, mass * U / scale);
        v.ball.lower_constant = std::min(v.ball.lower_constant, mass * L / scale);
        ++v.ball.intervals;
      }
    }
    v.ball_ok = std::isfinite(v.ball.upper_constant) && v.ball.lower_constant > 0;
    v.decay_sup_product = decay_sup_product(mu, fam.betas[m] / 2, xi_min, xi_max, samples);
    v.decay_ok = std::isfinite(v.decay_sup_product) && v.decay_sup_product <= decay_bound;
    out.ok = out.ok && v.ball_ok && v.decay_ok;
    out.per_measure.push_back(v);
  }
  return out;
}

}  // namespace fracext
