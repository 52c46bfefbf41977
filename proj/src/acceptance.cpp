#include "fracext/acceptance.hpp"

#include "fracext/convolution.hpp"
#include "fracext/dimension.hpp"
#include "fracext/error.hpp"
#include "fracext/knapp.hpp"
#include "fracext/oracle.hpp"
#include "fracext/region.hpp"
#include "fracext/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracext {

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// int_0^1 y^{a-1} (1-y)^{b-1} dy: split at 1/2, substitute y = u^{1/a} near 0
// and 1 - y = u^{1/b} near 1, then composite Simpson on the smooth remainders.
double beta_quadrature(double a, double b) {
  auto half = [](double e, double other) {
    const double top = std::pow(0.5, e);
    const int n = 4000;
    const double h = top / n;
    auto g = [&](double u) { return std::pow(1.0 - std::pow(u, 1.0 / e), other - 1.0) / e; };
    double s = g(0) + g(top);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
    return s * h / 3.0;
  };
  return half(a, b) + half(b, a);
}

Outcome c1_example33() {
  const int cells = 1 << 14;
  const std::vector<DiscreteMeasure> ms{discretize_power_density({0.6}, cells), discretize_power_density({0.6}, cells)};
  const auto d = convolve_grid(ms, cells);
  std::vector<double> c;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const double x = d.centre(i);
    if (x >= 0.1 && x <= 0.9) c.push_back(d.values[i] / std::pow(x, -0.2));
  }
  double mean = 0.0;
  for (double v : c) mean += v;
  mean /= double(c.size());
  double spread = 0.0;
  for (double v : c) spread = std::max(spread, std::abs(v / mean - 1.0));
  const double B = beta_quadrature(0.4, 0.4);
  const double err = std::abs(mean / B - 1.0);
  return {spread <= 0.02 && err <= 0.01,
          "spread " + fmt("%.2e", spread) + ", constant " + fmt("%.6f", mean) + " vs quadrature " + fmt("%.6f", B) +
              " (rel " + fmt("%.2e", err) + ")"};
}

Outcome c2_example34() {
  const std::vector<double> rho{0.1, 0.65, 0.25};
  const double d_rho = std::log(0.1 * 0.1 + 0.65 * 0.65 + 0.25 * 0.25) / -std::log(4.0);
  bool ok = true;
  double worst = 0.0, min_margin = 1e300, gate = 0.0;
  for (double g : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    const auto r = check_corollary_hypotheses(Ex34Params{rho, g, 2.0});
    const double d_gamma = std::log(g * g + (1 - g) * (1 - g)) / -std::log(3.0);
    for (const auto& [name, v] : r.values) {
      if (name == "D_p0_first") worst = std::max(worst, std::abs(v - d_rho));
      if (name == "D_p0_second") worst = std::max(worst, std::abs(v - d_gamma));
      if (name == "dimension_gate") gate = v;
    }
    ok = ok && r.holds;
    min_margin = std::min(min_margin, r.margin);
  }
  const bool gate_ok = std::abs(gate - 1.4236) <= 0.001;
  return {ok && worst <= 1e-9 && gate_ok, "min margin " + fmt("%.6f", min_margin) + ", max |D2 - closed form| " +
                                              fmt("%.1e", worst) + ", gate " + fmt("%.5f", gate)};
}

Outcome c3_mli() {
  std::size_t checked = 0;
  for (int k = 1; k <= 4; ++k)
    for (std::int64_t M = 1; M <= 30; ++M) {
      const auto d = mli_set(M, k);
      const auto chk = is_mli(d, M);
      if (!chk.exhaustive || !chk.independent)
        return {false, "mli_set(" + std::to_string(M) + ", " + std::to_string(k) + ") not verified M-LI"};
      // every length vector with entries in {1, M}, plus the all-M one
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<std::vector<std::int64_t>> aps(k);
        std::uint64_t expect = 1;
        for (int m = 0; m < k; ++m) {
          const std::int64_t len = (mask >> m) & 1 ? M : std::max<std::int64_t>(1, (M + 1) / 2);
          for (std::int64_t j = 0; j < len; ++j) aps[m].push_back(j * d[m]);
          expect *= static_cast<std::uint64_t>(len);
        }
        if (sumset_cardinality(aps) != expect)
          return {false, "sumset size mismatch at M = " + std::to_string(M) + ", k = " + std::to_string(k)};
        ++checked;
      }
    }
  return {true, std::to_string(checked) + " sumsets equal the product of lengths"};
}

Outcome c4_counting() {
  Rng rng(20240611);
  const int cases = 1000;
  for (int c = 0; c < cases; ++c) {
    const int k = 1 + static_cast<int>(rng.below(3));
    const int r = 1 + static_cast<int>(rng.below(2));
    std::vector<std::vector<std::int64_t>> sets(k);
    for (auto& s : sets) {
      const auto n = 1 + rng.below(10);
      for (auto i : rng.sample_indices(40, n)) s.push_back(static_cast<std::int64_t>(i) - 20);
    }
    // enumerate every kr-tuple, then count equal-sum pairs
    std::vector<std::int64_t> sums{0};
    for (int n = 0; n < r; ++n)
      for (const auto& s : sets) {
        std::vector<std::int64_t> next;
        next.reserve(sums.size() * s.size());
        for (auto a : sums)
          for (auto v : s) next.push_back(a + v);
        sums.swap(next);
      }
    std::sort(sums.begin(), sums.end());
    BigInt brute = 0;
    for (std::size_t i = 0; i < sums.size();) {
      std::size_t j = i;
      while (j < sums.size() && sums[j] == sums[i]) ++j;
      brute += BigInt(j - i) * BigInt(j - i);
      i = j;
    }
    const auto h = g_histogram(sets, r);
    const BigInt cnt = count_solutions(h);
    if (cnt != brute) return {false, "case " + std::to_string(c) + ": " + to_string(cnt) + " != " + to_string(brute)};
    if (cs_lower_bound(h) > Rational(cnt)) return {false, "case " + std::to_string(c) + ": Cauchy-Schwarz bound exceeds count"};
  }
  return {true, std::to_string(cases) + " random instances exact"};
}

KnappParams sample_params(int n_max, std::uint64_t seed) {
  KnappParams p;
  p.alphas = {0.4, 0.4};
  p.betas = {0.4, 0.4};
  p.phi.epsilon = 1.0;
  p.n_max = n_max;
  p.seed = seed;
  return p;
}

Outcome c5_identity() {
  const auto fam = build_family(sample_params(4, 1));
  const int N = 4;
  const double Psi = double(fam.Psi(N));
  const auto a = norm_identity_check(fam, 1, N, 1, FrequencyGrid(4 * Psi, 0.125));
  const auto b = norm_identity_check(fam, 1, N, 1, FrequencyGrid(8 * Psi, 0.125));
  return {Psi <= 500 && a.rel_error < 0.01 && b.rel_error < a.rel_error,
          "Psi(N) = " + fmt("%.0f", Psi) + ", rel error " + fmt("%.2e", a.rel_error) + " at R = " + fmt("%.0f", a.R) +
              ", " + fmt("%.2e", b.rel_error) + " at R = " + fmt("%.0f", b.R)};
}

Outcome c6_gamma_trend() {
  const auto fam = build_family(sample_params(5, 1));
  const int r = default_r(fam);
  std::vector<double> q2, q4;
  for (int ell = 1; ell <= 5; ++ell) {
    q2.push_back(gamma_bound(fam, ell, 2.0, 2.0, r).inverse);
    q4.push_back(gamma_bound(fam, ell, 4.0, 2.0, r).inverse);
  }
  bool inc = true, noninc = true;
  for (std::size_t i = 1; i < q2.size(); ++i) {
    inc = inc && q2[i] > q2[i - 1];
    noninc = noninc && q4[i] <= q4[i - 1];
  }
  std::ostringstream os;
  os << "q=2 " << (inc ? "increasing" : "not increasing") << " [";
  for (double v : q2) os << fmt(" %.4g", v);
  os << " ], q=4 " << (noninc ? "non-increasing" : "increasing somewhere") << " [";
  for (double v : q4) os << fmt(" %.4g", v);
  os << " ]";
  return {inc && noninc, os.str()};
}

Outcome c7_ball_decay() {
  const int N = 4;
  std::vector<FamilyValidation> vs;
  for (std::uint64_t seed : {1ULL, 2ULL}) vs.push_back(validate_family(build_family(sample_params(N, seed)), N));
  bool ok = true;
  std::ostringstream os;
  for (std::size_t m = 0; m < vs[0].per_measure.size(); ++m) {
    const auto& a = vs[0].per_measure[m];
    const auto& b = vs[1].per_measure[m];
    const double lo = std::min(a.decay_sup_product, b.decay_sup_product);
    const double hi = std::max(a.decay_sup_product, b.decay_sup_product);
    const bool within = std::isfinite(hi) && lo > 0 && hi / lo <= 4.0;
    ok = ok && a.ball_ok && b.ball_ok && within;
    os << (m ? "; " : "") << "m=" << m + 1 << " ball [" << fmt("%.3f", a.ball.lower_constant) << ", "
       << fmt("%.3f", a.ball.upper_constant) << "]/[" << fmt("%.3f", b.ball.lower_constant) << ", "
       << fmt("%.3f", b.ball.upper_constant) << "] sup " << fmt("%.3f", a.decay_sup_product) << "/"
       << fmt("%.3f", b.decay_sup_product);
  }
  return {ok, os.str()};
}

Outcome c8_theorem31() {
  std::vector<Theorem31Level> levels;
  for (int c : {1 << 10, 1 << 11, 1 << 12})
    levels.push_back({{discretize_power_density({0.6}, c), discretize_power_density({0.6}, c)}, c});
  const auto r = verify_theorem31(levels, 2.0, 4.0, 64, 7, FrequencyGrid(64.0, 0.125));
  return {r.verdict == "PASS", r.verdict + ", ratio growth " + fmt("%.4f", r.ratio_growth)};
}

Outcome c9_regions() {
  double worst = 0.0;
  for (const std::vector<double>& a : {std::vector<double>{0.4, 0.4}, {0.2, 0.3}, {0.1, 0.25, 0.3}, {0.45}})
    for (int i = 1; i <= 256; ++i) {
      const double p = 1.0 + 64.0 * i / 256.0;
      std::vector<double> b;
      for (double x : a) b.push_back(2 * x);
      const double x = evaluate_boundary(thm32(a, b), p);
      const double y = evaluate_boundary(trainor(1.0, a), p);
      worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
    }
  const std::vector<double> ps{1.25, 1.5, 2.0, 4.0, 16.0};
  const std::vector<double> a{0.4, 0.4};
  const auto below = region_report({thm32(a, a), trainor(1.0, a)}, ps, a, a);
  const std::vector<double> a2{0.8, 0.8}, b2{0.4, 0.4};
  const auto above = region_report({thm32(a2, b2), trainor(1.0, a2)}, ps, a2, b2);
  const bool gap = std::abs(below.gap_lo - 3.0) < 1e-12 && std::abs(below.gap_hi - 4.0) < 1e-12 && below.gap_nonempty;
  return {worst <= 1e-12 && below.containment_holds && !above.containment_holds && gap,
          "max |Thm32(2a) - Trainor| " + fmt("%.1e", worst) + ", containment " + (below.containment_holds ? "holds" : "fails") +
              " (sum a = 0.8), " + (above.containment_holds ? "holds" : "fails") + " (sum a = 1.6), gap (" +
              fmt("%.6g", below.gap_lo) + ", " + fmt("%.6g", below.gap_hi) + ")"};
}

Outcome c10_dimensions() {
  bool mono = true;
  for (const std::vector<double>& pr : {std::vector<double>{0.5, 0.5}, {0.1, 0.65, 0.25}, {0.7, 0.2, 0.1}, {0.3, 0.3, 0.2, 0.2}})
    for (double ratio : {0.25, 0.2}) {
      if (ratio * double(pr.size()) > 1.0) continue;
      double prev = 1e300;
      for (double q = 0.0; q <= 8.0; q += 0.125) {
        const double v = lq_dimension_homogeneous(pr, ratio, q);
        if (v > prev + 1e-12) mono = false;
        prev = v;
      }
    }
  const std::vector<double> half{0.5, 0.5};
  const double d2 = lq_dimension_homogeneous(half, 1.0 / 3.0, 2.0);
  const double d2_err = std::abs(d2 - std::log(2.0) / std::log(3.0));
  const SimilarityIFS cantor({{Rational(1, 3), Rational(0)}, {Rational(1, 3), Rational(2, 3)}}, {Rational(1, 2), Rational(1, 2)});
  const auto m6 = build_self_similar(cantor, 6), m8 = build_self_similar(cantor, 8);
  const double s5 = energy_integral(m8, 0.5) / energy_integral(m6, 0.5) - 1.0;
  const double s7 = energy_integral(m8, 0.7) / energy_integral(m6, 0.7) - 1.0;
  const bool energy = std::abs(s5) <= 0.05 && s7 >= 0.20;
  return {mono && d2_err <= 1e-12 && energy,
          std::string("D_q monotone ") + (mono ? "yes" : "no") + ", |D2 - log2/log3| " + fmt("%.1e", d2_err) +
              ", energy change n=6->8: s=0.5 " + fmt("%+.1f%%", 100 * s5) + " (need within 5%), s=0.7 " +
              fmt("%+.1f%%", 100 * s7) + " (need >= 20%)"};
}

struct Spec {
  const char* name;
  double limit;
  Outcome (*run)();
};

const Spec kSpecs[] = {
    {"convolution closed form", 30, c1_example33},
    {"two-IFS hypothesis check", 1, c2_example34},
    {"M-LI sets and sumsets", 60, c3_mli},
    {"counting identity", 60, c4_counting},
    {"norm identity", 120, c5_identity},
    {"Knapp divergence trend", 30, c6_gamma_trend},
    {"finite-level ball and decay", 120, c7_ball_decay},
    {"probe harness", 120, c8_theorem31},
    {"region algebra", 1, c9_regions},
    {"dimension sanity", 30, c10_dimensions},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(int only, const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (int i = 0; i < 10; ++i) {
    if (only && only != i + 1) continue;
    const auto& s = kSpecs[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = s.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > s.limit) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", s.limit) + " s budget";
    }
    out.push_back({i + 1, s.name, o.pass, o.detail, secs, s.limit});
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "criterion %2d %s  %-28s %7.2fs  ", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace fracext
