#include "fracext/convolution.hpp"

#include "fracext/dimension.hpp"
#include "fracext/error.hpp"
#include "fracext/kernels/kernels.hpp"
#include "fracext/parallel.hpp"
#include "fracext/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracext {

double DensityEstimate::mass() const {
  double s = 0.0;
  for (double v : values) s += v * cell_width;
  return s;
}

DiscreteMeasure DensityEstimate::as_measure() const {
  // exact rational edges are not needed here; use the double grid
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  const Rational h(cell_width);
  const Rational o(origin);
  for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({o + h * static_cast<long long>(i), values[i] * cell_width});
  return DiscreteMeasure::block(std::move(atoms), h);
}

DensityEstimate convolve_grid(std::span<const DiscreteMeasure> measures, int cells, double cap) {
  const std::size_t k = measures.size();
  if (k < 2) throw InvalidArgument("convolve_grid: need at least two measures");
  if (cells < 16) throw InvalidArgument("convolve_grid: cells must be >= 16");
  double atoms = 0.0;
  for (const auto& m : measures) atoms += static_cast<double>(m.size());
  if (static_cast<double>(cells) * cells + atoms > cap)
    throw ResourceLimit("convolve_grid: work estimate exceeds cap");

  double lo = 0.0, span = 0.0;
  std::vector<double> mins(k);
  for (std::size_t m = 0; m < k; ++m) {
    mins[m] = to_double(measures[m].support_min());
    lo += mins[m];
    span += to_double(measures[m].diameter());
  }
  const double h = span > 0 ? span / cells : 1.0 / cells;

  std::vector<std::vector<double>> bins(k);
  for (std::size_t m = 0; m < k; ++m) {
    const auto& mu = measures[m];
    const double off = mu.kind() == MeasureKind::Block ? 0.5 * to_double(mu.block_width()) : 0.0;
    const double diam = to_double(mu.diameter());
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(diam / h - 1e-9)));
    bins[m].assign(n, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double x = mu.points()[i] + off - mins[m];
      auto c = static_cast<std::ptrdiff_t>(std::floor(x / h));
      c = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(n) - 1);
      bins[m][c] += mu.weights()[i];
    }
  }

  const auto& kt = kernels::active();
  std::vector<double> acc = std::move(bins[0]);
  for (std::size_t m = 1; m < k; ++m) {
    std::vector<double> out(acc.size() + bins[m].size() - 1);
    kt.convolve(acc.data(), acc.size(), bins[m].data(), bins[m].size(), out.data());
    acc = std::move(out);
  }
  DensityEstimate d;
  d.cell_width = h;
  // bin centres add up: output cell n is centred at lo + (n + k/2) h
  d.origin = lo + 0.5 * static_cast<double>(k - 1) * h;
  d.values.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) d.values[i] = acc[i] / h;
  return d;
}

double density_lp_norm(const DensityEstimate& d, double p) {
  if (p == kInfinity) {
    double mx = 0.0;
    for (double v : d.values) mx = std::max(mx, std::abs(v));
    return mx;
  }
  if (!(p >= 1)) throw InvalidArgument("density_lp_norm: p must be >= 1");
  double s = 0.0;
  for (double v : d.values) s += std::pow(std::abs(v), p) * d.cell_width;
  return std::pow(s, 1.0 / p);
}

ExtendedExponent theorem31_exponent(double p, double q) {
  if (!(p >= 1) || !(q >= 2)) throw InvalidArgument("theorem31_exponent: need p >= 1 and q >= 2");
  const double a = q * (p - 1.0);
  // q(p-1) = p up to rounding, e.g. p = 4/3, q = 4
  if (std::abs(a - p) <= 1e-12 * p) return {ExtendedExponent::Kind::Infinite, kInfinity};
  if (a > p) return {ExtendedExponent::Kind::Finite, a / (a - p)};
  return {ExtendedExponent::Kind::Undefined, std::numeric_limits<double>::quiet_NaN()};
}

Theorem31Report verify_theorem31(std::span<const Theorem31Level> levels, double p, double q, int trials,
                                 std::uint64_t seed, const FrequencyGrid& grid) {
  Theorem31Report rep{};
  rep.p = p;
  rep.q = q;
  rep.p0 = theorem31_exponent(p, q);
  if (!rep.p0.usable()) throw PreconditionError("verify_theorem31: q(p-1) < p, no L^{p0} hypothesis");
  if (levels.size() < 2) throw PreconditionError("verify_theorem31: need at least two refinement levels");
  if (trials < 1) throw InvalidArgument("verify_theorem31: trials must be >= 1");

  for (const auto& lv : levels) {
    rep.cells.push_back(lv.cells);
    rep.norms.push_back(density_lp_norm(convolve_grid(lv.measures, lv.cells), rep.p0.value));
  }
  rep.hypothesis_holds = true;
  for (std::size_t i = 1; i < rep.norms.size(); ++i) {
    const double change = std::abs(rep.norms[i] / rep.norms[i - 1] - 1.0);
    if (!(change < 0.10)) rep.hypothesis_holds = false;
  }

  for (const auto& lv : levels) {
    const std::size_t k = lv.measures.size();
    std::vector<double> best(trials, 0.0);
    // each trial owns its seed, so the max is independent of scheduling
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t b, std::size_t e) {
          for (std::size_t t = b; t < e; ++t) {
            Rng rng(seed + t);
            std::vector<std::vector<double>> fs(k);
            for (std::size_t m = 0; m < k; ++m) {
              fs[m].resize(lv.measures[m].size());
              for (double& v : fs[m]) v = rng.uniform();
            }
            best[t] = multilinear_ratio(lv.measures, fs, p, q, grid);
          }
        },
        1);
    rep.max_ratio_by_level.push_back(*std::max_element(best.begin(), best.end()));
  }
  const std::size_t L = rep.max_ratio_by_level.size();
  rep.ratio_growth = rep.max_ratio_by_level[L - 1] / rep.max_ratio_by_level[L - 2] - 1.0;
  if (!rep.hypothesis_holds)
    rep.verdict = "HYPOTHESIS_FAIL";
  else
    rep.verdict = rep.ratio_growth < 0.25 ? "PASS" : "FAIL";
  return rep;
}

double similarity_dimension_sum(std::size_t m1, double l1, std::size_t m2, double l2) {
  return std::log(static_cast<double>(m1)) / std::abs(std::log(std::abs(l1))) +
         std::log(static_cast<double>(m2)) / std::abs(std::log(std::abs(l2)));
}

CorollaryCheck check_corollary_hypotheses(const Cor32Params& c) {
  CorollaryCheck out{};
  out.margin = c.fourier_dimension - (c.d - c.lq_dimension);
  out.holds = out.margin > 0;
  out.values = {{"d", c.d}, {"D_p0", c.lq_dimension}, {"dim_F", c.fourier_dimension}};
  return out;
}

CorollaryCheck check_corollary_hypotheses(const Cor33Params& c) {
  CorollaryCheck out{};
  if (!(c.p0 >= 1)) throw InvalidArgument("check_corollary_hypotheses: p0 must be >= 1");
  const double d1 = lq_dimension_homogeneous(c.first.probs, c.first.ratio, c.p0);
  const double d2 = lq_dimension_homogeneous(c.second.probs, c.second.ratio, c.p0);
  const double gate = similarity_dimension_sum(c.first.probs.size(), c.first.ratio, c.second.probs.size(), c.second.ratio);
  out.margin = d1 + d2 - 1.0;
  out.holds = out.margin > 0 && gate > 1.0;
  out.values = {{"D_p0_first", d1}, {"D_p0_second", d2}, {"dimension_gate", gate}};
  if (!c.irrationality_asserted) out.flags.push_back("log-ratio irrationality not decidable numerically; caller must assert it");
  out.flags.push_back("strong separation assumed for both IFSs");
  return out;
}

CorollaryCheck check_corollary_hypotheses(const Ex34Params& e) {
  if (e.rho.size() != 3) throw InvalidArgument("Ex34: rho must have three entries");
  if (!(e.gamma > 0 && e.gamma < 1)) throw InvalidArgument("Ex34: gamma must lie in (0,1)");
  Cor33Params c{{e.rho, 0.25}, {{e.gamma, 1.0 - e.gamma}, 1.0 / 3.0}, e.p0, true};
  // log 3 / log 4 is irrational, so the arithmetic precondition is known here
  return check_corollary_hypotheses(c);
}

}  // namespace fracext
