#include "fracext/oracle.hpp"

#include "fracext/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fracext {

std::uint64_t sumset_cardinality(std::span<const std::vector<std::int64_t>> sets, double cap) {
  double prod = 1.0;
  for (const auto& s : sets) prod *= static_cast<double>(s.size());
  if (prod > cap) throw ResourceLimit("sumset_cardinality: product of sizes exceeds cap");
  std::vector<std::int64_t> acc{0};
  for (const auto& s : sets) {
    std::vector<std::int64_t> next;
    next.reserve(acc.size() * s.size());
    for (auto a : acc)
      for (auto v : s) next.push_back(checked_add(a, v));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  }
  return sets.empty() ? 1 : acc.size();
}

BigInt SumHistogram::l1() const {
  BigInt s = 0;
  for (const auto& [z, g] : entries) s += g;
  return s;
}

BigInt SumHistogram::at(std::int64_t z) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), z, [](const auto& e, std::int64_t v) { return e.first < v; });
  return (it != entries.end() && it->first == z) ? it->second : BigInt(0);
}

namespace {

template <class Count>
std::vector<std::pair<std::int64_t, Count>> convolve_sparse(const std::vector<std::pair<std::int64_t, Count>>& h,
                                                            const std::vector<std::int64_t>& set) {
  std::map<std::int64_t, Count> out;
  for (const auto& [z, c] : h)
    for (auto a : set) out[checked_add(z, a)] += c;
  return {out.begin(), out.end()};
}

template <class Count>
std::vector<std::pair<std::int64_t, Count>> convolve_dense(const std::vector<std::pair<std::int64_t, Count>>& h,
                                                           const std::vector<std::int64_t>& set) {
  const std::int64_t lo = h.front().first + set.front();
  const std::int64_t hi = h.back().first + set.back();
  std::vector<Count> buf(static_cast<std::size_t>(hi - lo + 1), Count(0));
  for (const auto& [z, c] : h)
    for (auto a : set) buf[static_cast<std::size_t>(z + a - lo)] += c;
  std::vector<std::pair<std::int64_t, Count>> out;
  for (std::size_t i = 0; i < buf.size(); ++i)
    if (buf[i] != 0) out.emplace_back(lo + static_cast<std::int64_t>(i), buf[i]);
  return out;
}

template <class Count>
std::vector<std::pair<std::int64_t, Count>> histogram_impl(std::span<const std::vector<std::int64_t>> sets, int r) {
  std::vector<std::pair<std::int64_t, Count>> h{{0, Count(1)}};
  for (int n = 0; n < r; ++n) {
    for (const auto& s : sets) {
      const double width = double(h.back().first - h.front().first) + double(s.back() - s.front());
      h = width <= 5e7 && width <= 64.0 * double(h.size()) * double(s.size()) ? convolve_dense(h, s) : convolve_sparse(h, s);
    }
  }
  return h;
}

}  // namespace

SumHistogram g_histogram(std::span<const std::vector<std::int64_t>> sets_in, int r, double cap) {
  if (r < 1) throw InvalidArgument("g_histogram: r must be >= 1");
  SumHistogram out;
  out.r = r;
  std::vector<std::vector<std::int64_t>> sets;
  BigInt total = 1;
  double work = 1.0;
  for (const auto& s : sets_in) {
    std::vector<std::int64_t> v(s);
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw InvalidArgument("g_histogram: sets must not repeat elements");
    if (v.empty()) throw InvalidArgument("g_histogram: empty atom set");
    out.source_sizes.push_back(v.size());
    total *= boost::multiprecision::pow(BigInt(v.size()), static_cast<unsigned>(r));
    work *= std::pow(double(v.size()), r);
    sets.push_back(std::move(v));
  }
  if (work > cap) throw ResourceLimit("g_histogram: prod |A_m|^r exceeds cap");
  if (total < (BigInt(1) << 63)) {
    for (auto& [z, c] : histogram_impl<std::uint64_t>(sets, r)) out.entries.emplace_back(z, BigInt(c));
  } else {
    out.entries = histogram_impl<BigInt>(sets, r);
  }
  return out;
}

BigInt count_solutions(const SumHistogram& h) {
  BigInt s = 0;
  for (const auto& [z, g] : h.entries) s += g * g;
  return s;
}

Rational cs_lower_bound(const SumHistogram& h) {
  if (h.entries.empty()) return Rational(0);
  const BigInt l1 = h.l1();
  return Rational(l1 * l1, BigInt(h.support_size()));
}

BigInt autocorrelation(const SumHistogram& h, std::int64_t delta) {
  BigInt s = 0;
  // two-pointer over sorted keys
  std::size_t j = 0;
  for (const auto& [z, g] : h.entries) {
    const std::int64_t target = z + delta;
    while (j < h.entries.size() && h.entries[j].first < target) ++j;
    if (j < h.entries.size() && h.entries[j].first == target) s += g * h.entries[j].second;
  }
  return s;
}

int default_r(const KnappFamily& fam) {
  double s = 0.0;
  for (double b : fam.betas) s += b;
  if (s <= 0) throw PreconditionError("default_r: sum of betas is zero");
  return static_cast<int>(std::ceil(1.0 / s - 1e-12));
}

GammaBound gamma_bound(const KnappFamily& fam, int ell, double q, double p, int r) {
  if (r < 1) throw InvalidArgument("gamma_bound: r must be >= 1");
  if (q > 2.0 * r) throw InvalidArgument("gamma_bound: q > 2r is outside the L^{2r} reduction");
  if (!(q >= 1) || !(p >= 1)) throw InvalidArgument("gamma_bound: need p, q >= 1");
  if (ell < 0 || ell > fam.depth()) throw InvalidArgument("gamma_bound: ell outside built depth");
  if (r != default_r(fam)) throw PreconditionError("gamma_bound: r must equal ceil(1 / sum beta)");
  const std::size_t k = fam.k();
  BigInt P1 = 1, Ptau = 1;
  double logA = 0.0;
  for (int i = 1; i <= ell; ++i) {
    const auto& lv = fam.levels[i - 1];
    for (std::size_t m = 0; m < k; ++m) {
      P1 *= BigInt(r) * (lv.tau[m] - 1) + 1;
      Ptau *= lv.tau[m];
      logA += (q / p - q) * std::log(double(lv.tau[m])) + (q - q / p) * std::log(double(lv.t[m]));
    }
  }
  const BigInt rk = boost::multiprecision::pow(BigInt(r), static_cast<unsigned>(k * ell));
  const BigInt L = P1 - rk * Ptau;
  const double Psi = double(fam.Psi(ell));
  const double A = std::exp(logA);
  GammaBound g{};
  g.lower_order_count = L;
  // r^{k ell + 1} prod tau * prod tau^{q/p-q} t^{q-q/p}
  g.main_term = double(r) * to_double(rk) * to_double(Ptau) * A;
  g.lower_order = double(r) * to_double(L) * A;
  g.gamma = (g.main_term + g.lower_order) / Psi;
  g.factored_gamma = double(r) * to_double(P1) * A / Psi;
  g.inverse = 1.0 / g.gamma;
  return g;
}

IdentityReport norm_identity_check(std::span<const std::vector<std::int64_t>> sets, std::int64_t Psi,
                                   std::span<const double> weights, int r, const FrequencyGrid& grid) {
  const std::size_t k = sets.size();
  if (k < 1 || weights.size() != k) throw InvalidArgument("norm_identity_check: sets/weights mismatch");
  if (r < 1) throw InvalidArgument("norm_identity_check: r must be >= 1");
  if (Psi < 1 || Psi > 1000) throw PreconditionError("norm_identity_check: need 1 <= Psi(N) <= 1000");
  std::vector<DiscreteMeasure> ms;
  double diam = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<std::int64_t> s(sets[m]);
    std::sort(s.begin(), s.end());
    std::vector<Atom> atoms;
    for (auto a : s) atoms.push_back({Rational(a, Psi), weights[m]});
    ms.push_back(DiscreteMeasure::block(std::move(atoms), Rational(1, Psi)));
    diam = std::max(diam, to_double(ms.back().diameter()));
  }
  if (!grid.resolves(diam)) throw InvalidArgument("norm_identity_check: grid step violates the 1/(4 diam) guard");
  const auto prod = product_modulus(ms, {}, grid);
  const double lhs = std::pow(lq_freq_norm(prod, 2.0 * r, grid), 2.0 * r);

  const SumHistogram h = g_histogram(sets, r);
  const int n = static_cast<int>(2 * k * r);
  double s = 0.0;
  for (std::int64_t delta = -static_cast<std::int64_t>(k * r); delta <= static_cast<std::int64_t>(k * r); ++delta) {
    const double K = bspline_hatK(n, double(delta));
    if (K == 0.0) continue;
    s += to_double(autocorrelation(h, delta)) * K;
  }
  double wprod = 1.0;
  for (double w : weights) wprod *= w;
  const double rhs = std::pow(wprod, 2.0 * r) * double(Psi) * s;
  return {lhs, rhs, std::abs(lhs - rhs) / rhs, grid.radius(), grid.step()};
}

IdentityReport norm_identity_check(const KnappFamily& fam, int ell, int N, int r, const FrequencyGrid& grid) {
  if (N < 1 || N > fam.depth()) throw InvalidArgument("norm_identity_check: N outside built depth");
  std::vector<std::vector<std::int64_t>> sets(fam.k());
  std::vector<double> w(fam.k());
  for (std::size_t m = 0; m < fam.k(); ++m) {
    const auto f = knapp_indicator(fam, ell, static_cast<int>(m), N);
    const auto& E = fam.endpoints[N][m];
    for (std::size_t i = 0; i < E.size(); ++i)
      if (f[i] != 0.0) sets[m].push_back(E[i]);
    w[m] = 1.0 / double(E.size());
  }
  return norm_identity_check(sets, fam.Psi(N), w, r, grid);
}

}  // namespace fracext
