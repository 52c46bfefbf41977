#include "fracext/region.hpp"

#include "fracext/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace fracext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void require_nonempty(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string("region: missing ") + what);
}

std::vector<double> default_grid() {
  std::vector<double> ps;
  for (int i = 1; i <= 256; ++i) ps.push_back(257.0 / i);  // 1/p = i/257
  return ps;
}
}  // namespace

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Thm32: return "Thm32";
    case BoundaryKind::Thm34: return "Thm34";
    case BoundaryKind::Trainor: return "Trainor";
    case BoundaryKind::TopLid: return "TopLid";
    case BoundaryKind::Suff31: return "Suff31";
    case BoundaryKind::LinearST: return "LinearST";
  }
  return "?";
}

Direction RegionBoundary::direction() const {
  return kind == BoundaryKind::Suff31 ? Direction::Admissible : Direction::Forbidden;
}

RegionBoundary thm32(std::vector<double> alphas, std::vector<double> betas) {
  RegionBoundary b;
  b.kind = BoundaryKind::Thm32;
  b.alphas = std::move(alphas);
  b.betas = std::move(betas);
  b.strict = true;  // q < boundary fails
  return b;
}
RegionBoundary thm34(std::vector<double> alphas) {
  RegionBoundary b;
  b.kind = BoundaryKind::Thm34;
  b.alphas = std::move(alphas);
  b.strict = true;
  return b;
}
RegionBoundary trainor(double d, std::vector<double> gammas) {
  RegionBoundary b;
  b.kind = BoundaryKind::Trainor;
  b.d = d;
  b.gammas = std::move(gammas);
  return b;
}
RegionBoundary top_lid(double d, std::vector<double> box_dims) {
  RegionBoundary b;
  b.kind = BoundaryKind::TopLid;
  b.d = d;
  b.box_dims = std::move(box_dims);
  return b;
}
RegionBoundary suff31(double p0_available) {
  RegionBoundary b;
  b.kind = BoundaryKind::Suff31;
  b.p0_available = p0_available;
  return b;
}
RegionBoundary linear_st(double d, double alpha, double beta) {
  RegionBoundary b;
  b.kind = BoundaryKind::LinearST;
  b.d = d;
  b.alphas = {alpha};
  b.betas = {beta};
  return b;
}

double evaluate_boundary(const RegionBoundary& b, double p) {
  if (!(p > 1.0)) throw InvalidArgument("evaluate_boundary: need p > 1");
  const double pp = p / (p - 1.0);
  switch (b.kind) {
    case BoundaryKind::Thm32: {
      require_nonempty(b.alphas, "alphas");
      require_nonempty(b.betas, "betas");
      if (b.alphas.size() != b.betas.size()) throw InvalidArgument("Thm32: alphas/betas length mismatch");
      const double sa = sum(b.alphas), sb = sum(b.betas);
      if (!(sb > 0)) throw InvalidArgument("Thm32: sum of betas must be positive");
      return (2.0 * p * (1.0 - sa) + p * sb) / ((p - 1.0) * sb);
    }
    case BoundaryKind::Thm34: {
      require_nonempty(b.alphas, "alphas");
      const double sa = sum(b.alphas);
      if (!(sa > 0)) throw InvalidArgument("Thm34: sum of alphas must be positive");
      return p * (2.0 - sa) / ((p - 1.0) * sa);
    }
    case BoundaryKind::Trainor: {
      require_nonempty(b.gammas, "gammas");
      const double sg = sum(b.gammas);
      if (!(sg > 0)) throw InvalidArgument("Trainor: sum of gammas must be positive");
      return b.d * pp / sg;
    }
    case BoundaryKind::TopLid: {
      require_nonempty(b.box_dims, "box_dims");
      const double s = sum(b.box_dims);
      if (!(s > 0)) throw InvalidArgument("TopLid: sum of box dimensions must be positive");
      return 2.0 * b.d / s;
    }
    case BoundaryKind::Suff31: {
      const double P = b.p0_available;
      if (!(P >= 1.0)) throw InvalidArgument("Suff31: p0_available must be >= 1");
      if (P == 1.0) return kInf;
      // p0(q) = q(p-1)/(q(p-1)-p) decreases in q; p0 <= P iff q >= P p / ((P-1)(p-1))
      const double q = std::isinf(P) ? pp : P * p / ((P - 1.0) * (p - 1.0));
      return std::max(2.0, q);
    }
    case BoundaryKind::LinearST: {
      require_nonempty(b.alphas, "alpha");
      require_nonempty(b.betas, "beta");
      if (!(b.betas[0] > 0)) throw InvalidArgument("LinearST: beta must be positive");
      return 2.0 + 4.0 * (b.d - b.alphas[0]) / b.betas[0];
    }
  }
  throw InvalidArgument("evaluate_boundary: unknown kind");
}

RegionReport region_report(const std::vector<RegionBoundary>& boundaries, std::vector<double> p_grid,
                           const std::vector<double>& alphas, const std::vector<double>& betas) {
  if (p_grid.empty()) p_grid = default_grid();
  RegionReport rep;
  for (const auto& b : boundaries)
    for (double p : p_grid) {
      const double q = evaluate_boundary(b, p);
      rep.samples.push_back({to_string(b.kind), 1.0 / p, q > 0 ? 1.0 / q : kInf, b.direction()});
    }

  const RegionBoundary* t32 = nullptr;
  const RegionBoundary* tr = nullptr;
  const RegionBoundary* lid = nullptr;
  for (const auto& b : boundaries) {
    if (b.kind == BoundaryKind::Thm32 && !t32) t32 = &b;
    if (b.kind == BoundaryKind::Trainor && !tr) tr = &b;
    if (b.kind == BoundaryKind::TopLid && !lid) lid = &b;
  }
  rep.sum_alpha_below_one = !alphas.empty() && sum(alphas) < 1.0;
  if (t32 && tr) {
    rep.containment_holds = true;
    for (double p : p_grid) {
      ContainmentRow row{p, evaluate_boundary(*t32, p), evaluate_boundary(*tr, p), lid ? evaluate_boundary(*lid, p) : 0.0,
                         false, false};
      row.contains = row.thm32 > row.trainor;
      row.visible = row.contains && row.thm32 > row.top_lid;
      rep.containment_holds = rep.containment_holds && row.contains;
      rep.containment.push_back(row);
    }
    if (rep.sum_alpha_below_one && !rep.containment_holds)
      rep.flags.push_back("containment fails despite sum alpha < 1");
    if (!rep.sum_alpha_below_one && !rep.containment_holds)
      rep.flags.push_back("sum alpha >= 1: Thm32 forbidden region does not contain Trainor's");
    if (!rep.sum_alpha_below_one && rep.containment_holds)
      rep.flags.push_back("containment holds although sum alpha >= 1");
  }

  if (!alphas.empty() && alphas.size() == betas.size()) {
    rep.gap_lo = evaluate_boundary(thm32(alphas, betas), 2.0);
    double hi = -kInf;
    for (std::size_t i = 0; i < alphas.size(); ++i)
      hi = std::max(hi, 0.5 * evaluate_boundary(linear_st(1.0, alphas[i], betas[i]), 2.0));
    rep.gap_hi = hi;
    rep.gap_nonempty = rep.gap_hi > rep.gap_lo;
  }
  return rep;
}

std::string region_csv(const RegionReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "kind,inv_p,inv_q,direction\n";
  for (const auto& s : r.samples)
    os << s.kind << ',' << s.inv_p << ',' << s.inv_q << ','
       << (s.direction == Direction::Forbidden ? "forbidden" : "admissible") << '\n';
  return os.str();
}

std::string region_svg(const std::vector<RegionBoundary>& boundaries) {
  constexpr int W = 640, H = 480, pad = 48;
  constexpr int cols = 256;
  const double pw = W - 2 * pad, ph = H - 2 * pad;
  auto X = [&](double u) { return pad + u * pw; };
  auto Y = [&](double v) { return H - pad - v * ph; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  // light grey: ruled out by the prior conditions; dark grey: ruled out only by the new ones
  for (int i = 0; i < cols; ++i) {
    const double u = (i + 0.5) / cols;
    const double p = 1.0 / u;
    double prior = 0.0, fresh = 0.0;
    for (const auto& b : boundaries) {
      if (b.direction() != Direction::Forbidden) continue;
      const double q = evaluate_boundary(b, p);
      if (!(q > 0)) continue;
      const bool is_new = b.kind == BoundaryKind::Thm32 || b.kind == BoundaryKind::Thm34;
      double& slot = is_new ? fresh : prior;
      slot = std::max(slot, q);
    }
    const double x0 = X(double(i) / cols), wcol = pw / cols + 0.05;
    // forbidden: 1/q > 1/boundary
    auto band = [&](double vlo, double vhi, const char* fill) {
      vlo = std::clamp(vlo, 0.0, 1.0);
      vhi = std::clamp(vhi, 0.0, 1.0);
      if (vhi <= vlo) return;
      os << "<rect x=\"" << x0 << "\" y=\"" << Y(vhi) << "\" width=\"" << wcol << "\" height=\"" << Y(vlo) - Y(vhi)
         << "\" fill=\"" << fill << "\"/>\n";
    };
    const double v_prior = prior > 0 ? 1.0 / prior : 1.0;
    const double v_new = fresh > 0 ? 1.0 / fresh : 1.0;
    band(v_prior, 1.0, "#cccccc");
    band(v_new, v_prior, "#4d4d4d");
  }
  for (const auto& b : boundaries) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" data-kind=\"" << to_string(b.kind)
       << "\" points=\"";
    for (int i = 0; i < cols; ++i) {
      const double u = (i + 0.5) / cols;
      const double q = evaluate_boundary(b, 1.0 / u);
      if (!(q > 0) || std::isinf(q)) continue;
      const double v = 1.0 / q;
      if (v > 1.0) continue;
      os << X(u) << ',' << Y(v) << ' ';
    }
    os << "\"/>\n";
  }
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0.5) << "\" x2=\"" << X(1) << "\" y2=\"" << Y(0.5)
     << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"14\">1/p</text>\n";
  os << "<text x=\"14\" y=\"" << H / 2 << "\" font-size=\"14\">1/q</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace fracext
