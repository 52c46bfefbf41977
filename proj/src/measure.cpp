#include "fracext/measure.hpp"

#include "fracext/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracext {

namespace {

// Neumaier summation; 10^7 naive adds can drift past the 1e-12 mass tolerance.
double stable_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}

double weight_sum(const std::vector<Atom>& atoms) {
  std::vector<double> w;
  w.reserve(atoms.size());
  for (const auto& a : atoms) w.push_back(a.weight);
  return stable_sum(w);
}

}  // namespace

SimilarityIFS::SimilarityIFS(std::vector<AffineMap> maps, std::vector<Rational> probs)
    : maps_(std::move(maps)), probs_(std::move(probs)) {
  if (maps_.empty()) throw InvalidArgument("IFS needs at least one map");
  if (probs_.size() != maps_.size()) throw InvalidArgument("IFS: probs and maps differ in length");
  Rational sum = 0;
  for (const auto& p : probs_) {
    if (p < 0) throw InvalidArgument("IFS: negative probability");
    sum += p;
  }
  if (sum != 1) throw InvalidArgument("IFS: probabilities sum to " + to_string(sum) + ", not 1");
  for (const auto& m : maps_) {
    if (m.ratio == 0 || abs(m.ratio) >= 1) throw InvalidArgument("IFS: ratio " + to_string(m.ratio) + " not in (0,1) in modulus");
  }
}

bool SimilarityIFS::homogeneous() const {
  return std::all_of(maps_.begin(), maps_.end(), [&](const AffineMap& m) { return m.ratio == maps_[0].ratio && m.ratio > 0; });
}

DiscreteMeasure::DiscreteMeasure(MeasureKind kind, std::vector<Atom> atoms, Rational width, double total)
    : kind_(kind), width_(std::move(width)), total_(total) {
  positions_.reserve(atoms.size());
  weights_.reserve(atoms.size());
  points_.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].weight >= 0) || !std::isfinite(atoms[i].weight)) throw InvalidArgument("measure: weights must be finite and nonnegative");
    if (i > 0) {
      if (atoms[i].position <= atoms[i - 1].position) throw InvalidArgument("measure: positions must be strictly increasing");
      if (kind == MeasureKind::Block && atoms[i - 1].position + width_ > atoms[i].position)
        throw InvalidArgument("measure: blocks overlap");
    }
    positions_.push_back(std::move(atoms[i].position));
    weights_.push_back(atoms[i].weight);
    points_.push_back(to_double(positions_.back()));
  }
  if (kind == MeasureKind::Block && width_ <= 0) throw InvalidArgument("measure: block width must be positive");
  const double s = stable_sum(weights_);
  if (std::abs(s - total_) > 1e-12 * std::max(std::abs(total_), 1e-300) && !(s == 0 && total_ == 0))
    throw InvalidArgument("measure: weight sum disagrees with totalMass");
}

DiscreteMeasure DiscreteMeasure::atomic(std::vector<Atom> atoms) {
  const double s = weight_sum(atoms);
  return DiscreteMeasure(MeasureKind::Atomic, std::move(atoms), Rational(0), s);
}

DiscreteMeasure DiscreteMeasure::block(std::vector<Atom> atoms, Rational width) {
  const double s = weight_sum(atoms);
  return DiscreteMeasure(MeasureKind::Block, std::move(atoms), std::move(width), s);
}

DiscreteMeasure DiscreteMeasure::with_total(MeasureKind kind, std::vector<Atom> atoms, Rational width, double total) {
  return DiscreteMeasure(kind, std::move(atoms), kind == MeasureKind::Block ? std::move(width) : Rational(0), total);
}

Rational DiscreteMeasure::support_min() const {
  if (positions_.empty()) throw PreconditionError("empty measure has no support");
  return positions_.front();
}

Rational DiscreteMeasure::support_max() const {
  if (positions_.empty()) throw PreconditionError("empty measure has no support");
  return kind_ == MeasureKind::Block ? positions_.back() + width_ : positions_.back();
}

Rational DiscreteMeasure::diameter() const { return support_max() - support_min(); }

std::vector<Atom> DiscreteMeasure::atoms() const {
  std::vector<Atom> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back({positions_[i], weights_[i]});
  return out;
}

bool DiscreteMeasure::operator==(const DiscreteMeasure& o) const {
  return kind_ == o.kind_ && positions_ == o.positions_ && weights_ == o.weights_ && width_ == o.width_;
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> out;
  for (auto& a : atoms) {
    if (!out.empty() && out.back().position == a.position)
      out.back().weight += a.weight;
    else
      out.push_back(std::move(a));
  }
  return out;
}

DiscreteMeasure build_self_similar(const SimilarityIFS& ifs, int depth, std::size_t atom_cap) {
  if (depth < 1) throw InvalidArgument("build_self_similar: depth must be >= 1");
  const std::size_t m = ifs.size();
  double count = std::pow(static_cast<double>(m), depth);
  if (count > static_cast<double>(atom_cap))
    throw ResourceLimit("build_self_similar: " + std::to_string(m) + "^" + std::to_string(depth) + " atoms exceeds cap " +
                        std::to_string(atom_cap));
  std::vector<double> pw(m);
  for (std::size_t i = 0; i < m; ++i) pw[i] = to_double(ifs.probs()[i]);

  // Word w = i1...in maps to phi_{i1}(phi_{i2}(...phi_{in}(0))); build by
  // prepending the outermost map, so atoms_{n} = U_i phi_i(atoms_{n-1}).
  std::vector<Atom> cur{{Rational(0), 1.0}};
  for (int level = 0; level < depth; ++level) {
    std::vector<Atom> next;
    next.reserve(cur.size() * m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& f = ifs.maps()[i];
      for (const auto& a : cur) next.push_back({f.ratio * a.position + f.translation, pw[i] * a.weight});
    }
    cur = std::move(next);
  }
  auto merged = merge_atoms(std::move(cur));
  // Exact probability product is 1; drop rounding so totalMass is exactly 1.
  return DiscreteMeasure::with_total(MeasureKind::Atomic, std::move(merged), Rational(0), 1.0);
}

DiscreteMeasure pushforward_scale(const DiscreteMeasure& m, const Rational& u) {
  if (u == 0) throw InvalidArgument("pushforward_scale: u = 0");
  std::vector<Atom> atoms;
  atoms.reserve(m.size());
  const bool block = m.kind() == MeasureKind::Block;
  const Rational h = block ? Rational(m.block_width() * abs(u)) : Rational(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& a = m.positions()[i];
    // negative u reflects [a, a+h) onto (u(a+h), ua]
    Rational p = (block && u < 0) ? Rational(u * (a + m.block_width())) : Rational(u * a);
    atoms.push_back({std::move(p), m.weights()[i]});
  }
  if (u < 0) std::reverse(atoms.begin(), atoms.end());
  return DiscreteMeasure::with_total(m.kind(), std::move(atoms), h, m.total_mass());
}

DiscreteMeasure discretize_power_density(const PowerDensity& pd, int cells) {
  const double a = pd.exponent;
  if (!(a < 1)) throw InvalidArgument("discretize_power_density: exponent >= 1 is not integrable");
  if (a < 0) throw InvalidArgument("discretize_power_density: exponent must be >= 0");
  if (cells < 2) throw InvalidArgument("discretize_power_density: cells must be >= 2");
  const double e = 1.0 - a;
  std::vector<Atom> atoms;
  atoms.reserve(cells);
  double prev = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double b = static_cast<double>(i + 1) / cells;
    const double F = std::pow(b, e) / e;
    atoms.push_back({Rational(i, cells), F - prev});
    prev = F;
  }
  return DiscreteMeasure::with_total(MeasureKind::Block, std::move(atoms), Rational(1, cells), 1.0 / e);
}

DiscreteMeasure uniform_blocks(int cells) { return discretize_power_density({0.0}, cells); }

const char* to_string(Separation s) {
  switch (s) {
    case Separation::SSC: return "SSC";
    case Separation::OscInterval: return "OSC-interval";
    default: return "Unverified";
  }
}

std::pair<Rational, Rational> attractor_hull(const SimilarityIFS& ifs) {
  // The hull [L, U] is the unique solution of L = min_i phi_i-image-min, U = max_i ...;
  // each phi_i([L,U]) has endpoints rL+a, rU+a (swapped for r<0). Try every pair
  // (i for L, j for U) and keep the consistent one.
  const auto& maps = ifs.maps();
  const std::size_t m = maps.size();
  auto lo_of = [](const AffineMap& f, const Rational& L, const Rational& U) {
    return f.ratio > 0 ? Rational(f.ratio * L + f.translation) : Rational(f.ratio * U + f.translation);
  };
  auto hi_of = [](const AffineMap& f, const Rational& L, const Rational& U) {
    return f.ratio > 0 ? Rational(f.ratio * U + f.translation) : Rational(f.ratio * L + f.translation);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      // L = lo_i(L,U), U = hi_j(L,U): 2x2 linear system
      const auto& fi = maps[i];
      const auto& fj = maps[j];
      Rational a11, a12, b1, a21, a22, b2;
      if (fi.ratio > 0) { a11 = 1 - fi.ratio; a12 = 0; } else { a11 = 1; a12 = -fi.ratio; }
      b1 = fi.translation;
      if (fj.ratio > 0) { a21 = 0; a22 = 1 - fj.ratio; } else { a21 = -fj.ratio; a22 = 1; }
      b2 = fj.translation;
      Rational det = a11 * a22 - a12 * a21;
      if (det == 0) continue;
      Rational L = (b1 * a22 - a12 * b2) / det;
      Rational U = (a11 * b2 - b1 * a21) / det;
      if (U < L) continue;
      bool ok = true;
      for (const auto& f : maps) {
        if (lo_of(f, L, U) < L || hi_of(f, L, U) > U) { ok = false; break; }
      }
      if (ok) return {L, U};
    }
  }
  throw Error("attractor_hull: no consistent hull found");  // unreachable for contractions
}

Separation check_separation(const SimilarityIFS& ifs) {
  auto [L, U] = attractor_hull(ifs);
  std::vector<std::pair<Rational, Rational>> im;
  for (const auto& f : ifs.maps()) {
    Rational a = f.ratio * L + f.translation, b = f.ratio * U + f.translation;
    if (b < a) std::swap(a, b);
    im.emplace_back(a, b);
  }
  std::sort(im.begin(), im.end());
  bool closed_disjoint = true, open_disjoint = true;
  for (std::size_t i = 1; i < im.size(); ++i) {
    if (im[i].first <= im[i - 1].second) closed_disjoint = false;
    if (im[i].first < im[i - 1].second) open_disjoint = false;
  }
  // Degenerate hull (single point) gives no open set to work with.
  if (L == U) return im.size() == 1 ? Separation::SSC : Separation::Unverified;
  if (closed_disjoint) return Separation::SSC;
  // images of the hull lie in the hull by construction
  if (open_disjoint) return Separation::OscInterval;
  return Separation::Unverified;
}

}  // namespace fracext
