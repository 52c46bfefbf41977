#pragma once

#include "fracext/rational.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fracext {

inline constexpr std::size_t kDefaultAtomCap = 10'000'000;

struct AffineMap {
  Rational ratio;
  Rational translation;
};

class SimilarityIFS {
 public:
  SimilarityIFS(std::vector<AffineMap> maps, std::vector<Rational> probs);

  const std::vector<AffineMap>& maps() const { return maps_; }
  const std::vector<Rational>& probs() const { return probs_; }
  std::size_t size() const { return maps_.size(); }
  // All ratios equal and positive.
  bool homogeneous() const;

 private:
  std::vector<AffineMap> maps_;
  std::vector<Rational> probs_;
};

enum class MeasureKind { Atomic, Block };

struct Atom {
  Rational position;
  double weight;
};

class DiscreteMeasure {
 public:
  // Positions must be strictly increasing (use merge_atoms first otherwise).
  static DiscreteMeasure atomic(std::vector<Atom> atoms);
  static DiscreteMeasure block(std::vector<Atom> atoms, Rational width);
  // Explicit total, checked against the weight sum to 1e-12 relative.
  static DiscreteMeasure with_total(MeasureKind kind, std::vector<Atom> atoms, Rational width, double total);

  MeasureKind kind() const { return kind_; }
  std::size_t size() const { return positions_.size(); }
  const std::vector<Rational>& positions() const { return positions_; }
  const std::vector<double>& weights() const { return weights_; }
  // Positions as doubles, cached for the numeric kernels.
  const std::vector<double>& points() const { return points_; }
  const Rational& block_width() const { return width_; }
  double total_mass() const { return total_; }
  Rational support_min() const;
  Rational support_max() const;  // includes the last block's right end
  Rational diameter() const;
  std::vector<Atom> atoms() const;

  bool operator==(const DiscreteMeasure& o) const;

 private:
  DiscreteMeasure(MeasureKind kind, std::vector<Atom> atoms, Rational width, double total);

  MeasureKind kind_;
  std::vector<Rational> positions_;
  std::vector<double> weights_;
  std::vector<double> points_;
  Rational width_;
  double total_;
};

// Sorts atoms and sums weights of coincident positions.
std::vector<Atom> merge_atoms(std::vector<Atom> atoms);

DiscreteMeasure build_self_similar(const SimilarityIFS& ifs, int depth, std::size_t atom_cap = kDefaultAtomCap);
DiscreteMeasure pushforward_scale(const DiscreteMeasure& m, const Rational& u);

struct PowerDensity {
  double exponent;  // density x^{-exponent} on [0,1]
};
DiscreteMeasure discretize_power_density(const PowerDensity& pd, int cells);

// Uniform probability measure on [0,1] as `cells` blocks.
DiscreteMeasure uniform_blocks(int cells);

enum class Separation { SSC, OscInterval, Unverified };
const char* to_string(Separation s);

// Convex hull [lo, hi] of the attractor.
std::pair<Rational, Rational> attractor_hull(const SimilarityIFS& ifs);
Separation check_separation(const SimilarityIFS& ifs);

}  // namespace fracext
