#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deckbal/pareto.hpp"

namespace deckbal {

/// Mutually non-dominated point set (dominated members and exact
/// duplicates are dropped on construction).
struct FrontSet {
  std::vector<Point> points;
  std::string origin;

  FrontSet() = default;
  explicit FrontSet(std::span<const Point> raw, std::string origin_label = {});

  std::size_t dims() const { return points.empty() ? 0 : points.front().size(); }
  bool empty() const { return points.empty(); }
};

/// HV(reference set) - HV(a); zero when `a` covers the reference set.
double hv_indicator(const FrontSet& a, const FrontSet& reference_set, std::span<const double> ref);

/// Additive epsilon: max over r of min over a of max_j (a_j - r_j).
double eps_indicator(const FrontSet& a, const FrontSet& reference_set);

/// Mean over weights of the best weighted Tchebycheff distance to `ideal`.
double r2_indicator(const FrontSet& a, std::span<const Point> weights, std::span<const double> ideal);

/// All weight vectors with components in {0, 1/H, ..., 1} summing to one.
std::vector<Point> simplex_lattice(std::size_t dims, std::size_t divisions);

/// Per-objective affine map sending the global min to 1 and max to 2.
struct Normalization {
  std::vector<double> lo;
  std::vector<double> hi;

  double apply(std::size_t j, double v) const;
  Point apply(std::span<const double> p) const;
  std::vector<Point> apply(std::span<const Point> points) const;
  FrontSet apply(const FrontSet& set) const;
};

/// Fits the [1, 2] map on the union of `sets` (constant objectives map to 1).
Normalization fit_normalization(std::span<const FrontSet> sets);

std::pair<std::vector<FrontSet>, Normalization> normalize_sets(std::span<const FrontSet> sets);

inline constexpr double kNormalizedReference = 2.1;
inline constexpr std::size_t kR2Divisions = 20;
inline constexpr double kIdealOffset = 0.01;

struct IndicatorValues {
  double hv = 0.0;
  double eps = 0.0;
  double r2 = 0.0;
};

/// HV difference, epsilon and R2 of `a` against `reference_set`, both already
/// normalized onto [1, 2]. HV uses the reference point (2.1, ..., 2.1);
/// R2 uses a simplex-lattice with H = 20 and an ideal point 0.01 below the
/// reference set's component-wise minimum.
IndicatorValues normalized_indicators(const FrontSet& a, const FrontSet& reference_set);

}  // namespace deckbal
