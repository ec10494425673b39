#include "deckbal/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deckbal/error.hpp"
#include "deckbal/hypervolume.hpp"

namespace deckbal {

FrontSet::FrontSet(std::span<const Point> raw, std::string origin_label)
    : points(nondominated_subset(raw)), origin(std::move(origin_label)) {}

double hv_indicator(const FrontSet& a, const FrontSet& reference_set, std::span<const double> ref) {
  return hypervolume(reference_set.points, ref) - hypervolume(a.points, ref);
}

double eps_indicator(const FrontSet& a, const FrontSet& reference_set) {
  if (a.empty() || reference_set.empty()) throw UsageError("eps_indicator: sets must be non-empty");
  if (a.dims() != reference_set.dims()) throw UsageError("eps_indicator: dimension mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : reference_set.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points) {
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < r.size(); ++j) shift = std::max(shift, p[j] - r[j]);
      best = std::min(best, shift);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double r2_indicator(const FrontSet& a, std::span<const Point> weights, std::span<const double> ideal) {
  if (weights.empty()) throw UsageError("r2_indicator: need at least one weight vector");
  if (a.empty()) throw UsageError("r2_indicator: empty set");
  double total = 0.0;
  for (const auto& w : weights) {
    if (w.size() != ideal.size()) throw UsageError("r2_indicator: weight dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points) {
      double util = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) util = std::max(util, w[j] * std::abs(p[j] - ideal[j]));
      best = std::min(best, util);
    }
    total += best;
  }
  return total / static_cast<double>(weights.size());
}

std::vector<Point> simplex_lattice(std::size_t dims, std::size_t divisions) {
  if (dims == 0 || divisions == 0) throw UsageError("simplex_lattice: dims and divisions must be positive");
  std::vector<Point> out;
  std::vector<std::size_t> counts(dims, 0);
  // Enumerate compositions of `divisions` into `dims` non-negative parts.
  auto recurse = [&](auto&& self, std::size_t j, std::size_t left) -> void {
    if (j + 1 == dims) {
      counts[j] = left;
      Point w(dims);
      for (std::size_t i = 0; i < dims; ++i) w[i] = static_cast<double>(counts[i]) / static_cast<double>(divisions);
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[j] = c;
      self(self, j + 1, left - c);
    }
  };
  recurse(recurse, 0, divisions);
  return out;
}

double Normalization::apply(std::size_t j, double v) const {
  if (hi[j] == lo[j]) return 1.0;
  return 1.0 + (v - lo[j]) / (hi[j] - lo[j]);
}

Point Normalization::apply(std::span<const double> p) const {
  if (p.size() != lo.size()) throw UsageError("Normalization: dimension mismatch");
  Point out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = apply(j, p[j]);
  return out;
}

std::vector<Point> Normalization::apply(std::span<const Point> points) const {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(apply(std::span<const double>(p)));
  return out;
}

FrontSet Normalization::apply(const FrontSet& set) const {
  FrontSet out;
  out.origin = set.origin;
  out.points = apply(std::span<const Point>(set.points));
  return out;
}

Normalization fit_normalization(std::span<const FrontSet> sets) {
  Normalization t;
  for (const auto& s : sets) {
    for (const auto& p : s.points) {
      if (t.lo.empty()) {
        t.lo = p;
        t.hi = p;
        continue;
      }
      if (p.size() != t.lo.size()) throw UsageError("normalize_sets: dimension mismatch");
      for (std::size_t j = 0; j < p.size(); ++j) {
        t.lo[j] = std::min(t.lo[j], p[j]);
        t.hi[j] = std::max(t.hi[j], p[j]);
      }
    }
  }
  if (t.lo.empty()) throw UsageError("normalize_sets: no points to normalize");
  return t;
}

std::pair<std::vector<FrontSet>, Normalization> normalize_sets(std::span<const FrontSet> sets) {
  Normalization t = fit_normalization(sets);
  std::vector<FrontSet> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(t.apply(s));
  return {std::move(out), std::move(t)};
}

IndicatorValues normalized_indicators(const FrontSet& a, const FrontSet& reference_set) {
  const std::size_t m = reference_set.dims();
  if (m == 0 || a.empty()) throw UsageError("normalized_indicators: sets must be non-empty");
  const Point ref(m, kNormalizedReference);
  Point ideal(m, std::numeric_limits<double>::infinity());
  for (const auto& p : reference_set.points) {
    for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], p[j]);
  }
  for (auto& v : ideal) v -= kIdealOffset;
  const auto weights = simplex_lattice(m, kR2Divisions);

  IndicatorValues out;
  out.hv = hv_indicator(a, reference_set, ref);
  out.eps = eps_indicator(a, reference_set);
  out.r2 = r2_indicator(a, weights, ideal);
  return out;
}

}  // namespace deckbal
