#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deckbal {

/// A point in objective space, minimization orientation.
using Point = std::vector<double>;

/// Strict Pareto dominance: `a` is better than `b` in every objective.
bool dominates(std::span<const double> a, std::span<const double> b);

/// `a` is no worse than `b` in every objective (a <= b component-wise).
bool weakly_dominates(std::span<const double> a, std::span<const double> b);

/// Non-dominated sorting ranks, starting at 1.
std::vector<int> nondominated_sort(std::span<const Point> points);

/// Indices of the points no other point dominates, in input order.
std::vector<std::size_t> nondominated_indices(std::span<const Point> points);

/// Non-dominated subset with exact duplicates removed, in input order.
std::vector<Point> nondominated_subset(std::span<const Point> points);

/// Every point of `b` is strictly dominated by some point of `a`.
/// False when `a` is empty and `b` is not; vacuously true for empty `b`.
bool set_strictly_dominates(std::span<const Point> a, std::span<const Point> b);

}  // namespace deckbal
