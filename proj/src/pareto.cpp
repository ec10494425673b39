#include "deckbal/pareto.hpp"

#include <algorithm>

#include "deckbal/error.hpp"

namespace deckbal {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("dominates: dimension mismatch");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(a[j] < b[j])) return false;
  }
  return !a.empty();
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("weakly_dominates: dimension mismatch");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

std::vector<int> nondominated_sort(std::span<const Point> points) {
  const std::size_t n = points.size();
  std::vector<int> rank(n, 0);
  if (n == 0) return rank;
  const std::size_t m = points.front().size();
  for (const auto& p : points) {
    if (p.size() != m) throw UsageError("nondominated_sort: inconsistent objective count");
  }

  // Fast non-dominated sort: domination counts and dominated lists.
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) {
      rank[i] = 1;
      current.push_back(i);
    }
  }
  for (int r = 1; !current.empty(); ++r) {
    std::vector<std::size_t> next;
    for (const auto i : current) {
      for (const auto j : dominated[i]) {
        if (--count[j] == 0) {
          rank[j] = r + 1;
          next.push_back(j);
        }
      }
    }
    current = std::move(next);
  }
  return rank;
}

std::vector<std::size_t> nondominated_indices(std::span<const Point> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<Point> nondominated_subset(std::span<const Point> points) {
  std::vector<Point> out;
  for (const auto i : nondominated_indices(points)) {
    if (std::find(out.begin(), out.end(), points[i]) == out.end()) out.push_back(points[i]);
  }
  return out;
}

bool set_strictly_dominates(std::span<const Point> a, std::span<const Point> b) {
  return std::all_of(b.begin(), b.end(), [&](const Point& q) {
    return std::any_of(a.begin(), a.end(), [&](const Point& p) { return dominates(p, q); });
  });
}

}  // namespace deckbal
