#include "deckbal/hypervolume.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "deckbal/error.hpp"

namespace deckbal {

namespace {

using PointRef = const double*;

bool strictly_below(std::span<const double> p, std::span<const double> ref) {
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (!(p[j] < ref[j])) return false;
  }
  return true;
}

double hv_2d(std::vector<PointRef> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(), [](PointRef a, PointRef b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  double area = 0.0;
  double floor_y = ref[1];
  for (const auto p : pts) {
    if (p[1] < floor_y) {
      area += (ref[0] - p[0]) * (floor_y - p[1]);
      floor_y = p[1];
    }
  }
  return area;
}

// Sweep along the third objective, keeping the 2-D staircase of processed
// points in a map (x ascending, y descending) with its area updated per insert.
double hv_3d(std::vector<PointRef> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(), [](PointRef a, PointRef b) { return a[2] < b[2]; });
  std::map<double, double> stair;
  double area = 0.0;
  double volume = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i][0];
    const double y = pts[i][1];
    auto it = stair.lower_bound(x);
    const bool covered = (it != stair.end() && it->first == x && it->second <= y) ||
                         (it != stair.begin() && std::prev(it)->second <= y);
    if (!covered) {
      double height = it != stair.begin() ? std::prev(it)->second : ref[1];
      double cursor = x;
      double gain = 0.0;
      while (it != stair.end() && it->second >= y) {
        gain += (it->first - cursor) * (height - y);
        cursor = it->first;
        height = it->second;
        it = stair.erase(it);
      }
      const double right = it != stair.end() ? it->first : ref[0];
      gain += (right - cursor) * (height - y);
      stair.emplace(x, y);
      area += gain;
    }
    const double next_z = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
    volume += area * (next_z - pts[i][2]);
  }
  return volume;
}

double hv_recursive(std::vector<PointRef> pts, std::size_t dims, std::span<const double> ref) {
  if (pts.empty()) return 0.0;
  switch (dims) {
    case 1: {
      double best = ref[0];
      for (const auto p : pts) best = std::min(best, p[0]);
      return ref[0] - best;
    }
    case 2:
      return hv_2d(std::move(pts), ref);
    case 3:
      return hv_3d(std::move(pts), ref);
    default:
      break;
  }
  const std::size_t last = dims - 1;
  std::sort(pts.begin(), pts.end(), [last](PointRef a, PointRef b) { return a[last] < b[last]; });
  double volume = 0.0;
  std::vector<PointRef> slice;
  slice.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slice.push_back(pts[i]);
    const double next = i + 1 < pts.size() ? pts[i + 1][last] : ref[last];
    const double thickness = next - pts[i][last];
    if (thickness > 0.0) volume += thickness * hv_recursive(slice, last, ref);
  }
  return volume;
}

std::vector<PointRef> usable_points(std::span<const Point> points, std::span<const double> ref) {
  std::vector<PointRef> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != ref.size()) throw UsageError("hypervolume: point and reference dimensions differ");
    if (strictly_below(p, ref)) out.push_back(p.data());
  }
  return out;
}

}  // namespace

double hypervolume_exact(std::span<const Point> points, std::span<const double> ref) {
  if (ref.empty()) throw UsageError("hypervolume: empty reference point");
  return hv_recursive(usable_points(points, ref), ref.size(), ref);
}

double hypervolume(std::span<const Point> points, std::span<const double> ref) {
  if (ref.size() > 3) {
    throw UnsupportedError("hypervolume: exact computation supports at most 3 objectives, got " +
                           std::to_string(ref.size()));
  }
  return hypervolume_exact(points, ref);
}

std::size_t count_outside_reference(std::span<const Point> points, std::span<const double> ref) {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(),
                                                [&](const Point& p) { return !strictly_below(p, ref); }));
}

std::vector<double> hv_contributions(std::span<const Point> points, std::span<const double> ref) {
  if (ref.size() > 3) throw UnsupportedError("hv_contributions: at most 3 objectives supported");
  for (const auto& p : points) {
    if (p.size() != ref.size() || !strictly_below(p, ref)) {
      throw UsageError("hv_contributions: every point must strictly dominate the reference point");
    }
  }
  std::vector<PointRef> all;
  all.reserve(points.size());
  for (const auto& p : points) all.push_back(p.data());
  const double total = hv_recursive(all, ref.size(), ref);

  std::vector<double> contrib(points.size());
  std::vector<PointRef> others;
  others.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i) others.push_back(points[j].data());
    }
    contrib[i] = std::max(0.0, total - hv_recursive(others, ref.size(), ref));
  }
  return contrib;
}

}  // namespace deckbal
