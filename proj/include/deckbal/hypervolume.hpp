#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deckbal/pareto.hpp"

namespace deckbal {

/// Hypervolume dominated by `points` and bounded by `ref` (minimization).
/// Exact for one to three objectives; more objectives throw UnsupportedError.
/// Points that do not lie strictly below `ref` in every coordinate are
/// ignored; use count_outside_reference to report them.
double hypervolume(std::span<const Point> points, std::span<const double> ref);

/// Same measure for any dimension by recursive slicing on the last
/// objective down to the three-dimensional sweep. Cost grows by a factor of
/// n per dimension above three.
double hypervolume_exact(std::span<const Point> points, std::span<const double> ref);

std::size_t count_outside_reference(std::span<const Point> points, std::span<const double> ref);

/// Exclusive contribution of each point: HV(all) - HV(all without i).
/// Throws UsageError if a point does not strictly dominate `ref`.
std::vector<double> hv_contributions(std::span<const Point> points, std::span<const double> ref);

}  // namespace deckbal
