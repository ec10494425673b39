#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deckbal/indicators.hpp"

namespace deckbal {

/// Final fronts of repeated runs of one optimizer configuration.
struct RunGroup {
  std::vector<FrontSet> fronts;
  std::string label;

  std::size_t dims() const;
  void validate() const;  // at least one run, common dimension
};

/// Fraction of runs whose front weakly dominates `z`.
double eaf_value(const RunGroup& group, std::span<const double> z);

/// Minimal grid points attained by at least `level` of the runs. The grid
/// holds all combinations of coordinates occurring in the group.
FrontSet attainment_surface(const RunGroup& group, double level);

struct EAFTestResult {
  double statistic = 0.0;       // max |EAF_A - EAF_B| over the grid
  double critical_value = 0.0;  // (1 - alpha) quantile of permuted statistics
  double p_value = 1.0;         // share of permuted statistics >= observed
  std::size_t permutations = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  bool reject = false;
};

/// Two-sample permutation test on first-order attainment functions with a
/// Kolmogorov-Smirnov type statistic. Run labels are reassigned at random
/// with group sizes preserved.
EAFTestResult eaf_test(const RunGroup& a, const RunGroup& b, std::size_t permutations, double alpha,
                       std::uint64_t seed);

}  // namespace deckbal
