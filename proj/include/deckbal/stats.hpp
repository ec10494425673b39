#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "deckbal/deck.hpp"
#include "deckbal/random.hpp"

namespace deckbal {

/// Quantile of Student's t distribution with `dof` degrees of freedom.
double student_t_quantile(double p, double dof);

double sample_mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);  // divisor n - 1

/// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> xs, double q);

struct CIResult {
  double mean = 0.0;
  double halfwidth = 0.0;
  std::size_t n = 0;
  double alpha = 0.05;
};

/// t-based confidence interval: halfwidth = t_{1-alpha/2, n-1} * s / sqrt(n).
CIResult ci_halfwidth(std::span<const double> samples, double alpha = 0.05);

struct MetricSamples {
  std::string metric;
  std::vector<double> values;
};

/// Draws `size` observations of every metric.
using MetricSampler = std::function<std::vector<MetricSamples>(std::size_t size, Rng& rng)>;

struct SampleSizeRow {
  std::size_t sample_size = 0;
  std::string metric;
  double halfwidth_q95 = 0.0;

  friend bool operator==(const SampleSizeRow&, const SampleSizeRow&) = default;
};

using SampleSizeTable = std::vector<SampleSizeRow>;

/// For each size, repeats the sampler `repeats` times, computes a CI
/// halfwidth per repeat and metric, and reports the 0.95 quantile.
/// Repeat r of size s uses the substream keyed by (seed, s, r).
SampleSizeTable sample_size_study(const MetricSampler& sampler, std::span<const std::size_t> sizes,
                                  std::size_t repeats, double alpha, std::uint64_t seed);

/// Per-game win indicator, announcer changes and tightness for p4 vs p0.
MetricSampler game_metric_sampler(const Deck& deck);

void write_sample_size_csv(const SampleSizeTable& table, std::ostream& out);

/// CI halfwidths for a hypothetical playtest of players * games_each games,
/// given per-metric standard deviations.
std::vector<double> playtest_feasibility(std::span<const double> sd, std::size_t players, std::size_t games_each,
                                         double alpha = 0.05);

}  // namespace deckbal
