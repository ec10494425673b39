#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deckbal {

enum class IndicatorKind { HV, Eps, R2 };

std::string indicator_name(IndicatorKind kind);
IndicatorKind parse_indicator(std::string_view text);

struct OCDParams {
  std::size_t window = 10;  // generations
  double var_limit = 1e-4;
  double alpha = 0.05;
  std::vector<IndicatorKind> indicators{IndicatorKind::HV, IndicatorKind::Eps, IndicatorKind::R2};

  void validate() const;
};

enum class Decision { Continue, Converged };

struct WindowTest {
  double variance_p = 1.0;  // P(chi2 <= observed) under variance == var_limit
  double slope_p = 1.0;     // p-value of H0: |slope| >= sqrt(var_limit) / (n - 1)
  bool variance_below_limit = false;
  bool slope_is_zero = false;
};

/// Tests on one window of indicator values: a one-sided chi-squared test of
/// variance >= var_limit and a one-sided t-test that the least-squares
/// slope is smaller in magnitude than one standard deviation of drift.
WindowTest test_window(std::span<const double> values, double var_limit, double alpha);

/// Online convergence detection over per-generation indicator values.
///
/// Once every buffer holds `window` values, a generation is a hit when all
/// tracked indicators pass the variance test, or when all of them show a
/// slope statistically below that drift. Two consecutive hits stop the run.
class ConvergenceDetector {
 public:
  explicit ConvergenceDetector(OCDParams params);

  /// One value per tracked indicator, in the order of params.indicators.
  Decision update(std::span<const double> values);

  /// Replaces the buffered window with recomputed values, one row per
  /// generation (oldest first), and tests it. Counts as one generation.
  Decision update_window(std::span<const std::vector<double>> rows);

  const OCDParams& params() const noexcept { return params_; }
  std::size_t generations() const noexcept { return generations_; }
  int consecutive_hits() const noexcept { return consecutive_hits_; }

 private:
  Decision assess();

  OCDParams params_;
  std::vector<std::deque<double>> buffers_;
  std::size_t generations_ = 0;
  int consecutive_hits_ = 0;
};

/// Stagnation test for single-objective runs: the population's min, mean
/// and max fitness each vary by less than `tol` over the last `window`
/// generations.
class StagnationDetector {
 public:
  explicit StagnationDetector(std::size_t window = 10, double tol = 1e-9);

  Decision update(double min, double mean, double max);

 private:
  std::size_t window_;
  double tol_;
  std::deque<double> min_, mean_, max_;
};

}  // namespace deckbal
