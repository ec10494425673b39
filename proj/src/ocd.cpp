#include "deckbal/ocd.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "deckbal/error.hpp"

namespace deckbal {

std::string indicator_name(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::HV: return "hv";
    case IndicatorKind::Eps: return "eps";
    case IndicatorKind::R2: return "r2";
  }
  return "?";
}

IndicatorKind parse_indicator(std::string_view text) {
  if (text == "hv" || text == "HV") return IndicatorKind::HV;
  if (text == "eps" || text == "Eps" || text == "EPS") return IndicatorKind::Eps;
  if (text == "r2" || text == "R2") return IndicatorKind::R2;
  throw UsageError("unknown indicator '" + std::string(text) + "'");
}

void OCDParams::validate() const {
  if (window < 3) throw UsageError("OCD window must be at least 3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("OCD alpha must lie in (0, 1)");
  if (!(var_limit > 0.0)) throw UsageError("OCD var_limit must be positive");
  if (indicators.empty()) throw UsageError("OCD needs at least one indicator");
}

WindowTest test_window(std::span<const double> values, double var_limit, double alpha) {
  const std::size_t n = values.size();
  if (n < 3) throw UsageError("test_window: need at least 3 values");
  const double nd = static_cast<double>(n);

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= nd;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);

  WindowTest out;
  const boost::math::chi_squared chi2(nd - 1.0);
  out.variance_p = boost::math::cdf(chi2, ss / var_limit);
  out.variance_below_limit = out.variance_p < alpha;

  // Least-squares slope against generation offsets 0..n-1.
  const double t_mean = (nd - 1.0) / 2.0;
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i) - t_mean;
    stt += dt * dt;
    sty += dt * (values[i] - mean);
  }
  const double slope = sty / stt;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fitted = mean + slope * (static_cast<double>(i) - t_mean);
    rss += (values[i] - fitted) * (values[i] - fitted);
  }
  const double se = std::sqrt(rss / (nd - 2.0) / stt);
  // Equivalence test: the slope counts as zero when H0 |slope| >= tol is
  // rejected, tol being a drift of one var_limit standard deviation over the window.
  const double tol = std::sqrt(var_limit) / (nd - 1.0);
  const double excess = std::abs(slope) - tol;
  if (excess >= 0.0) {
    out.slope_p = 1.0;
  } else if (se == 0.0) {
    out.slope_p = 0.0;
  } else {
    const boost::math::students_t t_dist(nd - 2.0);
    out.slope_p = boost::math::cdf(t_dist, excess / se);
  }
  out.slope_is_zero = out.slope_p < alpha;
  return out;
}

ConvergenceDetector::ConvergenceDetector(OCDParams params) : params_(std::move(params)) {
  params_.validate();
  buffers_.resize(params_.indicators.size());
}

Decision ConvergenceDetector::update(std::span<const double> values) {
  if (values.size() != buffers_.size()) throw UsageError("ConvergenceDetector: wrong number of indicator values");
  for (const double v : values) {
    if (!std::isfinite(v)) throw UsageError("ConvergenceDetector: indicator values must be finite");
  }
  ++generations_;
  for (std::size_t i = 0; i < values.size(); ++i) {
    buffers_[i].push_back(values[i]);
    if (buffers_[i].size() > params_.window) buffers_[i].pop_front();
  }
  return assess();
}

Decision ConvergenceDetector::update_window(std::span<const std::vector<double>> rows) {
  if (rows.size() > params_.window) rows = rows.last(params_.window);
  for (auto& buf : buffers_) buf.clear();
  for (const auto& row : rows) {
    if (row.size() != buffers_.size()) throw UsageError("ConvergenceDetector: wrong number of indicator values");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i])) throw UsageError("ConvergenceDetector: indicator values must be finite");
      buffers_[i].push_back(row[i]);
    }
  }
  ++generations_;
  return assess();
}

Decision ConvergenceDetector::assess() {
  if (buffers_.front().size() < params_.window) {
    consecutive_hits_ = 0;
    return Decision::Continue;
  }

  bool all_variance = true;
  bool all_flat = true;
  std::vector<double> window(params_.window);
  for (const auto& buf : buffers_) {
    std::copy(buf.begin(), buf.end(), window.begin());
    const WindowTest t = test_window(window, params_.var_limit, params_.alpha);
    all_variance = all_variance && t.variance_below_limit;
    all_flat = all_flat && t.slope_is_zero;
  }
  consecutive_hits_ = (all_variance || all_flat) ? consecutive_hits_ + 1 : 0;
  return consecutive_hits_ >= 2 ? Decision::Converged : Decision::Continue;
}

StagnationDetector::StagnationDetector(std::size_t window, double tol) : window_(window), tol_(tol) {
  if (window_ < 1) throw UsageError("StagnationDetector: window must be positive");
  if (!(tol_ > 0.0)) throw UsageError("StagnationDetector: tolerance must be positive");
}

Decision StagnationDetector::update(double min, double mean, double max) {
  auto push = [this](std::deque<double>& d, double v) {
    d.push_back(v);
    if (d.size() > window_) d.pop_front();
  };
  push(min_, min);
  push(mean_, mean);
  push(max_, max);
  if (min_.size() < window_) return Decision::Continue;
  auto range = [](const std::deque<double>& d) {
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return *hi - *lo;
  };
  return range(min_) < tol_ && range(mean_) < tol_ && range(max_) < tol_ ? Decision::Converged
                                                                          : Decision::Continue;
}

}  // namespace deckbal
