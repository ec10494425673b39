#include "deckbal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>

#include "deckbal/error.hpp"
#include "deckbal/game.hpp"
#include "deckbal/serialize.hpp"

namespace deckbal {

double student_t_quantile(double p, double dof) {
  if (!(dof > 0.0)) throw UsageError("student_t_quantile: degrees of freedom must be positive");
  if (!(p > 0.0 && p < 1.0)) throw UsageError("student_t_quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::students_t(dof), p);
}

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw UsageError("sample_mean: empty sample");
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) throw UsageError("sample_sd: need at least 2 values");
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double empirical_quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw UsageError("empirical_quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw UsageError("empirical_quantile: q must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

CIResult ci_halfwidth(std::span<const double> samples, double alpha) {
  if (samples.size() < 2) throw UsageError("ci_halfwidth: need at least 2 samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("ci_halfwidth: alpha must lie in (0, 1)");
  CIResult out;
  out.n = samples.size();
  out.alpha = alpha;
  out.mean = sample_mean(samples);
  const double n = static_cast<double>(samples.size());
  const double sd = sample_sd(samples);
  out.halfwidth = sd == 0.0 ? 0.0 : student_t_quantile(1.0 - alpha / 2.0, n - 1.0) * sd / std::sqrt(n);
  return out;
}

SampleSizeTable sample_size_study(const MetricSampler& sampler, std::span<const std::size_t> sizes,
                                  std::size_t repeats, double alpha, std::uint64_t seed) {
  if (repeats < 2) throw UsageError("sample_size_study: need at least 2 repeats");
  const Rng master(seed);
  SampleSizeTable table;
  for (const std::size_t size : sizes) {
    if (size < 2) throw UsageError("sample_size_study: sample sizes must be at least 2");
    std::vector<std::string> names;
    std::vector<std::vector<double>> widths;
    for (std::size_t r = 0; r < repeats; ++r) {
      Rng rng = master.substream(mix_seed(size, r));
      const auto draws = sampler(size, rng);
      if (r == 0) {
        for (const auto& d : draws) names.push_back(d.metric);
        widths.resize(draws.size());
      }
      if (draws.size() != names.size()) throw UsageError("sample_size_study: sampler changed its metric set");
      for (std::size_t k = 0; k < draws.size(); ++k) {
        widths[k].push_back(ci_halfwidth(draws[k].values, alpha).halfwidth);
      }
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      table.push_back({size, names[k], empirical_quantile(widths[k], 0.95)});
    }
  }
  return table;
}

MetricSampler game_metric_sampler(const Deck& deck) {
  return [deck](std::size_t size, Rng& rng) {
    SimulateOptions opts;
    opts.keep_games = true;
    const auto summary = simulate(deck, Policies{}, size, rng.next_u64(), opts);
    std::vector<MetricSamples> out{{"win_rate4", {}}, {"mean_tc", {}}, {"mean_tightness", {}}};
    for (auto& m : out) m.values.reserve(size);
    for (const auto& g : summary.per_game) {
      out[0].values.push_back(g.outcome == Outcome::Win4 ? 1.0 : 0.0);
      out[1].values.push_back(static_cast<double>(g.tc));
      out[2].values.push_back(g.tightness);
    }
    return out;
  };
}

void write_sample_size_csv(const SampleSizeTable& table, std::ostream& out) {
  out << "size,metric,halfwidth_q95\n";
  for (const auto& row : table) {
    out << row.sample_size << ',' << row.metric << ',' << format_double(row.halfwidth_q95) << '\n';
  }
}

std::vector<double> playtest_feasibility(std::span<const double> sd, std::size_t players, std::size_t games_each,
                                         double alpha) {
  const std::size_t n = players * games_each;
  if (n < 2) throw UsageError("playtest_feasibility: need at least 2 games in total");
  const double q = student_t_quantile(1.0 - alpha / 2.0, static_cast<double>(n - 1));
  std::vector<double> out;
  out.reserve(sd.size());
  for (const double s : sd) out.push_back(q * s / std::sqrt(static_cast<double>(n)));
  return out;
}

}  // namespace deckbal
