#include <doctest.h>

#include <cmath>

#include "deckbal/deck.hpp"
#include "deckbal/error.hpp"
#include "deckbal/random.hpp"
#include "deckbal/stats.hpp"

using namespace deckbal;

TEST_CASE("t quantiles match the table") {
  // Two-sided 95% critical values for dof 1..10, 20, 30.
  const std::pair<double, double> table[] = {{1, 12.7062}, {2, 4.3027}, {3, 3.1824}, {4, 2.7764}, {5, 2.5706},
                                             {6, 2.4469},  {7, 2.3646}, {8, 2.3060}, {9, 2.2622}, {10, 2.2281},
                                             {20, 2.0860}, {29, 2.0452}};
  for (const auto& [dof, t] : table) CHECK(student_t_quantile(0.975, dof) == doctest::Approx(t).epsilon(1e-4));
}

TEST_CASE("CI halfwidth") {
  CHECK(ci_halfwidth(std::vector<double>{3, 3, 3}).halfwidth == 0.0);
  // n = 4 with sample sd 2.
  const std::vector<double> s{-std::sqrt(3.0), -std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0)};
  CHECK(sample_sd(s) == doctest::Approx(2.0));
  CHECK(ci_halfwidth(s, 0.05).halfwidth == doctest::Approx(3.1824).epsilon(1e-4));
  CHECK_THROWS_AS(ci_halfwidth(std::vector<double>{1.0}), UsageError);
}

TEST_CASE("empirical quantile interpolates linearly") {
  const std::vector<double> xs{4, 1, 3, 2};
  CHECK(empirical_quantile(xs, 0.0) == 1.0);
  CHECK(empirical_quantile(xs, 1.0) == 4.0);
  CHECK(empirical_quantile(xs, 0.5) == 2.5);
  CHECK(empirical_quantile(xs, 0.95) == doctest::Approx(3.85));
}

TEST_CASE("sample-size study on a zero-variance sampler") {
  const MetricSampler flat = [](std::size_t size, Rng&) {
    return std::vector<MetricSamples>{{"x", std::vector<double>(size, 1.0)}};
  };
  const std::size_t sizes[] = {10, 100};
  for (const auto& row : sample_size_study(flat, sizes, 20, 0.05, 1)) CHECK(row.halfwidth_q95 == 0.0);
}

TEST_CASE("sample-size study scales as one over root n") {
  const MetricSampler iid = [](std::size_t size, Rng& rng) {
    MetricSamples m{"u", {}};
    for (std::size_t i = 0; i < size; ++i) m.values.push_back(rng.uniform01());
    return std::vector<MetricSamples>{m};
  };
  const std::size_t sizes[] = {100, 400, 1600, 6400};
  const auto table = sample_size_study(iid, sizes, 100, 0.05, 3);
  REQUIRE(table.size() == 4);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : table) {
    const double x = std::log(static_cast<double>(r.sample_size)), y = std::log(r.halfwidth_q95);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(table == sample_size_study(iid, sizes, 100, 0.05, 3));
}

TEST_CASE("game sampler reports the three metrics") {
  Rng rng(5);
  const Deck deck = random_valid_deck(DeckShape{}, rng);
  const auto sampler = game_metric_sampler(deck);
  Rng r(1);
  const auto draws = sampler(50, r);
  REQUIRE(draws.size() == 3);
  for (const auto& d : draws) CHECK(d.values.size() == 50);
  CHECK(draws[0].metric == "win_rate4");
}

TEST_CASE("playtest feasibility") {
  const std::vector<double> sd{0.0, 0.5};
  const auto a = playtest_feasibility(sd, 100, 10);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == doctest::Approx(student_t_quantile(0.975, 999) * 0.5 / std::sqrt(1000.0)));
  const auto b = playtest_feasibility(sd, 50, 10);
  CHECK(b[1] / a[1] == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}
