#include <doctest.h>

#include "deckbal/eaf.hpp"
#include "deckbal/error.hpp"
#include "deckbal/pareto.hpp"
#include "deckbal/random.hpp"

using namespace deckbal;

namespace {

RunGroup group(std::vector<std::vector<Point>> fronts) {
  RunGroup g;
  for (auto& f : fronts) g.fronts.emplace_back(std::span<const Point>(f));
  return g;
}

std::vector<Point> random_front(Rng& rng, double shift) {
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) {
    const double x = rng.uniform(0, 1);
    pts.push_back({x + shift, 1.0 - x + rng.uniform(0, 0.3) + shift});
  }
  return nondominated_subset(pts);
}

}  // namespace

TEST_CASE("EAF values") {
  const RunGroup one = group({{{1, 2}, {2, 1}}});
  CHECK(eaf_value(one, Point{3, 3}) == 1.0);
  CHECK(eaf_value(one, Point{0, 0}) == 0.0);
  CHECK(eaf_value(one, Point{1, 2}) == 1.0);
  const RunGroup two = group({{{1, 1}}, {{3, 3}}});
  CHECK(eaf_value(two, Point{2, 2}) == 0.5);
}

TEST_CASE("attainment surfaces") {
  const std::vector<Point> f{{1, 3}, {2, 2}, {3, 1}};
  CHECK(attainment_surface(group({f}), 1.0).points == f);
  CHECK(attainment_surface(group({f}), 0.5).points == f);
  CHECK(attainment_surface(group({f, f, f}), 0.5).points == f);
  CHECK(attainment_surface(group({{{0, 1}}, {{1, 0}}}), 1.0).points == std::vector<Point>{{1, 1}});
  CHECK_THROWS_AS(attainment_surface(group({f}), 0.0), UsageError);
  CHECK_THROWS_AS(attainment_surface(group({f}), 1.5), UsageError);
}

TEST_CASE("surfaces are nested across levels") {
  Rng rng(4);
  std::vector<std::vector<Point>> fronts;
  for (int r = 0; r < 6; ++r) fronts.push_back(random_front(rng, 0.0));
  const RunGroup g = group(fronts);
  const auto low = attainment_surface(g, 1.0 / 6.0);
  const auto high = attainment_surface(g, 1.0);
  for (const auto& h : high.points) {
    bool covered = false;
    for (const auto& l : low.points) covered = covered || weakly_dominates(l, h);
    CHECK(covered);
  }
  for (const auto& p : attainment_surface(g, 0.5).points) CHECK(eaf_value(g, p) >= 0.5);
}

TEST_CASE("identical groups give a zero statistic") {
  Rng rng(5);
  std::vector<std::vector<Point>> fronts;
  for (int r = 0; r < 5; ++r) fronts.push_back(random_front(rng, 0.0));
  const RunGroup g = group(fronts);
  const auto res = eaf_test(g, g, 500, 0.05, 1);
  CHECK(res.statistic == 0.0);
  CHECK_FALSE(res.reject);
  CHECK(res.p_value == 1.0);
}

TEST_CASE("separated groups give statistic one and reject") {
  Rng rng(6);
  std::vector<std::vector<Point>> a, b;
  const auto fa = random_front(rng, 0.0);
  const auto fb = random_front(rng, 5.0);
  for (int r = 0; r < 6; ++r) {
    a.push_back(fa);
    b.push_back(fb);
  }
  const auto res = eaf_test(group(a), group(b), 2000, 0.05, 1);
  CHECK(res.statistic == 1.0);
  CHECK(res.reject);
  CHECK(res.p_value < 0.05);
  CHECK(res.statistic > res.critical_value);
}

TEST_CASE("test is symmetric, deterministic and consistent") {
  Rng rng(7);
  std::vector<std::vector<Point>> a, b;
  for (int r = 0; r < 4; ++r) {
    a.push_back(random_front(rng, 0.0));
    b.push_back(random_front(rng, 0.1));
  }
  const auto ab = eaf_test(group(a), group(b), 1000, 0.05, 9);
  const auto ba = eaf_test(group(b), group(a), 1000, 0.05, 9);
  const auto again = eaf_test(group(a), group(b), 1000, 0.05, 9);
  CHECK(ab.statistic == ba.statistic);
  CHECK(ab.p_value == again.p_value);
  CHECK(ab.critical_value == again.critical_value);
  CHECK((ab.statistic >= 0.0 && ab.statistic <= 1.0));
  CHECK(ab.reject == (ab.statistic > ab.critical_value));
  CHECK(ab.reject == (ab.p_value < 0.05));
}

TEST_CASE("too few runs are rejected") {
  const RunGroup one = group({{{1, 1}}});
  CHECK_THROWS_AS(eaf_test(one, one, 100, 0.05, 1), UsageError);
}
