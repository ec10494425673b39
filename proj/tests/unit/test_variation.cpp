#include <doctest.h>

#include <cmath>

#include "deckbal/random.hpp"
#include "deckbal/variation.hpp"

using namespace deckbal;

TEST_CASE("SBX spread factor") {
  CHECK(sbx_spread(0.5, 20.0) == 1.0);
  CHECK(sbx_spread(0.8, 20.0) == doctest::Approx(std::pow(2.5, 1.0 / 21.0)));
  CHECK(sbx_spread(0.8, 20.0) == doctest::Approx(1.0446).epsilon(1e-4));
  CHECK(sbx_spread(0.0, 20.0) == 0.0);
}

TEST_CASE("SBX blend with unit spread returns the parents") {
  const auto [c1, c2] = sbx_blend(3.0, 7.0, 1.0);
  CHECK(c1 == 3.0);
  CHECK(c2 == 7.0);
}

TEST_CASE("SBX blend preserves the gene mean") {
  Rng rng(1);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x1 = rng.uniform(1, 10), x2 = rng.uniform(1, 10);
    const auto [c1, c2] = sbx_blend(x1, x2, sbx_spread(rng.uniform01(), 20.0));
    worst = std::max(worst, std::abs((c1 + c2) - (x1 + x2)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("polynomial mutation step") {
  const Bounds b{1, 10};
  CHECK(polynomial_mutation_step(5.5, 0.5, 15.0, b) == 5.5);
  // Centre gene, u = 0.9: delta = 1 - 0.2^(1/16) of the distance to the upper bound.
  const double delta = 1.0 - std::pow(0.2, 1.0 / 16.0);
  CHECK(delta == doctest::Approx(0.0957).epsilon(1e-3));
  CHECK(polynomial_mutation_step(5.5, 0.9, 15.0, b) == doctest::Approx(5.5 + delta * 4.5));
  CHECK(polynomial_mutation_step(1.0, 0.0, 15.0, b) == 1.0);
  CHECK(polynomial_mutation_step(10.0, 0.999999, 15.0, b) == 10.0);
}

TEST_CASE("polynomial mutation never leaves the bounds") {
  Rng rng(2);
  const Bounds b{1, 10};
  VariationParams p;
  p.mutation_prob = 1.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.bernoulli(0.5) ? 1.0 : 10.0;
    const double y = polynomial_mutation_step(x, rng.uniform01(), 15.0, b);
    REQUIRE((y >= 1.0 && y <= 10.0));
  }
  const Genome g(64, 10.0);
  for (int i = 0; i < 100; ++i) {
    for (const double y : polynomial_mutation(g, p, b, rng)) REQUIRE((y >= 1.0 && y <= 10.0));
  }
}

TEST_CASE("SBX crossover respects pc and bounds") {
  Rng rng(3);
  const Bounds b{1, 10};
  Genome p1(40), p2(40);
  for (auto& x : p1) x = rng.uniform(1, 10);
  for (auto& x : p2) x = rng.uniform(1, 10);

  VariationParams none;
  none.crossover_prob = 0.0;
  const auto [a, c] = sbx_crossover(p1, p2, none, b, rng);
  CHECK(a == p1);
  CHECK(c == p2);

  const VariationParams always;
  int changed = 0;
  for (int t = 0; t < 100; ++t) {
    const auto [c1, c2] = sbx_crossover(p1, p2, always, b, rng);
    for (std::size_t i = 0; i < p1.size(); ++i) {
      REQUIRE((c1[i] >= 1.0 && c1[i] <= 10.0));
      REQUIRE((c2[i] >= 1.0 && c2[i] <= 10.0));
      changed += c1[i] != p1[i];
    }
  }
  // About half the genes take part in each crossover.
  CHECK(changed > 1500);
  CHECK(changed < 2500);
}

TEST_CASE("default mutation probability is one over the genome length") {
  const VariationParams p;
  CHECK(p.mutation_prob_for(128) == 1.0 / 128.0);
  Rng rng(4);
  const Genome g(128, 5.0);
  int mutated = 0;
  for (int t = 0; t < 1000; ++t) {
    for (const double y : polynomial_mutation(g, p, Bounds{1, 10}, rng)) mutated += y != 5.0;
  }
  CHECK(std::abs(mutated - 1000) < 120);
}
