#include "deckbal/variation.hpp"

#include <algorithm>
#include <cmath>

#include "deckbal/error.hpp"

namespace deckbal {

double sbx_spread(double u, double eta_c) {
  const double exponent = 1.0 / (eta_c + 1.0);
  if (u <= 0.5) return std::pow(2.0 * u, exponent);
  return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

std::pair<double, double> sbx_blend(double x1, double x2, double beta) {
  return {0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2), 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2)};
}

double polynomial_mutation_step(double x, double u, double eta_m, Bounds bounds) {
  const double exponent = 1.0 / (eta_m + 1.0);
  double y;
  if (u < 0.5) {
    const double delta = std::pow(2.0 * u, exponent) - 1.0;  // in [-1, 0)
    y = x + delta * (x - bounds.lo);
  } else {
    const double delta = 1.0 - std::pow(2.0 * (1.0 - u), exponent);  // in [0, 1)
    y = x + delta * (bounds.hi - x);
  }
  return std::clamp(y, bounds.lo, bounds.hi);
}

std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        const VariationParams& params, Bounds bounds, Rng& rng) {
  if (p1.size() != p2.size()) throw UsageError("sbx_crossover: parents differ in length");
  Genome c1(p1.begin(), p1.end());
  Genome c2(p2.begin(), p2.end());
  if (!rng.bernoulli(params.crossover_prob)) return {std::move(c1), std::move(c2)};
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (!rng.bernoulli(0.5)) continue;
    const double beta = sbx_spread(rng.uniform01(), params.eta_c);
    const auto [a, b] = sbx_blend(p1[i], p2[i], beta);
    c1[i] = std::clamp(a, bounds.lo, bounds.hi);
    c2[i] = std::clamp(b, bounds.lo, bounds.hi);
  }
  return {std::move(c1), std::move(c2)};
}

Genome polynomial_mutation(std::span<const double> genes, const VariationParams& params, Bounds bounds, Rng& rng) {
  Genome out(genes.begin(), genes.end());
  const double pm = params.mutation_prob_for(out.size());
  for (auto& x : out) {
    if (rng.bernoulli(pm)) x = polynomial_mutation_step(x, rng.uniform01(), params.eta_m, bounds);
  }
  return out;
}

}  // namespace deckbal
