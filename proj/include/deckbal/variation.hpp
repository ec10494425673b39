#pragma once

#include <optional>
#include <span>
#include <utility>

#include "deckbal/deck.hpp"
#include "deckbal/random.hpp"

namespace deckbal {

struct VariationParams {
  double crossover_prob = 1.0;
  std::optional<double> mutation_prob;  // per gene; defaults to 1/n
  double eta_c = 20.0;
  double eta_m = 15.0;

  double mutation_prob_for(std::size_t genes) const {
    return mutation_prob.value_or(genes ? 1.0 / static_cast<double>(genes) : 0.0);
  }
};

struct Bounds {
  double lo = 1.0;
  double hi = 10.0;
};

/// SBX spread factor for a uniform draw `u` in [0, 1).
double sbx_spread(double u, double eta_c);

/// Children 0.5[(1+b)x1 + (1-b)x2] and 0.5[(1-b)x1 + (1+b)x2], unclipped.
std::pair<double, double> sbx_blend(double x1, double x2, double beta);

/// Polynomial mutation of one gene for draw `u`: moves toward `lo` by a
/// fraction of (x - lo) when u < 0.5, toward `hi` by a fraction of (hi - x)
/// otherwise. The result always stays in [lo, hi].
double polynomial_mutation_step(double x, double u, double eta_m, Bounds bounds);

/// Simulated binary crossover. With probability crossover_prob the pair is
/// recombined; each gene then takes the SBX blend with probability 0.5.
std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        const VariationParams& params, Bounds bounds, Rng& rng);

Genome polynomial_mutation(std::span<const double> genes, const VariationParams& params, Bounds bounds, Rng& rng);

}  // namespace deckbal
