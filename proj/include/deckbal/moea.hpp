#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "deckbal/deck.hpp"
#include "deckbal/game.hpp"
#include "deckbal/objectives.hpp"
#include "deckbal/ocd.hpp"
#include "deckbal/variation.hpp"

namespace deckbal {

struct Individual {
  Genome genome;
  ObjectiveVector objectives;
  std::uint64_t eval_index = 0;  // birth order within the run

  friend bool operator==(const Individual&, const Individual&) = default;
};

struct EAConfig {
  std::size_t mu = 10;
  ObjectiveKind objective = ObjectiveKind::SurrogateS;
  DeckShape shape;
  VariationParams variation;
  std::size_t max_evals = 20'000;
  std::uint64_t seed = 1;
  OCDParams ocd;
  std::size_t games = 2'000;            // games per evaluation, SimulationB only
  bool convergence_stop = true;         // false: always run to max_evals
  double stagnation_tol = 1e-9;         // single-objective stopping tolerance
  std::size_t stagnation_window = 500;  // generations of unchanged min/mean/max
  std::size_t max_variation_tries = 1'000;
  std::vector<double> removal_reference;  // empty: pool max + 1 per objective

  void validate() const;
};

enum class StopReason { Converged, Budget };

std::string stop_reason_name(StopReason reason);

/// One entry per generation (mu evaluations). Multi-objective runs record
/// (hv, eps, r2) of the population front against the run archive once the
/// convergence window has filled; single-objective runs record the
/// population's (min, mean, max) fitness from the first generation on.
struct TraceEntry {
  std::size_t generation = 0;
  std::size_t evals = 0;
  std::vector<double> values;
};

struct RunResult {
  EAConfig config;
  std::vector<Individual> final_population;
  std::vector<Individual> front;  // non-dominated members of final_population
  std::size_t n_evals = 0;
  StopReason stop_reason = StopReason::Budget;
  std::vector<std::string> trace_labels;
  std::vector<TraceEntry> indicator_trace;
  std::uint64_t seed = 0;
};

/// Objective function of a deck. `stream_seed` keys any randomness the
/// evaluation needs; deterministic evaluators ignore it.
using Evaluator = std::function<ObjectiveVector(const Deck&, std::uint64_t stream_seed)>;

Evaluator make_evaluator(ObjectiveKind kind, std::size_t games = 2'000, Policies policies = {});

struct RunHooks {
  /// Called after initialization and after every replacement step.
  std::function<void(std::span<const Individual> population, std::size_t evals)> on_step;
};

/// Index of the pool member a steady-state multi-objective step discards:
/// worst non-dominated rank first, then the smallest hypervolume
/// contribution within that rank (reference: pool maximum + 1 per
/// objective), then the youngest.
/// Empty fixed_ref selects the adaptive reference (pool max + 1). With a
/// fixed reference, points outside it contribute zero volume.
std::size_t select_for_removal(std::span<const Individual> pool,
                               std::span<const double> fixed_ref = {});

/// Single-objective counterpart: largest fitness, ties broken by the oldest.
std::size_t select_worst_fitness(std::span<const Individual> pool);

RunResult sms_emoa_run(const EAConfig& config, const Evaluator& evaluate, const RunHooks& hooks = {});
RunResult so_ea_run(const EAConfig& config, const Evaluator& evaluate, const RunHooks& hooks = {});

/// Builds the evaluator for config.objective and dispatches to the
/// single- or multi-objective loop.
RunResult optimize(const EAConfig& config, const RunHooks& hooks = {});

}  // namespace deckbal
