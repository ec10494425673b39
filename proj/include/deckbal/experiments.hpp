#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "deckbal/deck.hpp"
#include "deckbal/eaf.hpp"
#include "deckbal/indicators.hpp"
#include "deckbal/moea.hpp"
#include "deckbal/objectives.hpp"
#include "deckbal/ocd.hpp"

namespace deckbal {

struct Approach {
  ObjectiveKind objective = ObjectiveKind::SurrogateS;
  std::size_t mu = 10;

  std::string label() const;  // e.g. "S10"
  static Approach parse(const std::string& label);

  friend bool operator==(const Approach&, const Approach&) = default;
};

struct ExperimentConfig {
  std::vector<Approach> approaches{{ObjectiveKind::SimulationB, 10}, {ObjectiveKind::SimulationB, 100},
                                   {ObjectiveKind::DominanceD, 10},  {ObjectiveKind::DominanceD, 100},
                                   {ObjectiveKind::SurrogateS, 10},  {ObjectiveKind::SurrogateS, 100}};
  std::size_t runs = 100;         // per approach
  std::size_t games = 2'000;      // per evaluation while optimizing under B
  std::size_t eval_games = 2'000; // per deck when re-evaluating collected decks
  DeckShape shape;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir;  // empty: keep everything in memory
  std::size_t max_evals = 20'000;
  bool convergence_stop = true;
  std::size_t stagnation_window = 500;  // generations, single-objective runs
  OCDParams ocd;
  std::size_t permutations = 10'000;
  double alpha = 0.05;
  double level = 0.5;           // attainment level of the "_50" sets
  unsigned workers = 0;         // 0: hardware concurrency
  std::vector<std::filesystem::path> reference_decks;
  bool rescale_reference = false;
  std::size_t synthetic_reference = 0;  // synthetic stand-in decks to add

  void validate() const;
};

/// Flat `key = value` text; `#` starts a comment. Unknown keys are errors.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical text of the result-relevant keys (output_dir and workers excluded).
std::string canonical_text(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

/// Seed of run `index` of `approach`.
std::uint64_t run_seed(std::uint64_t master_seed, const Approach& approach, std::size_t index);

struct CollectedDeck {
  std::size_t run = 0;
  Genome genome;
  ObjectiveVector objectives;  // under the approach's own objective
  ObjectiveVector balance;     // re-evaluated game objectives
};

struct RunInfo {
  std::uint64_t seed = 0;
  std::size_t n_evals = 0;
  std::string stop_reason;
  std::string error;  // empty when the run succeeded
};

struct ApproachResult {
  Approach approach;
  std::vector<RunInfo> runs;
  std::vector<CollectedDeck> decks;
  std::vector<Point> union_points;  // game objectives of every collected deck
  FrontSet pareto;                  // non-dominated subset of the union
  FrontSet surface;                 // attainment surface at config.level
  bool complete = true;

  std::string label() const { return approach.label(); }
  RunGroup run_group() const;       // per-run fronts in game-objective space
};

struct IndicatorRow {
  std::string set;  // "<label>_p" or "<label>_<level%>"
  IndicatorValues values;
  std::optional<IndicatorValues> run_mean;       // over per-run fronts
  std::optional<IndicatorValues> run_halfwidth;  // t-based, when runs >= 2
  int rank = 0;                                  // non-dominated rank of (hv, eps, r2)
};

struct EAFComparison {
  std::string a;
  std::string b;
  EAFTestResult result;
};

struct SetDominance {
  std::string dominating;
  std::string dominated;
};

struct ReferenceDeckEntry {
  std::string name;
  bool synthetic = false;
  std::string error;  // non-empty: the deck could not be evaluated
  double dominance = 0.0;
  ObjectiveVector balance;
  Point normalized;
  std::vector<std::string> dominated_by;  // sets with a point dominating the deck
  std::vector<std::string> dominates;     // sets with a point the deck dominates
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t config_hash = 0;
  std::uint64_t eval_seed = 0;
  std::vector<ApproachResult> approaches;
  Normalization normalization;
  FrontSet reference_front;  // normalized non-dominated union over all approaches
  std::vector<IndicatorRow> indicators;
  std::vector<EAFComparison> eaf_tests;
  std::vector<SetDominance> dominance;
  std::vector<ReferenceDeckEntry> reference_decks;
};

/// Runs every approach config.runs times, re-evaluates each collected deck
/// under the game objectives with one shared seed, then computes fronts,
/// attainment surfaces, normalized indicators, pairwise attainment tests and
/// set-dominance relations. Writes artifacts when output_dir is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct NamedDeck {
  std::string name;
  std::optional<Deck> deck;  // empty: loading failed, see error
  std::string error;
  bool synthetic = false;
};

/// Places external decks into the report's normalized game-objective space.
void compare_to_reference_decks(ExperimentReport& report, const std::vector<NamedDeck>& decks,
                                std::size_t games, std::uint64_t seed);

/// Valid deck whose dominance objective equals `target` rounded to the 1/K
/// grid, found by single-gene local search from a random deck.
Deck synthesize_deck(const DeckShape& shape, double target, Rng& rng, std::size_t max_steps = 500'000);

/// Stand-ins for unavailable commercial decks: one near-optimal deck and
/// the rest heavily dominated, scaled to the shape's card count.
std::vector<NamedDeck> synthetic_reference_decks(const DeckShape& shape, std::size_t count, std::uint64_t seed);

nlohmann::json to_json(const ExperimentReport& report);

/// Writes report.json, set CSVs and manifest.json below config.output_dir.
void write_report(const ExperimentReport& report);

}  // namespace deckbal
