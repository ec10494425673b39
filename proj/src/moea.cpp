#include "deckbal/moea.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "deckbal/error.hpp"
#include "deckbal/hypervolume.hpp"
#include "deckbal/indicators.hpp"
#include "deckbal/pareto.hpp"

namespace deckbal {

void EAConfig::validate() const {
  if (mu < 2) throw UsageError("EAConfig: mu must be at least 2");
  if (max_evals <= mu) throw UsageError("EAConfig: max_evals must exceed mu");
  shape.validate();
  ocd.validate();
  if (objective == ObjectiveKind::SimulationB && games < 1) throw UsageError("EAConfig: games must be positive");
  if (stagnation_window < 1) throw UsageError("EAConfig: stagnation_window must be positive");
  if (max_variation_tries < 1) throw UsageError("EAConfig: max_variation_tries must be positive");
}

std::string stop_reason_name(StopReason reason) {
  return reason == StopReason::Converged ? "converged" : "budget";
}

Evaluator make_evaluator(ObjectiveKind kind, std::size_t games, Policies policies) {
  switch (kind) {
    case ObjectiveKind::DominanceD:
      return [](const Deck& d, std::uint64_t) { return dominance_objective(d); };
    case ObjectiveKind::SurrogateS:
      return [](const Deck& d, std::uint64_t) { return surrogate_objectives(d); };
    case ObjectiveKind::SimulationB:
      return [games, policies](const Deck& d, std::uint64_t seed) {
        return balance_objectives(simulate(d, policies, games, seed));
      };
  }
  throw UsageError("make_evaluator: unknown objective");
}

std::size_t select_for_removal(std::span<const Individual> pool,
                               std::span<const double> fixed_ref) {
  if (pool.empty()) throw UsageError("select_for_removal: empty pool");
  std::vector<Point> points;
  points.reserve(pool.size());
  for (const auto& ind : pool) points.push_back(ind.objectives);

  const auto ranks = nondominated_sort(points);
  const int worst = *std::max_element(ranks.begin(), ranks.end());
  std::vector<std::size_t> last_front;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (ranks[i] == worst) last_front.push_back(i);
  }
  if (last_front.size() == 1) return last_front.front();

  const std::size_t m = points.front().size();
  Point ref(m, -std::numeric_limits<double>::infinity());
  if (fixed_ref.empty()) {
    for (const auto& p : points) {
      for (std::size_t j = 0; j < m; ++j) ref[j] = std::max(ref[j], p[j]);
    }
    for (auto& r : ref) r += 1.0;
  } else {
    if (fixed_ref.size() != m) throw UsageError("select_for_removal: reference dimension mismatch");
    ref.assign(fixed_ref.begin(), fixed_ref.end());
  }

  std::vector<Point> front;
  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < last_front.size(); ++k) {
    const auto& p = points[last_front[k]];
    bool in = true;
    for (std::size_t j = 0; j < m; ++j) in = in && p[j] < ref[j];
    if (in) {
      front.push_back(p);
      inside.push_back(k);
    }
  }
  std::vector<double> contrib(last_front.size(), 0.0);
  if (!front.empty()) {
    const auto c = hv_contributions(front, ref);
    for (std::size_t k = 0; k < inside.size(); ++k) contrib[inside[k]] = c[k];
  }

  std::size_t pick = 0;
  for (std::size_t k = 1; k < last_front.size(); ++k) {
    const bool smaller = contrib[k] < contrib[pick];
    const bool tie_younger = contrib[k] == contrib[pick] &&
                             pool[last_front[k]].eval_index > pool[last_front[pick]].eval_index;
    if (smaller || tie_younger) pick = k;
  }
  return last_front[pick];
}

std::size_t select_worst_fitness(std::span<const Individual> pool) {
  if (pool.empty()) throw UsageError("select_worst_fitness: empty pool");
  std::size_t pick = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double a = pool[i].objectives.at(0);
    const double b = pool[pick].objectives.at(0);
    if (a > b || (a == b && pool[i].eval_index < pool[pick].eval_index)) pick = i;
  }
  return pick;
}

namespace {

constexpr std::uint64_t kEvalStreamTag = 0xE7A1'5EEDULL;

// State shared by both loops: population, RNG, evaluation accounting.
class RunCore {
 public:
  RunCore(const EAConfig& config, const Evaluator& evaluate, const RunHooks& hooks)
      : config_(config), evaluate_(evaluate), hooks_(hooks), rng_(config.seed),
        bounds_{config.shape.lo, config.shape.hi},
        eval_seed_(mix_seed(config.seed, kEvalStreamTag)) {}

  void initialize() {
    population_.reserve(config_.mu + 1);
    for (std::size_t i = 0; i < config_.mu; ++i) {
      const Deck deck = random_valid_deck(config_.shape, rng_);
      population_.push_back(evaluate_deck(deck));
    }
    notify();
  }

  Individual make_offspring() {
    const std::size_t mu = population_.size();
    const auto i = static_cast<std::size_t>(rng_.below(mu));
    auto j = static_cast<std::size_t>(rng_.below(mu - 1));
    if (j >= i) ++j;
    const auto& p1 = population_[i].genome;
    const auto& p2 = population_[j].genome;
    for (std::size_t attempt = 0; attempt < config_.max_variation_tries; ++attempt) {
      auto children = sbx_crossover(p1, p2, config_.variation, bounds_, rng_);
      Genome child = polynomial_mutation(children.first, config_.variation, bounds_, rng_);
      Deck deck = genome_to_deck(child, config_.shape);
      if (deck_is_valid(deck).valid) return evaluate_deck(deck);
    }
    return evaluate_deck(random_valid_deck(config_.shape, rng_));
  }

  void notify() const {
    if (hooks_.on_step) hooks_.on_step(population_, n_evals_);
  }

  std::vector<Individual>& population() { return population_; }
  std::size_t evals() const { return n_evals_; }
  const EAConfig& config() const { return config_; }

  RunResult finish(StopReason reason, std::vector<std::string> labels, std::vector<TraceEntry> trace) {
    RunResult out;
    out.config = config_;
    out.final_population = population_;
    std::vector<Point> points;
    for (const auto& ind : population_) points.push_back(ind.objectives);
    for (const auto i : nondominated_indices(points)) out.front.push_back(population_[i]);
    out.n_evals = n_evals_;
    out.stop_reason = reason;
    out.trace_labels = std::move(labels);
    out.indicator_trace = std::move(trace);
    out.seed = config_.seed;
    return out;
  }

 private:
  Individual evaluate_deck(const Deck& deck) {
    if (!deck_is_valid(deck).valid) throw std::logic_error("optimizer produced an invalid deck");
    const std::uint64_t index = n_evals_;
    Individual ind;
    ind.genome = deck_to_genome(deck);
    ind.eval_index = index;
    try {
      ind.objectives = evaluate_(deck, mix_seed(eval_seed_, index));
    } catch (const std::exception& e) {
      throw std::runtime_error("run seed " + std::to_string(config_.seed) + ", evaluation " +
                               std::to_string(index) + ": " + e.what());
    }
    ++n_evals_;
    return ind;
  }

  const EAConfig& config_;
  const Evaluator& evaluate_;
  const RunHooks& hooks_;
  Rng rng_;
  Bounds bounds_;
  std::uint64_t eval_seed_;
  std::vector<Individual> population_;
  std::size_t n_evals_ = 0;
};

// Non-dominated union of every objective vector evaluated in a run.
class Archive {
 public:
  void add(const Point& p) {
    for (const auto& q : points_) {
      if (q == p || dominates(q, p)) return;
    }
    std::erase_if(points_, [&](const Point& q) { return dominates(p, q); });
    points_.push_back(p);
  }
  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
};

std::vector<Point> population_front(std::span<const Individual> pop) {
  std::vector<Point> points;
  points.reserve(pop.size());
  for (const auto& ind : pop) points.push_back(ind.objectives);
  return nondominated_subset(points);
}

std::vector<double> indicator_values(const std::vector<Point>& front, const Archive& archive,
                                     const Normalization& norm, const std::vector<IndicatorKind>& kinds) {
  const FrontSet reference(norm.apply(std::span<const Point>(archive.points())));
  const FrontSet current(norm.apply(std::span<const Point>(front)));
  const IndicatorValues v = normalized_indicators(current, reference);
  std::vector<double> out;
  out.reserve(kinds.size());
  for (const auto k : kinds) {
    out.push_back(k == IndicatorKind::HV ? v.hv : (k == IndicatorKind::Eps ? v.eps : v.r2));
  }
  return out;
}

}  // namespace

RunResult sms_emoa_run(const EAConfig& config, const Evaluator& evaluate, const RunHooks& hooks) {
  config.validate();
  RunCore core(config, evaluate, hooks);
  core.initialize();

  const auto& kinds = config.ocd.indicators;
  std::vector<std::string> labels;
  for (const auto k : kinds) labels.push_back(indicator_name(k));

  ConvergenceDetector detector(config.ocd);
  std::deque<std::vector<Point>> window;  // population fronts of the last `window` generations
  std::vector<TraceEntry> trace;
  std::size_t generation = 0;
  StopReason reason = StopReason::Budget;

  while (core.evals() < config.max_evals) {
    auto& pop = core.population();
    pop.push_back(core.make_offspring());
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(select_for_removal(pop, config.removal_reference)));
    core.notify();

    if ((core.evals() - config.mu) % config.mu != 0) continue;
    ++generation;
    window.push_back(population_front(pop));
    if (window.size() > config.ocd.window) window.pop_front();

    // Reference and [1, 2] map come from the fronts inside the window.
    Archive reference;
    std::vector<FrontSet> fit_sets;
    for (const auto& f : window) {
      fit_sets.emplace_back(f);
      for (const auto& p : f) reference.add(p);
    }
    const Normalization norm = fit_normalization(fit_sets);
    std::vector<std::vector<double>> rows;
    for (const auto& f : window) rows.push_back(indicator_values(f, reference, norm, kinds));
    trace.push_back({generation, core.evals(), rows.back()});

    const Decision decision = detector.update_window(rows);
    if (config.convergence_stop && decision == Decision::Converged) {
      reason = StopReason::Converged;
      break;
    }
  }
  return core.finish(reason, std::move(labels), std::move(trace));
}

RunResult so_ea_run(const EAConfig& config, const Evaluator& evaluate, const RunHooks& hooks) {
  config.validate();
  RunCore core(config, evaluate, hooks);
  core.initialize();
  if (core.population().front().objectives.size() != 1) {
    throw UsageError("so_ea_run: evaluator must return a single objective");
  }

  StagnationDetector stagnation(config.stagnation_window, config.stagnation_tol);
  std::vector<TraceEntry> trace;
  std::size_t generation = 0;
  StopReason reason = StopReason::Budget;

  while (core.evals() < config.max_evals) {
    auto& pop = core.population();
    pop.push_back(core.make_offspring());
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(select_worst_fitness(pop)));
    core.notify();

    if ((core.evals() - config.mu) % config.mu != 0) continue;
    ++generation;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (const auto& ind : pop) {
      const double f = ind.objectives[0];
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      sum += f;
    }
    const double mean = sum / static_cast<double>(pop.size());
    trace.push_back({generation, core.evals(), {lo, mean, hi}});
    if (config.convergence_stop && stagnation.update(lo, mean, hi) == Decision::Converged) {
      reason = StopReason::Converged;
      break;
    }
  }
  return core.finish(reason, {"min", "mean", "max"}, std::move(trace));
}

RunResult optimize(const EAConfig& config, const RunHooks& hooks) {
  const Evaluator evaluate = make_evaluator(config.objective, config.games);
  if (config.objective == ObjectiveKind::DominanceD) return so_ea_run(config, evaluate, hooks);
  return sms_emoa_run(config, evaluate, hooks);
}

}  // namespace deckbal
