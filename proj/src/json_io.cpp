#include "deckbal/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "deckbal/serialize.hpp"

namespace deckbal {

using nlohmann::json;

json to_json(const DeckShape& shape) {
  return {{"cards", shape.cards}, {"categories", shape.categories}, {"lo", shape.lo}, {"hi", shape.hi}};
}

json to_json(const SimulationSummary& s) {
  return {{"games", s.games},         {"win_rate4", s.win_rate4}, {"draw_rate", s.draw_rate},
          {"loss_rate", s.loss_rate}, {"mean_tc", s.mean_tc},     {"mean_tightness", s.mean_tightness}};
}

json to_json(const EAConfig& c) {
  json indicators = json::array();
  for (const auto k : c.ocd.indicators) indicators.push_back(indicator_name(k));
  json j = {{"mu", c.mu},
            {"objective", std::string(1, objective_letter(c.objective))},
            {"shape", to_json(c.shape)},
            {"variation",
             {{"crossover_prob", c.variation.crossover_prob},
              {"mutation_prob", c.variation.mutation_prob_for(c.shape.genes())},
              {"eta_c", c.variation.eta_c},
              {"eta_m", c.variation.eta_m}}},
            {"max_evals", c.max_evals},
            {"seed", c.seed},
            {"ocd",
             {{"window", c.ocd.window},
              {"var_limit", c.ocd.var_limit},
              {"alpha", c.ocd.alpha},
              {"indicators", indicators}}},
            {"convergence_stop", c.convergence_stop},
            {"stagnation_tol", c.stagnation_tol},
            {"stagnation_window", c.stagnation_window}};
  if (c.objective == ObjectiveKind::SimulationB) j["games"] = c.games;
  if (!c.removal_reference.empty()) j["removal_reference"] = c.removal_reference;
  return j;
}

namespace {

json individual_json(const Individual& ind) {
  return {{"eval_index", ind.eval_index}, {"genome", ind.genome}, {"objectives", ind.objectives}};
}

}  // namespace

json to_json(const RunResult& run) {
  json population = json::array();
  for (const auto& ind : run.final_population) population.push_back(individual_json(ind));
  json front = json::array();
  for (const auto& ind : run.front) front.push_back(individual_json(ind));
  json entries = json::array();
  for (const auto& e : run.indicator_trace) {
    entries.push_back({{"generation", e.generation}, {"evals", e.evals}, {"values", e.values}});
  }
  return {{"config", to_json(run.config)},
          {"config_hash", hex64(config_hash(run.config))},
          {"seed", run.seed},
          {"n_evals", run.n_evals},
          {"stop_reason", stop_reason_name(run.stop_reason)},
          {"objective_labels", objective_labels(run.config.objective)},
          {"population", population},
          {"front", front},
          {"indicator_trace", {{"labels", run.trace_labels}, {"entries", entries}}}};
}

json to_json(const EAFTestResult& r) {
  return {{"statistic", r.statistic}, {"critical_value", r.critical_value}, {"p_value", r.p_value},
          {"permutations", r.permutations}, {"alpha", r.alpha}, {"seed", r.seed}, {"reject", r.reject}};
}

std::string canonical_text(const EAConfig& c) {
  std::ostringstream ss;
  ss << "mu=" << c.mu << ";objective=" << objective_letter(c.objective) << ";cards=" << c.shape.cards
     << ";categories=" << c.shape.categories << ";lo=" << format_double(c.shape.lo)
     << ";hi=" << format_double(c.shape.hi) << ";pc=" << format_double(c.variation.crossover_prob)
     << ";pm=" << format_double(c.variation.mutation_prob_for(c.shape.genes()))
     << ";eta_c=" << format_double(c.variation.eta_c) << ";eta_m=" << format_double(c.variation.eta_m)
     << ";max_evals=" << c.max_evals << ";seed=" << c.seed << ";window=" << c.ocd.window
     << ";var_limit=" << format_double(c.ocd.var_limit) << ";alpha=" << format_double(c.ocd.alpha)
     << ";indicators=";
  for (const auto k : c.ocd.indicators) ss << indicator_name(k) << ',';
  ss << ";games=" << c.games << ";convergence_stop=" << c.convergence_stop
     << ";stagnation_tol=" << format_double(c.stagnation_tol)
     << ";stagnation_window=" << c.stagnation_window << ";tries=" << c.max_variation_tries
     << ";removal_reference=";
  for (const auto r : c.removal_reference) ss << format_double(r) << ',';
  return ss.str();
}

std::uint64_t config_hash(const EAConfig& config) { return hash_label(canonical_text(config)); }

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace deckbal
