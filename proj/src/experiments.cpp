#include "deckbal/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "deckbal/error.hpp"
#include "deckbal/json_io.hpp"
#include "deckbal/pareto.hpp"
#include "deckbal/serialize.hpp"
#include "deckbal/stats.hpp"

namespace deckbal {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Approach::label() const { return std::string(1, objective_letter(objective)) + std::to_string(mu); }

Approach Approach::parse(const std::string& label) {
  if (label.size() < 2) throw UsageError("approach label '" + label + "' must look like S10");
  Approach a;
  a.objective = parse_objective(label.substr(0, 1));
  const std::string digits = label.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw UsageError("approach label '" + label + "' must end in a population size");
  }
  a.mu = std::stoul(digits);
  return a;
}

void ExperimentConfig::validate() const {
  if (approaches.empty()) throw UsageError("experiment: no approaches");
  if (runs < 1) throw UsageError("experiment: runs must be at least 1");
  for (std::size_t i = 0; i < approaches.size(); ++i) {
    for (std::size_t j = i + 1; j < approaches.size(); ++j) {
      if (approaches[i].label() == approaches[j].label()) {
        throw UsageError("experiment: duplicate approach " + approaches[i].label());
      }
    }
  }
  shape.validate();
  ocd.validate();
  if (games < 1 || eval_games < 1) throw UsageError("experiment: game counts must be positive");
  if (!(level > 0.0 && level <= 1.0)) throw UsageError("experiment: level must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("experiment: alpha must lie in (0, 1)");
  if (stagnation_window < 1) throw UsageError("experiment: stagnation_window must be positive");
  if (permutations < 1) throw UsageError("experiment: permutations must be positive");
  for (const auto& a : approaches) {
    if (a.mu < 2 || max_evals <= a.mu) throw UsageError("experiment: approach " + a.label() + " needs 2 <= mu < max_evals");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError("expected a boolean, got '" + v + "'", line);
}

std::size_t parse_count(const std::string& v, std::size_t line) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("expected a non-negative integer, got '" + v + "'", line);
  }
  return std::stoull(v);
}

double parse_real(const std::string& v, std::size_t line) {
  const auto d = parse_double(v);
  if (!d) throw ParseError("expected a number, got '" + v + "'", line);
  return *d;
}

std::string level_suffix(double level) { return std::to_string(std::lround(level * 100.0)); }

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "approaches") {
        c.approaches.clear();
        for (const auto& a : split_list(value)) c.approaches.push_back(Approach::parse(a));
      } else if (key == "runs") {
        c.runs = parse_count(value, line_no);
      } else if (key == "games") {
        c.games = parse_count(value, line_no);
      } else if (key == "eval_games") {
        c.eval_games = parse_count(value, line_no);
      } else if (key == "cards") {
        c.shape.cards = parse_count(value, line_no);
      } else if (key == "categories") {
        c.shape.categories = parse_count(value, line_no);
      } else if (key == "lo") {
        c.shape.lo = parse_real(value, line_no);
      } else if (key == "hi") {
        c.shape.hi = parse_real(value, line_no);
      } else if (key == "master_seed") {
        c.master_seed = parse_count(value, line_no);
      } else if (key == "output_dir") {
        c.output_dir = value;
      } else if (key == "max_evals") {
        c.max_evals = parse_count(value, line_no);
      } else if (key == "convergence_stop") {
        c.convergence_stop = parse_bool(value, line_no);
      } else if (key == "stagnation_window") {
        c.stagnation_window = parse_count(value, line_no);
      } else if (key == "ocd_window") {
        c.ocd.window = parse_count(value, line_no);
      } else if (key == "ocd_var_limit") {
        c.ocd.var_limit = parse_real(value, line_no);
      } else if (key == "ocd_alpha") {
        c.ocd.alpha = parse_real(value, line_no);
      } else if (key == "ocd_indicators") {
        c.ocd.indicators.clear();
        for (const auto& k : split_list(value)) c.ocd.indicators.push_back(parse_indicator(k));
      } else if (key == "permutations") {
        c.permutations = parse_count(value, line_no);
      } else if (key == "alpha") {
        c.alpha = parse_real(value, line_no);
      } else if (key == "level") {
        c.level = parse_real(value, line_no);
      } else if (key == "workers") {
        c.workers = static_cast<unsigned>(parse_count(value, line_no));
      } else if (key == "reference_decks") {
        c.reference_decks.clear();
        for (const auto& p : split_list(value)) c.reference_decks.emplace_back(p);
      } else if (key == "rescale_reference") {
        c.rescale_reference = parse_bool(value, line_no);
      } else if (key == "synthetic_reference") {
        c.synthetic_reference = parse_count(value, line_no);
      } else {
        throw ParseError("unknown key '" + key + "'", line_no);
      }
    } catch (const UsageError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_experiment_config(in);
}

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream ss;
  ss << "approaches=";
  for (const auto& a : c.approaches) ss << a.label() << ',';
  ss << ";runs=" << c.runs << ";games=" << c.games << ";eval_games=" << c.eval_games << ";cards=" << c.shape.cards
     << ";categories=" << c.shape.categories << ";lo=" << format_double(c.shape.lo)
     << ";hi=" << format_double(c.shape.hi) << ";master_seed=" << c.master_seed << ";max_evals=" << c.max_evals
     << ";convergence_stop=" << c.convergence_stop << ";stagnation_window=" << c.stagnation_window
     << ";ocd_window=" << c.ocd.window
     << ";ocd_var_limit=" << format_double(c.ocd.var_limit) << ";ocd_alpha=" << format_double(c.ocd.alpha)
     << ";ocd_indicators=";
  for (const auto k : c.ocd.indicators) ss << indicator_name(k) << ',';
  ss << ";permutations=" << c.permutations << ";alpha=" << format_double(c.alpha)
     << ";level=" << format_double(c.level) << ";reference_decks=";
  for (const auto& p : c.reference_decks) ss << p.string() << ',';
  ss << ";rescale_reference=" << c.rescale_reference << ";synthetic_reference=" << c.synthetic_reference;
  return ss.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) { return hash_label(canonical_text(c)); }

std::uint64_t run_seed(std::uint64_t master_seed, const Approach& approach, std::size_t index) {
  return mix_seed(mix_seed(master_seed, hash_label(approach.label())), index);
}

RunGroup ApproachResult::run_group() const {
  RunGroup g;
  g.label = label();
  std::map<std::size_t, std::vector<Point>> per_run;
  for (const auto& d : decks) per_run[d.run].push_back(d.balance);
  for (const auto& [run, points] : per_run) g.fronts.emplace_back(points, label() + "#" + std::to_string(run));
  return g;
}

namespace {

struct JobOutput {
  RunInfo info;
  std::vector<CollectedDeck> decks;
};

std::string run_stem(const Approach& a, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_run%03zu", index);
  return a.label() + buf;
}

JobOutput run_job(const ExperimentConfig& config, const Approach& approach, std::size_t index) {
  JobOutput out;
  EAConfig ea;
  ea.mu = approach.mu;
  ea.objective = approach.objective;
  ea.shape = config.shape;
  ea.max_evals = config.max_evals;
  ea.seed = run_seed(config.master_seed, approach, index);
  ea.ocd = config.ocd;
  ea.games = config.games;
  ea.convergence_stop = config.convergence_stop;
  ea.stagnation_window = config.stagnation_window;
  out.info.seed = ea.seed;
  try {
    const RunResult run = optimize(ea);
    out.info.n_evals = run.n_evals;
    out.info.stop_reason = stop_reason_name(run.stop_reason);
    if (approach.objective == ObjectiveKind::DominanceD) {
      // The population collapses onto one deck; keep the best, oldest first.
      const auto best = std::min_element(run.final_population.begin(), run.final_population.end(),
                                         [](const Individual& a, const Individual& b) {
                                           return a.objectives[0] < b.objectives[0] ||
                                                  (a.objectives[0] == b.objectives[0] && a.eval_index < b.eval_index);
                                         });
      out.decks.push_back({index, best->genome, best->objectives, {}});
    } else {
      for (const auto& ind : run.front) out.decks.push_back({index, ind.genome, ind.objectives, {}});
    }
    if (!config.output_dir.empty()) {
      const fs::path dir = config.output_dir / "runs";
      std::ofstream(dir / (run_stem(approach, index) + ".json")) << dump_json(to_json(run));
      std::vector<Point> front;
      for (const auto& ind : run.front) front.push_back(ind.objectives);
      save_front_csv(front, dir / (run_stem(approach, index) + "_front.csv"), objective_count(approach.objective));
    }
  } catch (const std::exception& e) {
    out.info.error = e.what();
    out.decks.clear();
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
}

IndicatorValues mean_of(const std::vector<IndicatorValues>& xs, IndicatorValues* halfwidth, double alpha) {
  std::vector<double> hv, eps, r2;
  for (const auto& x : xs) {
    hv.push_back(x.hv);
    eps.push_back(x.eps);
    r2.push_back(x.r2);
  }
  IndicatorValues m{sample_mean(hv), sample_mean(eps), sample_mean(r2)};
  if (halfwidth) {
    *halfwidth = {ci_halfwidth(hv, alpha).halfwidth, ci_halfwidth(eps, alpha).halfwidth,
                  ci_halfwidth(r2, alpha).halfwidth};
  }
  return m;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (!config.output_dir.empty()) fs::create_directories(config.output_dir / "runs");

  ExperimentReport report;
  report.config = config;
  report.config_hash = config_hash(config);
  report.eval_seed = mix_seed(config.master_seed, hash_label("balance-reevaluation"));

  const std::size_t n_jobs = config.approaches.size() * config.runs;
  std::vector<JobOutput> jobs(n_jobs);
  parallel_for(n_jobs, config.workers, [&](std::size_t j) {
    jobs[j] = run_job(config, config.approaches[j / config.runs], j % config.runs);
  });

  for (std::size_t a = 0; a < config.approaches.size(); ++a) {
    ApproachResult res;
    res.approach = config.approaches[a];
    for (std::size_t r = 0; r < config.runs; ++r) {
      auto& job = jobs[a * config.runs + r];
      if (!job.info.error.empty()) res.complete = false;
      res.runs.push_back(job.info);
      for (auto& d : job.decks) res.decks.push_back(std::move(d));
    }
    report.approaches.push_back(std::move(res));
  }

  // Every collected deck is scored on the same game sample.
  std::vector<CollectedDeck*> all;
  for (auto& res : report.approaches) {
    for (auto& d : res.decks) all.push_back(&d);
  }
  parallel_for(all.size(), config.workers, [&](std::size_t i) {
    const Deck deck = genome_to_deck(all[i]->genome, config.shape);
    all[i]->balance = balance_objectives(simulate(deck, Policies{}, config.eval_games, report.eval_seed));
  });

  std::vector<FrontSet> unions;
  for (auto& res : report.approaches) {
    for (const auto& d : res.decks) res.union_points.push_back(d.balance);
    if (res.union_points.empty()) continue;
    res.pareto = FrontSet(res.union_points, res.label() + "_p");
    res.surface = attainment_surface(res.run_group(), config.level);
    res.surface.origin = res.label() + "_" + level_suffix(config.level);
    FrontSet u;
    u.points = res.union_points;
    unions.push_back(std::move(u));
  }
  if (unions.empty()) throw std::runtime_error("experiment: every run failed");

  report.normalization = fit_normalization(unions);
  std::vector<Point> pooled;
  for (const auto& u : unions) {
    for (const auto& p : u.points) pooled.push_back(report.normalization.apply(std::span<const double>(p)));
  }
  report.reference_front = FrontSet(pooled, "reference");

  for (const auto& res : report.approaches) {
    if (res.union_points.empty()) continue;
    std::vector<IndicatorValues> per_run;
    for (const auto& f : res.run_group().fronts) {
      per_run.push_back(normalized_indicators(report.normalization.apply(f), report.reference_front));
    }
    for (const FrontSet* set : {&res.pareto, &res.surface}) {
      IndicatorRow row;
      row.set = set->origin;
      row.values = normalized_indicators(report.normalization.apply(*set), report.reference_front);
      if (per_run.size() >= 2) {
        IndicatorValues hw;
        row.run_mean = mean_of(per_run, &hw, config.alpha);
        row.run_halfwidth = hw;
      } else if (per_run.size() == 1) {
        row.run_mean = per_run.front();
      }
      report.indicators.push_back(row);
    }
  }
  std::vector<Point> triples;
  for (const auto& row : report.indicators) triples.push_back({row.values.hv, row.values.eps, row.values.r2});
  const auto ranks = nondominated_sort(triples);
  for (std::size_t i = 0; i < ranks.size(); ++i) report.indicators[i].rank = ranks[i];

  for (std::size_t i = 0; i < report.approaches.size(); ++i) {
    for (std::size_t j = i + 1; j < report.approaches.size(); ++j) {
      const auto ga = report.approaches[i].run_group();
      const auto gb = report.approaches[j].run_group();
      if (ga.fronts.size() < 2 || gb.fronts.size() < 2) continue;
      const std::uint64_t seed =
          mix_seed(config.master_seed, hash_label(ga.label + "|" + gb.label + "|eaf"));
      report.eaf_tests.push_back({ga.label, gb.label, eaf_test(ga, gb, config.permutations, config.alpha, seed)});
    }
  }

  struct NamedSet {
    std::string name;
    std::size_t approach;
    const std::vector<Point>* points;
  };
  std::vector<NamedSet> sets;
  for (std::size_t i = 0; i < report.approaches.size(); ++i) {
    const auto& res = report.approaches[i];
    if (res.union_points.empty()) continue;
    sets.push_back({res.label(), i, &res.union_points});
    sets.push_back({res.pareto.origin, i, &res.pareto.points});
    sets.push_back({res.surface.origin, i, &res.surface.points});
  }
  for (const auto& x : sets) {
    for (const auto& y : sets) {
      if (x.approach == y.approach) continue;
      if (set_strictly_dominates(*x.points, *y.points)) report.dominance.push_back({x.name, y.name});
    }
  }

  std::vector<NamedDeck> refs;
  for (const auto& path : config.reference_decks) {
    NamedDeck nd;
    nd.name = path.filename().string();
    try {
      DeckLoadOptions opts;
      opts.rescale = config.rescale_reference;
      opts.lo = config.shape.lo;
      opts.hi = config.shape.hi;
      nd.deck = load_deck(path, opts);
    } catch (const std::exception& e) {
      nd.error = e.what();
    }
    refs.push_back(std::move(nd));
  }
  if (config.synthetic_reference > 0) {
    auto synth = synthetic_reference_decks(config.shape, config.synthetic_reference,
                                           mix_seed(config.master_seed, hash_label("synthetic-reference")));
    for (auto& s : synth) refs.push_back(std::move(s));
  }
  compare_to_reference_decks(report, refs, config.eval_games, report.eval_seed);

  if (!config.output_dir.empty()) write_report(report);
  return report;
}

void compare_to_reference_decks(ExperimentReport& report, const std::vector<NamedDeck>& decks, std::size_t games,
                                std::uint64_t seed) {
  for (const auto& nd : decks) {
    ReferenceDeckEntry entry;
    entry.name = nd.name;
    entry.synthetic = nd.synthetic;
    if (!nd.deck) {
      entry.error = nd.error.empty() ? "deck missing" : nd.error;
      report.reference_decks.push_back(std::move(entry));
      continue;
    }
    const Deck& deck = *nd.deck;
    try {
      const auto validity = deck_is_valid(deck);
      if (!validity.valid) {
        throw UsageError(validity.dominant_card ? "deck has a dominant card" : "deck has duplicate cards");
      }
      entry.dominance = dominance_objective(deck)[0];
      entry.balance = balance_objectives(simulate(deck, Policies{}, games, seed));
      if (report.normalization.lo.size() == entry.balance.size()) {
        entry.normalized = report.normalization.apply(std::span<const double>(entry.balance));
      }
      for (const auto& res : report.approaches) {
        if (res.pareto.empty()) continue;
        const auto& pts = res.pareto.points;
        if (std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return dominates(p, entry.balance); })) {
          entry.dominated_by.push_back(res.pareto.origin);
        }
        if (std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return dominates(entry.balance, p); })) {
          entry.dominates.push_back(res.pareto.origin);
        }
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
      entry.balance.clear();
      entry.normalized.clear();
    }
    report.reference_decks.push_back(std::move(entry));
  }
}

namespace {

// Ordered pairs (i dominates k) that involve card c.
std::size_t pairs_with(const std::vector<Card>& cards, std::size_t c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (i == c) continue;
    if (card_dominates(cards[i], cards[c])) ++n;
    if (card_dominates(cards[c], cards[i])) ++n;
  }
  return n;
}

}  // namespace

Deck synthesize_deck(const DeckShape& shape, double target, Rng& rng, std::size_t max_steps) {
  shape.validate();
  const double k = static_cast<double>(shape.cards);
  const double lowest = -(k - 1.0);
  if (target < lowest || target > 0.0) throw UsageError("synthesize_deck: target outside [-(K-1), 0]");
  // Dominance objective = (dominated pairs - K(K-1)) / K; aim at a pair count.
  const auto target_pairs = static_cast<long long>(std::llround(target * k + k * (k - 1.0)));

  Deck deck = random_valid_deck(shape, rng);
  long long pairs = 0;
  for (std::size_t c = 0; c < shape.cards; ++c) {
    for (std::size_t i = 0; i < shape.cards; ++i) {
      if (i != c && card_dominates(deck.cards[i], deck.cards[c])) ++pairs;
    }
  }
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (pairs == target_pairs) return deck;
    const auto c = static_cast<std::size_t>(rng.below(shape.cards));
    const auto l = static_cast<std::size_t>(rng.below(shape.categories));
    const double old = deck.cards[c].values[l];
    const long long before = static_cast<long long>(pairs_with(deck.cards, c));
    deck.cards[c].values[l] = rng.uniform(shape.lo, shape.hi);
    const long long candidate = pairs - before + static_cast<long long>(pairs_with(deck.cards, c));
    if (std::llabs(candidate - target_pairs) <= std::llabs(pairs - target_pairs) && deck_is_valid(deck).valid) {
      pairs = candidate;
    } else {
      deck.cards[c].values[l] = old;
    }
  }
  throw GenerationError("synthesize_deck: target not reached within the step budget");
}

std::vector<NamedDeck> synthetic_reference_decks(const DeckShape& shape, std::size_t count, std::uint64_t seed) {
  // Targets as fractions of -(K-1): one deck at 30.4375/31, the others spread
  // around 23.21875/31 so the mean sits near 24.12/31.
  static constexpr double kSpread[] = {0.0, 2.0, -2.0, 1.0, -1.0, 0.5, -0.5};
  const double scale = static_cast<double>(shape.cards - 1) / 31.0;
  std::vector<NamedDeck> out;
  const Rng master(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double target = i == 0 ? -30.4375 * scale : (-23.21875 + kSpread[(i - 1) % 7]) * scale;
    Rng rng = master.substream(i);
    NamedDeck nd;
    nd.name = "synthetic_pd_" + std::to_string(i + 1);
    nd.synthetic = true;
    try {
      nd.deck = synthesize_deck(shape, std::clamp(target, -static_cast<double>(shape.cards - 1), 0.0), rng);
    } catch (const std::exception& e) {
      nd.error = e.what();
    }
    out.push_back(std::move(nd));
  }
  return out;
}

namespace {

json indicator_json(const IndicatorValues& v) { return {{"hv", v.hv}, {"eps", v.eps}, {"r2", v.r2}}; }

json config_json(const ExperimentConfig& c) {
  json approaches = json::array();
  for (const auto& a : c.approaches) approaches.push_back(a.label());
  json indicators = json::array();
  for (const auto k : c.ocd.indicators) indicators.push_back(indicator_name(k));
  json refs = json::array();
  for (const auto& p : c.reference_decks) refs.push_back(p.string());
  return {{"approaches", approaches},
          {"runs", c.runs},
          {"games", c.games},
          {"eval_games", c.eval_games},
          {"shape", to_json(c.shape)},
          {"master_seed", c.master_seed},
          {"max_evals", c.max_evals},
          {"convergence_stop", c.convergence_stop},
          {"stagnation_window", c.stagnation_window},
          {"ocd", {{"window", c.ocd.window}, {"var_limit", c.ocd.var_limit}, {"alpha", c.ocd.alpha},
                   {"indicators", indicators}}},
          {"permutations", c.permutations},
          {"alpha", c.alpha},
          {"level", c.level},
          {"reference_decks", refs},
          {"rescale_reference", c.rescale_reference},
          {"synthetic_reference", c.synthetic_reference}};
}

}  // namespace

json to_json(const ExperimentReport& r) {
  json approaches = json::array();
  for (const auto& res : r.approaches) {
    json runs = json::array();
    for (const auto& info : res.runs) {
      json j = {{"seed", info.seed}, {"n_evals", info.n_evals}, {"stop_reason", info.stop_reason}};
      if (!info.error.empty()) j["error"] = info.error;
      runs.push_back(j);
    }
    json decks = json::array();
    for (const auto& d : res.decks) {
      decks.push_back({{"run", d.run}, {"objectives", d.objectives}, {"balance", d.balance}});
    }
    approaches.push_back({{"label", res.label()},
                          {"complete", res.complete},
                          {"runs", runs},
                          {"collected", decks},
                          {"pareto", res.pareto.points},
                          {"surface", res.surface.points}});
  }
  json indicators = json::array();
  for (const auto& row : r.indicators) {
    json j = {{"set", row.set}, {"values", indicator_json(row.values)}, {"rank", row.rank}};
    if (row.run_mean) j["run_mean"] = indicator_json(*row.run_mean);
    if (row.run_halfwidth) j["run_halfwidth"] = indicator_json(*row.run_halfwidth);
    indicators.push_back(j);
  }
  json tests = json::array();
  for (const auto& t : r.eaf_tests) tests.push_back({{"a", t.a}, {"b", t.b}, {"test", to_json(t.result)}});
  json dominance = json::array();
  for (const auto& d : r.dominance) dominance.push_back({{"dominating", d.dominating}, {"dominated", d.dominated}});
  json refs = json::array();
  for (const auto& e : r.reference_decks) {
    json j = {{"name", e.name}, {"synthetic", e.synthetic}};
    if (!e.error.empty()) {
      j["error"] = e.error;
    } else {
      j["dominance_objective"] = e.dominance;
      j["balance"] = e.balance;
      j["normalized"] = e.normalized;
      j["dominated_by"] = e.dominated_by;
      j["dominates"] = e.dominates;
    }
    refs.push_back(j);
  }
  return {{"config", config_json(r.config)},
          {"config_hash", hex64(r.config_hash)},
          {"eval_seed", r.eval_seed},
          {"objective_labels", objective_labels(ObjectiveKind::SimulationB)},
          {"normalization", {{"lo", r.normalization.lo}, {"hi", r.normalization.hi}}},
          {"approaches", approaches},
          {"reference_front", r.reference_front.points},
          {"indicators", indicators},
          {"eaf_tests", tests},
          {"set_dominance", dominance},
          {"reference_decks", refs}};
}

void write_report(const ExperimentReport& r) {
  const fs::path& dir = r.config.output_dir;
  if (dir.empty()) throw UsageError("write_report: no output directory configured");
  fs::create_directories(dir / "sets");
  json artifacts = json::array();
  auto add = [&](const fs::path& rel, std::uint64_t seed) {
    artifacts.push_back({{"path", rel.generic_string()}, {"seed", seed}});
  };

  std::ofstream(dir / "report.json") << dump_json(to_json(r));
  add("report.json", r.config.master_seed);
  for (const auto& res : r.approaches) {
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
      if (!res.runs[i].error.empty()) continue;
      add(fs::path("runs") / (run_stem(res.approach, i) + ".json"), res.runs[i].seed);
      add(fs::path("runs") / (run_stem(res.approach, i) + "_front.csv"), res.runs[i].seed);
    }
    if (res.union_points.empty()) continue;
    for (const auto& [name, pts] : {std::pair{res.label(), &res.union_points},
                                    std::pair{res.pareto.origin, &res.pareto.points},
                                    std::pair{res.surface.origin, &res.surface.points}}) {
      save_front_csv(*pts, dir / "sets" / (name + ".csv"), 3);
      add(fs::path("sets") / (name + ".csv"), r.eval_seed);
    }
  }
  save_front_csv(r.reference_front.points, dir / "sets" / "reference_front.csv", 3);
  add(fs::path("sets") / "reference_front.csv", r.eval_seed);

  const json manifest = {{"config_hash", hex64(r.config_hash)},
                         {"config", canonical_text(r.config)},
                         {"master_seed", r.config.master_seed},
                         {"eval_seed", r.eval_seed},
                         {"artifacts", artifacts}};
  std::ofstream(dir / "manifest.json") << dump_json(manifest);
}

}  // namespace deckbal
