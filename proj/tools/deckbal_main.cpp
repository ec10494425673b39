// deckbal command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "deckbal/deck.hpp"
#include "deckbal/eaf.hpp"
#include "deckbal/error.hpp"
#include "deckbal/experiments.hpp"
#include "deckbal/game.hpp"
#include "deckbal/indicators.hpp"
#include "deckbal/json_io.hpp"
#include "deckbal/moea.hpp"
#include "deckbal/serialize.hpp"
#include "deckbal/stats.hpp"

namespace fs = std::filesystem;
using namespace deckbal;

namespace {

Policies parse_policies(const std::string& name) {
  if (name == "p4p0") return Policies{PolicyKind::Informed, PolicyKind::RangeOnly};
  if (name == "p0p0") return Policies{PolicyKind::RangeOnly, PolicyKind::RangeOnly};
  throw UsageError("unknown policy pair '" + name + "' (expected p4p0 or p0p0)");
}

std::vector<FrontSet> load_fronts(const std::string& pattern) {
  const auto paths = expand_glob(pattern);
  if (paths.empty()) throw UsageError("no files match '" + pattern + "'");
  std::vector<FrontSet> out;
  for (const auto& p : paths) {
    const auto pts = load_front_csv(p);
    out.emplace_back(std::span<const Point>(pts), p.filename().string());
  }
  return out;
}

void write_surface(std::ostream& out, const std::string& group, const FrontSet& surface, std::size_t dims) {
  for (const auto& p : surface.points) {
    out << group;
    for (std::size_t j = 0; j < dims; ++j) out << ',' << format_double(p[j]);
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deck balancing workbench"};
  app.require_subcommand(1);

  // simulate
  std::string sim_deck, sim_policies = "p4p0";
  std::size_t sim_games = 2000;
  std::uint64_t sim_seed = 1;
  bool sim_rescale = false;
  auto* sim = app.add_subcommand("simulate", "Play games on a deck and print a JSON summary");
  sim->add_option("--deck", sim_deck, "Deck CSV")->required();
  sim->add_option("--games", sim_games, "Number of games")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Seed");
  sim->add_option("--policies", sim_policies, "p4p0 or p0p0");
  sim->add_flag("--rescale", sim_rescale, "Rescale each category onto [1, 10]");

  // optimize
  std::string opt_objective = "S", opt_out;
  std::size_t opt_mu = 10, opt_evals = 20000, opt_games = 2000;
  std::uint64_t opt_seed = 1;
  bool opt_no_stop = false;
  auto* opt = app.add_subcommand("optimize", "Run one optimizer and write its run artifact");
  opt->add_option("--objective", opt_objective, "D, B or S")->check(CLI::IsMember({"D", "B", "S"}));
  opt->add_option("--mu", opt_mu, "Population size");
  opt->add_option("--evals", opt_evals, "Evaluation budget");
  opt->add_option("--seed", opt_seed, "Seed");
  opt->add_option("--out", opt_out, "Output directory")->required();
  opt->add_option("--games", opt_games, "Games per B evaluation");
  opt->add_flag("--no-convergence-stop", opt_no_stop, "Always spend the full budget");

  // experiment
  std::string exp_config, exp_out;
  unsigned exp_workers = 0;
  auto* exp = app.add_subcommand("experiment", "Run a full experiment from a config file");
  exp->add_option("--config", exp_config, "Config file")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", exp_out, "Override output_dir");
  exp->add_option("--workers", exp_workers, "Override worker count");

  // indicators
  std::string ind_fronts, ind_refset;
  auto* ind = app.add_subcommand("indicators", "Normalized HV, epsilon and R2 indicators as CSV");
  ind->add_option("--fronts", ind_fronts, "Glob of front CSVs")->required();
  ind->add_option("--refset", ind_refset, "Reference set CSV")->required()->check(CLI::ExistingFile);

  // eaf
  std::string eaf_a, eaf_b, eaf_out;
  double eaf_level = 0.5, eaf_alpha = 0.05;
  std::size_t eaf_perms = 10000;
  std::uint64_t eaf_seed = 1;
  auto* eaf = app.add_subcommand("eaf", "Attainment surfaces and a two-sample EAF test");
  eaf->add_option("--group-a", eaf_a, "Glob of run fronts, group A")->required();
  eaf->add_option("--group-b", eaf_b, "Glob of run fronts, group B")->required();
  eaf->add_option("--level", eaf_level, "Attainment level");
  eaf->add_option("--permutations", eaf_perms, "Permutation count");
  eaf->add_option("--alpha", eaf_alpha, "Significance level");
  eaf->add_option("--seed", eaf_seed, "Seed");
  eaf->add_option("--out", eaf_out, "Directory for surfaces.csv and test.json (default: stdout)");

  // sample-size
  std::string ss_deck, ss_out;
  std::vector<std::size_t> ss_sizes{100, 500, 1000, 2000, 5000, 10000};
  std::size_t ss_repeats = 500;
  double ss_alpha = 0.05;
  std::uint64_t ss_seed = 1;
  bool ss_rescale = false;
  auto* ss = app.add_subcommand("sample-size", "CI halfwidth quantiles per number of games");
  ss->add_option("--deck", ss_deck, "Deck CSV")->required();
  ss->add_option("--sizes", ss_sizes, "Comma-separated sample sizes")->delimiter(',');
  ss->add_option("--repeats", ss_repeats, "Repeats per size");
  ss->add_option("--alpha", ss_alpha, "Significance level");
  ss->add_option("--seed", ss_seed, "Seed");
  ss->add_option("--out", ss_out, "Output CSV (default: stdout)");
  ss->add_flag("--rescale", ss_rescale, "Rescale each category onto [1, 10]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      DeckLoadOptions lo;
      lo.rescale = sim_rescale;
      const Deck deck = load_deck(sim_deck, lo);
      const auto validity = deck_is_valid(deck);
      if (!validity.valid) std::cerr << "warning: deck violates the validity constraints\n";
      const auto summary = simulate(deck, parse_policies(sim_policies), sim_games, sim_seed);
      auto j = to_json(summary);
      j["seed"] = sim_seed;
      j["policies"] = sim_policies;
      std::cout << dump_json(j);
    } else if (*opt) {
      EAConfig config;
      config.objective = parse_objective(opt_objective);
      config.mu = opt_mu;
      config.max_evals = opt_evals;
      config.seed = opt_seed;
      config.games = opt_games;
      config.convergence_stop = !opt_no_stop;
      const RunResult run = optimize(config);
      fs::create_directories(opt_out);
      std::ofstream(fs::path(opt_out) / "run.json") << dump_json(to_json(run));
      std::vector<Point> front;
      for (const auto& ind : run.front) front.push_back(ind.objectives);
      save_front_csv(front, fs::path(opt_out) / "front.csv", objective_count(config.objective));
      std::cout << "evaluations " << run.n_evals << ", stop " << stop_reason_name(run.stop_reason) << ", front "
                << run.front.size() << '\n';
    } else if (*exp) {
      ExperimentConfig config = load_experiment_config(exp_config);
      if (!exp_out.empty()) config.output_dir = exp_out;
      if (exp->count("--workers")) config.workers = exp_workers;
      const auto report = run_experiment(config);
      if (config.output_dir.empty()) {
        std::cout << dump_json(to_json(report));
      } else {
        std::cerr << "report written to " << (config.output_dir / "report.json").string() << '\n';
      }
    } else if (*ind) {
      const auto fronts = load_fronts(ind_fronts);
      const auto ref_points = load_front_csv(ind_refset);
      FrontSet refset(std::span<const Point>(ref_points), "reference");
      std::vector<FrontSet> all = fronts;
      all.push_back(refset);
      const auto norm = fit_normalization(all);
      const FrontSet nref = norm.apply(refset);
      std::cout << "set,hv,eps,r2\n";
      for (const auto& f : fronts) {
        const auto v = normalized_indicators(norm.apply(f), nref);
        std::cout << f.origin << ',' << format_double(v.hv) << ',' << format_double(v.eps) << ','
                  << format_double(v.r2) << '\n';
      }
    } else if (*eaf) {
      RunGroup a{load_fronts(eaf_a), "A"};
      RunGroup b{load_fronts(eaf_b), "B"};
      a.validate();
      b.validate();
      const std::size_t dims = a.dims();
      const auto sa = attainment_surface(a, eaf_level);
      const auto sb = attainment_surface(b, eaf_level);
      const auto result = eaf_test(a, b, eaf_perms, eaf_alpha, eaf_seed);
      std::ostringstream surfaces;
      surfaces << "group";
      for (std::size_t j = 0; j < dims; ++j) surfaces << ",f" << (j + 1);
      surfaces << '\n';
      write_surface(surfaces, "A", sa, dims);
      write_surface(surfaces, "B", sb, dims);
      if (eaf_out.empty()) {
        std::cout << surfaces.str() << dump_json(to_json(result));
      } else {
        fs::create_directories(eaf_out);
        std::ofstream(fs::path(eaf_out) / "surfaces.csv") << surfaces.str();
        std::ofstream(fs::path(eaf_out) / "test.json") << dump_json(to_json(result));
      }
    } else if (*ss) {
      DeckLoadOptions lo;
      lo.rescale = ss_rescale;
      const Deck deck = load_deck(ss_deck, lo);
      const auto table = sample_size_study(game_metric_sampler(deck), ss_sizes, ss_repeats, ss_alpha, ss_seed);
      if (ss_out.empty()) {
        write_sample_size_csv(table, std::cout);
      } else {
        std::ofstream out(ss_out);
        write_sample_size_csv(table, out);
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
