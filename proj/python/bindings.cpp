// Python bindings for the deckbal core. Compound results cross the boundary
// as JSON text; the package wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deckbal/deck.hpp"
#include "deckbal/eaf.hpp"
#include "deckbal/error.hpp"
#include "deckbal/experiments.hpp"
#include "deckbal/game.hpp"
#include "deckbal/hypervolume.hpp"
#include "deckbal/indicators.hpp"
#include "deckbal/json_io.hpp"
#include "deckbal/moea.hpp"
#include "deckbal/objectives.hpp"
#include "deckbal/pareto.hpp"
#include "deckbal/stats.hpp"

namespace py = pybind11;
using namespace deckbal;

namespace {

using Rows = std::vector<std::vector<double>>;

DeckShape shape_of(const Rows& values, double lo, double hi) {
  DeckShape s;
  s.cards = values.size();
  s.categories = values.empty() ? 0 : values.front().size();
  s.lo = lo;
  s.hi = hi;
  return s;
}

Deck deck_of(const Rows& values, double lo, double hi) {
  Deck d;
  d.shape = shape_of(values, lo, hi);
  d.shape.validate();
  for (const auto& row : values) {
    if (row.size() != d.shape.categories) throw UsageError("deck rows must have equal length");
    d.cards.push_back(Card{row});
  }
  return d;
}

Rows rows_of(const Deck& d) {
  Rows out;
  for (const auto& c : d.cards) out.push_back(c.values);
  return out;
}

Policies policies_of(const std::string& name) {
  if (name == "p4p0") return {PolicyKind::Informed, PolicyKind::RangeOnly};
  if (name == "p0p0") return {PolicyKind::RangeOnly, PolicyKind::RangeOnly};
  throw UsageError("policies must be p4p0 or p0p0");
}

RunGroup group_of(const std::vector<Rows>& fronts, const std::string& label) {
  RunGroup g;
  g.label = label;
  for (const auto& f : fronts) g.fronts.emplace_back(std::span<const Point>(f));
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deck balancing core: game simulation, objectives, optimizers and run comparison";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);

  m.def(
      "random_valid_deck",
      [](std::size_t cards, std::size_t categories, std::uint64_t seed, double lo, double hi) {
        Rng rng(seed);
        return rows_of(random_valid_deck(DeckShape{cards, categories, lo, hi}, rng));
      },
      py::arg("cards") = 32, py::arg("categories") = 4, py::arg("seed") = 1, py::arg("lo") = 1.0,
      py::arg("hi") = 10.0);

  m.def(
      "load_deck",
      [](const std::string& path, bool rescale) {
        DeckLoadOptions opts;
        opts.rescale = rescale;
        return rows_of(load_deck(path, opts));
      },
      py::arg("path"), py::arg("rescale") = false);

  m.def(
      "deck_is_valid", [](const Rows& deck, double lo, double hi) { return deck_is_valid(deck_of(deck, lo, hi)).valid; },
      py::arg("deck"), py::arg("lo") = 1.0, py::arg("hi") = 10.0);

  m.def(
      "dominance_objective", [](const Rows& deck) { return dominance_objective(deck_of(deck, 1.0, 10.0))[0]; },
      py::arg("deck"));

  m.def(
      "surrogate_objectives", [](const Rows& deck) { return surrogate_objectives(deck_of(deck, 1.0, 10.0)); },
      py::arg("deck"));

  m.def(
      "simulate_json",
      [](const Rows& deck, std::size_t games, std::uint64_t seed, const std::string& policies) {
        const Deck d = deck_of(deck, 1.0, 10.0);
        py::gil_scoped_release release;
        return dump_json(to_json(simulate(d, policies_of(policies), games, seed)));
      },
      py::arg("deck"), py::arg("games") = 2000, py::arg("seed") = 1, py::arg("policies") = "p4p0");

  m.def(
      "optimize_json",
      [](const std::string& objective, std::size_t mu, std::size_t evals, std::uint64_t seed, std::size_t games,
         bool convergence_stop) {
        EAConfig c;
        c.objective = parse_objective(objective);
        c.mu = mu;
        c.max_evals = evals;
        c.seed = seed;
        c.games = games;
        c.convergence_stop = convergence_stop;
        py::gil_scoped_release release;
        return dump_json(to_json(optimize(c)));
      },
      py::arg("objective") = "S", py::arg("mu") = 10, py::arg("evals") = 20000, py::arg("seed") = 1,
      py::arg("games") = 2000, py::arg("convergence_stop") = true);

  m.def(
      "run_experiment_json",
      [](const std::string& config_path) {
        const auto config = load_experiment_config(config_path);
        py::gil_scoped_release release;
        return dump_json(to_json(run_experiment(config)));
      },
      py::arg("config_path"));

  m.def(
      "hypervolume", [](const Rows& points, const std::vector<double>& ref) { return hypervolume(points, ref); },
      py::arg("points"), py::arg("ref"));
  m.def(
      "hv_contributions",
      [](const Rows& points, const std::vector<double>& ref) { return hv_contributions(points, ref); },
      py::arg("points"), py::arg("ref"));
  m.def(
      "nondominated_sort", [](const Rows& points) { return nondominated_sort(points); }, py::arg("points"));

  m.def(
      "normalized_indicators",
      [](const Rows& front, const Rows& reference) {
        const FrontSet a{std::span<const Point>(front)};
        const FrontSet r{std::span<const Point>(reference)};
        const FrontSet sets[] = {a, r};
        const auto norm = fit_normalization(sets);
        const auto v = normalized_indicators(norm.apply(a), norm.apply(r));
        return py::dict(py::arg("hv") = v.hv, py::arg("eps") = v.eps, py::arg("r2") = v.r2);
      },
      py::arg("front"), py::arg("reference"));

  m.def(
      "attainment_surface",
      [](const std::vector<Rows>& fronts, double level) { return attainment_surface(group_of(fronts, "A"), level).points; },
      py::arg("fronts"), py::arg("level") = 0.5);

  m.def(
      "eaf_test_json",
      [](const std::vector<Rows>& a, const std::vector<Rows>& b, std::size_t permutations, double alpha,
         std::uint64_t seed) {
        const auto ga = group_of(a, "A");
        const auto gb = group_of(b, "B");
        py::gil_scoped_release release;
        return dump_json(to_json(eaf_test(ga, gb, permutations, alpha, seed)));
      },
      py::arg("a"), py::arg("b"), py::arg("permutations") = 10000, py::arg("alpha") = 0.05, py::arg("seed") = 1);

  m.def(
      "ci_halfwidth",
      [](const std::vector<double>& samples, double alpha) { return ci_halfwidth(samples, alpha).halfwidth; },
      py::arg("samples"), py::arg("alpha") = 0.05);

  m.def(
      "sample_size_study",
      [](const Rows& deck, const std::vector<std::size_t>& sizes, std::size_t repeats, double alpha,
         std::uint64_t seed) {
        const Deck d = deck_of(deck, 1.0, 10.0);
        SampleSizeTable table;
        {
          py::gil_scoped_release release;
          table = sample_size_study(game_metric_sampler(d), sizes, repeats, alpha, seed);
        }
        py::list out;
        for (const auto& row : table) {
          out.append(py::make_tuple(row.sample_size, row.metric, row.halfwidth_q95));
        }
        return out;
      },
      py::arg("deck"), py::arg("sizes"), py::arg("repeats") = 500, py::arg("alpha") = 0.05, py::arg("seed") = 1);
}
