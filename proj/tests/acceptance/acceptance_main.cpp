// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   deckbal_acceptance [--only N,..] [--expect-fail N,..]
//
// Exit status is 0 when every failing criterion is listed in --expect-fail
// and every listed one actually failed, so a known shortfall stays visible
// without hiding regressions elsewhere.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deckbal/deck.hpp"
#include "deckbal/eaf.hpp"
#include "deckbal/error.hpp"
#include "deckbal/experiments.hpp"
#include "deckbal/game.hpp"
#include "deckbal/hypervolume.hpp"
#include "deckbal/indicators.hpp"
#include "deckbal/moea.hpp"
#include "deckbal/objectives.hpp"
#include "deckbal/ocd.hpp"
#include "deckbal/pareto.hpp"
#include "deckbal/random.hpp"
#include "deckbal/serialize.hpp"
#include "deckbal/stats.hpp"
#include "deckbal/variation.hpp"

using namespace deckbal;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const DeckShape kShape{32, 4, 1.0, 10.0};

// ---------------------------------------------------------------- 1

Verdict dominance_optimum() {
  int hits = 0;
  std::string bests;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EAConfig c;
    c.objective = ObjectiveKind::DominanceD;
    c.mu = 10;
    c.shape = kShape;
    c.max_evals = 30'000;
    c.seed = seed;
    const auto run = optimize(c);
    double best = 0.0;
    for (const auto& ind : run.final_population) best = std::min(best, ind.objectives.at(0));
    if (best == -31.0) ++hits;
    bests += fmt("%s%.4g@%zu", bests.empty() ? "" : " ", best, run.n_evals);
  }
  return {hits >= 4, fmt("%d/5 runs reach -31 (best@evals: %s)", hits, bests.c_str())};
}

// ---------------------------------------------------------------- 2

Verdict self_play_fairness() {
  Rng rng(mix_seed(2, hash_label("self-play")));
  int inside = 0;
  double lo = 1.0, hi = 0.0, draws = 0.0;
  for (int d = 0; d < 20; ++d) {
    const Deck deck = random_valid_deck(kShape, rng);
    const auto s = simulate(deck, Policies{PolicyKind::RangeOnly, PolicyKind::RangeOnly}, 2'000, rng.next_u64());
    if (s.win_rate4 >= 0.46 && s.win_rate4 <= 0.54) ++inside;
    lo = std::min(lo, s.win_rate4);
    hi = std::max(hi, s.win_rate4);
    draws += s.draw_rate / 20.0;
  }
  return {inside >= 19, fmt("%d/20 decks with win_rate4 in [0.46, 0.54] (range %.4f..%.4f, mean draw rate %.4f)",
                            inside, lo, hi, draws)};
}

// ---------------------------------------------------------------- 3

Verdict skill_gap() {
  Rng rng(mix_seed(3, hash_label("skill-gap")));
  const std::size_t games = 2'000;
  double balanced = 0.0, dominated = 0.0;
  for (int d = 0; d < 20; ++d) {
    const Deck deck = synthesize_deck(kShape, -31.0, rng);
    if (dominance_objective(deck).at(0) != -31.0) return {false, "synthesized deck missed f_D = -31"};
    balanced += simulate(deck, Policies{}, games, rng.next_u64()).win_rate4 / 20.0;
  }
  // Uniform random decks sit near f_D = -29, so heavily dominated decks come
  // from local search toward random targets in [-25, -23].
  double mean_fd = 0.0;
  for (int d = 0; d < 20; ++d) {
    const Deck deck = synthesize_deck(kShape, rng.uniform(-25.0, -23.0), rng);
    const double fd = dominance_objective(deck).at(0);
    if (fd < -25.0) return {false, fmt("synthesized deck at f_D = %.4f", fd)};
    mean_fd += fd / 20.0;
    dominated += simulate(deck, Policies{}, games, rng.next_u64()).win_rate4 / 20.0;
  }
  const double gap = balanced - dominated;
  return {gap >= 0.05, fmt("mean win_rate4 %.4f (f_D = -31) vs %.4f (f_D >= -25, mean %.3f), gap %.4f", balanced, dominated,
                           mean_fd, gap)};
}

// ---------------------------------------------------------------- 4

Verdict hypervolume_oracles() {
  {
    const std::vector<Point> hand{{1, 3}, {2, 2}, {3, 1}};
    const std::vector<double> ref{4, 4};
    const auto c = hv_contributions(hand, ref);
    if (hypervolume(hand, ref) != 6.0 || c != std::vector<double>{1, 1, 1}) {
      return {false, "hand example {(1,3),(2,2),(3,1)} ref (4,4) mismatch"};
    }
  }
  Rng rng(mix_seed(4, hash_label("hv-oracle")));
  const std::size_t samples = 1'000'000;
  double worst_hv = 0.0, worst_contrib = 0.0;
  for (int f = 0; f < 100; ++f) {
    const std::size_t m = f < 50 ? 2 : 3;
    std::vector<Point> raw;
    const std::size_t n = 1 + rng.below(10);
    while (raw.size() < n) {
      Point p(m);
      for (auto& v : p) v = rng.uniform(0.0, 1.0);
      raw.push_back(p);
    }
    const auto front = nondominated_subset(raw);
    const std::vector<double> ref(m, 1.1);
    Point lo(m, 1.1);
    for (const auto& p : front) {
      for (std::size_t j = 0; j < m; ++j) lo[j] = std::min(lo[j], p[j]);
    }
    double box = 1.0;
    for (std::size_t j = 0; j < m; ++j) box *= ref[j] - lo[j];

    std::vector<std::size_t> only(front.size(), 0);
    std::size_t covered = 0;
    Point z(m);
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t j = 0; j < m; ++j) z[j] = rng.uniform(lo[j], ref[j]);
      std::size_t count = 0, who = 0;
      for (std::size_t i = 0; i < front.size(); ++i) {
        if (weakly_dominates(front[i], z)) {
          ++count;
          who = i;
        }
      }
      if (count > 0) ++covered;
      if (count == 1) ++only[who];
    }
    const double mc = box * static_cast<double>(covered) / static_cast<double>(samples);
    const double exact = hypervolume(front, ref);
    worst_hv = std::max(worst_hv, std::abs(exact - mc) / exact);
    const auto contrib = hv_contributions(front, ref);
    for (std::size_t i = 0; i < front.size(); ++i) {
      const double mci = box * static_cast<double>(only[i]) / static_cast<double>(samples);
      worst_contrib = std::max(worst_contrib, std::abs(contrib[i] - mci) / exact);
    }
  }
  return {worst_hv < 0.01 && worst_contrib < 0.01,
          fmt("hand values exact; 100 fronts: max rel HV error %.5f, max contribution error %.5f (relative to HV)",
              worst_hv, worst_contrib)};
}

// ---------------------------------------------------------------- 5

Verdict operator_laws() {
  Rng rng(mix_seed(5, hash_label("operators")));
  const VariationParams params;
  const Bounds bounds{1.0, 10.0};
  double worst_mean = 0.0;
  for (int d = 0; d < 100'000; ++d) {
    const double x1 = rng.uniform(4.0, 7.0), x2 = rng.uniform(4.0, 7.0);
    const double beta = sbx_spread(rng.uniform01(), params.eta_c);
    const auto [c1, c2] = sbx_blend(x1, x2, beta);
    if (c1 < bounds.lo || c1 > bounds.hi || c2 < bounds.lo || c2 > bounds.hi) continue;  // clipping case
    worst_mean = std::max(worst_mean, std::abs((c1 + c2) / 2.0 - (x1 + x2) / 2.0));
  }
  std::size_t outside = 0;
  VariationParams always = params;
  always.mutation_prob = 1.0;
  for (int d = 0; d < 1'000; ++d) {
    Genome g(100);
    for (auto& v : g) v = rng.uniform(bounds.lo, bounds.hi);
    g[0] = bounds.lo;
    g[1] = bounds.hi;
    for (const double v : polynomial_mutation(g, always, bounds, rng)) {
      if (v < bounds.lo || v > bounds.hi) ++outside;
    }
  }
  bool identity = sbx_spread(0.5, params.eta_c) == 1.0;
  for (int d = 0; d < 1'000 && identity; ++d) {
    const double x1 = rng.uniform(bounds.lo, bounds.hi), x2 = rng.uniform(bounds.lo, bounds.hi);
    const auto [c1, c2] = sbx_blend(x1, x2, sbx_spread(0.5, params.eta_c));
    identity = c1 == x1 && c2 == x2 && polynomial_mutation_step(x1, 0.5, params.eta_m, bounds) == x1;
  }
  return {worst_mean < 1e-9 && outside == 0 && identity,
          fmt("SBX max mean shift %.3g over 1e5 draws; %zu of 1e5 mutated genes outside [1,10]; u=0.5 identity %s",
              worst_mean, outside, identity ? "exact" : "violated")};
}

// ---------------------------------------------------------------- 6 and 9 share these runs

struct DeskExperiment {
  ExperimentReport report;
  double seconds = 0.0;
};

const DeskExperiment& desk_experiment() {
  static const DeskExperiment cached = [] {
    ExperimentConfig c;
    c.approaches = {{ObjectiveKind::SurrogateS, 10}, {ObjectiveKind::DominanceD, 10}};
    c.runs = 5;
    c.eval_games = 500;
    c.shape = kShape;
    c.master_seed = 6;
    c.max_evals = 100'000;
    c.permutations = 1'000;
    const auto t0 = std::chrono::steady_clock::now();
    DeskExperiment e{run_experiment(c), 0.0};
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
  }();
  return cached;
}

const ApproachResult& approach(const ExperimentReport& r, const std::string& label) {
  for (const auto& a : r.approaches) {
    if (a.label() == label) return a;
  }
  throw UsageError("no approach " + label);
}

Verdict multi_vs_single() {
  const auto& e = desk_experiment();
  const auto& s = approach(e.report, "S10");
  const auto& d = approach(e.report, "D10");
  if (!s.complete || !d.complete) return {false, "a run failed"};
  const bool dom = set_strictly_dominates(s.pareto.points, d.union_points);
  std::size_t covered = 0;
  for (const auto& q : d.union_points) {
    covered += std::any_of(s.pareto.points.begin(), s.pareto.points.end(),
                           [&](const Point& p) { return dominates(p, q); });
  }
  return {dom, fmt("S10_p (%zu points) strictly dominates %zu/%zu D10 decks (%.0f s)", s.pareto.points.size(),
                   covered, d.union_points.size(), e.seconds)};
}

// ---------------------------------------------------------------- 7

std::vector<Point> random_front(Rng& rng) {
  std::vector<Point> raw;
  for (int i = 0; i < 20; ++i) raw.push_back({rng.uniform01(), rng.uniform01()});
  return nondominated_subset(raw);
}

RunGroup random_group(Rng& rng, std::size_t runs, const std::string& label) {
  RunGroup g;
  g.label = label;
  for (std::size_t r = 0; r < runs; ++r) g.fronts.emplace_back(random_front(rng), label);
  return g;
}

Verdict eaf_checks() {
  Rng rng(mix_seed(7, hash_label("eaf")));
  bool surface_ok = true;
  for (int t = 0; t < 50 && surface_ok; ++t) {
    const auto g = random_group(rng, 1, "single");
    auto got = attainment_surface(g, 0.5).points;
    auto want = g.fronts.front().points;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    surface_ok = got == want;
  }
  const auto a = random_group(rng, 5, "A");
  const double self = eaf_test(a, a, 999, 0.05, rng.next_u64()).statistic;
  int rejects = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto x = random_group(rng, 5, "X");
    const auto y = random_group(rng, 5, "Y");
    rejects += eaf_test(x, y, 999, 0.05, rng.next_u64()).reject;
  }
  const double rate = static_cast<double>(rejects) / reps;
  return {surface_ok && self == 0.0 && std::abs(rate - 0.05) <= 0.04,
          fmt("single-run surface == front: %s; eaf_test(A,A) statistic %g; H0 rejection rate %.3f over %d reps",
              surface_ok ? "yes" : "no", self, rate, reps)};
}

// ---------------------------------------------------------------- 8

Verdict sample_size_knee() {
  Rng rng(mix_seed(8, hash_label("sample-size")));
  const Deck deck = random_valid_deck(kShape, rng);
  const std::vector<std::size_t> sizes{100, 500, 1000, 2000, 5000, 10000};
  const auto table = sample_size_study(game_metric_sampler(deck), sizes, 100, 0.05, rng.next_u64());
  std::vector<double> hw;
  for (const auto& row : table) {
    if (row.metric == "win_rate4") hw.push_back(row.halfwidth_q95);
  }
  if (hw.size() != sizes.size()) return {false, "win_rate4 rows missing"};
  bool monotone = true;
  for (std::size_t i = 1; i < hw.size(); ++i) monotone = monotone && hw[i] < hw[i - 1];
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < hw.size(); ++i) {
    mx += std::log(static_cast<double>(sizes[i])) / static_cast<double>(hw.size());
    my += std::log(hw[i]) / static_cast<double>(hw.size());
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < hw.size(); ++i) {
    const double dx = std::log(static_cast<double>(sizes[i])) - mx;
    sxy += dx * (std::log(hw[i]) - my);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  const double at2000 = hw[3];
  return {monotone && std::abs(slope + 0.5) <= 0.1 && at2000 < 0.025,
          fmt("monotone %s, log-log slope %.4f, halfwidth at 2000 %.5f", monotone ? "yes" : "no", slope, at2000)};
}

// ---------------------------------------------------------------- 9

Verdict ocd_behaviour() {
  OCDParams p;
  std::size_t constant_at = 0;
  {
    ConvergenceDetector d(p);
    for (std::size_t g = 1; g <= 10 * p.window && constant_at == 0; ++g) {
      const std::vector<double> v(p.indicators.size(), 0.25);
      if (d.update(v) == Decision::Converged) constant_at = g;
    }
  }
  bool linear_stops = false;
  {
    ConvergenceDetector d(p);
    for (std::size_t g = 1; g <= 10 * p.window; ++g) {
      const std::vector<double> v(p.indicators.size(), 0.01 * static_cast<double>(g));
      linear_stops = linear_stops || d.update(v) == Decision::Converged;
    }
  }
  const auto& s = approach(desk_experiment().report, "S10");
  bool in_range = s.complete;
  std::string evals;
  for (const auto& r : s.runs) {
    in_range = in_range && r.stop_reason == "converged" && r.n_evals >= 1'000 && r.n_evals <= 100'000;
    evals += fmt("%s%zu", evals.empty() ? "" : " ", r.n_evals);
  }
  return {constant_at == p.window + 1 && !linear_stops && in_range,
          fmt("constant stream converges at generation %zu (window %zu); linear stream converged: %s; S10 stops at %s",
              constant_at, p.window, linear_stops ? "yes" : "no", evals.c_str())};
}

// ---------------------------------------------------------------- 10

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Concatenated stdout plus every file under `dir`, in path order.
std::string run_capture(const std::string& cli, const std::string& args, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto out = dir / "stdout.txt";
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  if (std::system(cmd.c_str()) != 0) throw std::runtime_error("command failed: " + args);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + slurp(f);
  return all;
}

Verdict cli_determinism() {
#ifndef DECKBAL_CLI_PATH
  return {false, "CLI not built"};
#else
  namespace fs = std::filesystem;
  const std::string cli = DECKBAL_CLI_PATH;
  const fs::path root = fs::temp_directory_path() / "deckbal_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root / "in");
  Rng rng(10);
  const auto deck = (root / "in" / "deck.csv").string();
  save_deck(random_valid_deck(kShape, rng), deck);
  for (int r = 0; r < 3; ++r) {
    std::vector<Point> a, b;
    for (int i = 0; i < 6; ++i) {
      a.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
      b.push_back({rng.uniform01() + 0.1, rng.uniform01(), rng.uniform01()});
    }
    save_front_csv(nondominated_subset(a), root / "in" / fmt("a_%d.csv", r));
    save_front_csv(nondominated_subset(b), root / "in" / fmt("b_%d.csv", r));
  }
  const auto cfg = (root / "in" / "exp.cfg").string();
  {
    std::ofstream out(cfg);
    out << "approaches = S10, D10\nruns = 2\neval_games = 100\nmax_evals = 2000\nmaster_seed = 4\n"
           "permutations = 200\nsynthetic_reference = 2\n";
  }
  const std::string in = (root / "in").string();
  struct Cmd {
    std::string name, args;
  };
  const std::vector<Cmd> cmds{
      {"simulate", "simulate --deck " + deck + " --games 500 --seed 3"},
      {"simulate-p0p0", "simulate --deck " + deck + " --games 500 --seed 3 --policies p0p0 --rescale"},
      {"optimize-S", "optimize --objective S --mu 10 --evals 1500 --seed 5 --out OUT"},
      {"optimize-B", "optimize --objective B --mu 10 --evals 120 --games 50 --seed 5 --out OUT"},
      {"experiment", "experiment --config " + cfg + " --out OUT --workers 3"},
      {"indicators", "indicators --fronts '" + in + "/a_*.csv' --refset " + in + "/b_0.csv"},
      {"eaf", "eaf --group-a '" + in + "/a_*.csv' --group-b '" + in + "/b_*.csv' --permutations 500 --seed 9 --out OUT"},
      {"sample-size", "sample-size --deck " + deck + " --sizes 100,200,400 --repeats 20 --seed 2"},
  };
  std::string mismatched;
  for (const auto& c : cmds) {
    std::string first, second;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / fmt("%s_%d", c.name.c_str(), rep);
      std::string args = c.args;
      if (const auto at = args.find("OUT"); at != std::string::npos) args.replace(at, 3, (dir / "out").string());
      const std::string text = run_capture(cli, args, dir);
      // Paths differ between the two output directories; compare relative content only.
      (rep == 0 ? first : second) = text;
    }
    if (first != second || first.empty()) mismatched += " " + c.name;
  }
  fs::remove_all(root);
  return {mismatched.empty(), mismatched.empty() ? fmt("%zu commands byte-identical across reruns", cmds.size())
                                                 : "differs:" + mismatched};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deckbal acceptance checks"};
  std::vector<int> only, expect_fail;
  app.add_option("--only", only, "Criteria to run")->delimiter(',');
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"f_D optimum reached", dominance_optimum},
      {"self-play fairness", self_play_fairness},
      {"skill gap direction", skill_gap},
      {"hypervolume oracles", hypervolume_oracles},
      {"operator laws", operator_laws},
      {"S10 front dominates D10 union", multi_vs_single},
      {"EAF correctness and calibration", eaf_checks},
      {"sample-size knee", sample_size_knee},
      {"convergence detection", ocd_behaviour},
      {"CLI determinism", cli_determinism},
  };
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  bool ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = expected.count(id) > 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
              << "): " << o.detail << (known && !o.pass ? " [expected failure]" : "") << std::endl;
    if (o.pass == known) ok = false;
  }
  return ok ? 0 : 1;
}
