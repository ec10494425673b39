#include "deckbal/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "deckbal/error.hpp"

namespace deckbal {

std::vector<double> range_only_estimate(const Card& card, const DeckShape& shape) {
  std::vector<double> est(card.values.size());
  const double width = shape.hi - shape.lo;
  for (std::size_t l = 0; l < est.size(); ++l) est[l] = (card.values[l] - shape.lo) / width;
  return est;
}

std::vector<double> informed_estimate(const Card& card, std::span<const Card> opponent_remaining) {
  if (opponent_remaining.empty()) throw UsageError("informed_estimate: opponent has no cards left");
  std::vector<double> est(card.values.size(), 0.0);
  for (const auto& other : opponent_remaining) {
    if (other.values.size() != card.values.size()) throw UsageError("informed_estimate: category count mismatch");
    for (std::size_t l = 0; l < est.size(); ++l) {
      if (other.values[l] < card.values[l]) est[l] += 1.0;
    }
  }
  const double n = static_cast<double>(opponent_remaining.size());
  for (auto& e : est) e /= n;
  return est;
}

namespace {

void check_deal(const Deal& deal, std::size_t k) {
  if (deal.hand4.size() != k / 2 || deal.hand0.size() != k / 2) {
    throw UsageError("play_game: each hand must hold exactly K/2 cards");
  }
  std::vector<bool> seen(k, false);
  for (const auto* hand : {&deal.hand4, &deal.hand0}) {
    for (const auto idx : *hand) {
      if (idx >= k || seen[idx]) throw UsageError("play_game: deal is not a disjoint cover of the deck");
      seen[idx] = true;
    }
  }
}

// First category with the largest estimate.
std::size_t argmax_category(const std::vector<double>& est) {
  return static_cast<std::size_t>(std::max_element(est.begin(), est.end()) - est.begin());
}

std::size_t choose_category(const Deck& deck, PolicyKind policy, std::size_t own_card,
                            std::span<const std::size_t> opponent_unplayed) {
  const Card& card = deck.cards[own_card];
  if (policy == PolicyKind::RangeOnly) return argmax_category(range_only_estimate(card, deck.shape));

  // Counts are enough for the argmax; the shared denominator cancels.
  std::vector<double> below(card.values.size(), 0.0);
  for (const auto j : opponent_unplayed) {
    const auto& other = deck.cards[j].values;
    for (std::size_t l = 0; l < below.size(); ++l) {
      if (other[l] < card.values[l]) below[l] += 1.0;
    }
  }
  return argmax_category(below);
}

}  // namespace

GameResult play_game(const Deck& deck, const Deal& deal, Policies policies, std::vector<TrickRecord>* trace) {
  const std::size_t k = deck.cards.size();
  if (k < 2 || k % 2 != 0) throw UsageError("play_game: deck needs an even number of cards");
  check_deal(deal, k);

  GameResult result;
  Seat announcer = deal.starter;
  const std::size_t tricks = k / 2;
  if (trace) trace->clear();

  for (std::size_t t = 0; t < tricks; ++t) {
    const std::size_t card4 = deal.hand4[t];
    const std::size_t card0 = deal.hand0[t];
    const bool p4_announces = announcer == Seat::P4;
    const std::span<const std::size_t> rest4(deal.hand4.data() + t, tricks - t);
    const std::span<const std::size_t> rest0(deal.hand0.data() + t, tricks - t);

    const std::size_t category = p4_announces ? choose_category(deck, policies.p4, card4, rest0)
                                              : choose_category(deck, policies.p0, card0, rest4);
    const double v4 = deck.cards[card4].values[category];
    const double v0 = deck.cards[card0].values[category];

    std::optional<Seat> winner;
    if (v4 > v0) {
      winner = Seat::P4;
      ++result.t4;
    } else if (v0 > v4) {
      winner = Seat::P0;
      ++result.t0;
    } else {
      ++result.ties;
    }
    if (trace) trace->push_back({announcer, category, winner});
    if (winner && *winner != announcer) {
      ++result.tc;
      announcer = *winner;
    }
  }

  result.outcome = result.t4 > result.t0 ? Outcome::Win4 : (result.t4 == result.t0 ? Outcome::Draw : Outcome::Win0);
  result.tightness = std::abs(2.0 * result.t4 - static_cast<double>(tricks));
  return result;
}

Deal random_deal(std::size_t cards, Rng& rng) {
  std::vector<std::size_t> order(cards);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  Deal deal;
  deal.hand4.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cards / 2));
  deal.hand0.assign(order.begin() + static_cast<std::ptrdiff_t>(cards / 2), order.end());
  deal.starter = rng.below(2) == 0 ? Seat::P4 : Seat::P0;
  return deal;
}

namespace {

struct Tally {
  std::size_t wins = 0;
  std::size_t draws = 0;
  double tc = 0.0;
  double tightness = 0.0;
};

}  // namespace

SimulationSummary simulate(const Deck& deck, Policies policies, std::size_t games, std::uint64_t seed,
                           const SimulateOptions& options) {
  if (games < 1) throw UsageError("simulate: need at least one game");
  const std::size_t k = deck.cards.size();
  if (k < 2 || k % 2 != 0) throw UsageError("simulate: deck needs an even number of cards");

  SimulationSummary summary;
  summary.games = games;
  if (options.keep_games) summary.per_game.resize(games);

  const Rng master(seed);
  auto run_range = [&](std::size_t begin, std::size_t end, Tally& tally) {
    for (std::size_t g = begin; g < end; ++g) {
      Rng rng = master.substream(g);
      const GameResult r = play_game(deck, random_deal(k, rng), policies);
      if (r.outcome == Outcome::Win4) ++tally.wins;
      if (r.outcome == Outcome::Draw) ++tally.draws;
      tally.tc += r.tc;
      tally.tightness += r.tightness;
      if (options.keep_games) summary.per_game[g] = r;
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(games)));
  std::vector<Tally> tallies(threads);
  if (threads == 1) {
    run_range(0, games, tallies[0]);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (games + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(games, w * chunk);
      const std::size_t end = std::min(games, begin + chunk);
      workers.emplace_back([&, begin, end, w] { run_range(begin, end, tallies[w]); });
    }
  }

  // Every summand is integer-valued, so the reduction is exact in any order.
  Tally total;
  for (const auto& t : tallies) {
    total.wins += t.wins;
    total.draws += t.draws;
    total.tc += t.tc;
    total.tightness += t.tightness;
  }
  const double n = static_cast<double>(games);
  summary.win_rate4 = static_cast<double>(total.wins) / n;
  summary.draw_rate = static_cast<double>(total.draws) / n;
  summary.loss_rate = static_cast<double>(games - total.wins - total.draws) / n;
  summary.mean_tc = total.tc / n;
  summary.mean_tightness = total.tightness / n;
  return summary;
}

}  // namespace deckbal
