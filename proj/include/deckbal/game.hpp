#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "deckbal/deck.hpp"

namespace deckbal {

/// Seat of the informed agent ("p4") and of the range-only agent ("p0").
/// In self-play both seats may run the same policy; the seat names stay.
enum class Seat { P4, P0 };

enum class PolicyKind {
  Informed,   // knows every card value and remembers what has been played
  RangeOnly,  // knows only the value range and looks at its own card
};

struct Policies {
  PolicyKind p4 = PolicyKind::Informed;
  PolicyKind p0 = PolicyKind::RangeOnly;
};

struct Deal {
  std::vector<std::size_t> hand4;  // card indices, played front to back
  std::vector<std::size_t> hand0;
  Seat starter = Seat::P4;
};

enum class Outcome { Win4, Draw, Win0 };

struct GameResult {
  int t4 = 0;     // tricks won by seat P4
  int t0 = 0;     // tricks won by seat P0
  int ties = 0;   // tricks with equal values in the announced category
  int tc = 0;     // announcer changes
  Outcome outcome = Outcome::Draw;
  double tightness = 0.0;  // |2*t4 - K/2|

  friend bool operator==(const GameResult&, const GameResult&) = default;
};

struct TrickRecord {
  Seat announcer;
  std::size_t category;
  std::optional<Seat> winner;  // empty on a tie
};

/// Estimated win chance per category for the range-only agent: the card's
/// position within [lo, hi].
std::vector<double> range_only_estimate(const Card& card, const DeckShape& shape);

/// Estimated win chance per category for the informed agent: the share of
/// the opponent's unplayed cards holding a strictly lower value.
std::vector<double> informed_estimate(const Card& card, std::span<const Card> opponent_remaining);

/// Plays the fixed-length variant: K/2 tricks, each card played once.
/// Deterministic; `trace`, when given, receives one record per trick.
GameResult play_game(const Deck& deck, const Deal& deal, Policies policies,
                     std::vector<TrickRecord>* trace = nullptr);

/// Shuffles the deck, gives the first half to P4 and draws the starter.
Deal random_deal(std::size_t cards, Rng& rng);

struct SimulationSummary {
  std::size_t games = 0;
  double win_rate4 = 0.0;
  double draw_rate = 0.0;
  double loss_rate = 0.0;
  double mean_tc = 0.0;
  double mean_tightness = 0.0;
  std::vector<GameResult> per_game;  // filled only on request
};

struct SimulateOptions {
  bool keep_games = false;
  unsigned threads = 1;
};

/// Monte Carlo estimate over `games` random deals. Game g draws its deal
/// from the substream (seed, g), so results do not depend on `threads`.
SimulationSummary simulate(const Deck& deck, Policies policies, std::size_t games, std::uint64_t seed,
                           const SimulateOptions& options = {});

}  // namespace deckbal
