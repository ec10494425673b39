#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deckbal/deck.hpp"
#include "deckbal/game.hpp"

namespace deckbal {

/// Objective values in minimization orientation.
using ObjectiveVector = std::vector<double>;

enum class ObjectiveKind {
  DominanceD,   // 1 objective: mean count of non-dominating cards
  SimulationB,  // 3 objectives from simulated games
  SurrogateS,   // 2 objectives: deck hypervolume and spread of category means
};

std::size_t objective_count(ObjectiveKind kind);
std::vector<std::string> objective_labels(ObjectiveKind kind);
char objective_letter(ObjectiveKind kind);
ObjectiveKind parse_objective(std::string_view text);  // "D", "B" or "S"

/// Minus the mean, over cards k, of the number of other cards that do not
/// dominate card k. Ranges over [-(K-1), 0]; -(K-1) iff no card is dominated.
ObjectiveVector dominance_objective(const Deck& deck);

/// (-p4 win rate, -mean announcer changes, mean tightness).
ObjectiveVector balance_objectives(const SimulationSummary& summary);

/// Volume of the union of boxes [ref, card] (maximization orientation).
/// Throws UsageError unless every card lies strictly above `ref`.
double deck_hypervolume(const Deck& deck, std::span<const double> ref);

/// (-deck hypervolume w.r.t. the origin, -sample sd of the category means).
ObjectiveVector surrogate_objectives(const Deck& deck);

}  // namespace deckbal
