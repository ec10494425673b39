#include "deckbal/objectives.hpp"

#include <cmath>

#include "deckbal/error.hpp"
#include "deckbal/hypervolume.hpp"

namespace deckbal {

std::size_t objective_count(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::DominanceD: return 1;
    case ObjectiveKind::SimulationB: return 3;
    case ObjectiveKind::SurrogateS: return 2;
  }
  return 0;
}

std::vector<std::string> objective_labels(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::DominanceD: return {"neg_nondominance"};
    case ObjectiveKind::SimulationB: return {"neg_win_rate4", "neg_mean_tc", "mean_tightness"};
    case ObjectiveKind::SurrogateS: return {"neg_hypervolume", "neg_sd_category_means"};
  }
  return {};
}

char objective_letter(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::DominanceD: return 'D';
    case ObjectiveKind::SimulationB: return 'B';
    case ObjectiveKind::SurrogateS: return 'S';
  }
  return '?';
}

ObjectiveKind parse_objective(std::string_view text) {
  if (text == "D" || text == "d") return ObjectiveKind::DominanceD;
  if (text == "B" || text == "b") return ObjectiveKind::SimulationB;
  if (text == "S" || text == "s") return ObjectiveKind::SurrogateS;
  throw UsageError("unknown objective '" + std::string(text) + "' (expected D, B or S)");
}

ObjectiveVector dominance_objective(const Deck& deck) {
  const auto& cards = deck.cards;
  const std::size_t k = cards.size();
  if (k == 0) throw UsageError("dominance_objective: empty deck");
  std::size_t not_dominating = 0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      if (i != c && !card_dominates(cards[i], cards[c])) ++not_dominating;
    }
  }
  return {-static_cast<double>(not_dominating) / static_cast<double>(k)};
}

ObjectiveVector balance_objectives(const SimulationSummary& summary) {
  return {-summary.win_rate4, -summary.mean_tc, summary.mean_tightness};
}

double deck_hypervolume(const Deck& deck, std::span<const double> ref) {
  std::vector<Point> negated;
  negated.reserve(deck.cards.size());
  Point neg_ref(ref.size());
  for (std::size_t l = 0; l < ref.size(); ++l) neg_ref[l] = -ref[l];
  for (const auto& card : deck.cards) {
    if (card.values.size() != ref.size()) throw UsageError("deck_hypervolume: reference dimension mismatch");
    Point p(card.values.size());
    for (std::size_t l = 0; l < p.size(); ++l) {
      if (!(card.values[l] > ref[l])) {
        throw UsageError("deck_hypervolume: every card must lie strictly above the reference point");
      }
      p[l] = -card.values[l];
    }
    negated.push_back(std::move(p));
  }
  return hypervolume_exact(negated, neg_ref);
}

ObjectiveVector surrogate_objectives(const Deck& deck) {
  const std::size_t n_cat = deck.shape.categories;
  const Point origin(n_cat, 0.0);
  const double hv = deck_hypervolume(deck, origin);

  std::vector<double> means(n_cat, 0.0);
  for (const auto& card : deck.cards) {
    for (std::size_t l = 0; l < n_cat; ++l) means[l] += card.values[l];
  }
  for (auto& m : means) m /= static_cast<double>(deck.cards.size());

  double sd = 0.0;
  if (n_cat >= 2) {
    double grand = 0.0;
    for (const double m : means) grand += m;
    grand /= static_cast<double>(n_cat);
    double ss = 0.0;
    for (const double m : means) ss += (m - grand) * (m - grand);
    sd = std::sqrt(ss / static_cast<double>(n_cat - 1));
  }
  return {-hv, -sd};
}

}  // namespace deckbal
