#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deckbal/random.hpp"

namespace deckbal {

/// Card count, category count and the closed value range shared by all cards.
struct DeckShape {
  std::size_t cards = 32;
  std::size_t categories = 4;
  double lo = 1.0;
  double hi = 10.0;

  std::size_t genes() const noexcept { return cards * categories; }

  /// Throws UsageError unless cards is even and positive, categories > 0 and lo < hi.
  void validate() const;

  friend bool operator==(const DeckShape&, const DeckShape&) = default;
};

struct Card {
  std::vector<double> values;

  friend bool operator==(const Card&, const Card&) = default;
};

/// True iff `a` holds a strictly larger value than `b` in every category.
bool card_dominates(const Card& a, const Card& b);

/// A deck candidate. Validity (unique cards, no dominant card) is reported by
/// deck_is_valid rather than enforced on construction so that variation
/// operators can produce and inspect candidates.
struct Deck {
  DeckShape shape;
  std::vector<Card> cards;
  std::vector<std::string> card_names;      // empty or one per card
  std::vector<std::string> category_names;  // empty or one per category

  std::size_t size() const noexcept { return cards.size(); }
  const Card& operator[](std::size_t k) const { return cards[k]; }
};

struct ValidityReport {
  bool valid = true;
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_pairs;
  std::optional<std::size_t> dominant_card;
};

ValidityReport deck_is_valid(const Deck& deck);

/// Flat gene vector of length cards*categories, card-major.
using Genome = std::vector<double>;

Deck genome_to_deck(std::span<const double> genes, const DeckShape& shape);
Genome deck_to_genome(const Deck& deck);

inline constexpr std::size_t kMaxDeckDraws = 10'000;

/// Uniform genes on [lo, hi], redrawn until the deck is valid.
Deck random_valid_deck(const DeckShape& shape, Rng& rng);

struct DeckLoadOptions {
  bool rescale = false;  // map each category's raw [min, max] onto [lo, hi]
  double lo = 1.0;
  double hi = 10.0;
};

Deck parse_deck(std::istream& in, const DeckLoadOptions& options = {});
Deck load_deck(const std::filesystem::path& path, const DeckLoadOptions& options = {});

void write_deck(const Deck& deck, std::ostream& out);
void save_deck(const Deck& deck, const std::filesystem::path& path);

}  // namespace deckbal
