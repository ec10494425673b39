#include "deckbal/deck.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "deckbal/error.hpp"
#include "deckbal/serialize.hpp"

namespace deckbal {

void DeckShape::validate() const {
  if (cards < 2 || cards % 2 != 0) {
    throw UsageError("deck shape: card count must be even and >= 2, got " + std::to_string(cards));
  }
  if (categories < 1) throw UsageError("deck shape: need at least one category");
  if (!(lo < hi)) throw UsageError("deck shape: value range requires lo < hi");
}

bool card_dominates(const Card& a, const Card& b) {
  if (a.values.size() != b.values.size()) {
    throw UsageError("card_dominates: cards have different category counts");
  }
  for (std::size_t l = 0; l < a.values.size(); ++l) {
    if (!(a.values[l] > b.values[l])) return false;
  }
  return !a.values.empty();
}

ValidityReport deck_is_valid(const Deck& deck) {
  ValidityReport report;
  const auto& cards = deck.cards;
  const std::size_t k = cards.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cards[i] == cards[j]) report.duplicate_pairs.emplace_back(i, j);
    }
  }
  if (k >= 2) {
    for (std::size_t i = 0; i < k; ++i) {
      bool beats_all = true;
      for (std::size_t j = 0; j < k && beats_all; ++j) {
        if (j != i && !card_dominates(cards[i], cards[j])) beats_all = false;
      }
      if (beats_all) {
        report.dominant_card = i;
        break;  // at most one card can beat every other
      }
    }
  }
  report.valid = report.duplicate_pairs.empty() && !report.dominant_card;
  return report;
}

Deck genome_to_deck(std::span<const double> genes, const DeckShape& shape) {
  if (genes.size() != shape.genes()) {
    throw UsageError("genome_to_deck: expected " + std::to_string(shape.genes()) +
                     " genes, got " + std::to_string(genes.size()));
  }
  Deck deck;
  deck.shape = shape;
  deck.cards.reserve(shape.cards);
  for (std::size_t k = 0; k < shape.cards; ++k) {
    const auto row = genes.subspan(k * shape.categories, shape.categories);
    deck.cards.push_back(Card{{row.begin(), row.end()}});
  }
  return deck;
}

Genome deck_to_genome(const Deck& deck) {
  Genome genes;
  genes.reserve(deck.cards.size() * deck.shape.categories);
  for (const auto& card : deck.cards) {
    genes.insert(genes.end(), card.values.begin(), card.values.end());
  }
  return genes;
}

Deck random_valid_deck(const DeckShape& shape, Rng& rng) {
  shape.validate();
  Genome genes(shape.genes());
  for (std::size_t attempt = 0; attempt < kMaxDeckDraws; ++attempt) {
    for (auto& g : genes) g = rng.uniform(shape.lo, shape.hi);
    Deck deck = genome_to_deck(genes, shape);
    if (deck_is_valid(deck).valid) return deck;
  }
  throw GenerationError("random_valid_deck: no valid deck after " +
                        std::to_string(kMaxDeckDraws) + " draws");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

Deck parse_deck(std::istream& in, const DeckLoadOptions& options) {
  if (!(options.lo < options.hi)) throw UsageError("parse_deck: value range requires lo < hi");
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.size() < 2) throw ParseError("deck header needs a name column and at least one category", line_no);

  Deck deck;
  const std::size_t n_cat = header.size() - 1;
  for (std::size_t l = 1; l < header.size(); ++l) deck.category_names.push_back(trim(header[l]));

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != n_cat + 1) {
      throw ParseError("row '" + trim(cells.empty() ? std::string{} : cells[0]) + "' has " +
                           std::to_string(cells.size() - 1) + " values, expected " + std::to_string(n_cat),
                       line_no);
    }
    Card card;
    card.values.reserve(n_cat);
    for (std::size_t l = 1; l < cells.size(); ++l) {
      const std::string cell = trim(cells[l]);
      const auto value = parse_double(cell);
      if (!value) throw ParseError("non-numeric value '" + cell + "' in column " + std::to_string(l + 1), line_no);
      card.values.push_back(*value);
    }
    deck.card_names.push_back(trim(cells[0]));
    deck.cards.push_back(std::move(card));
  }
  if (deck.cards.empty()) throw ParseError("deck file has no card rows", line_no);
  if (deck.cards.size() % 2 != 0) throw ParseError("deck needs an even number of cards", line_no);

  deck.shape = DeckShape{deck.cards.size(), n_cat, options.lo, options.hi};

  if (options.rescale) {
    const double span = options.hi - options.lo;
    for (std::size_t l = 0; l < n_cat; ++l) {
      double mn = std::numeric_limits<double>::infinity();
      double mx = -mn;
      for (const auto& c : deck.cards) {
        mn = std::min(mn, c.values[l]);
        mx = std::max(mx, c.values[l]);
      }
      for (auto& c : deck.cards) {
        double& v = c.values[l];
        if (mx == mn) {
          v = 0.5 * (options.lo + options.hi);
        } else if (v == mx) {
          v = options.hi;
        } else {
          v = options.lo + (v - mn) / (mx - mn) * span;
        }
      }
    }
  } else {
    for (std::size_t k = 0; k < deck.cards.size(); ++k) {
      for (const double v : deck.cards[k].values) {
        if (v < options.lo || v > options.hi) {
          throw ParseError("value " + format_double(v) + " of card '" + deck.card_names[k] +
                               "' lies outside [" + format_double(options.lo) + ", " +
                               format_double(options.hi) + "]; use rescaling",
                           k + 2);
        }
      }
    }
  }
  return deck;
}

Deck load_deck(const std::filesystem::path& path, const DeckLoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open deck file " + path.string());
  return parse_deck(in, options);
}

void write_deck(const Deck& deck, std::ostream& out) {
  const std::size_t n_cat = deck.cards.empty() ? deck.shape.categories : deck.cards.front().values.size();
  out << "name";
  for (std::size_t l = 0; l < n_cat; ++l) {
    out << ',' << (l < deck.category_names.size() ? deck.category_names[l] : "c" + std::to_string(l + 1));
  }
  out << '\n';
  for (std::size_t k = 0; k < deck.cards.size(); ++k) {
    out << (k < deck.card_names.size() ? deck.card_names[k] : "card" + std::to_string(k + 1));
    for (const double v : deck.cards[k].values) out << ',' << format_double(v);
    out << '\n';
  }
}

void save_deck(const Deck& deck, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write deck file " + path.string());
  write_deck(deck, out);
}

}  // namespace deckbal
