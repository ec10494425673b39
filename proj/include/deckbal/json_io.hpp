#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "deckbal/eaf.hpp"
#include "deckbal/game.hpp"
#include "deckbal/moea.hpp"

namespace deckbal {

nlohmann::json to_json(const DeckShape& shape);
nlohmann::json to_json(const SimulationSummary& summary);
nlohmann::json to_json(const EAConfig& config);
nlohmann::json to_json(const RunResult& run);
nlohmann::json to_json(const EAFTestResult& result);

/// Canonical one-line description of a run configuration; its hash tags artifacts.
std::string canonical_text(const EAConfig& config);
std::uint64_t config_hash(const EAConfig& config);

std::string hex64(std::uint64_t value);

/// Pretty-printed with a trailing newline; identical inputs give identical bytes.
std::string dump_json(const nlohmann::json& j);

}  // namespace deckbal
