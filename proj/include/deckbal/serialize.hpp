#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckbal/pareto.hpp"

namespace deckbal {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full decimal string ('.' separator, no thousands separators).
std::optional<double> parse_double(std::string_view text);

/// Front file: header `f1,...,fm`, one point per row.
void write_front_csv(const std::vector<Point>& points, std::ostream& out, std::size_t dims = 0);
void save_front_csv(const std::vector<Point>& points, const std::filesystem::path& path, std::size_t dims = 0);
std::vector<Point> read_front_csv(std::istream& in);
std::vector<Point> load_front_csv(const std::filesystem::path& path);

/// Files in the pattern's directory whose names match its final component
/// (shell wildcards `*`, `?`, `[...]`), sorted by path.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

}  // namespace deckbal
