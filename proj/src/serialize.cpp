#include "deckbal/serialize.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "deckbal/error.hpp"

namespace deckbal {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return {buf.data(), end};
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

void write_front_csv(const std::vector<Point>& points, std::ostream& out, std::size_t dims) {
  if (dims == 0 && !points.empty()) dims = points.front().size();
  for (std::size_t j = 0; j < dims; ++j) out << (j ? "," : "") << 'f' << (j + 1);
  out << '\n';
  for (const auto& p : points) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << format_double(p[j]);
    out << '\n';
  }
}

void save_front_csv(const std::vector<Point>& points, const std::filesystem::path& path, std::size_t dims) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write front file " + path.string());
  write_front_csv(points, out, dims);
}

std::vector<Point> read_front_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dims = 0;
  std::vector<Point> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (dims == 0) {
      dims = cells.size();
      if (dims == 0) throw ParseError("empty front header", line_no);
      continue;
    }
    if (cells.size() != dims) {
      throw ParseError("front row has " + std::to_string(cells.size()) + " columns, expected " +
                           std::to_string(dims),
                       line_no);
    }
    Point p;
    p.reserve(dims);
    for (const auto& cell : cells) {
      const auto v = parse_double(cell);
      if (!v) throw ParseError("non-numeric front value '" + cell + "'", line_no);
      p.push_back(*v);
    }
    points.push_back(std::move(p));
  }
  if (dims == 0) throw ParseError("front file has no header", line_no);
  return points;
}

std::vector<Point> load_front_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open front file " + path.string());
  return read_front_csv(in);
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  namespace fs = std::filesystem;
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string name = p.filename().string();
  std::vector<fs::path> matches;
  if (!fs::is_directory(dir)) return matches;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (fnmatch(name.c_str(), entry.path().filename().string().c_str(), 0) == 0) {
      matches.push_back(p.has_parent_path() ? entry.path() : entry.path().filename());
    }
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

}  // namespace deckbal
