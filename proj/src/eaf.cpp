#include "deckbal/eaf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "deckbal/error.hpp"
#include "deckbal/random.hpp"

namespace deckbal {

std::size_t RunGroup::dims() const {
  for (const auto& f : fronts) {
    if (!f.empty()) return f.dims();
  }
  return 0;
}

void RunGroup::validate() const {
  if (fronts.empty()) throw UsageError("run group '" + label + "' has no runs");
  const std::size_t m = dims();
  if (m == 0) throw UsageError("run group '" + label + "' has no points");
  for (const auto& f : fronts) {
    for (const auto& p : f.points) {
      if (p.size() != m) throw UsageError("run group '" + label + "' mixes objective counts");
    }
  }
}

double eaf_value(const RunGroup& group, std::span<const double> z) {
  group.validate();
  if (z.size() != group.dims()) throw UsageError("eaf_value: dimension mismatch");
  std::size_t hits = 0;
  for (const auto& f : group.fronts) {
    const bool attained = std::any_of(f.points.begin(), f.points.end(),
                                      [&](const Point& p) { return weakly_dominates(p, z); });
    if (attained) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(group.fronts.size());
}

namespace {

constexpr std::size_t kMaxGridCells = 50'000'000;

// Grid of coordinate combinations with one attainment bit per run per cell.
class AttainmentGrid {
 public:
  AttainmentGrid(std::span<const FrontSet* const> runs, std::size_t dims) : dims_(dims), runs_(runs.size()) {
    coords_.resize(dims);
    for (const auto* f : runs) {
      for (const auto& p : f->points) {
        for (std::size_t j = 0; j < dims; ++j) coords_[j].push_back(p[j]);
      }
    }
    cells_ = 1;
    strides_.resize(dims);
    for (std::size_t j = dims; j-- > 0;) {
      auto& c = coords_[j];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      strides_[j] = cells_;
      if (cells_ > kMaxGridCells / std::max<std::size_t>(1, c.size())) {
        throw UnsupportedError("attainment grid too large; reduce the number of points");
      }
      cells_ *= c.size();
    }
    words_ = (runs_ + 63) / 64;
    bits_.assign(cells_ * words_, 0);

    std::vector<std::uint8_t> hit(cells_);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::fill(hit.begin(), hit.end(), 0);
      for (const auto& p : runs[r]->points) hit[cell_of(p)] = 1;
      // Prefix-OR along each axis: a cell is attained when some point lies
      // at or below it in every coordinate.
      for (std::size_t j = 0; j < dims; ++j) {
        const std::size_t stride = strides_[j];
        const std::size_t extent = coords_[j].size();
        for (std::size_t cell = 0; cell < cells_; ++cell) {
          if ((cell / stride) % extent != 0 && hit[cell - stride]) hit[cell] = 1;
        }
      }
      for (std::size_t cell = 0; cell < cells_; ++cell) {
        if (hit[cell]) bits_[cell * words_ + r / 64] |= std::uint64_t{1} << (r % 64);
      }
    }
  }

  std::size_t cells() const { return cells_; }
  std::size_t words() const { return words_; }
  std::span<const std::uint64_t> mask(std::size_t cell) const { return {bits_.data() + cell * words_, words_}; }

  std::size_t count(std::size_t cell) const {
    std::size_t c = 0;
    for (const auto w : mask(cell)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::size_t index(std::size_t cell, std::size_t j) const { return (cell / strides_[j]) % coords_[j].size(); }
  std::size_t stride(std::size_t j) const { return strides_[j]; }

  Point point(std::size_t cell) const {
    Point p(dims_);
    for (std::size_t j = 0; j < dims_; ++j) p[j] = coords_[j][index(cell, j)];
    return p;
  }

 private:
  std::size_t cell_of(const Point& p) const {
    std::size_t cell = 0;
    for (std::size_t j = 0; j < dims_; ++j) {
      const auto it = std::lower_bound(coords_[j].begin(), coords_[j].end(), p[j]);
      cell += static_cast<std::size_t>(it - coords_[j].begin()) * strides_[j];
    }
    return cell;
  }

  std::size_t dims_;
  std::size_t runs_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

std::vector<const FrontSet*> run_pointers(const RunGroup& g) {
  std::vector<const FrontSet*> out;
  for (const auto& f : g.fronts) out.push_back(&f);
  return out;
}

}  // namespace

FrontSet attainment_surface(const RunGroup& group, double level) {
  if (!(level > 0.0 && level <= 1.0)) throw UsageError("attainment_surface: level must lie in (0, 1]");
  group.validate();
  const std::size_t m = group.dims();
  const auto runs = run_pointers(group);
  const AttainmentGrid grid(runs, m);
  const double need = level * static_cast<double>(runs.size()) - 1e-9;

  auto attained = [&](std::size_t cell) { return static_cast<double>(grid.count(cell)) >= need; };
  FrontSet surface;
  surface.origin = group.label;
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    if (!attained(cell)) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < m && minimal; ++j) {
      if (grid.index(cell, j) > 0 && attained(cell - grid.stride(j))) minimal = false;
    }
    if (minimal) surface.points.push_back(grid.point(cell));
  }
  return surface;
}

EAFTestResult eaf_test(const RunGroup& a, const RunGroup& b, std::size_t permutations, double alpha,
                       std::uint64_t seed) {
  a.validate();
  b.validate();
  if (a.fronts.size() < 2 || b.fronts.size() < 2) throw UsageError("eaf_test: each group needs at least 2 runs");
  if (a.dims() != b.dims()) throw UsageError("eaf_test: groups differ in objective count");
  if (permutations < 1) throw UsageError("eaf_test: need at least one permutation");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("eaf_test: alpha must lie in (0, 1)");

  auto runs = run_pointers(a);
  for (const auto* f : run_pointers(b)) runs.push_back(f);
  const std::size_t na = a.fronts.size();
  const std::size_t nb = b.fronts.size();
  const std::size_t n = na + nb;
  const AttainmentGrid grid(runs, a.dims());
  const std::size_t words = grid.words();

  // Only distinct attainment patterns matter; all-or-nothing ones never differ.
  std::vector<std::vector<std::uint64_t>> patterns;
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    const std::size_t c = grid.count(cell);
    if (c == 0 || c == n) continue;
    const auto m = grid.mask(cell);
    patterns.emplace_back(m.begin(), m.end());
  }
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());

  // Scaled statistic |cA*nB - cB*nA| keeps every comparison in integers.
  auto scaled_statistic = [&](const std::vector<std::uint64_t>& in_a) {
    std::size_t best = 0;
    for (const auto& pat : patterns) {
      std::size_t ca = 0;
      std::size_t total = 0;
      for (std::size_t w = 0; w < words; ++w) {
        ca += static_cast<std::size_t>(std::popcount(pat[w] & in_a[w]));
        total += static_cast<std::size_t>(std::popcount(pat[w]));
      }
      const std::size_t cb = total - ca;
      const std::size_t lhs = ca * nb;
      const std::size_t rhs = cb * na;
      best = std::max(best, lhs > rhs ? lhs - rhs : rhs - lhs);
    }
    return best;
  };

  std::vector<std::uint64_t> labels(words, 0);
  for (std::size_t r = 0; r < na; ++r) labels[r / 64] |= std::uint64_t{1} << (r % 64);
  const std::size_t observed = scaled_statistic(labels);

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> permuted(permutations);
  std::size_t at_least = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    std::fill(labels.begin(), labels.end(), 0);
    for (std::size_t r = 0; r < na; ++r) labels[order[r] / 64] |= std::uint64_t{1} << (order[r] % 64);
    permuted[p] = scaled_statistic(labels);
    if (permuted[p] >= observed) ++at_least;
  }

  // The ceil(alpha*P)-th largest permuted value; observed beats it exactly
  // when fewer than ceil(alpha*P) permuted values reach the observed one.
  const auto tail = static_cast<std::size_t>(
      std::max(1.0, std::ceil(alpha * static_cast<double>(permutations) - 1e-9)));
  std::sort(permuted.begin(), permuted.end(), std::greater<>());
  const std::size_t critical = permuted[std::min(tail, permutations) - 1];

  const double scale = static_cast<double>(na * nb);
  EAFTestResult out;
  out.statistic = static_cast<double>(observed) / scale;
  out.critical_value = static_cast<double>(critical) / scale;
  out.p_value = static_cast<double>(at_least) / static_cast<double>(permutations);
  out.permutations = permutations;
  out.alpha = alpha;
  out.seed = seed;
  out.reject = at_least < tail;
  return out;
}

}  // namespace deckbal
