#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "deckbal/random.hpp"

using namespace deckbal;

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
}

TEST_CASE("uniform01 stays in [0, 1) and has mean near one half") {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below is uniform over its range") {
  Rng rng(3);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (const int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK_THROWS(rng.below(0));
}

TEST_CASE("shuffle yields a permutation") {
  Rng rng(11);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  CHECK_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST_CASE("substreams depend on index, not on parent progress") {
  Rng parent(5);
  const auto first = parent.substream(3).next_u64();
  parent.next_u64();
  parent.next_u64();
  CHECK(parent.substream(3).next_u64() == first);
  CHECK(parent.substream(4).next_u64() != first);
}

TEST_CASE("mix_seed and hash_label are stable and spread") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(1, i));
  CHECK(seen.size() == 1000);
  CHECK(hash_label("S10") == hash_label("S10"));
  CHECK(hash_label("S10") != hash_label("S100"));
  // FNV-1a of the empty string is the offset basis.
  CHECK(hash_label("") == 0xcbf29ce484222325ULL);
}
