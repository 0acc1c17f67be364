// Enumeration and counting tests. The expected values here come from two
// independent sources: a pinned table of Stirling/Bell numbers, and a
// test-local recursive enumerator (lowest remaining agent anchors the next
// block) that shares no code with the library's growth-string streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "csgen/game.hpp"
#include "csgen/partitions.hpp"
#include "doctest.h"

namespace {

using csgen::CoalitionStructure;
using csgen::Mask;

// S(a, l) for a = 1..10, l = 1..a.
const std::vector<std::vector<std::uint64_t>> kStirling = {
    {1},
    {1, 1},
    {1, 3, 1},
    {1, 7, 6, 1},
    {1, 15, 25, 10, 1},
    {1, 31, 90, 65, 15, 1},
    {1, 63, 301, 350, 140, 21, 1},
    {1, 127, 966, 1701, 1050, 266, 28, 1},
    {1, 255, 3025, 7770, 6951, 2646, 462, 36, 1},
    {1, 511, 9330, 34105, 42525, 22827, 5880, 750, 45, 1},
};

// bell(a) for a = 1..10, plus two spot values further out.
const std::vector<std::uint64_t> kBell = {1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
constexpr std::uint64_t kBell20 = 51724158235372ull;
constexpr std::uint64_t kBell25 = 4638590332229999353ull;

// Independent enumerator: the block containing the lowest remaining agent is
// chosen first, recursing on what is left.
void collect_partitions(Mask remaining, std::vector<Mask>& acc,
                        std::vector<std::vector<Mask>>& out) {
  if (remaining == 0) {
    std::vector<Mask> sorted = acc;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    return;
  }
  Mask low = remaining & (~remaining + 1u);
  Mask rest = remaining ^ low;
  Mask x = 0;
  for (;;) {
    Mask block = low | x;
    acc.push_back(block);
    collect_partitions(remaining ^ block, acc, out);
    acc.pop_back();
    if (x == rest) break;
    x = (x - rest) & rest;
  }
}

std::vector<std::vector<Mask>> oracle_all_partitions(int a) {
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> acc;
  collect_partitions(csgen::full_mask(a), acc, out);
  return out;
}

std::vector<Mask> canonical(std::span<const Mask> blocks) {
  std::vector<Mask> v(blocks.begin(), blocks.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("stirling and bell match the pinned tables") {
  for (int a = 1; a <= 10; ++a) {
    for (int l = 1; l <= a; ++l) CHECK(csgen::stirling(a, l) == kStirling[a - 1][l - 1]);
    CHECK(csgen::bell(a) == kBell[a - 1]);
  }
  CHECK(csgen::bell(20) == kBell20);
  CHECK(csgen::bell(25) == kBell25);
}

TEST_CASE("stirling identities") {
  for (int a = 1; a <= 25; ++a) {
    CHECK(csgen::stirling(a, 1) == 1);
    CHECK(csgen::stirling(a, a) == 1);
  }
  // S(a, 2) = 2^{a-1} - 1
  for (int a = 2; a <= 20; ++a)
    CHECK(csgen::stirling(a, 2) == (std::uint64_t{1} << (a - 1)) - 1);
  // bell via row sums
  for (int a = 2; a <= 25; ++a) {
    std::uint64_t sum = 0;
    for (int l = 1; l <= a; ++l) sum += csgen::stirling(a, l);
    CHECK(sum == csgen::bell(a));
  }
}

TEST_CASE("counting rejects out-of-range arguments") {
  CHECK_THROWS_AS(csgen::stirling(0, 1), std::domain_error);
  CHECK_THROWS_AS(csgen::stirling(26, 1), std::domain_error);
  CHECK_THROWS_AS(csgen::stirling(5, 0), std::domain_error);
  CHECK_THROWS_AS(csgen::stirling(5, 6), std::domain_error);
  CHECK_THROWS_AS(csgen::bell(0), std::domain_error);
  CHECK_THROWS_AS((csgen::LevelStream{4, 5}), std::domain_error);
  CHECK_THROWS_AS((csgen::LevelStream{4, 0}), std::domain_error);
}

TEST_CASE("level streams yield each partition exactly once with the right count") {
  for (int a = 1; a <= 8; ++a) {
    std::uint64_t total = 0;
    for (int l = 1; l <= a; ++l) {
      csgen::LevelStream stream(a, l);
      std::set<std::vector<Mask>> seen;
      for (auto b = stream.next(); !b.empty(); b = stream.next()) {
        auto cs = csgen::validate_structure(a, b);  // throws on any defect
        REQUIRE(cs.level() == l);
        REQUIRE(seen.insert(cs.parts).second);
      }
      CHECK(stream.produced() == csgen::stirling(a, l));
      total += stream.produced();
    }
    CHECK(total == csgen::bell(a));
  }
}

TEST_CASE("enumeration agrees with the independent recursive oracle") {
  for (int a = 1; a <= 7; ++a) {
    auto oracle = oracle_all_partitions(a);
    std::set<std::vector<Mask>> expect(oracle.begin(), oracle.end());
    REQUIRE(expect.size() == csgen::bell(a));

    csgen::PartitionStream stream(a);
    std::set<std::vector<Mask>> got;
    for (auto b = stream.next(); !b.empty(); b = stream.next())
      REQUIRE(got.insert(canonical(b)).second);
    CHECK(got == expect);
    CHECK(stream.produced() == csgen::bell(a));
  }
}

TEST_CASE("three-agent levels list the known structures") {
  csgen::LevelStream l1(3, 1);
  CHECK(canonical(l1.next()) == std::vector<Mask>{0b111});
  CHECK(l1.next().empty());

  csgen::LevelStream l2(3, 2);
  std::set<std::vector<Mask>> got;
  for (auto b = l2.next(); !b.empty(); b = l2.next()) got.insert(canonical(b));
  std::set<std::vector<Mask>> expect = {
      {0b001, 0b110},  // {1} {2,3}
      {0b010, 0b101},  // {2} {1,3}
      {0b011, 0b100},  // {1,2} {3}
  };
  CHECK(got == expect);

  csgen::LevelStream l3(3, 3);
  CHECK(canonical(l3.next()) == std::vector<Mask>{0b001, 0b010, 0b100});
  CHECK(l3.next().empty());
}

TEST_CASE("level-2 nodes follow the index convention") {
  // Node t pairs coalition (t << 1), a subset excluding agent 1, with its
  // complement; block 0 carries agent 1.
  const int a = 4;
  csgen::LevelStream stream(a, 2);
  std::uint64_t t = 1;
  for (auto b = stream.next(); !b.empty(); b = stream.next(), ++t) {
    REQUIRE(b.size() == 2);
    CHECK(b[1] == static_cast<Mask>(t << 1));
    CHECK(b[0] == (csgen::full_mask(a) ^ b[1]));
    CHECK((b[0] & 1u) == 1u);
  }
  CHECK(t - 1 == csgen::stirling(a, 2));
}

TEST_CASE("streams are deterministic") {
  csgen::LevelStream s1(6, 3), s2(6, 3);
  for (;;) {
    auto a = s1.next(), b = s2.next();
    REQUIRE(canonical(a) == canonical(b));
    if (a.empty()) break;
  }
}

TEST_CASE("bottom-two stream: count, order, and coalition coverage") {
  // a=3: grand first, then the three level-2 nodes.
  csgen::BottomTwoStream s3(3);
  CHECK(canonical(s3.next()) == std::vector<Mask>{0b111});
  std::set<std::vector<Mask>> rest;
  for (auto b = s3.next(); !b.empty(); b = s3.next()) rest.insert(canonical(b));
  CHECK(rest.size() == 3);
  CHECK(s3.produced() == 4);

  CHECK(csgen::bottom_two_size(1) == 1);
  CHECK(csgen::bottom_two_size(4) == 8);
  CHECK(csgen::bottom_two_size(10) == 512);

  // Every nonempty coalition appears in some bottom-two node.
  for (int a = 2; a <= 12; ++a) {
    std::vector<bool> seen(std::size_t{1} << a, false);
    csgen::BottomTwoStream stream(a);
    for (auto b = stream.next(); !b.empty(); b = stream.next())
      for (Mask s : b) seen[s] = true;
    CHECK(stream.produced() == csgen::bottom_two_size(a));
    for (Mask m = 1; m < (Mask{1} << a); ++m) REQUIRE(seen[m]);
  }

  // a=1 yields the single structure without error.
  csgen::BottomTwoStream s1(1);
  CHECK(canonical(s1.next()) == std::vector<Mask>{1});
  CHECK(s1.next().empty());
}

TEST_CASE("bottom-two random access matches the stream") {
  const int a = 5;
  csgen::BottomTwoStream stream(a);
  std::uint64_t idx = 0;
  std::array<Mask, 2> buf;
  for (auto b = stream.next(); !b.empty(); b = stream.next(), ++idx)
    CHECK(canonical(csgen::BottomTwoStream::node(a, idx, buf)) == canonical(b));
  CHECK(idx == csgen::bottom_two_size(a));
  CHECK_THROWS_AS(csgen::BottomTwoStream::node(a, idx, buf), std::domain_error);
}

TEST_CASE("splits enumerate unordered pairs exactly once") {
  csgen::SplitStream pair(0b011);
  auto first = pair.next();
  REQUIRE(first.has_value());
  CHECK(first->first == 0b001);
  CHECK(first->second == 0b010);
  CHECK_FALSE(pair.next().has_value());

  auto count_and_check = [](Mask s) {
    const Mask low = s & (~s + 1u);
    csgen::SplitStream stream(s);
    std::set<std::pair<Mask, Mask>> seen;
    std::uint64_t n = 0;
    for (auto p = stream.next(); p; p = stream.next(), ++n) {
      REQUIRE(p->first != 0u);
      REQUIRE(p->second != 0u);
      REQUIRE((p->first & p->second) == 0u);
      REQUIRE((p->first | p->second) == s);
      REQUIRE((p->first & low) == low);  // lowest agent anchors the first part
      auto unordered = std::minmax(p->first, p->second);
      REQUIRE(seen.insert({unordered.first, unordered.second}).second);
    }
    return n;
  };
  CHECK(count_and_check(0b0111) == 3);
  CHECK(count_and_check(0b1111) == 7);
  CHECK(count_and_check(0b1011010) == 7);  // sparse members work too
  CHECK_THROWS_AS(csgen::SplitStream{0b0100}, std::domain_error);
}

TEST_CASE("mergers produce each pairwise merge once") {
  auto top3 = csgen::validate_structure(3, std::vector<Mask>{1, 2, 4});
  auto kids = csgen::mergers(top3);
  REQUIRE(kids.size() == 3);
  std::set<std::vector<Mask>> got;
  for (const auto& k : kids) got.insert(k.parts);
  // Canonical member order is ascending lowest agent, so {1,3} precedes {2}.
  std::set<std::vector<Mask>> expect = {{0b011, 0b100}, {0b101, 0b010}, {0b001, 0b110}};
  CHECK(got == expect);

  auto two = csgen::validate_structure(4, std::vector<Mask>{0b0011, 0b1100});
  auto merged = csgen::mergers(two);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].parts == std::vector<Mask>{0b1111});

  auto top4 = csgen::validate_structure(4, std::vector<Mask>{1, 2, 4, 8});
  CHECK(csgen::mergers(top4).size() == 6);

  auto grand = csgen::validate_structure(3, std::vector<Mask>{0b111});
  CHECK_THROWS_AS(csgen::mergers(grand), std::domain_error);
}

TEST_CASE("splits and mergers are inverse-consistent") {
  // Replacing a block by any of its splits, then merging those two parts,
  // recovers a structure containing the original block.
  const int a = 6;
  csgen::PartitionStream stream(a);
  std::uint64_t examined = 0;
  for (auto b = stream.next(); !b.empty() && examined < 200; b = stream.next(), ++examined) {
    auto cs = csgen::validate_structure(a, b);
    for (Mask block : cs.parts) {
      if (csgen::coalition_size(block) < 2) continue;
      csgen::SplitStream splits(block);
      for (auto p = splits.next(); p; p = splits.next()) {
        CoalitionStructure child;
        for (Mask m : cs.parts)
          if (m != block) child.parts.push_back(m);
        child.parts.push_back(p->first);
        child.parts.push_back(p->second);
        child = csgen::validate_structure(a, child.parts);
        bool found = false;
        for (const auto& back : csgen::mergers(child))
          if (std::find(back.parts.begin(), back.parts.end(), block) != back.parts.end() &&
              back == cs)
            found = true;
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("growth sanity: bell(a) >= (a/2)^(a/2)") {
  for (int a = 2; a <= 25; ++a) {
    double lhs = static_cast<double>(csgen::bell(a));
    double rhs = std::pow(a / 2.0, a / 2.0);
    CHECK(lhs >= rhs);
  }
}
