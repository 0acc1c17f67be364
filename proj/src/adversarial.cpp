/**
 * \file adversarial.cpp
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/adversarial.hpp"

#include <stdexcept>
#include <string>

#include "csgen/bounds.hpp"
#include "csgen/rng.hpp"

namespace csgen {

namespace {

/// Packed interval coalition: agents lo+1 .. lo+size as a mask.
Mask packed_block(int lo, int size) {
  return ((Mask{1} << size) - 1u) << lo;
}

std::vector<double> zero_table(int a) {
  return std::vector<double>((std::size_t{1} << a) - 1, 0.0);
}

}  // namespace

Game singleton_game(int a) {
  if (a < 2 || a > kMaxAgents)
    throw std::domain_error("singleton_game needs 2 <= a <= " + std::to_string(kMaxAgents));
  std::vector<double> values = zero_table(a);
  for (int i = 0; i < a; ++i) values[(Mask{1} << i) - 1] = 1.0;
  return Game(a, std::move(values));
}

Game splitting_adversary(int a) { return singleton_game(a); }

Game uniform_random_game(int a, std::uint64_t seed) {
  if (a < 1 || a > kMaxAgents)
    throw std::domain_error("uniform_random_game needs 1 <= a <= " + std::to_string(kMaxAgents));
  std::vector<double> values = zero_table(a);
  SplitMix64 rng(seed);
  for (double& v : values) v = rng.uniform01();
  return Game(a, std::move(values));
}

LevelTightGame level_tight_game(int a, int l) {
  if (a < 3 || a > kMaxAgents || l < 3 || l > a)
    throw std::domain_error("level_tight_game needs 3 <= l <= a <= " + std::to_string(kMaxAgents));

  const int h = h_value(a, l);
  const int q = a / h;
  std::vector<Mask> designated;
  double expected = 0.0;
  bool ceil_case = false;

  if (l == 3) {
    // Finishing level 3 means every structure has been evaluated, so the
    // incumbent is optimal no matter the values. One designated block keeps
    // the witness shape; the honest achievable ratio is 1.
    designated.push_back(packed_block(0, h));
    expected = 1.0;
  } else if (a % h == h - 1 && (a - l) % 2 == 0) {
    // Rounded-up case: the remainder after q size-h blocks is exactly h-1
    // agents, and that block is designated too.
    ceil_case = true;
    for (int b = 0; b < q; ++b) designated.push_back(packed_block(b * h, h));
    designated.push_back(packed_block(q * h, h - 1));
    expected = static_cast<double>(q + 1);
  } else if (a == 2 * h) {
    // Two complementary size-h blocks would form a level-2 node, which the
    // bottom phase evaluates whole; shrinking the second block by one agent
    // keeps the pair out of every visited structure at the same ratio 2.
    designated.push_back(packed_block(0, h));
    designated.push_back(packed_block(h, h - 1));
    expected = 2.0;
  } else {
    for (int b = 0; b < q; ++b) designated.push_back(packed_block(b * h, h));
    expected = static_cast<double>(q);
  }

  std::vector<double> values = zero_table(a);
  for (Mask s : designated) values[s - 1] = 1.0;
  return LevelTightGame{Game(a, std::move(values)), expected, std::move(designated), h, ceil_case};
}

}  // namespace csgen
