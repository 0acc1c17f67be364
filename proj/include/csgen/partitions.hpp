/**
 * \file partitions.hpp
 * \brief Lazy enumeration of the coalition structure graph, split/merge
 *        neighbors, and exact structure counting.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * Level l of the graph holds the partitions of the agent set into exactly l
 * coalitions: level 1 is the grand coalition at the bottom, level a the
 * all-singletons partition at the top. Streams below yield each node of
 * their slice exactly once, lazily, in a deterministic documented order.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "csgen/game.hpp"

namespace csgen {

/// Stirling number of the second kind S(a, l), exact. Values for a <= 25 fit
/// in uint64 (bell(25) = 4638590332229999353 < 2^63); the arithmetic is
/// overflow-checked and throws std::overflow_error rather than wrapping.
/// Throws std::domain_error unless 1 <= l <= a <= kMaxAgents.
std::uint64_t stirling(int a, int l);

/// bell(a) = sum over l of S(a, l), exact. Throws like stirling().
std::uint64_t bell(int a);

/// Number of bottom-two nodes: 2^{a-1} for a >= 2, 1 for a = 1.
std::uint64_t bottom_two_size(int a);

/**
 * Streams the partitions of {1..a} with exactly `level` blocks.
 *
 * Order: level 2 iterates node index t = 1 .. 2^{a-1}-1 where the t-th node
 * pairs coalition (t << 1) (the subsets excluding agent 1) with its
 * complement. Every other level walks restricted growth strings in
 * lexicographic order, so agent 1 always lies in the first block and no
 * dedup pass is needed.
 */
class LevelStream {
 public:
  /// Throws std::domain_error unless 1 <= level <= agents <= kMaxAgents.
  LevelStream(int agents, int level);

  /// Blocks of the next partition, or an empty span when exhausted. Blocks
  /// arrive in first-appearance order (block 0 contains agent 1), not in
  /// canonical mask order. The span is valid until the next call.
  std::span<const Mask> next();

  std::uint64_t produced() const noexcept { return produced_; }

 private:
  std::span<const Mask> emit();

  int a_;
  int l_;
  bool done_ = false;
  bool started_ = false;
  std::uint64_t produced_ = 0;
  // level-2 fast path
  std::uint64_t t_ = 0;
  std::uint64_t t_last_ = 0;
  // restricted growth string state, general path
  std::array<std::uint8_t, kMaxAgents> r_{};     // r_[i] = block of agent i+1
  std::array<std::uint8_t, kMaxAgents> pmax_{};  // running max of r_[0..i]
  std::array<Mask, kMaxAgents> blocks_{};
};

/// Streams all of levels 1..a in ascending level order (LevelStream order
/// within each level). Count = bell(a).
class PartitionStream {
 public:
  explicit PartitionStream(int agents);
  std::span<const Mask> next();
  /// Level of the most recently returned partition.
  int current_level() const noexcept { return cur_level_; }
  std::uint64_t produced() const noexcept { return produced_; }

 private:
  int a_;
  int cur_level_ = 0;
  std::uint64_t produced_ = 0;
  std::optional<LevelStream> level_;
};

/**
 * Streams the bottom two levels: the grand coalition first (node index 0),
 * then the level-2 nodes in LevelStream index order (node index t). This is
 * the minimal node set that sees every coalition; total count
 * bottom_two_size(a).
 */
class BottomTwoStream {
 public:
  explicit BottomTwoStream(int agents);
  std::span<const Mask> next();
  std::uint64_t produced() const noexcept { return produced_; }

  /// Blocks of the bottom-two node with the given index, written into buf
  /// (size >= 2). Shared with the protocol simulator's share evaluation.
  static std::span<const Mask> node(int agents, std::uint64_t index, std::span<Mask> buf);

 private:
  int a_;
  bool grand_done_ = false;
  std::uint64_t produced_ = 0;
  Mask grand_buf_ = 0;
  std::optional<LevelStream> level2_;
};

/// Streams the unordered splits of coalition s into two nonempty parts.
/// The part containing s's lowest agent comes first, which makes each
/// unordered split appear exactly once. Count = 2^{|s|-1} - 1.
/// Throws std::domain_error when |s| < 2.
class SplitStream {
 public:
  explicit SplitStream(Mask s);
  std::optional<std::pair<Mask, Mask>> next();

 private:
  Mask pivot_;
  Mask rest_;
  Mask x_ = 0;
  bool done_ = false;
};

/// All structures obtained from cs by merging one unordered pair of its
/// coalitions, in ascending (i, j) pair order over the canonical parts.
/// Count = C(level, 2). Throws std::domain_error on a level-1 input.
std::vector<CoalitionStructure> mergers(const CoalitionStructure& cs);

}  // namespace csgen
