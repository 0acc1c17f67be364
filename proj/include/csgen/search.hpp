/**
 * \file search.hpp
 * \brief Anytime searches over the coalition structure graph: the exhaustive
 *        oracle, the minimal bottom-two search, the bound-improving top-down
 *        search, and the splitting/merging baselines.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * Every algorithm visits structures in a deterministic documented order,
 * keeps only the incumbent (ties never replace it), and emits checkpoints at
 * the points where a worst-case guarantee is established: after the bottom
 * two levels, after the top node, after each completed level, and at budget
 * exhaustion. Mid-level nodes improve best_value but never the bound.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csgen/game.hpp"

namespace csgen {

enum class PhaseKind {
  PreBound,           ///< fewer than 2^{a-1} nodes seen, no bound holds yet
  BottomTwoComplete,  ///< levels 1 and 2 done, bound a
  TopLevelComplete,   ///< top-down sweep finished level `level`
  LevelComplete,      ///< baseline finished level `level` (no bound claim)
  Exhausted           ///< whole graph seen, bound 1
};

struct Phase {
  PhaseKind kind = PhaseKind::PreBound;
  int level = 0;  // meaningful for TopLevelComplete and LevelComplete

  /// CSV label: "pre-bound", "bottom-two-complete", "top-level-7-complete",
  /// "level-4-complete", "exhausted".
  std::string label() const;
  bool operator==(const Phase&) const = default;
};

struct Checkpoint {
  std::uint64_t n = 0;        ///< nodes visited so far
  double best_value = 0.0;    ///< welfare of the incumbent
  CoalitionStructure best_cs; ///< incumbent, canonical form
  std::optional<double> bound;  ///< worst-case ratio guarantee, absent pre-bound
  Phase phase;
};

struct Budget {
  std::optional<std::uint64_t> max_nodes;  ///< absent = unlimited; >= 1 otherwise

  static Budget unlimited() { return {}; }
  static Budget nodes(std::uint64_t n) { return Budget{n}; }
};

struct AnytimeResult {
  std::vector<Checkpoint> trace;  ///< ordered checkpoint list; never empty

  const Checkpoint& final() const { return trace.back(); }
};

/// Full sweep of the graph; returns a welfare-maximizing structure and its
/// value. Ties go to the first structure in enumeration order (levels
/// ascending). Throws std::domain_error above 18 agents; intended for <= 14.
std::pair<CoalitionStructure, double> exhaustive_search(const Game& game);

/// Visits exactly the 2^{a-1} bottom-two nodes (grand coalition first, then
/// the level-2 nodes in index order). Final checkpoint: n = 2^{a-1},
/// bound = a, phase bottom-two-complete. With threads > 1 the level-2 range
/// is split into contiguous chunks reduced in chunk order, which keeps the
/// result bit-identical to the single-threaded sweep.
AnytimeResult search_bottom_two(const Game& game, int threads = 1);

/// The anytime search with the improving bound staircase: bottom two levels
/// first (bound a), then levels a, a-1, ..., 3 top-down; completing level 3
/// exhausts the graph (bound 1). A budget stops the sweep after exactly
/// max_nodes visits; a budget below 2^{a-1} yields a bound-free result.
/// threads parallelizes the bottom-two phase only (identical traces).
AnytimeResult css1(const Game& game, Budget budget = {}, int threads = 1);

/// Baseline: breadth-first from the bottom, levels 1, 2, ..., a. Identical
/// visit sequence to css1 through the first 2^{a-1} nodes. After the
/// bottom-two checkpoint the recorded bound stays a until exhaustion; upward
/// level completions prove nothing stronger.
AnytimeResult splitting_search(const Game& game, Budget budget = {});

/// Baseline: breadth-first from the top, levels a, a-1, ..., 1. No bound
/// can be claimed before the whole graph is searched (the grand coalition
/// appears only in the bottom node), then bound 1.
AnytimeResult merging_search(const Game& game, Budget budget = {});

}  // namespace csgen
