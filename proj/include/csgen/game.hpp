/**
 * \file game.hpp
 * \brief Characteristic function games: coalitions as bitmasks, dense value
 *        tables, coalition structures, and the welfare objective V(CS).
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csgen {

/// Coalition over at most kMaxAgents agents; bit i-1 set <=> agent i belongs.
using Mask = std::uint32_t;

/// Hard cap on the agent count. The dense 2^a value table must fit memory.
inline constexpr int kMaxAgents = 25;

/// Mask containing every agent 1..agents.
constexpr Mask full_mask(int agents) noexcept {
  return (Mask{1} << agents) - 1u;
}

/// Number of members of a coalition.
int coalition_size(Mask s) noexcept;

/// Members of a coalition as ascending 1-based agent ids.
std::vector<int> coalition_members(Mask s);

/// Defects reported by validate_structure, in check order.
enum class StructureDefect {
  EmptyMember,       ///< a member mask is 0
  OutOfRangeMember,  ///< a member mask has bits outside 1..a
  Overlap,           ///< two members share an agent
  NonExhaustive      ///< the union of members misses an agent
};

/// Thrown when a list of masks is not a partition of the agent set.
class InvalidStructure : public std::invalid_argument {
 public:
  InvalidStructure(StructureDefect defect, const std::string& what)
      : std::invalid_argument(what), defect_(defect) {}
  StructureDefect defect() const noexcept { return defect_; }

 private:
  StructureDefect defect_;
};

/**
 * A partition of the agent set into disjoint, exhaustive coalitions.
 * Canonical form orders the members by ascending lowest agent — the order
 * the enumeration streams produce them in — so a structure's welfare
 * re-evaluates with the exact same floating-point addition sequence the
 * searches used. (Plain ascending-mask order would differ: disjoint masks
 * compare by highest bit, not lowest.)
 */
struct CoalitionStructure {
  std::vector<Mask> parts;

  int level() const noexcept { return static_cast<int>(parts.size()); }
  bool operator==(const CoalitionStructure&) const = default;
};

/**
 * Immutable game: a dense table of nonnegative finite coalition values.
 * Entry for mask m lives at index m; slot 0 is fixed at 0 so lookups in the
 * search inner loops stay branch-free. Safe to share across threads.
 */
class Game {
 public:
  /// values[m-1] is v(S) for the coalition with mask m, m in 1..2^a-1.
  /// Throws std::domain_error on bad agent count, wrong table length, or
  /// any negative / non-finite entry.
  Game(int agents, std::vector<double> values);

  int agents() const noexcept { return agents_; }
  Mask all_agents() const noexcept { return full_mask(agents_); }

  /// Unchecked lookup (mask 0 reads as 0). Hot path.
  double operator[](Mask s) const noexcept { return table_[s]; }

  /// Largest single coalition value in the table.
  double max_coalition_value() const noexcept { return max_value_; }

 private:
  int agents_;
  std::vector<double> table_;  // size 2^a, slot 0 = 0
  double max_value_;
};

/// Checked value lookup. Throws std::domain_error when s is 0 or >= 2^a.
double coalition_value(const Game& game, Mask s);

/// V(CS) = sum of member coalition values. Validates cs against the game's
/// agent set first; throws InvalidStructure on a defect.
double structure_value(const Game& game, const CoalitionStructure& cs);

/// Unchecked sum over raw blocks. Hot path for the enumerating searches.
inline double structure_value(const Game& game, std::span<const Mask> blocks) noexcept {
  double v = 0.0;
  for (Mask s : blocks) v += game[s];
  return v;
}

/// Checks that `parts` partitions agents 1..a and returns the canonical
/// (ascending-lowest-agent) structure. Throws InvalidStructure naming the
/// defect; checks run in the order EmptyMember, OutOfRangeMember, Overlap,
/// NonExhaustive.
CoalitionStructure validate_structure(int agents, std::span<const Mask> parts);

/// Result of normalizing a raw value table that may contain negatives.
struct ShiftResult {
  Game game;      ///< table with -min added to every entry when min < 0
  bool shifted;   ///< warning flag: a shift changes V(CS) by offset*level
                  ///< and can move the welfare argmax
  double offset;  ///< amount added to every entry (0 when not shifted)
};

/// Builds a Game from a table that may contain negatives by adding -min to
/// every entry when min < 0. Throws std::domain_error on non-finite input.
ShiftResult shift_values(int agents, std::vector<double> values);

}  // namespace csgen
