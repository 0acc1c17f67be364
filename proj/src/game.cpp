/**
 * \file game.cpp
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace csgen {

int coalition_size(Mask s) noexcept { return std::popcount(s); }

std::vector<int> coalition_members(Mask s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(s)));
  while (s != 0) {
    int bit = std::countr_zero(s);
    out.push_back(bit + 1);
    s &= s - 1;
  }
  return out;
}

Game::Game(int agents, std::vector<double> values) : agents_(agents) {
  if (agents < 1 || agents > kMaxAgents)
    throw std::domain_error("agent count must be in 1.." + std::to_string(kMaxAgents));
  const std::size_t want = (std::size_t{1} << agents) - 1;
  if (values.size() != want)
    throw std::domain_error("value table must have exactly 2^a-1 entries, got " +
                            std::to_string(values.size()));
  table_.resize(want + 1);
  table_[0] = 0.0;
  max_value_ = 0.0;
  for (std::size_t m = 1; m <= want; ++m) {
    double v = values[m - 1];
    if (!std::isfinite(v) || v < 0.0)
      throw std::domain_error("coalition value for mask " + std::to_string(m) +
                              " must be finite and nonnegative");
    table_[m] = v;
    max_value_ = std::max(max_value_, v);
  }
}

double coalition_value(const Game& game, Mask s) {
  if (s == 0 || s > game.all_agents())
    throw std::domain_error("coalition mask " + std::to_string(s) +
                            " out of range for " + std::to_string(game.agents()) + " agents");
  return game[s];
}

double structure_value(const Game& game, const CoalitionStructure& cs) {
  CoalitionStructure checked = validate_structure(game.agents(), cs.parts);
  return structure_value(game, std::span<const Mask>(checked.parts));
}

CoalitionStructure validate_structure(int agents, std::span<const Mask> parts) {
  if (agents < 1 || agents > kMaxAgents)
    throw std::domain_error("agent count must be in 1.." + std::to_string(kMaxAgents));
  const Mask full = full_mask(agents);
  for (Mask s : parts) {
    if (s == 0) throw InvalidStructure(StructureDefect::EmptyMember, "empty coalition in structure");
    if ((s & ~full) != 0)
      throw InvalidStructure(StructureDefect::OutOfRangeMember,
                             "coalition mask " + std::to_string(s) + " has members beyond agent " +
                                 std::to_string(agents));
  }
  Mask seen = 0;
  for (Mask s : parts) {
    if ((seen & s) != 0)
      throw InvalidStructure(StructureDefect::Overlap,
                             "coalition mask " + std::to_string(s) + " overlaps an earlier member");
    seen |= s;
  }
  if (seen != full)
    throw InvalidStructure(StructureDefect::NonExhaustive,
                           "structure misses agents (union mask " + std::to_string(seen) + ")");
  CoalitionStructure cs;
  cs.parts.assign(parts.begin(), parts.end());
  // Disjoint masks: the lowest set bit identifies each block uniquely.
  std::sort(cs.parts.begin(), cs.parts.end(),
            [](Mask x, Mask y) { return (x & (~x + 1u)) < (y & (~y + 1u)); });
  return cs;
}

ShiftResult shift_values(int agents, std::vector<double> values) {
  double lo = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite coalition value in table");
    lo = std::min(lo, v);
  }
  bool shifted = lo < 0.0;
  double offset = shifted ? -lo : 0.0;
  if (shifted)
    for (double& v : values) v += offset;
  return ShiftResult{Game(agents, std::move(values)), shifted, offset};
}

}  // namespace csgen
