/**
 * \file adversarial.hpp
 * \brief Worst-case game constructions: instances on which an interrupted
 *        search is exactly as far from optimal as the quality bound allows,
 *        plus seeded uniform-random games for soundness sweeps.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#pragma once

#include <cstdint>
#include <vector>

#include "csgen/game.hpp"

namespace csgen {

/**
 * v(S) = 1 when |S| = 1, else 0. After the bottom two levels the incumbent is
 * a structure containing exactly one singleton (value 1) while the optimum is
 * the all-singleton structure (value a), so the realized ratio meets the
 * bottom-two guarantee a with equality for a >= 3. (At a = 2 the level-2 node
 * is itself the all-singleton structure, so the ratio degenerates to 1.)
 *
 * Throws std::domain_error unless 2 <= a <= kMaxAgents.
 */
Game singleton_game(int a);

/**
 * Alias of singleton_game under the name of its second role: the same values
 * keep the bottom-up splitting baseline at ratio a/(l-1) after it finishes
 * level l, since a level-l structure holds at most l-1 singletons.
 */
Game splitting_adversary(int a);

/// Independent uniform[0,1) values for every nonempty coalition, drawn from
/// SplitMix64(seed) in ascending mask order. Deterministic given (a, seed).
Game uniform_random_game(int a, std::uint64_t seed);

/**
 * A game plus the exact incumbent-vs-optimum ratio it forces at one
 * checkpoint of the two-phase search (bottom two levels, then levels a down
 * to l). Built by level_tight_game.
 */
struct LevelTightGame {
  Game game;
  /// Ratio V(CS*) / best_value realized exactly at the checkpoint that
  /// follows the completion of level l.
  double expected_ratio;
  /// The coalitions valued 1; every other coalition is valued 0.
  std::vector<Mask> designated;
  /// Block size h = floor((a-l)/2) + 2 used by the construction.
  int h;
  /// True when the family is floor(a/h) blocks of size h plus one of size
  /// h-1 (the rounded-up bound case); false for the floor case.
  bool ceil_case;
};

/**
 * Builds a 0/1 game whose designated coalitions are packed intervals of
 * ascending agents, sized so that no structure visited through the end of
 * level l contains two of them, while some unvisited structure contains them
 * all. The searcher therefore holds best_value = 1 at the checkpoint while
 * V(CS*) = expected_ratio.
 *
 * Let h = floor((a-l)/2) + 2 and q = floor(a/h).
 *  - Rounded-up case (a mod h == h-1 and a, l of equal parity): q blocks of
 *    size h plus one block of size h-1; expected_ratio = q + 1.
 *  - Floor case: q blocks of size h (remaining agents valued 0);
 *    expected_ratio = q. When a == 2h the two size-h blocks would form a
 *    complementary pair — a level-2 node the bottom phase visits — so the
 *    family is adjusted to one block of size h and one of size h-1, which
 *    realizes the same ratio q = 2 without ever being seen together.
 *  - l == 3: completing level 3 exhausts the graph, so no game can keep the
 *    incumbent below optimal; the family degenerates to a single block of
 *    size h and expected_ratio = 1.
 *
 * Throws std::domain_error unless 3 <= l <= a <= kMaxAgents.
 */
LevelTightGame level_tight_game(int a, int l);

}  // namespace csgen
