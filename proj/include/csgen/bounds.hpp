/**
 * \file bounds.hpp
 * \brief Closed-form worst-case bound calculus, the k(n) staircase of the
 *        anytime search, and an independent brute-force ratio oracle.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * The oracle certifies tightness: it maximizes, over all 0/1 games whose
 * valued coalitions form a disjoint family T, the ratio between the true
 * optimum |T| and the best value among a given visited node set. Every
 * tightness witness used by the bound theory lies in this family. The
 * closed-form staircase must meet the oracle exactly at small a.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "csgen/game.hpp"
#include "csgen/partitions.hpp"

namespace csgen {

/// h(a, l) = floor((a - l) / 2) + 2, the coalition size whose pairings the
/// top-down sweep has fully covered after finishing level l.
/// Throws std::domain_error unless 1 <= l <= a.
int h_value(int a, int l);

/// Worst-case ratio bound that holds once the top-down sweep has completed
/// level l (3 <= l <= a): ceil(a/h) when a = h-1 (mod h) and a = l (mod 2),
/// else floor(a/h), with h = h_value(a, l).
int bound_after_level(int a, int l);

/// The same quantity under the two formula variants that circulate (the
/// statement form conditions the ceil case on a mod h, a proof passage on
/// a mod h-1) plus a parity-free ceil variant; used by the verification
/// report to adjudicate disagreements empirically instead of guessing.
struct BoundVariants {
  int statement;       ///< what bound_after_level implements
  int proof_mod;       ///< ceil when a = 0 (mod h-1) and parity holds
  int ceil_no_parity;  ///< ceil whenever a = h-1 (mod h), parity ignored
};
BoundVariants bound_after_level_variants(int a, int l);

/// One step of the anytime bound staircase: from n nodes on, ratio k holds.
struct StaircaseStep {
  std::uint64_t n;
  double k;
};

/// The full staircase for the anytime search: (2^{a-1}, a), then one step
/// per completed top-down level l = a..4 at n = 2^{a-1} + sum_{j=l..a}
/// S(a, j), and (bell(a), 1) at exhaustion (which takes precedence over the
/// level-3 formula value). No bound holds before the first step. a >= 2.
std::vector<StaircaseStep> css1_bound_staircase(int a);

/// Symbolic description of a visited node set N, expanded lazily.
struct NodeSet {
  enum class Kind {
    BottomTwo,       ///< levels 1 and 2
    Css1AfterLevel,  ///< levels 1, 2 and the top-down levels a..level
    All,             ///< the whole graph
    Explicit         ///< exactly the structures listed
  };

  Kind kind;
  int agents;
  int level = 0;  // Css1AfterLevel only
  std::vector<CoalitionStructure> nodes;  // Explicit only

  static NodeSet bottom_two(int a) { return {Kind::BottomTwo, a, 0, {}}; }
  static NodeSet css1_after_level(int a, int l);
  static NodeSet all(int a) { return {Kind::All, a, 0, {}}; }
  static NodeSet explicit_set(int a, std::vector<CoalitionStructure> nodes) {
    return {Kind::Explicit, a, 0, std::move(nodes)};
  }

  /// Calls fn(std::span<const Mask>) for every node of the set.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    switch (kind) {
      case Kind::BottomTwo: {
        BottomTwoStream s(agents);
        for (auto b = s.next(); !b.empty(); b = s.next()) fn(b);
        return;
      }
      case Kind::Css1AfterLevel: {
        BottomTwoStream s(agents);
        for (auto b = s.next(); !b.empty(); b = s.next()) fn(b);
        for (int j = agents; j >= level; --j) {
          LevelStream ls(agents, j);
          for (auto b = ls.next(); !b.empty(); b = ls.next()) fn(b);
        }
        return;
      }
      case Kind::All: {
        PartitionStream s(agents);
        for (auto b = s.next(); !b.empty(); b = s.next()) fn(b);
        return;
      }
      case Kind::Explicit: {
        for (const auto& cs : nodes) fn(std::span<const Mask>(cs.parts));
        return;
      }
    }
  }
};

/// Exact worst-case ratio over the disjoint-family adversaries.
struct RatioResult {
  bool unbounded;         ///< some nonempty coalition appears in no node of N
  std::uint64_t num = 0;  ///< ratio numerator (|T| of the best witness)
  std::uint64_t den = 1;  ///< ratio denominator (best visited overlap)
  std::vector<Mask> witness;  ///< maximizing family T, or the unseen
                              ///< coalition when unbounded

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Brute-force sup of |T| / max_{CS' in N} |T intersect CS'| over all
/// disjoint coalition families T. Exact rational result; guarded to a <= 7
/// (cost grows with bell(a) * bell(a+1)).
RatioResult worst_case_ratio(const NodeSet& nodes);

/// Exhaustive coverage minimality scan, a = 4 only: among all node subsets
/// of size <= 2^{a-1}, exactly one sees every nonempty coalition.
struct MinimalityReport {
  std::uint64_t subsets_scanned;        ///< subsets of M with size <= 2^{a-1}
  std::uint64_t covering_count;         ///< how many of those cover
  std::uint64_t max_size_covering_count;  ///< covers of size exactly 2^{a-1}
  bool unique_cover_is_bottom_two;
};
MinimalityReport minimality_exhaustive(int a);

/// Local minimality argument for larger a: for each level-2 node, the only
/// structure in the whole graph containing both of its coalitions is that
/// node itself, so dropping it costs at least two replacement nodes.
struct ReplacementReport {
  std::uint64_t level2_nodes;
  bool each_pair_unique;
};
ReplacementReport minimality_spot(int a);

}  // namespace csgen
