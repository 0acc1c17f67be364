/**
 * \file bounds.cpp
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/bounds.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace csgen {

namespace {

void check_level_range(int a, int l, int lo) {
  if (a < 1 || a > kMaxAgents) throw std::domain_error("agent count out of range");
  if (l < lo || l > a) throw std::domain_error("level out of range");
}

}  // namespace

int h_value(int a, int l) {
  check_level_range(a, l, 1);
  return (a - l) / 2 + 2;
}

int bound_after_level(int a, int l) {
  check_level_range(a, l, 3);
  const int h = h_value(a, l);
  const bool parity = (a % 2) == (l % 2);
  if (parity && a % h == h - 1) return a / h + 1;  // ceil: a % h = h-1 > 0
  return a / h;
}

BoundVariants bound_after_level_variants(int a, int l) {
  check_level_range(a, l, 3);
  const int h = h_value(a, l);
  const bool parity = (a % 2) == (l % 2);
  const int fl = a / h;
  const int ce = fl + (a % h == 0 ? 0 : 1);
  BoundVariants v{};
  v.statement = (parity && a % h == h - 1) ? ce : fl;
  v.proof_mod = (parity && a % (h - 1) == 0) ? ce : fl;  // h >= 2 always
  v.ceil_no_parity = (a % h == h - 1) ? ce : fl;
  return v;
}

std::vector<StaircaseStep> css1_bound_staircase(int a) {
  if (a < 2 || a > kMaxAgents) throw std::domain_error("agent count out of range");
  std::vector<StaircaseStep> out;
  std::uint64_t n = bottom_two_size(a);
  out.push_back({n, static_cast<double>(a)});
  if (a == 2) {
    out.push_back({n, 1.0});  // the bottom two levels are the whole graph
    return out;
  }
  for (int l = a; l >= 3; --l) {
    n += stirling(a, l);
    out.push_back({n, l == 3 ? 1.0 : static_cast<double>(bound_after_level(a, l))});
  }
  return out;
}

NodeSet NodeSet::css1_after_level(int a, int l) {
  if (a < 3) throw std::domain_error("top-down sweep needs at least 3 agents");
  if (l < 3 || l > a) throw std::domain_error("level out of range");
  return {Kind::Css1AfterLevel, a, l, {}};
}

namespace {

// Membership bitset over coalition masks; 2^7 = 128 bits suffice under the
// oracle's agent cap.
struct MaskBits {
  std::array<std::uint64_t, 2> w{};

  void set(Mask m) { w[m >> 6] |= std::uint64_t{1} << (m & 63); }
  bool test(Mask m) const { return (w[m >> 6] >> (m & 63)) & 1u; }
};

struct OracleState {
  std::vector<MaskBits> seen;   // one membership set per visited structure
  std::vector<Mask> family;     // current T, built in canonical order
  std::uint64_t best_num = 1;   // T = {full set} always achieves 1/1
  std::uint64_t best_den = 1;
  std::vector<Mask> witness;

  void evaluate() {
    std::uint64_t d = 0;
    for (const auto& bits : seen) {
      std::uint64_t c = 0;
      for (Mask m : family) c += bits.test(m);
      if (c > d) d = c;
    }
    // d >= 1: every coalition is seen somewhere once the unbounded check
    // has passed. Strict improvement keeps the first witness found.
    const std::uint64_t num = family.size();
    if (num * best_den > best_num * d) {
      best_num = num;
      best_den = d;
      witness = family;
    }
  }

  // Disjoint families in canonical order: each new member contains the
  // lowest remaining agent of the yet-undecided set, or that agent is
  // skipped for good.
  void extend(Mask rest) {
    if (rest == 0) return;
    const Mask low = rest & (~rest + 1u);
    extend(rest ^ low);  // low belongs to no member
    const Mask others = rest ^ low;
    Mask x = 0;
    for (;;) {
      const Mask member = low | x;
      family.push_back(member);
      evaluate();
      extend(rest ^ member);
      family.pop_back();
      if (x == others) break;
      x = (x - others) & others;
    }
  }
};

}  // namespace

RatioResult worst_case_ratio(const NodeSet& nodes) {
  const int a = nodes.agents;
  if (a < 1) throw std::domain_error("agent count out of range");
  if (a > 7) throw std::domain_error("ratio oracle refuses more than 7 agents (cost)");
  const Mask full = full_mask(a);

  OracleState st;
  MaskBits coverage;
  nodes.for_each([&](std::span<const Mask> blocks) {
    MaskBits bits;
    for (Mask s : blocks) {
      bits.set(s);
      coverage.set(s);
    }
    st.seen.push_back(bits);
  });

  for (Mask m = 1; m <= full; ++m)
    if (!coverage.test(m)) return RatioResult{true, 0, 1, {m}};

  st.witness = {full};
  st.extend(full);
  return RatioResult{false, st.best_num, st.best_den, st.witness};
}

MinimalityReport minimality_exhaustive(int a) {
  if (a != 4)
    throw std::domain_error("exhaustive minimality scan is sized for a = 4 only");
  // The 15 structures of the 4-agent graph, each as a coverage set over the
  // 15 nonempty coalitions; subsets of nodes fit in a 15-bit word.
  std::vector<std::uint32_t> node_cover;
  std::uint32_t bottom_two_set = 0;
  PartitionStream stream(a);
  for (auto b = stream.next(); !b.empty(); b = stream.next()) {
    std::uint32_t cover = 0;
    for (Mask s : b) cover |= std::uint32_t{1} << (s - 1);
    if (b.size() <= 2) bottom_two_set |= std::uint32_t{1} << node_cover.size();
    node_cover.push_back(cover);
  }
  const std::uint32_t all_coalitions = (std::uint32_t{1} << 15) - 1;
  const int node_count = static_cast<int>(node_cover.size());  // 15
  const int max_size = 8;                                      // 2^{a-1}

  MinimalityReport rep{0, 0, 0, false};
  std::uint32_t unique_cover = 0;
  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << node_count); ++sub) {
    const int size = std::popcount(sub);
    if (size > max_size) continue;
    ++rep.subsets_scanned;
    std::uint32_t cover = 0;
    for (int i = 0; i < node_count; ++i)
      if (sub & (std::uint32_t{1} << i)) cover |= node_cover[i];
    if (cover == all_coalitions) {
      ++rep.covering_count;
      if (size == max_size) ++rep.max_size_covering_count;
      unique_cover = sub;
    }
  }
  rep.unique_cover_is_bottom_two =
      rep.covering_count == 1 && unique_cover == bottom_two_set;
  return rep;
}

ReplacementReport minimality_spot(int a) {
  if (a < 3 || a > 8) throw std::domain_error("spot minimality check is sized for 3 <= a <= 8");
  const Mask full = full_mask(a);
  ReplacementReport rep{0, true};
  for (std::uint64_t t = 1; t < bottom_two_size(a); ++t) {
    const Mask s = static_cast<Mask>(t << 1);
    const Mask comp = full ^ s;
    // Count structures containing both halves of this level-2 node. Both
    // are exhaustive together, so only the node itself can hold them; any
    // replacement therefore needs one node per half.
    std::uint64_t containing = 0;
    PartitionStream stream(a);
    for (auto b = stream.next(); !b.empty(); b = stream.next()) {
      bool has_s = false, has_c = false;
      for (Mask m : b) {
        has_s |= m == s;
        has_c |= m == comp;
      }
      containing += has_s && has_c;
    }
    rep.each_pair_unique = rep.each_pair_unique && containing == 1;
    ++rep.level2_nodes;
  }
  return rep;
}

}  // namespace csgen
