/**
 * \file protocol.hpp
 * \brief Distributed search among self-interested agents: share assignment,
 *        strategic reporting, random audits with penalties, and the mixed
 *        audit/search equilibrium.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * The node space being divided is always the bottom two levels of the
 * coalition structure graph for the game at hand (the smallest node set that
 * looks at every coalition, hence the natural unit of delegated work). Node
 * indices follow BottomTwoStream::node: index 0 is the one-block structure,
 * index t >= 1 pairs coalition t<<1 with its complement.
 *
 * One protocol round: split the node space into equal contiguous shares and
 * deal them randomly to the agents; each agent searches its share under its
 * reporting strategy and broadcasts a claimed best structure and value; the
 * best claim is adopted and its (true) value divided among all agents; with
 * some probability one randomly chosen agent re-searches another's share and
 * a detected deviation moves the penalty from the target to the auditor.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csgen/game.hpp"

namespace csgen {

/// Contiguous range [begin, end) of bottom-two node indices.
struct Share {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const noexcept { return end - begin; }
  bool contains(std::uint64_t index) const noexcept {
    return begin <= index && index < end;
  }
  bool operator==(const Share&) const = default;
};

/// Who searches which slice of the node space. shares[k] belongs to agent k
/// (0-based ids throughout this module).
struct Assignment {
  std::uint64_t node_count = 0;
  std::vector<Share> shares;

  int num_agents() const noexcept { return static_cast<int>(shares.size()); }
};

/// The num_agents contiguous ranges covering [0, node_count) whose sizes
/// differ by at most one, in ascending order; the first node_count %
/// num_agents ranges are one node larger. Building block of partition_space
/// and of the exact-expectation helpers below, exposed so tests and exact
/// formulas can enumerate the possible shares without a seed.
/// Throws std::domain_error unless node_count >= num_agents >= 1.
std::vector<Share> equal_ranges(std::uint64_t node_count, int num_agents);

/// Deals the equal_ranges to agents in a seeded random order (Fisher-Yates
/// on the range list, so every range-to-agent bijection is equally likely).
/// Deterministic given (node_count, num_agents, seed).
/// Throws std::domain_error unless node_count >= num_agents >= 1.
Assignment partition_space(std::uint64_t node_count, int num_agents,
                           std::uint64_t seed);

/// How an agent searches its share and what it reports.
///
/// Truthful evaluates the whole share and claims its true best. Shirk(f)
/// evaluates only the first max(1, floor(f * share_size)) nodes and
/// truthfully claims the best of those - cheaper, but an audit catches it
/// whenever the skipped suffix held the share's real maximum. Fabricate
/// skips searching entirely and claims the node just past the share's end
/// (wrapping around the node space) at that node's true value, so value
/// comparison never exposes it but a membership check does. Mixed plays
/// Truthful with probability q_search and Shirk(fraction) otherwise, with
/// the coin tossed once per round by the simulator.
struct Strategy {
  enum class Kind { Truthful, Shirk, Fabricate, Mixed };

  Kind kind = Kind::Truthful;
  double fraction = 1.0;  ///< share fraction evaluated when shirking
  double q_search = 1.0;  ///< Mixed only: probability of searching truthfully

  static Strategy truthful() noexcept { return {}; }
  /// Throws std::domain_error unless 0 <= f <= 1.
  static Strategy shirk(double f);
  static Strategy fabricate() noexcept {
    return {Kind::Fabricate, 0.0, 0.0};
  }
  /// Throws std::domain_error unless q and f are both in [0, 1].
  static Strategy mixed(double q, double f);
};

/// What an agent broadcasts after working its share, plus the private
/// effort bookkeeping the simulator charges costs from.
struct Report {
  int agent = -1;
  std::vector<Mask> blocks;     ///< claimed best structure, canonical order
  double value = 0.0;           ///< claimed value of that structure
  std::uint64_t evaluated = 0;  ///< nodes actually evaluated (0 for Fabricate)
};

/// Runs one pure strategy over one share and builds the report. Ties within
/// the share resolve to the lowest node index (first strict maximum).
/// Claimed values are the exact sums the evaluation produced, so an audit's
/// recomputation reproduces them bit for bit.
/// Throws std::domain_error on an empty or out-of-range share, or when the
/// strategy is Mixed (the caller resolves the coin toss first).
Report agent_search(const Game& game, const Share& share,
                    const Strategy& strategy);

/// Bottom-two node index of a claimed structure, or nullopt when the blocks
/// are not a bottom-two node of an `agents`-agent game (more than two
/// blocks, or not a valid partition). Inverse of BottomTwoStream::node.
std::optional<std::uint64_t> bottom_two_index(int agents,
                                              std::span<const Mask> blocks);

/// Result of one audit: auditor re-searched target's share.
struct AuditOutcome {
  int auditor = -1;
  int target = -1;
  bool caught = false;
  double transfer = 0.0;    ///< penalty paid by target to auditor when caught
  double best_found = 0.0;  ///< true best value in the target's share
};

/// Re-searches `target`'s share exhaustively and compares with its report:
/// caught if and only if the re-search finds a strictly larger true value
/// than the claimed one, or the claimed structure is not a node of the
/// target's share. Both checks are exact - values compare bit for bit, with
/// no tolerance. Throws std::domain_error on bad ids, penalty <= 0, or a
/// reports list inconsistent with the assignment.
AuditOutcome run_audit(const Game& game, const Assignment& assignment,
                       const std::vector<Report>& reports, int auditor,
                       int target, double penalty);

/// Draws the auditor uniformly, then the target uniformly among the others,
/// from SplitMix64(seed), and runs the audit.
/// Throws std::domain_error unless the assignment has >= 2 agents.
AuditOutcome audit(const Game& game, const Assignment& assignment,
                   const std::vector<Report>& reports, std::uint64_t seed,
                   double penalty);

/// Stakes of the audit game. All three must be positive.
struct InspectionParams {
  double penalty = 0.0;   ///< paid by a caught target to its auditor
  double c_search = 0.0;  ///< cost of evaluating one's full share
  double c_audit = 0.0;   ///< cost of re-searching someone else's share

  /// Throws std::domain_error unless all fields are positive.
  void validate() const;
};

/// Mixed equilibrium of the audit game.
struct Equilibrium {
  double p_audit = 0.0;   ///< probability the auditor audits
  double q_search = 0.0;  ///< probability the target searches truthfully
};

/// Mixed equilibrium of the 2x2 audit game this module declares: the target
/// saves c_search by shirking but pays the penalty when audited (detection
/// is certain on a value-relevant deviation); the auditor pays c_audit to
/// audit and collects the penalty on a catch. Indifference conditions give
///   q_search = clamp(1 - c_audit / penalty, 0, 1)
///   p_audit  = clamp(c_search / penalty, 0, 1)
/// so raising the penalty drives truthful search toward certainty while
/// audits become rare. There is no pure equilibrium to look for: each pure
/// profile leaves one side wanting to switch.
/// Throws std::domain_error on invalid params.
Equilibrium inspection_equilibrium(const InspectionParams& params);

/// How an adopted structure's value is divided among the agents.
enum class DivisionScheme {
  /// Each member of block S receives v(S) / |S|.
  EqualWithinCoalition,
  /// v(S) split among members in proportion to their singleton values,
  /// equally when those sum to zero. Singletons receive exactly v(S) under
  /// both schemes.
  ProportionalToSingletonValues,
};

/// Per-agent payoffs (indexed by 0-based agent id) summing to the
/// structure's value, block by block. Throws std::domain_error on an
/// unknown scheme; throws InvalidStructure via validation of cs.
std::vector<double> payoff_division(const Game& game,
                                    const CoalitionStructure& cs,
                                    DivisionScheme scheme);

/// One simulated round's outcome.
struct RoundRecord {
  std::uint64_t round = 0;       ///< 1-based
  std::vector<Mask> adopted;     ///< adopted structure, canonical order
  double adopted_value = 0.0;    ///< its true value under the game
  bool audited = false;
  bool caught = false;
  int auditor = -1;              ///< -1 when no audit happened this round
  int target = -1;
  double transfer = 0.0;         ///< penalty moved this round (0 or penalty)
  double round_cost = 0.0;       ///< all search + audit costs this round
  std::vector<double> payoffs;   ///< per-agent net delta this round
};

/// Aggregates over a simulation.
struct SimStats {
  std::uint64_t rounds = 0;
  std::uint64_t audits = 0;
  std::uint64_t catches = 0;
  double total_welfare = 0.0;        ///< sum of adopted true values
  double total_cost = 0.0;           ///< sum of round costs
  std::vector<double> net_payoff;    ///< per-agent sum of round deltas
  std::vector<RoundRecord> records;  ///< one per round, in order

  double audit_rate() const noexcept {
    return rounds ? static_cast<double>(audits) / static_cast<double>(rounds)
                  : 0.0;
  }
  double catch_rate() const noexcept {
    return rounds ? static_cast<double>(catches) / static_cast<double>(rounds)
                  : 0.0;
  }
};

/// Repeats the round loop `rounds` times: assign shares, search and report,
/// adopt the best claim (ties to the lowest agent id), divide its true value
/// equally within coalitions, then audit with probability p_audit from
/// inspection_equilibrium(params). Audit draws per round: auditor, then
/// target, then the audit coin. Per-round randomness comes from independent
/// derived streams (round_base = mix64(seed, round_index); stream 0 deals
/// shares, stream 1 tosses one Mixed-strategy coin per agent, stream 2
/// drives the audit), so runs reproduce bit for bit from the seed.
///
/// Costs: a searcher pays c_search * evaluated / share_size (the full
/// c_search when truthful, nothing when fabricating), an auditor pays
/// c_audit; a caught target pays the penalty to its auditor. Agents are the
/// game's agents - the adopted structure partitions exactly the set that
/// searched - so num_agents must equal game.agents().
///
/// Throws std::domain_error on rounds < 1, num_agents != game.agents(),
/// strategies.size() != num_agents, or invalid params.
SimStats simulate_rounds(const Game& game, int num_agents,
                         const std::vector<Strategy>& strategies,
                         const InspectionParams& params, std::uint64_t rounds,
                         std::uint64_t seed);

/// Exact per-round probability that an audit happens and catches its target
/// under simulate_rounds' round structure: the target is uniform over
/// agents, the target's range is uniform over equal_ranges (the deal is a
/// uniform bijection), Mixed coins are independent, and the audit fires with
/// probability p_audit. Sampling-free companion to SimStats::catch_rate().
/// Throws std::domain_error under simulate_rounds' preconditions (with
/// p_audit in [0, 1] in place of params).
double exact_catch_expectation(const Game& game, int num_agents,
                               const std::vector<Strategy>& strategies,
                               double p_audit);

/// Side-by-side expected payoff of one focal agent playing Truthful versus
/// Shirk(shirk_fraction) on a fixed assignment, everyone else truthful,
/// under the pairwise audit abstraction: the focal agent's share is audited
/// with probability audit_prob, detection is certain exactly when the
/// shirked scan missed the share's true maximum, and auditor-side terms
/// (identical in both worlds) are left out.
struct DeterrenceBreakdown {
  double truthful_expected = 0.0;  ///< division share - full search cost
  double shirk_expected = 0.0;     ///< division share - partial cost - risk
  double division_gain = 0.0;      ///< truthful minus shirk division share
  double cost_saving = 0.0;        ///< c_search * (1 - evaluated fraction)
  double expected_penalty = 0.0;   ///< audit_prob * penalty * missed_max
  double margin() const noexcept { return truthful_expected - shirk_expected; }
};

/// Computes the breakdown exactly (no sampling). Throws std::domain_error
/// on a focal id outside the assignment, shirk_fraction outside [0, 1),
/// audit_prob outside [0, 1], invalid params, or an assignment that does not
/// match the game's bottom-two node space.
DeterrenceBreakdown exact_deterrence(const Game& game,
                                     const Assignment& assignment, int focal,
                                     double shirk_fraction,
                                     const InspectionParams& params,
                                     double audit_prob);

}  // namespace csgen
