/**
 * \file protocol.cpp
 * \brief Self-interested distributed search: shares, reports, audits,
 *        equilibrium, and the round simulator.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "csgen/partitions.hpp"
#include "csgen/rng.hpp"

namespace csgen {

namespace {

struct NodeEval {
  std::uint64_t index = 0;
  double value = 0.0;
};

/// First strict maximum of the true node values over [begin, end). Every
/// caller that compares claimed against recomputed values goes through this
/// one scan, which keeps those comparisons bit-exact.
NodeEval best_node(const Game& game, std::uint64_t begin, std::uint64_t end) {
  std::array<Mask, 2> buf;
  NodeEval best{begin, -1.0};
  for (std::uint64_t i = begin; i < end; ++i) {
    const double v =
        structure_value(game, BottomTwoStream::node(game.agents(), i, buf));
    if (v > best.value) best = {i, v};
  }
  return best;
}

std::vector<Mask> node_blocks(const Game& game, std::uint64_t index) {
  std::array<Mask, 2> buf;
  const auto span = BottomTwoStream::node(game.agents(), index, buf);
  return {span.begin(), span.end()};
}

void check_share(const Share& share, std::uint64_t node_count) {
  if (share.begin >= share.end || share.end > node_count)
    throw std::domain_error("share is empty or outside the node space");
}

double unit_fraction(const char* what, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
  return x;
}

std::uint64_t shirk_evaluated(double fraction, std::uint64_t share_size) {
  const auto scanned =
      static_cast<std::uint64_t>(fraction * static_cast<double>(share_size));
  return std::clamp<std::uint64_t>(scanned, 1, share_size);
}

/// Whether an audit of `report` against `share` catches the reporter, given
/// the share's true best value. Mirrors run_audit exactly.
bool audit_catches(const Game& game, const Share& share, const Report& report,
                   double share_best) {
  if (share_best > report.value) return true;
  const auto index = bottom_two_index(game.agents(), report.blocks);
  return !index || !share.contains(*index);
}

}  // namespace

std::vector<Share> equal_ranges(std::uint64_t node_count, int num_agents) {
  if (num_agents < 1) throw std::domain_error("need at least one agent");
  const auto agents = static_cast<std::uint64_t>(num_agents);
  if (node_count < agents)
    throw std::domain_error("fewer nodes than agents to share them");
  const std::uint64_t base = node_count / agents;
  const std::uint64_t larger = node_count % agents;
  std::vector<Share> ranges(agents);
  std::uint64_t at = 0;
  for (std::uint64_t r = 0; r < agents; ++r) {
    const std::uint64_t size = base + (r < larger ? 1 : 0);
    ranges[r] = {at, at + size};
    at += size;
  }
  return ranges;
}

Assignment partition_space(std::uint64_t node_count, int num_agents,
                           std::uint64_t seed) {
  auto ranges = equal_ranges(node_count, num_agents);
  SplitMix64 rng(seed);
  for (std::size_t i = ranges.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(ranges[i], ranges[j]);
  }
  return {node_count, std::move(ranges)};
}

Strategy Strategy::shirk(double f) {
  unit_fraction("shirk fraction", f);
  return {Kind::Shirk, f, 0.0};
}

Strategy Strategy::mixed(double q, double f) {
  unit_fraction("truthful-search probability", q);
  unit_fraction("shirk fraction", f);
  return {Kind::Mixed, f, q};
}

Report agent_search(const Game& game, const Share& share,
                    const Strategy& strategy) {
  const std::uint64_t node_count = bottom_two_size(game.agents());
  check_share(share, node_count);
  Report report;
  switch (strategy.kind) {
    case Strategy::Kind::Truthful: {
      const NodeEval best = best_node(game, share.begin, share.end);
      report.blocks = node_blocks(game, best.index);
      report.value = best.value;
      report.evaluated = share.size();
      break;
    }
    case Strategy::Kind::Shirk: {
      const std::uint64_t m = shirk_evaluated(strategy.fraction, share.size());
      const NodeEval best = best_node(game, share.begin, share.begin + m);
      report.blocks = node_blocks(game, best.index);
      report.value = best.value;
      report.evaluated = m;
      break;
    }
    case Strategy::Kind::Fabricate: {
      const std::uint64_t outside = share.end % node_count;
      std::array<Mask, 2> buf;
      const auto span = BottomTwoStream::node(game.agents(), outside, buf);
      report.blocks = {span.begin(), span.end()};
      report.value = structure_value(game, span);
      report.evaluated = 0;
      break;
    }
    case Strategy::Kind::Mixed:
      throw std::domain_error(
          "mixed strategy must be resolved to a pure one before searching");
  }
  return report;
}

std::optional<std::uint64_t> bottom_two_index(int agents,
                                              std::span<const Mask> blocks) {
  CoalitionStructure cs;
  try {
    cs = validate_structure(agents, blocks);
  } catch (const InvalidStructure&) {
    return std::nullopt;
  }
  if (cs.parts.size() == 1) return 0;
  if (cs.parts.size() != 2) return std::nullopt;
  const Mask away = (cs.parts[0] & 1u) ? cs.parts[1] : cs.parts[0];
  return static_cast<std::uint64_t>(away) >> 1;
}

AuditOutcome run_audit(const Game& game, const Assignment& assignment,
                       const std::vector<Report>& reports, int auditor,
                       int target, double penalty) {
  const int agents = assignment.num_agents();
  if (auditor < 0 || auditor >= agents || target < 0 || target >= agents ||
      auditor == target)
    throw std::domain_error("audit needs two distinct agents in range");
  if (reports.size() != assignment.shares.size())
    throw std::domain_error("one report per assigned share required");
  if (!(penalty > 0.0)) throw std::domain_error("penalty must be positive");
  if (assignment.node_count != bottom_two_size(game.agents()))
    throw std::domain_error("assignment does not match this game's node space");
  const Share& share = assignment.shares[static_cast<std::size_t>(target)];
  check_share(share, assignment.node_count);

  const NodeEval best = best_node(game, share.begin, share.end);
  const Report& report = reports[static_cast<std::size_t>(target)];
  AuditOutcome outcome;
  outcome.auditor = auditor;
  outcome.target = target;
  outcome.best_found = best.value;
  outcome.caught = audit_catches(game, share, report, best.value);
  outcome.transfer = outcome.caught ? penalty : 0.0;
  return outcome;
}

AuditOutcome audit(const Game& game, const Assignment& assignment,
                   const std::vector<Report>& reports, std::uint64_t seed,
                   double penalty) {
  const int agents = assignment.num_agents();
  if (agents < 2) throw std::domain_error("auditing needs at least two agents");
  SplitMix64 rng(seed);
  const int auditor =
      static_cast<int>(rng.below(static_cast<std::uint64_t>(agents)));
  int target =
      static_cast<int>(rng.below(static_cast<std::uint64_t>(agents - 1)));
  if (target >= auditor) ++target;
  return run_audit(game, assignment, reports, auditor, target, penalty);
}

void InspectionParams::validate() const {
  if (!(penalty > 0.0 && c_search > 0.0 && c_audit > 0.0))
    throw std::domain_error("penalty and both costs must be positive");
}

Equilibrium inspection_equilibrium(const InspectionParams& params) {
  params.validate();
  return {std::clamp(params.c_search / params.penalty, 0.0, 1.0),
          std::clamp(1.0 - params.c_audit / params.penalty, 0.0, 1.0)};
}

std::vector<double> payoff_division(const Game& game,
                                    const CoalitionStructure& cs,
                                    DivisionScheme scheme) {
  if (scheme != DivisionScheme::EqualWithinCoalition &&
      scheme != DivisionScheme::ProportionalToSingletonValues)
    throw std::domain_error("unknown payoff division scheme");
  const auto canon = validate_structure(game.agents(), cs.parts);
  std::vector<double> payoffs(static_cast<std::size_t>(game.agents()), 0.0);
  for (const Mask block : canon.parts) {
    const auto team = coalition_members(block);
    const double value = game[block];
    if (scheme == DivisionScheme::EqualWithinCoalition || team.size() == 1) {
      const double each = value / static_cast<double>(team.size());
      for (const int agent : team)
        payoffs[static_cast<std::size_t>(agent - 1)] = each;
      continue;
    }
    double singles = 0.0;
    for (const int agent : team) singles += game[Mask{1} << (agent - 1)];
    for (const int agent : team) {
      const double weight =
          singles > 0.0 ? game[Mask{1} << (agent - 1)] / singles
                        : 1.0 / static_cast<double>(team.size());
      payoffs[static_cast<std::size_t>(agent - 1)] = value * weight;
    }
  }
  return payoffs;
}

namespace {

Strategy realize(const Strategy& strategy, SplitMix64& coin) {
  const double u = coin.uniform01();  // one toss per agent, Mixed or not
  if (strategy.kind != Strategy::Kind::Mixed) return strategy;
  return u < strategy.q_search ? Strategy::truthful()
                               : Strategy::shirk(strategy.fraction);
}

void check_simulation_inputs(const Game& game, int num_agents,
                             std::size_t strategy_count) {
  if (num_agents != game.agents())
    throw std::domain_error(
        "searchers must be the game's agents (the adopted structure "
        "partitions exactly the set that searched)");
  if (strategy_count != static_cast<std::size_t>(num_agents))
    throw std::domain_error("one strategy per agent required");
}

}  // namespace

SimStats simulate_rounds(const Game& game, int num_agents,
                         const std::vector<Strategy>& strategies,
                         const InspectionParams& params, std::uint64_t rounds,
                         std::uint64_t seed) {
  check_simulation_inputs(game, num_agents, strategies.size());
  params.validate();
  if (rounds < 1) throw std::domain_error("need at least one round");

  const auto agents = static_cast<std::size_t>(num_agents);
  const std::uint64_t node_count = bottom_two_size(game.agents());
  const double p_audit = inspection_equilibrium(params).p_audit;

  SimStats stats;
  stats.rounds = rounds;
  stats.net_payoff.assign(agents, 0.0);
  stats.records.reserve(static_cast<std::size_t>(rounds));

  std::vector<Report> reports(agents);
  std::vector<double> costs(agents);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const std::uint64_t base = mix64(seed, t);
    const Assignment assignment =
        partition_space(node_count, num_agents, mix64(base, 0));
    SplitMix64 coins(mix64(base, 1));
    SplitMix64 audit_rng(mix64(base, 2));

    RoundRecord rec;
    rec.round = t + 1;
    rec.payoffs.assign(agents, 0.0);

    for (std::size_t k = 0; k < agents; ++k) {
      const Share& share = assignment.shares[k];
      reports[k] = agent_search(game, share, realize(strategies[k], coins));
      reports[k].agent = static_cast<int>(k);
      costs[k] = params.c_search * (static_cast<double>(reports[k].evaluated) /
                                    static_cast<double>(share.size()));
    }

    std::size_t adopted_by = 0;
    for (std::size_t k = 1; k < agents; ++k)
      if (reports[k].value > reports[adopted_by].value) adopted_by = k;
    rec.adopted = reports[adopted_by].blocks;
    rec.adopted_value = structure_value(
        game, std::span<const Mask>(rec.adopted.data(), rec.adopted.size()));

    const auto division = payoff_division(
        game, validate_structure(game.agents(), rec.adopted),
        DivisionScheme::EqualWithinCoalition);
    rec.round_cost = 0.0;
    for (std::size_t k = 0; k < agents; ++k) {
      rec.payoffs[k] = division[k] - costs[k];
      rec.round_cost += costs[k];
    }

    if (num_agents >= 2) {
      // Draw order per round: auditor, target, then the audit coin.
      const int i = static_cast<int>(
          audit_rng.below(static_cast<std::uint64_t>(num_agents)));
      int j = static_cast<int>(
          audit_rng.below(static_cast<std::uint64_t>(num_agents - 1)));
      if (j >= i) ++j;
      if (audit_rng.uniform01() < p_audit) {
        const AuditOutcome outcome =
            run_audit(game, assignment, reports, i, j, params.penalty);
        rec.audited = true;
        rec.auditor = i;
        rec.target = j;
        rec.payoffs[static_cast<std::size_t>(i)] -= params.c_audit;
        rec.round_cost += params.c_audit;
        ++stats.audits;
        if (outcome.caught) {
          rec.caught = true;
          rec.transfer = outcome.transfer;
          rec.payoffs[static_cast<std::size_t>(i)] += outcome.transfer;
          rec.payoffs[static_cast<std::size_t>(j)] -= outcome.transfer;
          ++stats.catches;
        }
      }
    }

    stats.total_welfare += rec.adopted_value;
    stats.total_cost += rec.round_cost;
    for (std::size_t k = 0; k < agents; ++k)
      stats.net_payoff[k] += rec.payoffs[k];
    stats.records.push_back(std::move(rec));
  }
  return stats;
}

namespace {

/// Probability that an audit of `strategy` on `share` catches it, with the
/// Mixed coin the only randomness left (everything else is a deterministic
/// replay of agent_search + run_audit).
double miss_probability(const Game& game, const Share& share,
                        const Strategy& strategy) {
  switch (strategy.kind) {
    case Strategy::Kind::Truthful:
      return 0.0;
    case Strategy::Kind::Shirk:
    case Strategy::Kind::Mixed: {
      const std::uint64_t m = shirk_evaluated(strategy.fraction, share.size());
      const NodeEval seen = best_node(game, share.begin, share.begin + m);
      const NodeEval all = best_node(game, share.begin, share.end);
      const double if_shirking = all.value > seen.value ? 1.0 : 0.0;
      return strategy.kind == Strategy::Kind::Shirk
                 ? if_shirking
                 : (1.0 - strategy.q_search) * if_shirking;
    }
    case Strategy::Kind::Fabricate: {
      const Report report =
          agent_search(game, share, Strategy::fabricate());
      const NodeEval all = best_node(game, share.begin, share.end);
      return audit_catches(game, share, report, all.value) ? 1.0 : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

double exact_catch_expectation(const Game& game, int num_agents,
                               const std::vector<Strategy>& strategies,
                               double p_audit) {
  check_simulation_inputs(game, num_agents, strategies.size());
  unit_fraction("audit probability", p_audit);
  if (num_agents < 2) return 0.0;

  // The audited agent is uniform over agents and its share is uniform over
  // the ranges (the deal is a uniform bijection, independent of the audit
  // draws), so the expectation is a plain average over (agent, range) pairs.
  const auto ranges = equal_ranges(bottom_two_size(game.agents()), num_agents);
  double sum = 0.0;
  for (const Strategy& strategy : strategies)
    for (const Share& range : ranges)
      sum += miss_probability(game, range, strategy);
  const auto pairs = static_cast<double>(num_agents) *
                     static_cast<double>(ranges.size());
  return p_audit * sum / pairs;
}

DeterrenceBreakdown exact_deterrence(const Game& game,
                                     const Assignment& assignment, int focal,
                                     double shirk_fraction,
                                     const InspectionParams& params,
                                     double audit_prob) {
  params.validate();
  unit_fraction("audit probability", audit_prob);
  if (!(shirk_fraction >= 0.0 && shirk_fraction < 1.0))
    throw std::domain_error("shirk fraction must lie in [0, 1)");
  const int agents = assignment.num_agents();
  if (agents != game.agents())
    throw std::domain_error("assignment must cover the game's agents");
  if (focal < 0 || focal >= agents)
    throw std::domain_error("focal agent outside the assignment");
  if (assignment.node_count != bottom_two_size(game.agents()))
    throw std::domain_error("assignment does not match this game's node space");
  for (const Share& share : assignment.shares)
    check_share(share, assignment.node_count);

  const auto size = static_cast<std::size_t>(agents);
  const auto focal_at = static_cast<std::size_t>(focal);
  std::vector<Report> truthful(size);
  for (std::size_t k = 0; k < size; ++k)
    truthful[k] = agent_search(game, assignment.shares[k],
                               Strategy::truthful());
  std::vector<Report> shirked = truthful;
  shirked[focal_at] = agent_search(game, assignment.shares[focal_at],
                                   Strategy::shirk(shirk_fraction));

  const auto division_of = [&](const std::vector<Report>& reports) {
    std::size_t adopted = 0;
    for (std::size_t k = 1; k < size; ++k)
      if (reports[k].value > reports[adopted].value) adopted = k;
    const auto cs = validate_structure(game.agents(), reports[adopted].blocks);
    return payoff_division(game, cs, DivisionScheme::EqualWithinCoalition);
  };

  const double div_truthful = division_of(truthful)[focal_at];
  const double div_shirk = division_of(shirked)[focal_at];
  const double evaluated_fraction =
      static_cast<double>(shirked[focal_at].evaluated) /
      static_cast<double>(assignment.shares[focal_at].size());
  const double shirk_cost = params.c_search * evaluated_fraction;
  const bool missed =
      truthful[focal_at].value > shirked[focal_at].value;

  DeterrenceBreakdown d;
  d.division_gain = div_truthful - div_shirk;
  d.cost_saving = params.c_search - shirk_cost;
  d.expected_penalty = missed ? audit_prob * params.penalty : 0.0;
  d.truthful_expected = div_truthful - params.c_search;
  d.shirk_expected = div_shirk - shirk_cost - d.expected_penalty;
  return d;
}

}  // namespace csgen
