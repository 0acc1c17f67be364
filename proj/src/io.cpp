/**
 * \file io.cpp
 * \brief Text formats: doubles, structures, game tables, CSV emitters.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "csgen/partitions.hpp"

namespace csgen {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_structure(std::span<const Mask> blocks) {
  std::string out;
  bool first_block = true;
  for (const Mask block : blocks) {
    if (!first_block) out += '|';
    first_block = false;
    out += '{';
    bool first_member = true;
    for (const int agent : coalition_members(block)) {
      if (!first_member) out += ',';
      first_member = false;
      out += std::to_string(agent);
    }
    out += '}';
  }
  return out;
}

std::string format_structure(const CoalitionStructure& cs) {
  return format_structure(std::span<const Mask>(cs.parts));
}

GameFileError::GameFileError(int line, const std::string& what)
    : std::runtime_error(what), line_(line) {}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw GameFileError(line, "line " + std::to_string(line) + ": " + what);
}

/// Strips a trailing CR, comments from '#', and surrounding whitespace.
std::string_view significant(std::string_view raw) {
  if (const auto hash = raw.find('#'); hash != std::string_view::npos)
    raw = raw.substr(0, hash);
  while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' ||
                          raw.back() == '\t'))
    raw.remove_suffix(1);
  while (!raw.empty() && (raw.front() == ' ' || raw.front() == '\t'))
    raw.remove_prefix(1);
  return raw;
}

}  // namespace

Game read_game(std::istream& in) {
  int line_no = 0;
  int agents = 0;
  std::vector<double> values;
  std::vector<bool> seen;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = significant(raw);
    if (line.empty()) continue;

    if (agents == 0) {
      constexpr std::string_view kAgents = "agents ";
      if (!line.starts_with(kAgents))
        fail(line_no, "expected 'agents <count>' before any values");
      const std::string_view num = significant(line.substr(kAgents.size()));
      const auto res =
          std::from_chars(num.data(), num.data() + num.size(), agents);
      if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
        fail(line_no, "unreadable agent count");
      if (agents < 1 || agents > kMaxAgents)
        fail(line_no, "agent count must lie in 1.." +
                          std::to_string(kMaxAgents));
      values.assign(full_mask(agents), 0.0);
      seen.assign(full_mask(agents), false);
      continue;
    }

    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      fail(line_no, "expected '<mask>,<value>'");
    const std::string_view mask_text = line.substr(0, comma);
    const std::string_view value_text = line.substr(comma + 1);

    std::uint32_t mask = 0;
    auto mres = std::from_chars(mask_text.data(),
                                mask_text.data() + mask_text.size(), mask);
    if (mres.ec != std::errc{} ||
        mres.ptr != mask_text.data() + mask_text.size())
      fail(line_no, "unreadable coalition mask");
    if (mask < 1 || mask > full_mask(agents))
      fail(line_no, "coalition mask out of range for " +
                        std::to_string(agents) + " agents");
    if (seen[mask - 1]) fail(line_no, "duplicate coalition mask");
    seen[mask - 1] = true;

    double value = 0.0;
    auto vres = std::from_chars(value_text.data(),
                                value_text.data() + value_text.size(), value);
    if (vres.ec != std::errc{} ||
        vres.ptr != value_text.data() + value_text.size())
      fail(line_no, "unreadable value");
    if (!(value >= 0.0) || !std::isfinite(value))
      fail(line_no, "values must be finite and nonnegative");
    values[mask - 1] = value;
  }
  if (agents == 0)
    fail(line_no + 1, "empty input: no 'agents <count>' line found");
  return Game(agents, std::move(values));
}

void write_game(std::ostream& out, const Game& game, std::string_view origin) {
  out << "# coalition game table\n";
  if (!origin.empty()) out << "# origin: " << origin << '\n';
  out << "agents " << game.agents() << '\n';
  for (Mask m = 1; m <= full_mask(game.agents()); ++m)
    if (game[m] != 0.0) out << m << ',' << format_double(game[m]) << '\n';
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameFileError(0, path + ": cannot open for reading");
  try {
    return read_game(in);
  } catch (const GameFileError& e) {
    throw GameFileError(e.line(), path + ": " + e.what());
  }
}

void save_game_file(const std::string& path, const Game& game,
                    std::string_view origin) {
  std::ofstream out(path);
  if (!out) throw GameFileError(0, path + ": cannot open for writing");
  write_game(out, game, origin);
  out.flush();
  if (!out) throw GameFileError(0, path + ": write failed");
}

void write_trace_csv(std::ostream& out, const AnytimeResult& result) {
  out << "n,best_value,bound,phase\n";
  for (const Checkpoint& c : result.trace) {
    out << c.n << ',' << format_double(c.best_value) << ',';
    if (c.bound) out << format_double(*c.bound);
    out << ',' << c.phase.label() << '\n';
  }
}

void write_count_csv(std::ostream& out, int max_agents) {
  if (max_agents < 1 || max_agents > kMaxAgents)
    throw std::domain_error("agent count must lie in 1..25");
  out << "a,coalitions,structures,n_min\n";
  for (int a = 1; a <= max_agents; ++a) {
    const std::uint64_t coalitions = (std::uint64_t{1} << a) - 1;
    out << a << ',' << coalitions << ',' << bell(a) << ','
        << bottom_two_size(a) << '\n';
  }
}

void write_staircase_csv(std::ostream& out,
                         const std::vector<StaircaseStep>& steps) {
  out << "n,k\n";
  for (const StaircaseStep& s : steps)
    out << s.n << ',' << format_double(s.k) << '\n';
}

void write_protocol_csv(std::ostream& out, const SimStats& stats,
                        const Equilibrium& equilibrium) {
  out << "round,adopted_value,caught,auditor,target,transfer\n";
  for (const RoundRecord& rec : stats.records) {
    out << rec.round << ',' << format_double(rec.adopted_value) << ','
        << (rec.caught ? '1' : '0') << ',';
    if (rec.audited) out << rec.auditor + 1;
    out << ',';
    if (rec.audited) out << rec.target + 1;
    out << ',' << format_double(rec.transfer) << '\n';
  }
  out << "# p_audit," << format_double(equilibrium.p_audit) << '\n';
  out << "# q_search," << format_double(equilibrium.q_search) << '\n';
  out << "# audits," << stats.audits << '\n';
  out << "# catches," << stats.catches << '\n';
  out << "# audit_rate," << format_double(stats.audit_rate()) << '\n';
  out << "# catch_rate," << format_double(stats.catch_rate()) << '\n';
  out << "# total_welfare," << format_double(stats.total_welfare) << '\n';
  out << "# total_cost," << format_double(stats.total_cost) << '\n';
}

}  // namespace csgen
