/**
 * \file io.hpp
 * \brief Text formats: shortest round-trip doubles, structure printing,
 *        game table files, and the CSV emitters.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 *
 * Everything here is byte-stable: no locale involvement, '\n' line ends,
 * doubles printed as the shortest string that parses back to the same bits.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csgen/bounds.hpp"
#include "csgen/game.hpp"
#include "csgen/protocol.hpp"
#include "csgen/search.hpp"

namespace csgen {

/// Shortest decimal string that round-trips to exactly x.
std::string format_double(double x);

/// "{1,2}|{3}": pipe-separated blocks, members ascending within each block,
/// blocks in the order given (pass canonical parts for canonical output).
std::string format_structure(std::span<const Mask> blocks);
std::string format_structure(const CoalitionStructure& cs);

/// Parse failure in a game table; `line` is 1-based.
class GameFileError : public std::runtime_error {
 public:
  GameFileError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/**
 * Game table format, one value per line:
 *
 *     # anything after a hash is a comment
 *     agents 4
 *     3,1.5        <- coalition bitmask (decimal), value
 *     12,0.25
 *
 * The `agents` line comes first; value lines may list each mask at most once
 * (decimal, 1 <= mask < 2^agents); missing masks default to value 0. Blank
 * lines and comments may appear anywhere; CRLF input is accepted.
 */

/// Reads a game table; throws GameFileError naming the offending line.
Game read_game(std::istream& in);

/// Writes a game table: a comment header (with `origin` when nonempty), the
/// agents line, then one line per nonzero value in ascending mask order.
/// read_game(write_game(g)) reproduces g bit for bit.
void write_game(std::ostream& out, const Game& game,
                std::string_view origin = {});

/// File wrappers; open failures and parse errors are reported as
/// GameFileError with the path in the message (line 0 for open failures).
Game load_game_file(const std::string& path);
void save_game_file(const std::string& path, const Game& game,
                    std::string_view origin = {});

/// Checkpoint trace of an anytime run. Columns `n,best_value,bound,phase`;
/// the bound column is empty at pre-bound checkpoints.
void write_trace_csv(std::ostream& out, const AnytimeResult& result);

/// Counting table, rows 1..max_agents. Columns
/// `a,coalitions,structures,n_min` = 2^a - 1, bell(a), 2^{a-1}.
/// Throws std::domain_error unless 1 <= max_agents <= kMaxAgents.
void write_count_csv(std::ostream& out, int max_agents);

/// Bound staircase, columns `n,k`: from n nodes visited on, ratio k holds.
void write_staircase_csv(std::ostream& out,
                         const std::vector<StaircaseStep>& steps);

/// Per-round protocol log, columns
/// `round,adopted_value,caught,auditor,target,transfer` (agent ids 1-based
/// to match structure members; auditor/target empty on unaudited rounds),
/// followed by a `# key,value` summary block: equilibrium probabilities,
/// empirical rates, totals.
void write_protocol_csv(std::ostream& out, const SimStats& stats,
                        const Equilibrium& equilibrium);

}  // namespace csgen
