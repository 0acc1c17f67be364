/**
 * \file search.cpp
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

#include "csgen/bounds.hpp"
#include "csgen/partitions.hpp"

namespace csgen {

std::string Phase::label() const {
  switch (kind) {
    case PhaseKind::PreBound:
      return "pre-bound";
    case PhaseKind::BottomTwoComplete:
      return "bottom-two-complete";
    case PhaseKind::TopLevelComplete:
      return "top-level-" + std::to_string(level) + "-complete";
    case PhaseKind::LevelComplete:
      return "level-" + std::to_string(level) + "-complete";
    case PhaseKind::Exhausted:
      return "exhausted";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

std::uint64_t budget_limit(const Budget& b) {
  if (!b.max_nodes) return kNoLimit;
  if (*b.max_nodes < 1) throw std::domain_error("budget must be >= 1 when present");
  return *b.max_nodes;
}

// Incumbent plus visit counter. Ties never replace the incumbent, so the
// first best structure in visit order wins deterministically.
struct Tracker {
  const Game& game;
  std::uint64_t limit;
  std::uint64_t n = 0;
  double best = -1.0;  // every real game value is >= 0
  std::vector<Mask> best_blocks;

  bool try_visit(std::span<const Mask> blocks) {
    if (n == limit) return false;
    ++n;
    double v = structure_value(game, blocks);
    if (v > best) {
      best = v;
      best_blocks.assign(blocks.begin(), blocks.end());
    }
    return true;
  }

  Checkpoint checkpoint(std::optional<double> bound, Phase phase) const {
    return Checkpoint{n, best, validate_structure(game.agents(), best_blocks), bound, phase};
  }
};

template <typename Stream>
bool sweep(Tracker& tr, Stream& stream) {
  for (auto b = stream.next(); !b.empty(); b = stream.next())
    if (!tr.try_visit(b)) return false;
  return true;
}

// Level-2 sweep split into contiguous index chunks, one worker each. Each
// chunk keeps its first maximum; the merge walks chunks in ascending order
// with a strict compare, so the incumbent equals the single-threaded sweep
// bit for bit. Caller guarantees the budget covers the whole level.
void parallel_level2(Tracker& tr, int threads) {
  const int a = tr.game.agents();
  const Game& g = tr.game;
  const Mask full = full_mask(a);
  const std::uint64_t count = (std::uint64_t{1} << (a - 1)) - 1;  // t in [1, count]
  const std::uint64_t nchunks =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), count);
  std::vector<double> chunk_best(nchunks, -1.0);
  std::vector<std::uint64_t> chunk_arg(nchunks, 0);
  std::vector<std::thread> workers;
  workers.reserve(nchunks);
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    const std::uint64_t lo = 1 + c * count / nchunks;
    const std::uint64_t hi = 1 + (c + 1) * count / nchunks;
    workers.emplace_back([&g, full, lo, hi, out_v = &chunk_best[c], out_t = &chunk_arg[c]] {
      double best = -1.0;
      std::uint64_t arg = 0;
      for (std::uint64_t t = lo; t < hi; ++t) {
        const Mask s = static_cast<Mask>(t << 1);
        const double v = g[full ^ s] + g[s];
        if (v > best) {
          best = v;
          arg = t;
        }
      }
      *out_v = best;
      *out_t = arg;
    });
  }
  for (auto& w : workers) w.join();
  tr.n += count;
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    if (chunk_best[c] > tr.best) {
      tr.best = chunk_best[c];
      const Mask s = static_cast<Mask>(chunk_arg[c] << 1);
      tr.best_blocks.assign({full ^ s, s});
    }
  }
}

// Bottom-two phase shared by css1 and search_bottom_two. Returns false when
// the budget stopped the sweep early. The parallel path is taken only when
// the budget covers the phase, so it never has to stop mid-chunk.
bool run_bottom_two(Tracker& tr, int threads) {
  const int a = tr.game.agents();
  if (threads > 1 && a >= 2 && tr.limit >= bottom_two_size(a)) {
    const Mask grand = full_mask(a);
    tr.try_visit(std::span<const Mask>(&grand, 1));
    parallel_level2(tr, threads);
    return true;
  }
  BottomTwoStream stream(a);
  return sweep(tr, stream);
}

// Appends the budget-exhaustion checkpoint unless one already sits at this n
// (exhaustion exactly at a milestone does not duplicate it).
void emit_exhaustion(AnytimeResult& out, const Tracker& tr, std::optional<double> bound,
                     Phase phase) {
  if (!out.trace.empty() && out.trace.back().n == tr.n) return;
  out.trace.push_back(tr.checkpoint(bound, phase));
}

}  // namespace

std::pair<CoalitionStructure, double> exhaustive_search(const Game& game) {
  if (game.agents() > 18)
    throw std::domain_error("exhaustive search refuses more than 18 agents (Bell growth)");
  Tracker tr{game, kNoLimit, 0, -1.0, {}};
  PartitionStream stream(game.agents());
  sweep(tr, stream);
  return {validate_structure(game.agents(), tr.best_blocks), tr.best};
}

AnytimeResult search_bottom_two(const Game& game, int threads) {
  Tracker tr{game, kNoLimit, 0, -1.0, {}};
  run_bottom_two(tr, threads);
  AnytimeResult out;
  out.trace.push_back(tr.checkpoint(static_cast<double>(game.agents()),
                                    Phase{PhaseKind::BottomTwoComplete, 0}));
  return out;
}

AnytimeResult css1(const Game& game, Budget budget, int threads) {
  const int a = game.agents();
  Tracker tr{game, budget_limit(budget), 0, -1.0, {}};
  AnytimeResult out;

  if (!run_bottom_two(tr, threads)) {
    out.trace.push_back(tr.checkpoint(std::nullopt, Phase{PhaseKind::PreBound, 0}));
    return out;
  }
  out.trace.push_back(
      tr.checkpoint(static_cast<double>(a), Phase{PhaseKind::BottomTwoComplete, 0}));
  if (a <= 2) {
    // The bottom two levels already exhaust the graph.
    out.trace.push_back(tr.checkpoint(1.0, Phase{PhaseKind::Exhausted, 0}));
    return out;
  }

  std::optional<double> bound = static_cast<double>(a);
  Phase phase{PhaseKind::BottomTwoComplete, 0};
  for (int l = a; l >= 3; --l) {
    LevelStream stream(a, l);
    if (!sweep(tr, stream)) {
      emit_exhaustion(out, tr, bound, phase);
      return out;
    }
    if (l == 3) {
      bound = 1.0;
      phase = Phase{PhaseKind::Exhausted, 0};
    } else {
      bound = static_cast<double>(bound_after_level(a, l));
      phase = Phase{PhaseKind::TopLevelComplete, l};
    }
    out.trace.push_back(tr.checkpoint(bound, phase));
  }
  return out;
}

AnytimeResult splitting_search(const Game& game, Budget budget) {
  const int a = game.agents();
  Tracker tr{game, budget_limit(budget), 0, -1.0, {}};
  AnytimeResult out;
  std::optional<double> bound;
  Phase phase{PhaseKind::PreBound, 0};
  for (int l = 1; l <= a; ++l) {
    LevelStream stream(a, l);
    if (!sweep(tr, stream)) {
      emit_exhaustion(out, tr, bound, phase);
      return out;
    }
    if (l == 2) {
      bound = static_cast<double>(a);
      phase = Phase{PhaseKind::BottomTwoComplete, 0};
      out.trace.push_back(tr.checkpoint(bound, phase));
    } else if (l < a) {
      phase = Phase{PhaseKind::LevelComplete, l};
      out.trace.push_back(tr.checkpoint(bound, phase));
    }
    if (l == a) {
      bound = 1.0;
      phase = Phase{PhaseKind::Exhausted, 0};
      out.trace.push_back(tr.checkpoint(bound, phase));
    }
  }
  return out;
}

AnytimeResult merging_search(const Game& game, Budget budget) {
  const int a = game.agents();
  Tracker tr{game, budget_limit(budget), 0, -1.0, {}};
  AnytimeResult out;
  for (int l = a; l >= 1; --l) {
    LevelStream stream(a, l);
    if (!sweep(tr, stream)) {
      Phase phase = out.trace.empty() ? Phase{PhaseKind::PreBound, 0} : out.trace.back().phase;
      emit_exhaustion(out, tr, std::nullopt, phase);
      return out;
    }
    if (l == 1)
      out.trace.push_back(tr.checkpoint(1.0, Phase{PhaseKind::Exhausted, 0}));
    else
      out.trace.push_back(tr.checkpoint(std::nullopt, Phase{PhaseKind::LevelComplete, l}));
  }
  return out;
}

}  // namespace csgen
