/**
 * \file partitions.cpp
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#include "csgen/partitions.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace csgen {

namespace {

std::uint64_t checked_add(std::uint64_t x, std::uint64_t y) {
  std::uint64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("count overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
  std::uint64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("count overflow");
  return r;
}

struct CountTable {
  // s[a][l] = S(a, l); b[a] = bell(a). Exact for a <= kMaxAgents.
  std::uint64_t s[kMaxAgents + 1][kMaxAgents + 1] = {};
  std::uint64_t b[kMaxAgents + 1] = {};

  CountTable() {
    s[0][0] = 1;
    b[0] = 1;
    for (int a = 1; a <= kMaxAgents; ++a) {
      for (int l = 1; l <= a; ++l)
        s[a][l] = checked_add(checked_mul(static_cast<std::uint64_t>(l), s[a - 1][l]),
                              s[a - 1][l - 1]);
      std::uint64_t sum = 0;
      for (int l = 1; l <= a; ++l) sum = checked_add(sum, s[a][l]);
      b[a] = sum;
    }
  }
};

const CountTable& counts() {
  static const CountTable table;
  return table;
}

void check_agents(int a) {
  if (a < 1 || a > kMaxAgents) throw std::domain_error("agent count out of range");
}

}  // namespace

std::uint64_t stirling(int a, int l) {
  check_agents(a);
  if (l < 1 || l > a) throw std::domain_error("level out of range");
  return counts().s[a][l];
}

std::uint64_t bell(int a) {
  check_agents(a);
  return counts().b[a];
}

std::uint64_t bottom_two_size(int a) {
  check_agents(a);
  return a == 1 ? 1u : std::uint64_t{1} << (a - 1);
}

LevelStream::LevelStream(int agents, int level) : a_(agents), l_(level) {
  check_agents(agents);
  if (level < 1 || level > agents) throw std::domain_error("level out of range");
  if (l_ == 2) {
    t_ = 1;
    t_last_ = (std::uint64_t{1} << (a_ - 1)) - 1;
  }
}

std::span<const Mask> LevelStream::emit() {
  std::fill_n(blocks_.begin(), l_, Mask{0});
  for (int i = 0; i < a_; ++i) blocks_[r_[i]] |= Mask{1} << i;
  ++produced_;
  return {blocks_.data(), static_cast<std::size_t>(l_)};
}

std::span<const Mask> LevelStream::next() {
  if (done_) return {};
  if (l_ == 1) {
    done_ = true;
    blocks_[0] = full_mask(a_);
    ++produced_;
    return {blocks_.data(), 1};
  }
  if (l_ == 2) {
    if (t_ > t_last_) {
      done_ = true;
      return {};
    }
    Mask s = static_cast<Mask>(t_ << 1);
    blocks_[0] = full_mask(a_) ^ s;  // contains agent 1
    blocks_[1] = s;
    ++t_;
    ++produced_;
    return {blocks_.data(), 2};
  }
  if (!started_) {
    started_ = true;
    // Lexicographically first string with exactly l_ blocks:
    // a_-l_+1 zeros, then 1, 2, ..., l_-1.
    for (int i = 0; i < a_; ++i)
      r_[i] = static_cast<std::uint8_t>(std::max(0, i - (a_ - l_)));
    pmax_[0] = 0;
    for (int i = 1; i < a_; ++i) pmax_[i] = std::max(pmax_[i - 1], r_[i]);
    return emit();
  }
  // Successor: rightmost position that can grow, suffix refilled minimally
  // so the string still reaches exactly l_ blocks. A position whose prefix
  // max is tight (pmax = l_-a_+i-1) already carries the forced value
  // pmax+1, so growth at it is refused by the limit test alone.
  for (int i = a_ - 1; i >= 1; --i) {
    int limit = std::min<int>(pmax_[i - 1] + 1, l_ - 1);
    if (r_[i] < limit) {
      ++r_[i];
      pmax_[i] = std::max(pmax_[i - 1], r_[i]);
      int deficit = (l_ - 1) - pmax_[i];
      assert(deficit <= a_ - 1 - i);
      for (int j = i + 1; j < a_; ++j) {
        int tail = a_ - j;
        r_[j] = static_cast<std::uint8_t>(tail <= deficit ? l_ - tail : 0);
        pmax_[j] = std::max(pmax_[j - 1], r_[j]);
      }
      return emit();
    }
  }
  done_ = true;
  return {};
}

PartitionStream::PartitionStream(int agents) : a_(agents) {
  check_agents(agents);
  level_.emplace(a_, 1);
  cur_level_ = 1;
}

std::span<const Mask> PartitionStream::next() {
  while (level_) {
    auto blocks = level_->next();
    if (!blocks.empty()) {
      ++produced_;
      return blocks;
    }
    if (cur_level_ == a_) {
      level_.reset();
      break;
    }
    ++cur_level_;
    level_.emplace(a_, cur_level_);
  }
  return {};
}

BottomTwoStream::BottomTwoStream(int agents) : a_(agents) {
  check_agents(agents);
  if (a_ >= 2) level2_.emplace(a_, 2);
}

std::span<const Mask> BottomTwoStream::next() {
  if (!grand_done_) {
    grand_done_ = true;
    ++produced_;
    grand_buf_ = full_mask(a_);
    return {&grand_buf_, 1};
  }
  if (!level2_) return {};
  auto blocks = level2_->next();
  if (!blocks.empty()) ++produced_;
  return blocks;
}

std::span<const Mask> BottomTwoStream::node(int agents, std::uint64_t index, std::span<Mask> buf) {
  check_agents(agents);
  if (index >= bottom_two_size(agents)) throw std::domain_error("bottom-two index out of range");
  if (index == 0) {
    buf[0] = full_mask(agents);
    return buf.subspan(0, 1);
  }
  Mask s = static_cast<Mask>(index << 1);
  buf[0] = full_mask(agents) ^ s;
  buf[1] = s;
  return buf.subspan(0, 2);
}

SplitStream::SplitStream(Mask s) {
  if (coalition_size(s) < 2) throw std::domain_error("cannot split a coalition of size < 2");
  pivot_ = s & (~s + 1u);
  rest_ = s ^ pivot_;
}

std::optional<std::pair<Mask, Mask>> SplitStream::next() {
  if (done_) return std::nullopt;
  // x_ walks the strict subsets of rest_ ascending; the pivot part keeps the
  // lowest agent so each unordered split appears once, smaller mask first.
  Mask part = pivot_ | x_;
  Mask other = rest_ ^ x_;
  if (x_ == rest_) {
    done_ = true;
    return std::nullopt;
  }
  x_ = (x_ - rest_) & rest_;
  return std::make_pair(part, other);
}

std::vector<CoalitionStructure> mergers(const CoalitionStructure& cs) {
  int l = cs.level();
  if (l < 2) throw std::domain_error("cannot merge within a level-1 structure");
  std::vector<CoalitionStructure> out;
  out.reserve(static_cast<std::size_t>(l) * (l - 1) / 2);
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      CoalitionStructure child;
      child.parts.reserve(static_cast<std::size_t>(l) - 1);
      for (int k = 0; k < l; ++k)
        if (k != i && k != j) child.parts.push_back(cs.parts[k]);
      child.parts.push_back(cs.parts[i] | cs.parts[j]);
      std::sort(child.parts.begin(), child.parts.end(),
                [](Mask x, Mask y) { return (x & (~x + 1u)) < (y & (~y + 1u)); });
      out.push_back(std::move(child));
    }
  }
  return out;
}

}  // namespace csgen
