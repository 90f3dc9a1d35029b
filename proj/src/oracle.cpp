#include "scoring/oracle.hpp"

#include <algorithm>
#include <string>

#include "scoring/grundy.hpp"

namespace scoring {

namespace {

// Heaps are appended in non-increasing (ruleset, size) order so each
// multiset is produced once.
void enumerate_rec(std::span<const RulesetId> rulesets, std::uint64_t remaining, Heap ceiling,
                   std::vector<Heap>& current, std::vector<Position>& out, std::size_t limit) {
  if (out.size() >= limit) {
    throw BudgetExceeded("more than " + std::to_string(limit) + " positions to enumerate");
  }
  out.emplace_back(current);
  for (RulesetId id : rulesets) {
    if (id > ceiling.rules) continue;
    std::uint64_t max_size = remaining;
    if (id == ceiling.rules) max_size = std::min<std::uint64_t>(max_size, ceiling.size);
    for (std::uint32_t size = 1; size <= max_size; ++size) {
      current.push_back({id, size});
      enumerate_rec(rulesets, remaining - size, {id, size}, current, out, limit);
      current.pop_back();
    }
  }
}

// Multisets of (ruleset, size) heaps with total <= max_total, saturating at
// cap. Totals past 200 alone exceed 10^12 multisets, so they saturate early.
std::uint64_t count_positions(std::size_t kinds, std::uint64_t max_total, std::uint64_t cap) {
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(max_total, 200));
  std::vector<std::uint64_t> ways(top + 1, 0);
  ways[0] = 1;
  for (std::size_t kind = 0; kind < kinds; ++kind) {
    for (std::size_t part = 1; part <= top; ++part) {
      for (std::size_t t = part; t <= top; ++t) ways[t] = std::min(cap, ways[t] + ways[t - part]);
    }
  }
  std::uint64_t total = 0;
  for (std::uint64_t w : ways) total = std::min(cap, total + w);
  if (max_total > top && kinds > 0) total = cap;
  return total;
}

}  // namespace

std::vector<Position> enumerate_positions(std::span<const RulesetId> rulesets, std::uint64_t max_total,
                                          std::size_t max_positions) {
  std::vector<RulesetId> ids(rulesets.begin(), rulesets.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::uint64_t cap = std::min<std::uint64_t>(max_positions, std::uint64_t{1} << 62) + 1;
  if (count_positions(ids.size(), max_total, cap) > max_positions) {
    throw BudgetExceeded("more than " + std::to_string(max_positions) + " positions to enumerate");
  }
  std::vector<Position> out;
  std::vector<Heap> current;
  enumerate_rec(ids, max_total, {0xFFFF, 0xFFFFFFFF}, current, out, max_positions);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OracleResult cross_check(const RuleBook& book, std::uint64_t max_total, bool mixed, std::size_t max_positions) {
  std::vector<std::vector<RulesetId>> groups;
  if (mixed) {
    std::vector<RulesetId> all;
    for (std::size_t i = 0; i < book.size(); ++i) all.push_back(static_cast<RulesetId>(i));
    groups.push_back(std::move(all));
  } else {
    for (std::size_t i = 0; i < book.size(); ++i) groups.push_back({static_cast<RulesetId>(i)});
  }

  OracleResult result;
  GrundyTable table;
  GrundyEvaluator evaluator(book, table);
  GameExpander expander(book, max_total);
  for (const auto& group : groups) {
    for (const Position& p : enumerate_positions(group, max_total, max_positions)) {
      ++result.positions;
      Score g = evaluator.value(p);
      FinalScores fs = final_scores(expander.expand(p));
      if (g != fs.sl || g != -fs.sr) result.mismatches.push_back({p, g, fs});
    }
  }
  return result;
}

}  // namespace scoring
