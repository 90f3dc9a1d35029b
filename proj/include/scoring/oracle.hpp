#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scoring/game.hpp"
#include "scoring/octal.hpp"

namespace scoring {

inline constexpr std::size_t kDefaultPositionLimit = 1'000'000;

/// Every heap multiset over `rulesets` holding at most max_total beans,
/// including the empty position, in canonical order. Throws BudgetExceeded
/// past max_positions.
std::vector<Position> enumerate_positions(std::span<const RulesetId> rulesets, std::uint64_t max_total,
                                          std::size_t max_positions = kDefaultPositionLimit);

struct OracleMismatch {
  Position position;
  Score grundy;
  FinalScores minimax;
};

struct OracleResult {
  std::uint64_t positions = 0;
  std::vector<OracleMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Checks Gs(p) = sl(T) = -sr(T) with T the expanded game tree of p, for
/// every position up to max_total beans. Each ruleset is enumerated on its
/// own; with `mixed` set, positions combining rulesets are included too.
OracleResult cross_check(const RuleBook& book, std::uint64_t max_total, bool mixed = false,
                         std::size_t max_positions = kDefaultPositionLimit);

}  // namespace scoring
