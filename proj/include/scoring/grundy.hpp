#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "scoring/game.hpp"
#include "scoring/octal.hpp"
#include "scoring/score.hpp"

namespace scoring {

/// Memo table for the scoring Grundy function, keyed on canonical positions.
/// Not synchronized: give each thread its own table.
class GrundyTable {
 public:
  static constexpr std::size_t kDefaultBudget = 20'000'000;

  explicit GrundyTable(std::size_t position_budget = kDefaultBudget) : budget_(position_budget) {}

  std::size_t size() const { return values_.size(); }
  std::size_t budget() const { return budget_; }
  void clear() { values_.clear(); }

 private:
  friend class GrundyEvaluator;
  std::unordered_map<Position, Score, PositionHash> values_;
  std::size_t budget_;
};

/// Computes Gs(p) = max over moves (points - Gs(next)), with Gs = 0 when no
/// move exists. Evaluation walks an explicit stack, so heap sizes are not
/// limited by call-stack depth.
class GrundyEvaluator {
 public:
  GrundyEvaluator(const RuleBook& book, GrundyTable& table) : book_(book), table_(table) {}

  /// Throws BudgetExceeded once the table would grow past its budget.
  Score value(const Position& p);
  /// All moves reaching the maximum, in legal_moves order. Throws
  /// EngineError when p has no legal move.
  std::vector<MoveOutcome> best_moves(const Position& p);
  /// Entry n is Gs(base + n@var) for n = 0..max_n.
  std::vector<Score> sweep(const Position& base, RulesetId var, std::uint32_t max_n);

 private:
  const RuleBook& book_;
  GrundyTable& table_;
};

Score grundy_s(const Position& p, const RuleBook& book, GrundyTable& table);
std::vector<MoveOutcome> best_moves(const Position& p, const RuleBook& book);
std::vector<Score> sweep(const RuleBook& book, const Position& base, RulesetId var, std::uint32_t max_n);

/// Builds explicit game trees for positions, sharing identical
/// (position, score) subtrees across every expansion it performs.
class GameExpander {
 public:
  GameExpander(const RuleBook& book, std::uint64_t max_total);
  ~GameExpander();
  GameExpander(const GameExpander&) = delete;
  GameExpander& operator=(const GameExpander&) = delete;

  Game expand(const Position& p);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint64_t max_total_;
  const RuleBook& book_;
};

/// Expands p into an explicit game tree rooted at score 0: each move worth q
/// becomes a Left option translated by +q and a Right option translated by
/// -q. Identical (position, score) subtrees are shared. Throws BudgetExceeded
/// if p holds more than max_total beans.
Game position_to_game(const Position& p, const RuleBook& book, std::uint64_t max_total);

}  // namespace scoring
