#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scoring/score.hpp"

namespace scoring {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public EngineError {
 public:
  using EngineError::EngineError;
};

class UnknownRuleset : public EngineError {
 public:
  using EngineError::EngineError;
};

/// Scoring octal game (t_1 ... t_f, p_1 ... p_f). Removing k beans from a
/// heap scores points[k-1]; bit b of digits[k-1] allows leaving exactly b
/// heaps behind (b = 0, 1 or 2).
struct OctalRules {
  std::string name;
  std::vector<int> digits;
  std::vector<Score> points;

  int length() const { return static_cast<int>(digits.size()); }
  int digit(int k) const { return digits[static_cast<std::size_t>(k - 1)]; }
  const Score& point(int k) const { return points[static_cast<std::size_t>(k - 1)]; }

  /// Every digit is in 0..3, so no move splits a heap.
  bool taking_no_breaking() const;
  /// Largest k with t_k not in {0, 1}; 0 if there is none.
  int largest_nontrivial_index() const;
  /// Taking-no-breaking with p_k = k wherever t_k != 0 and p_k = 0 elsewhere.
  bool points_equal_removal() const;
};

/// Validates and builds a ruleset. Throws std::invalid_argument.
OctalRules make_rules(std::string name, std::vector<int> digits, std::vector<Score> points);

/// Subtraction game on `set` with p_i = i. Digits run up to max(set).
OctalRules subtraction_game(std::string name, std::span<const int> set);

/// Scoring nim: take any number of beans up to `length`, one point per bean.
OctalRules standard_nim(int length);

using RulesetId = std::uint16_t;

/// Owns the rulesets a computation refers to and resolves names to ids.
class RuleBook {
 public:
  RuleBook() = default;
  explicit RuleBook(std::vector<OctalRules> rules);

  RulesetId add(OctalRules rules);
  const OctalRules& at(RulesetId id) const;
  std::optional<RulesetId> find(std::string_view name) const;
  RulesetId id_of(std::string_view name) const;
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<OctalRules> rules_;
  std::unordered_map<std::string, RulesetId> by_name_;
};

struct Heap {
  RulesetId rules = 0;
  std::uint32_t size = 0;
  friend auto operator<=>(const Heap&, const Heap&) = default;
};

/// Multiset of heaps, kept sorted by (ruleset, size) with empty heaps dropped.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<Heap> heaps);

  std::span<const Heap> heaps() const { return heaps_; }
  bool empty() const { return heaps_.empty(); }
  std::uint64_t total() const;
  Position with(Heap h) const;
  Position merged(const Position& other) const;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;

  std::size_t hash() const;

 private:
  std::vector<Heap> heaps_;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept { return p.hash(); }
};

/// Parses "4@A,7@A,3@B". A bare size refers to the only ruleset when the book
/// holds exactly one. The empty string is the empty position.
Position parse_position(std::string_view literal, const RuleBook& book);
std::string to_string(const Position& p, const RuleBook& book);

struct MoveOutcome {
  Score points;
  Position next;
  // Provenance of the first move that produced this outcome.
  Heap from;
  int removed = 0;
  std::vector<std::uint32_t> parts;
};

/// Every legal (points, next) pair from p, duplicates merged, in generation
/// order: heaps in canonical order, then removal count, then split shape.
std::vector<MoveOutcome> legal_moves(const Position& p, const RuleBook& book);

std::string describe(const MoveOutcome& m, const RuleBook& book);

}  // namespace scoring
