#include "scoring/grundy.hpp"

#include <algorithm>
#include <utility>

namespace scoring {

namespace {

struct Frame {
  Position position;
  std::vector<MoveOutcome> moves;
  std::size_t next_child = 0;
};

}  // namespace

Score GrundyEvaluator::value(const Position& root) {
  auto& memo = table_.values_;
  if (auto it = memo.find(root); it != memo.end()) return it->second;

  std::vector<Frame> stack;
  stack.push_back({root, legal_moves(root, book_), 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    bool descended = false;
    while (top.next_child < top.moves.size()) {
      const Position& child = top.moves[top.next_child].next;
      if (!memo.contains(child)) {
        Position copy = child;
        auto moves = legal_moves(copy, book_);
        stack.push_back({std::move(copy), std::move(moves), 0});
        descended = true;
        break;
      }
      ++top.next_child;
    }
    if (descended) continue;

    Score best(0);
    if (!top.moves.empty()) {
      best = top.moves.front().points - memo.at(top.moves.front().next);
      for (std::size_t i = 1; i < top.moves.size(); ++i) {
        best = std::max(best, top.moves[i].points - memo.at(top.moves[i].next));
      }
    }
    if (memo.size() >= table_.budget_) {
      throw BudgetExceeded("position budget of " + std::to_string(table_.budget_) + " exhausted");
    }
    memo.emplace(std::move(top.position), best);
    stack.pop_back();
  }
  return memo.at(root);
}

std::vector<MoveOutcome> GrundyEvaluator::best_moves(const Position& p) {
  auto moves = legal_moves(p, book_);
  if (moves.empty()) throw EngineError("position has no legal moves");
  std::vector<Score> values;
  values.reserve(moves.size());
  for (const MoveOutcome& m : moves) values.push_back(m.points - value(m.next));
  Score best = *std::max_element(values.begin(), values.end());
  std::vector<MoveOutcome> out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (values[i] == best) out.push_back(std::move(moves[i]));
  }
  return out;
}

std::vector<Score> GrundyEvaluator::sweep(const Position& base, RulesetId var, std::uint32_t max_n) {
  book_.at(var);
  std::vector<Score> out;
  out.reserve(static_cast<std::size_t>(max_n) + 1);
  for (std::uint32_t n = 0; n <= max_n; ++n) out.push_back(value(base.with({var, n})));
  return out;
}

Score grundy_s(const Position& p, const RuleBook& book, GrundyTable& table) {
  return GrundyEvaluator(book, table).value(p);
}

std::vector<MoveOutcome> best_moves(const Position& p, const RuleBook& book) {
  GrundyTable table;
  return GrundyEvaluator(book, table).best_moves(p);
}

std::vector<Score> sweep(const RuleBook& book, const Position& base, RulesetId var, std::uint32_t max_n) {
  GrundyTable table;
  return GrundyEvaluator(book, table).sweep(base, var, max_n);
}

struct GameExpander::Impl {
  explicit Impl(const RuleBook& b) : book(b) {}

  Game build(const Position& p, const Score& score) {
    auto key = std::make_pair(p, score);
    if (auto it = nodes.find(key); it != nodes.end()) return it->second;
    const auto& moves = moves_of(p);
    std::vector<Game> left, right;
    left.reserve(moves.size());
    right.reserve(moves.size());
    for (const MoveOutcome& m : moves) {
      left.push_back(build(m.next, score + m.points));
      right.push_back(build(m.next, score - m.points));
    }
    Game g(score, std::move(left), std::move(right));
    nodes.emplace(std::move(key), g);
    return g;
  }

  const std::vector<MoveOutcome>& moves_of(const Position& p) {
    auto it = moves.find(p);
    if (it == moves.end()) it = moves.emplace(p, legal_moves(p, book)).first;
    return it->second;
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<Position, Score>& k) const noexcept {
      return k.first.hash() * 0x9E3779B97F4A7C15ULL ^ k.second.hash();
    }
  };

  const RuleBook& book;
  std::unordered_map<Position, std::vector<MoveOutcome>, PositionHash> moves;
  std::unordered_map<std::pair<Position, Score>, Game, KeyHash> nodes;
};

GameExpander::GameExpander(const RuleBook& book, std::uint64_t max_total)
    : impl_(std::make_unique<Impl>(book)), max_total_(max_total), book_(book) {}

GameExpander::~GameExpander() = default;

Game GameExpander::expand(const Position& p) {
  if (p.total() > max_total_) {
    throw BudgetExceeded("position holds " + std::to_string(p.total()) + " beans; expansion bound is " +
                         std::to_string(max_total_));
  }
  for (const Heap& h : p.heaps()) book_.at(h.rules);
  return impl_->build(p, Score(0));
}

Game position_to_game(const Position& p, const RuleBook& book, std::uint64_t max_total) {
  return GameExpander(book, max_total).expand(p);
}

}  // namespace scoring
