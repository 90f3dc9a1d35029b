#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scoring/score.hpp"

namespace scoring {

class Game;

namespace detail {

struct GameNode {
  Score score;
  std::vector<Game> left;
  std::vector<Game> right;
  std::uint64_t hash = 0;
  std::uint64_t tree_size = 1;  // saturating node count of the unfolded tree

  // Releases uniquely owned descendants iteratively, so dropping a deep game
  // does not recurse once per level.
  ~GameNode();
};

}  // namespace detail

/// Immutable scoring-play game {left | score | right}.
///
/// Option lists are multisets kept in a canonical order (by score, then
/// left options, then right options, lexicographically), so two games are
/// equal exactly when their trees are identical up to option order.
/// Subtrees are shared by pointer; a Game is cheap to copy and safe to read
/// from several threads.
class Game {
 public:
  /// The number game {|0|}.
  Game();
  Game(Score score, std::vector<Game> left, std::vector<Game> right);

  static Game number(Score s);

  const Score& score() const { return node_->score; }
  std::span<const Game> left() const { return node_->left; }
  std::span<const Game> right() const { return node_->right; }
  bool is_number() const { return node_->left.empty() && node_->right.empty(); }

  /// Structural hash; equal games hash equal.
  std::uint64_t hash() const { return node_->hash; }
  /// Node count of the tree with shared subtrees unfolded (saturates at 2^63).
  std::uint64_t tree_size() const { return node_->tree_size; }
  /// Identity of the underlying node, for memo tables.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Game& a, const Game& b);

 private:
  friend struct detail::GameNode;
  std::shared_ptr<const detail::GameNode> node_;
};

/// Three-way structural comparison defining the canonical option order.
int compare(const Game& a, const Game& b);

struct GameLess {
  bool operator()(const Game& a, const Game& b) const { return compare(a, b) < 0; }
};

struct GameHash {
  std::size_t operator()(const Game& g) const noexcept { return static_cast<std::size_t>(g.hash()); }
};

struct FinalScores {
  Score sl;  // Left moves first
  Score sr;  // Right moves first
  friend bool operator==(const FinalScores&, const FinalScores&) = default;
};

enum class Outcome { L, R, N, P, Tie };

std::string_view to_string(Outcome o);

Game number(Score s);
Game negate(const Game& g);
/// Long-rule disjunctive sum.
Game sum(const Game& g, const Game& h);
/// Adds r to the score of every node.
Game translate(const Game& g, const Score& r);
/// Mirror image about `center`: scores x -> 2*center - x, left and right
/// swapped recursively. Equals translate(negate(translate(g, -center)), center).
Game reflect(const Game& g, const Score& center);

/// Optimal terminal scores for both starting players.
FinalScores final_scores(const Game& g);
Outcome outcome(const FinalScores& fs);
Outcome outcome(const Game& g);

bool is_impartial(const Game& g);

/// {{0|0|0}|0|{0|0|0}}
Game identity_game();

/// Deterministic random impartial game for property tests. Right options are
/// the exact mirrors of the left options about the root score.
Game generate_impartial(int max_depth, int max_branch, const Score& score_bound, std::uint64_t seed);

/// Indented one-node-per-line rendering with L:/R: tags.
std::string render_tree(const Game& g);

}  // namespace scoring
