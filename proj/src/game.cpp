#include "scoring/game.hpp"

#include "scoring/rng.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace scoring {

namespace {

constexpr std::uint64_t kSizeCap = std::uint64_t{1} << 63;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 12) + (h >> 4);
  return h * 0xBF58476D1CE4E5B9ULL;
}

struct PairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
    auto a = reinterpret_cast<std::uintptr_t>(p.first);
    auto b = reinterpret_cast<std::uintptr_t>(p.second);
    return static_cast<std::size_t>(mix(a, b));
  }
};

using PairSet = std::unordered_set<std::pair<const void*, const void*>, PairHash>;

bool shallow_mismatch(const Game& a, const Game& b) {
  return a.hash() != b.hash() || a.tree_size() != b.tree_size() || a.score() != b.score() ||
         a.left().size() != b.left().size() || a.right().size() != b.right().size();
}

bool equal_rec(const Game& a, const Game& b, PairSet* memo) {
  if (a.id() == b.id()) return true;
  if (shallow_mismatch(a, b)) return false;
  if (memo && memo->contains({a.id(), b.id()})) return true;
  for (std::size_t i = 0; i < a.left().size(); ++i) {
    if (!equal_rec(a.left()[i], b.left()[i], memo)) return false;
  }
  for (std::size_t i = 0; i < a.right().size(); ++i) {
    if (!equal_rec(a.right()[i], b.right()[i], memo)) return false;
  }
  if (memo) memo->insert({a.id(), b.id()});
  return true;
}

// Options of equal games are in the same canonical order, so element-wise
// comparison suffices. Shared subtrees make the unfolded tree exponentially
// larger than the DAG; the pair memo keeps that check linear in the DAG.
bool structurally_equal(const Game& a, const Game& b) {
  if (a.id() == b.id()) return true;
  if (shallow_mismatch(a, b)) return false;
  if (a.tree_size() <= 64) return equal_rec(a, b, nullptr);
  PairSet memo;
  return equal_rec(a, b, &memo);
}

int compare_lists(std::span<const Game> a, std::span<const Game> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

using NodeMemo = std::unordered_map<const void*, Game>;

Game negate_rec(const Game& g, NodeMemo& memo) {
  if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
  std::vector<Game> left, right;
  left.reserve(g.right().size());
  right.reserve(g.left().size());
  for (const Game& r : g.right()) left.push_back(negate_rec(r, memo));
  for (const Game& l : g.left()) right.push_back(negate_rec(l, memo));
  Game out(-g.score(), std::move(left), std::move(right));
  memo.emplace(g.id(), out);
  return out;
}

Game translate_rec(const Game& g, const Score& r, NodeMemo& memo) {
  if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
  std::vector<Game> left, right;
  left.reserve(g.left().size());
  right.reserve(g.right().size());
  for (const Game& l : g.left()) left.push_back(translate_rec(l, r, memo));
  for (const Game& x : g.right()) right.push_back(translate_rec(x, r, memo));
  Game out(g.score() + r, std::move(left), std::move(right));
  memo.emplace(g.id(), out);
  return out;
}

Game reflect_rec(const Game& g, const Score& twice_center, NodeMemo& memo) {
  if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
  std::vector<Game> left, right;
  left.reserve(g.right().size());
  right.reserve(g.left().size());
  for (const Game& x : g.right()) left.push_back(reflect_rec(x, twice_center, memo));
  for (const Game& l : g.left()) right.push_back(reflect_rec(l, twice_center, memo));
  Game out(twice_center - g.score(), std::move(left), std::move(right));
  memo.emplace(g.id(), out);
  return out;
}

using SumMemo = std::unordered_map<std::pair<const void*, const void*>, Game, PairHash>;

Game sum_rec(const Game& g, const Game& h, SumMemo& memo) {
  if (auto it = memo.find({g.id(), h.id()}); it != memo.end()) return it->second;
  std::vector<Game> left, right;
  left.reserve(g.left().size() + h.left().size());
  right.reserve(g.right().size() + h.right().size());
  for (const Game& gl : g.left()) left.push_back(sum_rec(gl, h, memo));
  for (const Game& hl : h.left()) left.push_back(sum_rec(g, hl, memo));
  for (const Game& gr : g.right()) right.push_back(sum_rec(gr, h, memo));
  for (const Game& hr : h.right()) right.push_back(sum_rec(g, hr, memo));
  Game out(g.score() + h.score(), std::move(left), std::move(right));
  memo.emplace(std::make_pair(g.id(), h.id()), out);
  return out;
}

void render_rec(const Game& g, int depth, std::string_view tag, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << tag << g.score() << '\n';
  for (const Game& l : g.left()) render_rec(l, depth + 1, "L: ", os);
  for (const Game& r : g.right()) render_rec(r, depth + 1, "R: ", os);
}

Score random_score(PortableRng& rng, const Score& bound) {
  // multiples of bound/4 in [-bound, bound]
  return bound * Score(rng.uniform(-4, 4), 4);
}

Game generate_rec(int depth, int max_branch, const Score& bound, const Score& root, PortableRng& rng) {
  if (depth <= 0 || max_branch <= 0) return Game::number(root);
  auto count = rng.uniform(0, max_branch);
  std::vector<Game> left, right;
  for (std::int64_t i = 0; i < count; ++i) {
    Score child_score = root + random_score(rng, bound);
    left.push_back(generate_rec(depth - 1, max_branch, bound, child_score, rng));
  }
  right.reserve(left.size());
  for (const Game& l : left) right.push_back(reflect(l, root));
  return Game(root, std::move(left), std::move(right));
}

}  // namespace

detail::GameNode::~GameNode() {
  std::vector<Game> pending = std::move(left);
  for (Game& r : right) pending.push_back(std::move(r));
  while (!pending.empty()) {
    Game g = std::move(pending.back());
    pending.pop_back();
    // Sole owner: no other thread can reach this node. Nodes are created
    // mutable, so stripping const is sound.
    if (g.node_ && g.node_.use_count() == 1) {
      auto& node = const_cast<GameNode&>(*g.node_);
      for (Game& c : node.left) pending.push_back(std::move(c));
      for (Game& c : node.right) pending.push_back(std::move(c));
      node.left.clear();
      node.right.clear();
    }
  }
}

Game::Game() : Game(Score(0), {}, {}) {}

Game::Game(Score score, std::vector<Game> left, std::vector<Game> right) {
  std::sort(left.begin(), left.end(), GameLess{});
  std::sort(right.begin(), right.end(), GameLess{});
  auto node = std::make_shared<detail::GameNode>();
  std::uint64_t h = mix(0x5C0E5C0E5C0E5C0EULL, score.hash());
  std::uint64_t size = 1;
  auto add = [&](const Game& child) {
    h = mix(h, child.hash());
    size = (size >= kSizeCap - child.tree_size()) ? kSizeCap : size + child.tree_size();
  };
  h = mix(h, 0x4C);
  for (const Game& l : left) add(l);
  h = mix(h, 0x52);
  for (const Game& r : right) add(r);
  node->score = score;
  node->left = std::move(left);
  node->right = std::move(right);
  node->hash = h;
  node->tree_size = size;
  node_ = std::move(node);
}

Game Game::number(Score s) { return Game(s, {}, {}); }

bool operator==(const Game& a, const Game& b) { return structurally_equal(a, b); }

int compare(const Game& a, const Game& b) {
  if (a.id() == b.id()) return 0;
  if (auto c = a.score() <=> b.score(); c != 0) return c < 0 ? -1 : 1;
  if (a.hash() == b.hash() && structurally_equal(a, b)) return 0;
  if (int c = compare_lists(a.left(), b.left()); c != 0) return c;
  return compare_lists(a.right(), b.right());
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::L: return "L";
    case Outcome::R: return "R";
    case Outcome::N: return "N";
    case Outcome::P: return "P";
    case Outcome::Tie: return "Tie";
  }
  return "?";
}

Game number(Score s) { return Game::number(s); }

Game negate(const Game& g) {
  NodeMemo memo;
  return negate_rec(g, memo);
}

Game sum(const Game& g, const Game& h) {
  SumMemo memo;
  return sum_rec(g, h, memo);
}

Game translate(const Game& g, const Score& r) {
  NodeMemo memo;
  return translate_rec(g, r, memo);
}

Game reflect(const Game& g, const Score& center) {
  NodeMemo memo;
  return reflect_rec(g, center + center, memo);
}

FinalScores final_scores(const Game& root) {
  std::unordered_map<const void*, FinalScores> done;
  std::vector<std::pair<Game, bool>> stack;
  stack.emplace_back(root, false);
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (done.contains(g.id())) continue;
    if (!expanded) {
      stack.emplace_back(g, true);
      for (const Game& l : g.left()) {
        if (!done.contains(l.id())) stack.emplace_back(l, false);
      }
      for (const Game& r : g.right()) {
        if (!done.contains(r.id())) stack.emplace_back(r, false);
      }
      continue;
    }
    Score sl = g.score();
    if (!g.left().empty()) {
      sl = done.at(g.left()[0].id()).sr;
      for (const Game& l : g.left().subspan(1)) sl = std::max(sl, done.at(l.id()).sr);
    }
    Score sr = g.score();
    if (!g.right().empty()) {
      sr = done.at(g.right()[0].id()).sl;
      for (const Game& r : g.right().subspan(1)) sr = std::min(sr, done.at(r.id()).sl);
    }
    done.emplace(g.id(), FinalScores{sl, sr});
  }
  return done.at(root.id());
}

Outcome outcome(const FinalScores& fs) {
  int l = fs.sl.sign();
  int r = fs.sr.sign();
  if (l == 0 && r == 0) return Outcome::Tie;
  if (l >= 0 && r >= 0) return Outcome::L;
  if (l <= 0 && r <= 0) return Outcome::R;
  return l > 0 ? Outcome::N : Outcome::P;
}

Outcome outcome(const Game& g) { return outcome(final_scores(g)); }

bool is_impartial(const Game& g) {
  if (g.left().empty() != g.right().empty()) return false;
  if (g.left().empty()) return true;
  // gL - S = -(gR - S)  <=>  gL == reflect(gR, S)
  NodeMemo memo;
  const Score twice = g.score() + g.score();
  std::vector<Game> mirrored;
  mirrored.reserve(g.right().size());
  for (const Game& r : g.right()) mirrored.push_back(reflect_rec(r, twice, memo));

  std::unordered_set<Game, GameHash> left_set(g.left().begin(), g.left().end());
  std::unordered_set<Game, GameHash> mirror_set(mirrored.begin(), mirrored.end());
  for (const Game& l : g.left()) {
    if (!mirror_set.contains(l)) return false;
  }
  for (const Game& m : mirrored) {
    if (!left_set.contains(m)) return false;
  }
  return true;
}

Game identity_game() {
  Game inner(Score(0), {Game::number(0)}, {Game::number(0)});
  return Game(Score(0), {inner}, {inner});
}

Game generate_impartial(int max_depth, int max_branch, const Score& score_bound, std::uint64_t seed) {
  PortableRng rng(seed);
  Score root = random_score(rng, score_bound);
  return generate_rec(max_depth, max_branch, score_bound, root, rng);
}

std::string render_tree(const Game& g) {
  std::ostringstream os;
  render_rec(g, 0, "", os);
  return os.str();
}

}  // namespace scoring
