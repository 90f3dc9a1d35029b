#include "scoring/octal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

namespace scoring {

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_size(std::string_view text, std::string_view term) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad heap size in position term '" + std::string(term) + "'");
  }
  return value;
}

}  // namespace

bool OctalRules::taking_no_breaking() const {
  return std::all_of(digits.begin(), digits.end(), [](int d) { return d <= 3; });
}

int OctalRules::largest_nontrivial_index() const {
  for (int k = length(); k >= 1; --k) {
    if (digit(k) != 0 && digit(k) != 1) return k;
  }
  return 0;
}

bool OctalRules::points_equal_removal() const {
  if (!taking_no_breaking()) return false;
  for (int k = 1; k <= length(); ++k) {
    Score expected = digit(k) != 0 ? Score(k) : Score(0);
    if (point(k) != expected) return false;
  }
  return true;
}

OctalRules make_rules(std::string name, std::vector<int> digits, std::vector<Score> points) {
  if (!valid_identifier(name)) throw std::invalid_argument("ruleset name is not an identifier: '" + name + "'");
  if (digits.empty()) throw std::invalid_argument("ruleset '" + name + "': digit list is empty");
  if (digits.size() != points.size()) {
    throw std::invalid_argument("ruleset '" + name + "': " + std::to_string(digits.size()) + " digits but " +
                                std::to_string(points.size()) + " points");
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    int d = digits[i];
    if (d < 0 || d > 7) {
      throw std::invalid_argument("ruleset '" + name + "': digit " + std::to_string(i + 1) + " = " +
                                  std::to_string(d) + " is outside 0..7");
    }
  }
  if (std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; })) {
    throw std::invalid_argument("ruleset '" + name + "': every digit is zero");
  }
  return OctalRules{std::move(name), std::move(digits), std::move(points)};
}

OctalRules subtraction_game(std::string name, std::span<const int> set) {
  if (set.empty()) throw std::invalid_argument("subtraction set is empty");
  int k = *std::max_element(set.begin(), set.end());
  if (*std::min_element(set.begin(), set.end()) < 1) throw std::invalid_argument("subtraction set entries must be >= 1");
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  std::vector<Score> points(static_cast<std::size_t>(k), Score(0));
  for (int s : set) {
    digits[static_cast<std::size_t>(s - 1)] = 3;
    points[static_cast<std::size_t>(s - 1)] = Score(s);
  }
  return make_rules(std::move(name), std::move(digits), std::move(points));
}

OctalRules standard_nim(int length) {
  if (length < 1) throw std::invalid_argument("nim length must be >= 1");
  std::vector<int> digits(static_cast<std::size_t>(length), 3);
  std::vector<Score> points;
  points.reserve(digits.size());
  for (int k = 1; k <= length; ++k) points.emplace_back(k);
  return make_rules("nim" + std::to_string(length), std::move(digits), std::move(points));
}

RuleBook::RuleBook(std::vector<OctalRules> rules) {
  for (auto& r : rules) add(std::move(r));
}

RulesetId RuleBook::add(OctalRules rules) {
  if (by_name_.contains(rules.name)) throw std::invalid_argument("duplicate ruleset name '" + rules.name + "'");
  if (rules_.size() >= 0xFFFF) throw std::length_error("too many rulesets");
  auto id = static_cast<RulesetId>(rules_.size());
  by_name_.emplace(rules.name, id);
  rules_.push_back(std::move(rules));
  return id;
}

const OctalRules& RuleBook::at(RulesetId id) const {
  if (id >= rules_.size()) throw UnknownRuleset("unknown ruleset id " + std::to_string(id));
  return rules_[id];
}

std::optional<RulesetId> RuleBook::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  return std::nullopt;
}

RulesetId RuleBook::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw UnknownRuleset("unknown ruleset '" + std::string(name) + "'");
}

Position::Position(std::vector<Heap> heaps) : heaps_(std::move(heaps)) {
  std::erase_if(heaps_, [](const Heap& h) { return h.size == 0; });
  std::sort(heaps_.begin(), heaps_.end());
}

std::uint64_t Position::total() const {
  std::uint64_t t = 0;
  for (const Heap& h : heaps_) t += h.size;
  return t;
}

Position Position::with(Heap h) const {
  if (h.size == 0) return *this;
  Position out;
  out.heaps_.reserve(heaps_.size() + 1);
  out.heaps_ = heaps_;
  out.heaps_.insert(std::upper_bound(out.heaps_.begin(), out.heaps_.end(), h), h);
  return out;
}

Position Position::merged(const Position& other) const {
  std::vector<Heap> all(heaps_);
  all.insert(all.end(), other.heaps_.begin(), other.heaps_.end());
  return Position(std::move(all));
}

std::size_t Position::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const Heap& x : heaps_) {
    std::uint64_t v = (static_cast<std::uint64_t>(x.rules) << 32) | x.size;
    h = (h ^ v) * 0x100000001B3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Position parse_position(std::string_view literal, const RuleBook& book) {
  std::vector<Heap> heaps;
  std::string_view rest = trim(literal);
  if (rest.empty()) return Position();
  while (true) {
    auto comma = rest.find(',');
    std::string_view term = trim(rest.substr(0, comma));
    if (term.empty()) throw std::invalid_argument("empty term in position '" + std::string(literal) + "'");
    auto at = term.find('@');
    if (at == std::string_view::npos) {
      if (book.size() != 1) {
        throw std::invalid_argument("position term '" + std::string(term) +
                                    "' needs a ruleset name (size@name) when several rulesets are loaded");
      }
      heaps.push_back({0, parse_size(term, term)});
    } else {
      std::uint32_t size = parse_size(trim(term.substr(0, at)), term);
      heaps.push_back({book.id_of(trim(term.substr(at + 1))), size});
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return Position(std::move(heaps));
}

std::string to_string(const Position& p, const RuleBook& book) {
  std::string out;
  for (const Heap& h : p.heaps()) {
    if (!out.empty()) out += ',';
    out += std::to_string(h.size) + "@" + book.at(h.rules).name;
  }
  return out;
}

std::vector<MoveOutcome> legal_moves(const Position& p, const RuleBook& book) {
  std::vector<MoveOutcome> out;
  auto heaps = p.heaps();

  struct Key {
    Score points;
    const Position* next;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return k.points.hash() ^ (k.next->hash() * 31); }
  };
  struct KeyEq {
    bool operator()(const Key& a, const Key& b) const { return a.points == b.points && *a.next == *b.next; }
  };

  std::vector<MoveOutcome> raw;
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    if (i > 0 && heaps[i] == heaps[i - 1]) continue;
    const Heap heap = heaps[i];
    const OctalRules& rules = book.at(heap.rules);

    std::vector<Heap> others;
    others.reserve(heaps.size() + 1);
    for (std::size_t j = 0; j < heaps.size(); ++j) {
      if (j != i) others.push_back(heaps[j]);
    }
    auto emit = [&](int k, std::vector<std::uint32_t> parts) {
      std::vector<Heap> next = others;
      for (std::uint32_t part : parts) next.push_back({heap.rules, part});
      raw.push_back(MoveOutcome{rules.point(k), Position(std::move(next)), heap, k, std::move(parts)});
    };

    const int limit = static_cast<int>(std::min<std::uint64_t>(heap.size, static_cast<std::uint64_t>(rules.length())));
    for (int k = 1; k <= limit; ++k) {
      const int digit = rules.digit(k);
      if (digit == 0) continue;
      const std::uint32_t rest = heap.size - static_cast<std::uint32_t>(k);
      if ((digit & 1) && rest == 0) emit(k, {});
      if ((digit & 2) && rest >= 1) emit(k, {rest});
      if (digit & 4) {
        for (std::uint32_t a = 1; a <= rest / 2; ++a) emit(k, {a, rest - a});
      }
    }
  }

  if (raw.size() <= 1) return raw;
  std::unordered_set<Key, KeyHash, KeyEq> seen;
  seen.reserve(raw.size());
  out.reserve(raw.size());
  // Keys point into `raw`, which is not resized from here on.
  std::vector<bool> keep(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    keep[i] = seen.insert(Key{raw[i].points, &raw[i].next}).second;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (keep[i]) out.push_back(std::move(raw[i]));
  }
  return out;
}

std::string describe(const MoveOutcome& m, const RuleBook& book) {
  std::string out = "take " + std::to_string(m.removed) + " from " + std::to_string(m.from.size) + "@" +
                    book.at(m.from.rules).name;
  if (m.parts.empty()) {
    out += " leaving nothing";
  } else {
    out += " leaving ";
    for (std::size_t i = 0; i < m.parts.size(); ++i) {
      if (i) out += "+";
      out += std::to_string(m.parts[i]);
    }
  }
  out += " for " + m.points.str();
  return out;
}

}  // namespace scoring
