#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracle_models.hpp"
#include "scoring/grundy.hpp"
#include "scoring/lemma.hpp"
#include "scoring/octal.hpp"
#include "scoring/oracle.hpp"
#include "scoring/rules_io.hpp"

using namespace scoring;

namespace {

std::vector<Score> ints(std::initializer_list<int> xs) {
  std::vector<Score> out;
  for (int x : xs) out.push_back(Score(x));
  return out;
}

RuleBook book_of(OctalRules r) {
  RuleBook b;
  b.add(std::move(r));
  return b;
}

OctalRules sub45() { return make_rules("sub45", {0, 0, 0, 3, 3}, ints({0, 0, 0, 4, 5})); }
OctalRules o3333() { return make_rules("o3333p2", {3, 3, 3, 3}, ints({2, 2, 2, 2})); }
OctalRules o26() { return make_rules("o26", {2, 6}, ints({1, 2})); }

Position heaps(std::initializer_list<std::uint32_t> sizes, RulesetId id = 0) {
  std::vector<Heap> hs;
  for (auto s : sizes) hs.push_back(Heap{id, s});
  return Position(std::move(hs));
}

}  // namespace

TEST_CASE("rules documents") {
  OctalRules a = parse_rules("name: sub45\ndigits: [0, 0, 0, 3, 3]\npoints: [0, 0, 0, 4, 5]\n");
  CHECK(a.name == "sub45");
  CHECK(a.digits == std::vector<int>{0, 0, 0, 3, 3});
  CHECK(a.points == ints({0, 0, 0, 4, 5}));
  CHECK(a.taking_no_breaking());
  CHECK(a.points_equal_removal());
  CHECK(a.largest_nontrivial_index() == 5);

  OctalRules b = parse_rules("name: o3333p2\ndigits: [3,3,3,3]\npoints: [2,2,2,2]\n");
  CHECK(b.taking_no_breaking());
  CHECK_FALSE(b.points_equal_removal());
  CHECK(b.largest_nontrivial_index() == 4);

  OctalRules c = parse_rules("name: o26\ndigits: [2, 6]\npoints: [\"1/2\", -0.25]\n");
  CHECK_FALSE(c.taking_no_breaking());
  CHECK(c.points == std::vector<Score>{Score(1, 2), Score(-1, 4)});

  CHECK(parse_rules(rules_document(a)).points == a.points);
  CHECK(parse_rules(rules_document(c)).points == c.points);

  auto many = parse_rules_document("- {name: a, digits: [3], points: [1]}\n- {name: b, digits: [0,3], points: [0,2]}\n");
  CHECK(many.size() == 2);
  CHECK_THROWS_AS(parse_rules("- {name: a, digits: [3], points: [1]}\n- {name: b, digits: [3], points: [1]}\n"),
                  std::invalid_argument);

  CHECK_THROWS_AS(parse_rules("name: x\ndigits: [8]\npoints: [1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("name: x\ndigits: [3, 3]\npoints: [1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("name: x\ndigits: [0, 0]\npoints: [1, 1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("name: x\ndigits: []\npoints: []\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("name: x\ndigits: [3]\npoints: [abc]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("name: x\npoints: [1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("digits: [3"), std::invalid_argument);
}

TEST_CASE("built-in rulesets") {
  CHECK(builtin_rules("sub45")->digits == sub45().digits);
  CHECK(builtin_rules("o3333p2")->points == o3333().points);
  CHECK(builtin_rules("o26")->digits == o26().digits);
  OctalRules nim = *builtin_rules("nim:4");
  CHECK(nim.digits == std::vector<int>{3, 3, 3, 3});
  CHECK(nim.points == ints({1, 2, 3, 4}));
  OctalRules s = *builtin_rules("sub:4,5");
  CHECK(s.digits == sub45().digits);
  CHECK(s.points == sub45().points);
  CHECK_FALSE(builtin_rules("nonsense").has_value());
  CHECK_THROWS_AS(load_rules("no-such-ruleset"), std::invalid_argument);
}

TEST_CASE("positions are canonical multisets") {
  RuleBook book;
  book.add(sub45());
  book.add(o3333());
  Position p = parse_position("7@sub45,4@o3333p2,0@sub45,3@sub45", book);
  CHECK(p == parse_position("4@o3333p2,3@sub45,7@sub45", book));
  CHECK(p.heaps().size() == 3);
  CHECK(p.total() == 14);
  CHECK(to_string(p, book) == "3@sub45,7@sub45,4@o3333p2");
  CHECK(parse_position("", book).empty());
  CHECK_THROWS_AS(parse_position("4@nope", book), UnknownRuleset);
  CHECK_THROWS_AS(parse_position("4", book), std::invalid_argument);
  CHECK_THROWS_AS(parse_position("x@sub45", book), std::invalid_argument);

  RuleBook single = book_of(sub45());
  CHECK(parse_position("4,9", single) == heaps({9, 4}));
  CHECK_THROWS_AS(single.at(5), UnknownRuleset);
}

TEST_CASE("legal moves") {
  RuleBook s = book_of(sub45());
  auto four = legal_moves(heaps({4}), s);
  REQUIRE(four.size() == 1);
  CHECK(four[0].points == Score(4));
  CHECK(four[0].next.empty());
  CHECK(legal_moves(heaps({3}), s).empty());
  CHECK(legal_moves(Position{}, s).empty());

  RuleBook o = book_of(o26());
  auto five = legal_moves(heaps({5}), o);
  REQUIRE(five.size() == 3);
  CHECK(five[0].points == Score(1));
  CHECK(five[0].next == heaps({4}));
  CHECK(five[1].points == Score(2));
  CHECK(five[1].next == heaps({3}));
  CHECK(five[2].points == Score(2));
  CHECK(five[2].next == heaps({1, 2}));
  // Digit 2 forbids taking a whole heap.
  CHECK(legal_moves(heaps({1}), o).empty());
  auto two = legal_moves(heaps({2}), o);
  REQUIRE(two.size() == 1);
  CHECK(two[0].next == heaps({1}));

  // Equal heaps produce each outcome once.
  CHECK(legal_moves(heaps({4, 4}), s).size() == 1);
  CHECK(describe(five[2], o) == "take 2 from 5@o26 leaving 1+2 for 2");
}

TEST_CASE("scoring Grundy values") {
  CHECK(sweep(book_of(sub45()), {}, 0, 15) == ints({0, 0, 0, 0, 4, 5, 5, 5, 5, 1, 0, 0, 0, 3, 4, 5}));
  CHECK(sweep(book_of(o3333()), {}, 0, 10) == ints({0, 2, 2, 2, 2, 0, 2, 2, 2, 2, 0}));
  CHECK(sweep(book_of(o26()), {}, 0, 15) == ints({0, 0, 1, 2, 2, 1, 2, 1, 2, 1, 2, 2, 2, 1, 2, 1}));
  CHECK(sweep(book_of(make_rules("half", {2, 6}, {Score(1, 2), Score(-1, 3)})), {}, 0, 11) ==
        std::vector<Score>{Score(0), Score(0), Score(1, 2), Score(0), Score(1, 2), Score(0), Score(1, 2),
                           Score(0), Score(1, 2), Score(0), Score(1, 2), Score(0)});

  RuleBook s = book_of(sub45());
  GrundyTable table;
  CHECK(grundy_s(Position{}, s, table) == Score(0));
  CHECK(grundy_s(heaps({4, 4}), s, table) == Score(0));
}

TEST_CASE("best moves") {
  RuleBook s = book_of(sub45());
  auto at13 = best_moves(heaps({13}), s);
  REQUIRE(at13.size() == 1);
  CHECK(at13[0].removed == 4);
  CHECK(at13[0].next == heaps({9}));

  auto at5 = best_moves(heaps({5}), s);
  REQUIRE(at5.size() == 1);
  CHECK(at5[0].removed == 5);

  auto at1 = best_moves(heaps({1}), book_of(standard_nim(3)));
  REQUIRE(at1.size() == 1);
  CHECK(at1[0].removed == 1);

  CHECK_THROWS_AS(best_moves(heaps({3}), s), EngineError);
}

TEST_CASE("sweep over a fixed base") {
  RuleBook s = book_of(sub45());
  CHECK(sweep(s, heaps({3}), 0, 15) == sweep(s, {}, 0, 15));

  RuleBook mixed;
  RulesetId a = mixed.add(sub45());
  RulesetId b = mixed.add(o3333());
  Position base({Heap{b, 6}});
  auto seq = sweep(mixed, base, a, 12);
  GrundyTable table;
  for (std::uint32_t n = 0; n <= 12; ++n) {
    CHECK(seq[n] == grundy_s(base.with(Heap{a, n}), mixed, table));
  }
}

TEST_CASE("engine agrees with a naive recursive evaluator") {
  std::vector<OctalRules> cases = {sub45(), o3333(), o26(), standard_nim(4),
                                   make_rules("mix", {7, 2, 5}, {Score(1), Score(-2), Score(3, 2)}),
                                   make_rules("neg", {1, 6, 3}, {Score(-1), Score(2), Score(-1, 2)})};
  std::mt19937 rng(3);
  for (const OctalRules& r : cases) {
    RuleBook book = book_of(r);
    GrundyTable table;
    oracle::NaiveGrundy naive(r.digits, r.points);
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> count(1, 3);
      std::uniform_int_distribution<std::uint32_t> size(0, 7);
      std::vector<int> hs;
      std::vector<Heap> heaps_;
      for (int c = count(rng); c > 0; --c) {
        auto n = size(rng);
        hs.push_back(static_cast<int>(n));
        heaps_.push_back(Heap{0, n});
      }
      CHECK(grundy_s(Position(heaps_), book, table) == naive(hs));
    }
  }
}

TEST_CASE("heap order and memo purity") {
  RuleBook book = book_of(o26());
  GrundyTable table;
  Score v = grundy_s(Position({Heap{0, 5}, Heap{0, 3}, Heap{0, 7}}), book, table);
  CHECK(grundy_s(Position({Heap{0, 7}, Heap{0, 5}, Heap{0, 3}}), book, table) == v);
  CHECK(grundy_s(Position({Heap{0, 3}, Heap{0, 7}, Heap{0, 5}}), book, table) == v);
  auto before = sweep(book, heaps({2, 3}), 0, 20);
  table.clear();
  CHECK(table.size() == 0);
  CHECK(grundy_s(Position({Heap{0, 5}, Heap{0, 3}, Heap{0, 7}}), book, table) == v);
  CHECK(sweep(book, heaps({2, 3}), 0, 20) == before);
}

TEST_CASE("budget aborts cleanly") {
  RuleBook book = book_of(o26());
  GrundyTable tiny(50);
  CHECK_THROWS_AS(grundy_s(heaps({40}), book, tiny), BudgetExceeded);
  CHECK_THROWS_AS(position_to_game(heaps({9}), book, 8), BudgetExceeded);
}

TEST_CASE("large single heaps need no deep recursion") {
  RuleBook book = book_of(make_rules("s1", {3}, {Score(1)}));
  auto seq = sweep(book, {}, 0, 200000);
  CHECK(seq[199999] == Score(1));
  CHECK(seq[200000] == Score(0));
}

TEST_CASE("position_to_game") {
  RuleBook nim = book_of(standard_nim(1));
  Game one = position_to_game(heaps({1}), nim, 10);
  CHECK(one == Game(Score(0), {Game::number(Score(1))}, {Game::number(Score(-1))}));
  CHECK(final_scores(one) == FinalScores{Score(1), Score(-1)});
  CHECK(position_to_game(Position{}, nim, 10) == Game::number(Score(0)));

  RuleBook s = book_of(sub45());
  Game four = position_to_game(heaps({4}), s, 10);
  CHECK(final_scores(four) == FinalScores{Score(4), Score(-4)});
  CHECK(is_impartial(four));
}

TEST_CASE("Grundy value matches the expanded game on small positions") {
  RuleBook book;
  book.add(sub45());
  book.add(o3333());
  book.add(o26());
  book.add(make_rules("neg", {1, 6, 3}, {Score(-1), Score(2), Score(-1, 2)}));
  OracleResult r = cross_check(book, 8, true);
  CHECK(r.positions > 0);
  CHECK(r.passed());

  std::vector<RulesetId> ids = {0, 1, 2, 3};
  for (const Position& p : enumerate_positions(std::span<const RulesetId>(ids).subspan(2, 1), 7)) {
    Game t = position_to_game(p, book, 7);
    CHECK(is_impartial(t));
  }
}

TEST_CASE("enumerate_positions counts multisets") {
  std::vector<RulesetId> one = {0};
  // Partitions of 0..6: 1 1 2 3 5 7 11.
  CHECK(enumerate_positions(one, 6).size() == 30);
  std::vector<RulesetId> two = {0, 1};
  // Pairs of partitions with total <= 3: 1 + 2 + 5 + 10.
  CHECK(enumerate_positions(two, 3).size() == 18);
}

TEST_CASE("greedy scoring nim") {
  RuleBook book = book_of(standard_nim(10));
  std::vector<RulesetId> ids = {0};
  GrundyTable table;
  for (const Position& p : enumerate_positions(ids, 8)) {
    std::vector<int> hs;
    for (const Heap& h : p.heaps()) hs.push_back(static_cast<int>(h.size));
    Score v = grundy_s(p, book, table);
    CHECK(v == oracle::alternating_sum(hs));
    CHECK(v == oracle::minimax(position_to_game(p, book, 8), true));
  }
}

TEST_CASE("lemma checks") {
  LemmaReport r = check_lemma({4, 5}, 15);
  CHECK(r.k == 5);
  CHECK(r.passed());
  CHECK(r.checks > 0);
  CHECK(check_lemma({1}, 10).passed());
  CHECK(check_lemma({2, 3, 6}, 8).passed());
}

TEST_CASE("enumeration stops at the position limit") {
  std::vector<RulesetId> one = {0};
  CHECK_THROWS_AS(enumerate_positions(one, 6, 29), BudgetExceeded);
  CHECK(enumerate_positions(one, 6, 30).size() == 30);
}
