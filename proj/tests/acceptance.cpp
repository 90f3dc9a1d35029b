// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "oracle_models.hpp"
#include "scoring/game.hpp"
#include "scoring/grundy.hpp"
#include "scoring/lemma.hpp"
#include "scoring/notation.hpp"
#include "scoring/octal.hpp"
#include "scoring/oracle.hpp"
#include "scoring/periodicity.hpp"
#include "scoring/rules_io.hpp"
#include "scoring/scan.hpp"

using namespace scoring;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::vector<Score> ints(std::initializer_list<int> xs) {
  std::vector<Score> out;
  for (int x : xs) out.push_back(Score(x));
  return out;
}

std::string join(const std::vector<Score>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

RuleBook book_of(OctalRules r) {
  RuleBook b;
  b.add(std::move(r));
  return b;
}

std::vector<std::vector<int>> subsets(int universe) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << universe); ++mask) {
    std::vector<int> s;
    for (int i = 1; i <= universe; ++i) {
      if (mask & (1 << (i - 1))) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

// "sub_4_5" -> {4, 5}
std::vector<int> set_of(const std::string& name) {
  std::vector<int> out;
  for (std::size_t pos = name.find('_'); pos != std::string::npos; pos = name.find('_', pos + 1)) {
    out.push_back(std::stoi(name.substr(pos + 1)));
  }
  return out;
}

Verdict table_reproduction() {
  Verdict v;
  RuleBook book = book_of(make_rules("sub45", {0, 0, 0, 3, 3}, ints({0, 0, 0, 4, 5})));
  auto got = sweep(book, {}, 0, 15);
  v.require(got == ints({0, 0, 0, 0, 4, 5, 5, 5, 5, 1, 0, 0, 0, 3, 4, 5}), "got " + join(got));
  return v;
}

Verdict decision_at_13() {
  Verdict v;
  RuleBook book = book_of(make_rules("sub45", {0, 0, 0, 3, 3}, ints({0, 0, 0, 4, 5})));
  Position p({Heap{0, 13}});
  GrundyTable table;
  auto best = best_moves(p, book);
  v.require(best.size() == 1, "best move not unique");
  if (best.size() == 1) v.require(best[0].removed == 4 && best[0].points == Score(4), "best move is not take 4");
  v.require(grundy_s(p, book, table) == Score(3), "value is not 3");
  Score take5 = Score(5) - grundy_s(Position({Heap{0, 8}}), book, table);
  v.require(take5 == Score(0), "take 5 is worth " + take5.str());
  return v;
}

Verdict period_five() {
  Verdict v;
  OctalRules rules = make_rules("o3333p2", {3, 3, 3, 3}, ints({2, 2, 2, 2}));
  RuleBook book = book_of(rules);
  auto head = sweep(book, {}, 0, 10);
  v.require(head == ints({0, 2, 2, 2, 2, 0, 2, 2, 2, 2, 0}), "sweep " + join(head));
  auto values = sweep(book, {}, 0, 30);
  auto report = detect_period(values);
  v.require(report.has_value(), "no period detected");
  if (report) {
    v.require(report->period == 5, "period " + std::to_string(report->period));
    v.require(certify_period(rules, *report, values), "not certified");
  }
  return v;
}

Verdict grundy_tree_oracle() {
  Verdict v;
  RuleBook book;
  for (const auto& s : subsets(5)) {
    std::string name = "sub";
    for (int x : s) name += "_" + std::to_string(x);
    book.add(subtraction_game(name, s));
  }
  book.add(make_rules("o3333p2", {3, 3, 3, 3}, ints({2, 2, 2, 2})));
  book.add(make_rules("o26", {2, 6}, ints({1, 2})));
  OracleResult each = cross_check(book, 12, false);
  v.require(each.passed(), std::to_string(each.mismatches.size()) + " mismatches");

  // Mixed positions over three structurally different rulesets.
  RuleBook trio;
  trio.add(subtraction_game("sub45", std::vector<int>{4, 5}));
  trio.add(make_rules("o3333p2", {3, 3, 3, 3}, ints({2, 2, 2, 2})));
  trio.add(make_rules("o26", {2, 6}, ints({1, 2})));
  OracleResult mixed = cross_check(trio, 12, true);
  v.require(mixed.passed(), std::to_string(mixed.mismatches.size()) + " mixed mismatches");
  if (v.ok) v.detail = std::to_string(each.positions) + " + " + std::to_string(mixed.positions) + " mixed positions";
  return v;
}

Verdict lemma_suite() {
  Verdict v;
  std::uint64_t checks = 0;
  for (const auto& s : subsets(6)) {
    LemmaReport r = check_lemma(s, 15);
    checks += r.checks;
    if (!r.passed()) {
      const auto& f = r.failures.front();
      v.require(false, "set of max " + std::to_string(r.k) + ": " + std::string(to_string(f.check)) + " s=" +
                           std::to_string(f.s) + " i=" + std::to_string(f.i));
    }
  }
  if (v.ok) v.detail = std::to_string(checks) + " checks";
  return v;
}

Verdict monoid_identity() {
  Verdict v;
  Game i = identity_game();
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Game g = generate_impartial(4, 3, Score(10), 20240 + seed);
    v.require(is_impartial(g), "generator produced a non-impartial game");
    FinalScores base = final_scores(g);
    FinalScores with = final_scores(sum(g, i));
    v.require(with == base, "seed " + std::to_string(seed) + ": " + to_notation(g));
    v.require(base.sl == oracle::minimax(g, true) && base.sr == oracle::minimax(g, false),
              "final_scores disagrees with minimax");
  }
  return v;
}

Verdict inverse_counterexample() {
  Verdict v;
  Game g = parse_game("{2,{1|2|3}|0|-2,{-3|-2|-1}}");
  v.require(negate(g) == g, "negate(G) differs from G");
  Game gg = sum(g, g);
  v.require(outcome(gg) == Outcome::P, "G+G is " + std::string(to_string(outcome(gg))));
  v.require(outcome(FinalScores{oracle::minimax(gg, true), oracle::minimax(gg, false)}) == Outcome::P,
            "minimax disagrees");
  return v;
}

Verdict five_outcomes() {
  Verdict v;
  const char* games[] = {"{1|5|9}", "{-9|-5|-1}", "{1|0|-1}", "{-1|0|1}", "{|0|}"};
  const Outcome want[] = {Outcome::L, Outcome::R, Outcome::N, Outcome::P, Outcome::Tie};
  for (int k = 0; k < 5; ++k) {
    Game g = parse_game(games[k]);
    v.require(is_impartial(g), std::string(games[k]) + " not impartial");
    v.require(outcome(g) == want[k], std::string(games[k]) + " is " + std::string(to_string(outcome(g))));
  }
  return v;
}

Verdict greedy_nim() {
  Verdict v;
  RuleBook book = book_of(standard_nim(10));
  std::vector<RulesetId> ids = {0};
  GrundyTable table;
  std::size_t count = 0;
  for (const Position& p : enumerate_positions(ids, 10)) {
    std::vector<int> heaps;
    for (const Heap& h : p.heaps()) heaps.push_back(static_cast<int>(h.size));
    Score engine = grundy_s(p, book, table);
    Score greedy = oracle::alternating_sum(heaps);
    Score minimax = oracle::minimax(position_to_game(p, book, 10), true);
    v.require(engine == greedy && engine == minimax, to_string(p, book) + ": engine " + engine.str() +
                                                         " greedy " + greedy.str() + " minimax " + minimax.str());
    ++count;
  }
  if (v.ok) v.detail = std::to_string(count) + " positions";
  return v;
}

Verdict subset_scan() {
  Verdict v;
  const char* text =
      "seed: 1\n"
      "min_window: 3\n"
      "threads: 4\n"
      "instances:\n"
      "  - subsets_of: 7\n"
      "    max_n: 500\n";
  ScanSpec spec = parse_scan_spec(text);
  ScanReport a = conjecture_scan(spec);
  ScanSpec serial = parse_scan_spec(text);
  serial.threads = 1;
  ScanReport b = conjecture_scan(serial);
  v.require(scan_csv(a) == scan_csv(b), "CSV differs between runs");
  v.require(scan_detail(a) == scan_detail(b), "detail differs between runs");
  v.require(a.rows.size() == 127, "expected 127 rows");

  std::size_t certified = 0, flagged = 0, false_flags = 0;
  for (const ScanRow& r : a.rows) {
    v.require(r.status == "ok", r.key + " status " + r.status);
    if (!r.report) continue;
    v.require(r.relation == "divides" || r.relation == "not_divides", r.key + " lacks a divisor relation");
    if (r.report->certified) {
      ++certified;
      v.require(r.reverified == true, r.key + " failed reverification");
    }
    if (r.counterexample) {
      ++flagged;
      // Independent recheck at four times the length with a fresh sweep.
      auto longer = detect_period(sweep(book_of(subtraction_game("s", set_of(r.ruleset))), {}, 0, 4 * r.max_n));
      if (!longer || longer->period != r.report->period || (2 * static_cast<std::uint64_t>(r.k)) % longer->period == 0) {
        ++false_flags;
      }
    }
  }
  v.require(false_flags == 0, std::to_string(false_flags) + " false counterexample flags");
  std::string detail = std::to_string(certified) + " certified, " + std::to_string(flagged) + " flagged";
  if (v.ok) v.detail = detail;
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "table reproduction for subtraction set {4,5}", 1.0, table_reproduction},
      {2, "unique best move at heap 13", 1.0, decision_at_13},
      {3, "(3333,2222) certified period 5", 1.0, period_five},
      {4, "Grundy value equals game-tree final scores, totals <= 12", 60.0, grundy_tree_oracle},
      {5, "lemma identity and residue bounds, S in {1..6}, i <= 15", 30.0, lemma_suite},
      {6, "identity game preserves final scores on 500 generated games", 30.0, monoid_identity},
      {7, "self-negative game whose double is P", 1.0, inverse_counterexample},
      {8, "impartial games in all five outcome classes", 1.0, five_outcomes},
      {9, "greedy scoring nim matches engine and minimax, totals <= 10", 60.0, greedy_nim},
      {10, "subset scan S in {1..7}, max_n 500: reproducible, no false counterexamples", 600.0, subset_scan},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.limit_seconds) {
      v.ok = false;
      v.detail = "over time limit of " + std::to_string(c.limit_seconds) + " s";
    }
    std::printf("%s criterion %2d: %s [%.3f s]%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.empty() ? "" : " ", v.detail.c_str());
    if (!v.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
