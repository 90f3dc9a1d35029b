#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "scoring/game.hpp"
#include "scoring/grundy.hpp"
#include "scoring/lemma.hpp"
#include "scoring/notation.hpp"
#include "scoring/octal.hpp"
#include "scoring/oracle.hpp"
#include "scoring/periodicity.hpp"
#include "scoring/rules_io.hpp"
#include "scoring/scan.hpp"

namespace scoring::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

enum class Format { Plain, Csv, Structured };

struct Options {
  std::vector<std::string> games;
  bool evaluate = false;
  std::vector<std::string> rules;
  std::string position;
  std::string fixed;
  std::uint32_t max_n = 0;
  std::uint64_t min_window = kDefaultMinWindow;
  std::string set;
  int i_max = 0;
  std::string spec_path;
  std::string csv_path;
  std::string detail_path;
  std::uint64_t max_total = 0;
  bool mixed = false;
  Format format = Format::Plain;
};

const char* boolstr(bool b) { return b ? "true" : "false"; }

RuleBook load_book(const std::vector<std::string>& refs) {
  RuleBook book;
  for (const auto& ref : refs) {
    for (auto& r : load_rules(ref)) book.add(std::move(r));
  }
  return book;
}

std::uint64_t rules_digest(const RuleBook& book) {
  std::string text;
  for (std::size_t i = 0; i < book.size(); ++i) text += rules_document(book.at(static_cast<RulesetId>(i)));
  return fnv1a64(text);
}

Game parse_arg_game(const std::string& text) {
  try {
    return parse_game(text);
  } catch (const ParseError& e) {
    throw std::invalid_argument("cannot parse game '" + text + "': " + e.what());
  }
}

void emit_eval(const Game& g, Format format, std::ostream& out) {
  FinalScores fs = final_scores(g);
  Outcome o = outcome(fs);
  bool imp = is_impartial(g);
  switch (format) {
    case Format::Plain:
      out << "sl=" << fs.sl << " sr=" << fs.sr << " outcome=" << to_string(o) << " impartial=" << boolstr(imp) << '\n';
      break;
    case Format::Csv:
      out << "sl,sr,outcome,impartial\n" << fs.sl << ',' << fs.sr << ',' << to_string(o) << ',' << boolstr(imp) << '\n';
      break;
    case Format::Structured: {
      json doc;
      doc["game"] = to_notation(g);
      doc["sl"] = fs.sl.str();
      doc["sr"] = fs.sr.str();
      doc["outcome"] = std::string(to_string(o));
      doc["impartial"] = imp;
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

int cmd_eval(const Options& o, std::ostream& out) {
  emit_eval(parse_arg_game(o.games.front()), o.format, out);
  return 0;
}

int cmd_sum(const Options& o, std::ostream& out) {
  if (o.games.size() < 2) throw std::invalid_argument("sum needs at least two --game arguments");
  Game total = parse_arg_game(o.games.front());
  for (std::size_t i = 1; i < o.games.size(); ++i) total = sum(total, parse_arg_game(o.games[i]));
  out << to_notation(total) << '\n';
  if (o.evaluate) emit_eval(total, o.format, out);
  return 0;
}

int cmd_tree(const Options& o, std::ostream& out) {
  out << render_tree(parse_arg_game(o.games.front()));
  return 0;
}

int cmd_gs(const Options& o, std::ostream& out) {
  RuleBook book = load_book(o.rules);
  Position p = parse_position(o.position, book);
  GrundyTable table;
  GrundyEvaluator ev(book, table);
  Score value = ev.value(p);
  std::vector<MoveOutcome> best;
  if (!legal_moves(p, book).empty()) best = ev.best_moves(p);
  if (o.format == Format::Structured) {
    json doc;
    doc["position"] = to_string(p, book);
    doc["value"] = value.str();
    auto moves = json::array();
    for (const auto& m : best) {
      moves.push_back({{"move", describe(m, book)}, {"points", m.points.str()}, {"next", to_string(m.next, book)}});
    }
    doc["best_moves"] = std::move(moves);
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "value=" << value << '\n';
  if (best.empty()) out << "best: none (no legal moves)\n";
  for (const auto& m : best) out << "best: " << describe(m, book) << '\n';
  return 0;
}

struct SweepSetup {
  RuleBook book;
  Position base;
};

SweepSetup sweep_setup(const Options& o) {
  SweepSetup s{load_book(o.rules), {}};
  s.base = parse_position(o.fixed, s.book);
  return s;
}

int cmd_table(const Options& o, std::ostream& out) {
  SweepSetup s = sweep_setup(o);
  std::vector<Score> values = sweep(s.book, s.base, 0, o.max_n);
  if (o.format == Format::Structured) {
    json doc;
    doc["version"] = kVersion;
    doc["rules"] = s.book.at(0).name;
    doc["rules_digest"] = digest_hex(rules_digest(s.book));
    doc["fixed"] = to_string(s.base, s.book);
    doc["sequence_digest"] = digest_hex(sequence_digest(values));
    auto rows = json::array();
    for (std::size_t n = 0; n < values.size(); ++n) rows.push_back({{"n", n}, {"value", values[n].str()}});
    doc["values"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "n,value\n";
  for (std::size_t n = 0; n < values.size(); ++n) out << n << ',' << values[n] << '\n';
  return 0;
}

int cmd_period(const Options& o, std::ostream& out, std::ostream& err) {
  SweepSetup s = sweep_setup(o);
  std::vector<Score> values = sweep(s.book, s.base, 0, o.max_n);
  auto report = detect_period(values, o.min_window);
  if (!report) {
    err << "no period found in " << values.size() << " values with " << o.min_window << " full repetitions\n";
    return 1;
  }
  const OctalRules& rules = s.book.at(0);
  std::string note;
  if (!s.base.empty()) {
    note = "fixed heaps present; report is empirical";
  } else if (!rules.taking_no_breaking()) {
    note = "breaking moves present; report is empirical";
  } else if (certification_length(rules, *report) > values.size()) {
    note = "certification needs max-n >= " + std::to_string(certification_length(rules, *report) - 1);
  } else {
    certify_period(rules, *report, values);
  }

  switch (o.format) {
    case Format::Plain:
      out << "preperiod=" << report->preperiod << " period=" << report->period
          << " checked_up_to=" << report->checked_up_to << " certified=" << boolstr(report->certified);
      if (report->certified) out << " certified_from=" << report->certified_from;
      out << " digest=" << digest_hex(report->sequence_digest) << '\n';
      break;
    case Format::Csv:
      out << "preperiod,period,checked_up_to,certified,certified_from,digest\n"
          << report->preperiod << ',' << report->period << ',' << report->checked_up_to << ','
          << boolstr(report->certified) << ',';
      if (report->certified) out << report->certified_from;
      out << ',' << digest_hex(report->sequence_digest) << '\n';
      break;
    case Format::Structured: {
      json doc;
      doc["version"] = kVersion;
      doc["rules"] = rules.name;
      doc["rules_digest"] = digest_hex(rules_digest(s.book));
      doc["fixed"] = to_string(s.base, s.book);
      doc["preperiod"] = report->preperiod;
      doc["period"] = report->period;
      doc["checked_up_to"] = report->checked_up_to;
      doc["certified"] = report->certified;
      if (report->certified) doc["certified_from"] = report->certified_from;
      doc["sequence_digest"] = digest_hex(report->sequence_digest);
      out << doc.dump(2) << '\n';
      break;
    }
  }
  if (!note.empty()) err << "note: " << note << '\n';
  return 0;
}

std::vector<int> parse_set(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad subtraction set '" + text + "': entries must be positive integers");
    }
  }
  if (out.empty()) throw std::invalid_argument("subtraction set is empty");
  return out;
}

int cmd_lemma(const Options& o, std::ostream& out) {
  LemmaReport r = check_lemma(parse_set(o.set), o.i_max);
  std::string set_text;
  for (std::size_t i = 0; i < r.set.size(); ++i) set_text += (i ? "," : "") + std::to_string(r.set[i]);
  if (o.format == Format::Structured) {
    json doc;
    doc["set"] = r.set;
    doc["k"] = r.k;
    doc["i_max"] = r.i_max;
    doc["checks"] = r.checks;
    auto failures = json::array();
    for (const auto& f : r.failures) {
      failures.push_back({{"check", std::string(to_string(f.check))}, {"s", f.s}, {"i", f.i},
                          {"lhs", f.lhs.str()}, {"rhs", f.rhs.str()}});
    }
    doc["failures"] = std::move(failures);
    doc["result"] = r.passed() ? "pass" : "fail";
    out << doc.dump(2) << '\n';
  } else {
    out << "set={" << set_text << "} k=" << r.k << " i_max=" << r.i_max << " checks=" << r.checks
        << " failures=" << r.failures.size() << " result=" << (r.passed() ? "pass" : "fail") << '\n';
    for (const auto& f : r.failures) {
      out << "failure: " << to_string(f.check) << " s=" << f.s << " i=" << f.i << " lhs=" << f.lhs
          << " rhs=" << f.rhs << '\n';
    }
  }
  return r.passed() ? 0 : 1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f << text;
}

int cmd_scan(const Options& o, std::ostream& out) {
  std::ifstream in(o.spec_path);
  if (!in) throw std::invalid_argument("cannot read scan spec '" + o.spec_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ScanSpec spec = parse_scan_spec(buf.str(), std::filesystem::path(o.spec_path).parent_path());
  ScanReport report = conjecture_scan(spec);
  std::string csv = scan_csv(report);
  if (!o.csv_path.empty()) write_file(o.csv_path, csv);
  if (!o.detail_path.empty()) write_file(o.detail_path, scan_detail(report));
  if (o.format == Format::Structured) {
    out << scan_detail(report);
  } else {
    out << csv;
  }
  return 0;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  RuleBook book = load_book(o.rules);
  OracleResult r = cross_check(book, o.max_total, o.mixed);
  out << "positions=" << r.positions << " mismatches=" << r.mismatches.size()
      << " result=" << (r.passed() ? "pass" : "fail") << '\n';
  for (const auto& m : r.mismatches) {
    out << "mismatch: " << to_string(m.position, book) << " gs=" << m.grundy << " sl=" << m.minimax.sl
        << " sr=" << m.minimax.sr << '\n';
  }
  return r.passed() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Impartial scoring-play game toolkit"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, Format> formats{
      {"plain", Format::Plain}, {"csv", Format::Csv}, {"structured", Format::Structured}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "plain | csv | structured")->transform(CLI::CheckedTransformer(formats));
  };

  auto* eval = app.add_subcommand("eval", "Final scores, outcome class and impartiality of a game");
  eval->add_option("--game", o.games, "Game in brace notation")->required()->expected(1);
  add_format(eval);

  auto* sum_cmd = app.add_subcommand("sum", "Long-rule disjunctive sum of games");
  sum_cmd->add_option("--game", o.games, "Game in brace notation (repeat)")->required();
  sum_cmd->add_flag("--eval", o.evaluate, "Also evaluate the sum");
  add_format(sum_cmd);

  auto* tree = app.add_subcommand("tree", "Render a game tree");
  tree->add_option("--game", o.games, "Game in brace notation")->required()->expected(1);

  auto* gs = app.add_subcommand("gs", "Scoring Grundy value and best moves of a position");
  gs->add_option("--rules", o.rules, "Rules file or built-in name (repeat)")->required();
  gs->add_option("--position", o.position, "Heaps as size@name, comma separated")->required();
  add_format(gs);

  auto* table = app.add_subcommand("table", "Value sequence of one growing heap as CSV");
  table->add_option("--rules", o.rules, "Swept ruleset first, then rulesets used by --fixed")->required();
  table->add_option("--fixed", o.fixed, "Fixed heaps added to every entry");
  table->add_option("--max-n", o.max_n, "Largest heap size")->required();
  add_format(table);

  auto* period = app.add_subcommand("period", "Detect and certify the eventual period of a sequence");
  period->add_option("--rules", o.rules, "Swept ruleset first, then rulesets used by --fixed")->required();
  period->add_option("--fixed", o.fixed, "Fixed heaps added to every entry");
  period->add_option("--max-n", o.max_n, "Largest heap size")->required();
  period->add_option("--min-window", o.min_window, "Whole periods required after the preperiod");
  add_format(period);

  auto* lemma = app.add_subcommand("lemma", "Check the alternation identity on a subtraction game");
  lemma->add_option("--set", o.set, "Subtraction set, e.g. 4,5")->required();
  lemma->add_option("--imax", o.i_max, "Largest i to check")->required()->check(CLI::NonNegativeNumber);
  add_format(lemma);

  auto* scan = app.add_subcommand("scan", "Run a periodicity conjecture scan");
  scan->add_option("--spec", o.spec_path, "Scan spec (YAML)")->required()->check(CLI::ExistingFile);
  scan->add_option("--csv", o.csv_path, "Also write the CSV report here");
  scan->add_option("--detail", o.detail_path, "Write the JSON detail report here");
  add_format(scan);

  auto* oracle = app.add_subcommand("oracle", "Cross-check Grundy values against game-tree minimax");
  oracle->add_option("--rules", o.rules, "Rules file or built-in name (repeat)")->required();
  oracle->add_option("--max-total", o.max_total, "Largest total bean count")->required();
  oracle->add_flag("--mixed", o.mixed, "Also mix heaps of different rulesets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (sum_cmd->parsed()) return cmd_sum(o, out);
    if (tree->parsed()) return cmd_tree(o, out);
    if (gs->parsed()) return cmd_gs(o, out);
    if (table->parsed()) return cmd_table(o, out);
    if (period->parsed()) return cmd_period(o, out, err);
    if (lemma->parsed()) return cmd_lemma(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace scoring::cli
