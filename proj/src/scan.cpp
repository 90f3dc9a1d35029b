#include "scoring/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

#include "scoring/grundy.hpp"
#include "scoring/rng.hpp"
#include "scoring/rules_io.hpp"

namespace scoring {

namespace {

constexpr std::size_t kDefaultInstanceBudget = 2'000'000;

std::string join_digits(const OctalRules& r) {
  std::string out;
  for (std::size_t i = 0; i < r.digits.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(r.digits[i]);
  }
  return out;
}

std::string join_points(const OctalRules& r) {
  std::string out;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (i) out += ' ';
    out += r.points[i].str();
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string padded(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", index);
  return buf;
}

std::vector<OctalRules> rules_from_yaml(const YAML::Node& node, const std::filesystem::path& base_dir) {
  if (node.IsMap()) {
    std::ostringstream os;
    os << node;
    return parse_rules_document(os.str());
  }
  std::string ref = node.as<std::string>();
  std::filesystem::path path(ref);
  if (!base_dir.empty() && path.is_relative() && std::filesystem::exists(base_dir / path)) {
    return load_rules((base_dir / path).string());
  }
  return load_rules(ref);
}

OctalRules random_rules(PortableRng& rng, int max_length, bool breaking, bool random_points, std::size_t index) {
  int length = static_cast<int>(rng.uniform(1, std::max(1, max_length)));
  std::vector<int> digits(static_cast<std::size_t>(length));
  std::vector<Score> points(static_cast<std::size_t>(length));
  do {
    for (auto& d : digits) d = static_cast<int>(rng.uniform(0, breaking ? 7 : 3));
  } while (std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; }));
  for (int k = 1; k <= length; ++k) {
    auto i = static_cast<std::size_t>(k - 1);
    if (random_points) {
      points[i] = Score(rng.uniform(-4, 8), rng.uniform(1, 2));
    } else {
      points[i] = digits[i] != 0 ? Score(k) : Score(0);
    }
  }
  return make_rules("rand_" + padded(index), std::move(digits), std::move(points));
}

void expand_entry(const YAML::Node& entry, std::size_t& counter, std::uint64_t seed, std::size_t default_budget,
                  const std::filesystem::path& base_dir, std::vector<ScanInstance>& out) {
  if (!entry["max_n"]) throw std::invalid_argument("scan instance #" + std::to_string(counter + 1) + " lacks max_n");
  const auto max_n = entry["max_n"].as<std::uint32_t>();
  const std::size_t budget = entry["budget"] ? entry["budget"].as<std::size_t>() : default_budget;

  if (entry["subsets_of"]) {
    int universe = entry["subsets_of"].as<int>();
    if (universe < 1 || universe > 16) throw std::invalid_argument("subsets_of must be in 1..16");
    for (unsigned mask = 1; mask < (1u << universe); ++mask) {
      std::vector<int> set;
      for (int s = 1; s <= universe; ++s) {
        if (mask & (1u << (s - 1))) set.push_back(s);
      }
      std::string name = "sub";
      for (int s : set) name += "_" + std::to_string(s);
      ScanInstance inst;
      inst.key = padded(counter++) + "/" + name;
      inst.rules.push_back(subtraction_game(name, set));
      inst.max_n = max_n;
      inst.budget = budget;
      out.push_back(std::move(inst));
    }
    return;
  }

  if (entry["random"]) {
    const YAML::Node r = entry["random"];
    int count = r["count"] ? r["count"].as<int>() : 1;
    int max_length = r["max_length"] ? r["max_length"].as<int>() : 4;
    bool breaking = r["breaking"] ? r["breaking"].as<bool>() : false;
    std::string points = r["points"] ? r["points"].as<std::string>() : "removal";
    if (points != "removal" && points != "random") throw std::invalid_argument("random.points must be removal or random");
    PortableRng rng(seed ^ (0x9E3779B97F4A7C15ULL * (counter + 1)));
    for (int i = 0; i < count; ++i) {
      std::size_t index = counter++;
      ScanInstance inst;
      inst.rules.push_back(random_rules(rng, max_length, breaking, points == "random", index));
      inst.key = padded(index) + "/" + inst.rules.front().name;
      inst.max_n = max_n;
      inst.budget = budget;
      out.push_back(std::move(inst));
    }
    return;
  }

  if (!entry["rules"]) throw std::invalid_argument("scan instance needs one of subsets_of, random or rules");
  ScanInstance inst;
  inst.rules = rules_from_yaml(entry["rules"], base_dir);
  if (entry["with"]) {
    for (const auto& extra : entry["with"]) {
      for (auto& r : rules_from_yaml(extra, base_dir)) inst.rules.push_back(std::move(r));
    }
  }
  inst.fixed = entry["fixed"] ? entry["fixed"].as<std::string>() : "";
  inst.max_n = max_n;
  inst.budget = budget;
  RuleBook book(inst.rules);
  parse_position(inst.fixed, book);
  inst.key = padded(counter++) + "/" + inst.rules.front().name + (inst.fixed.empty() ? "" : "+" + inst.fixed);
  out.push_back(std::move(inst));
}

Hypothesis classify(const RuleBook& book, const Position& base, int& k) {
  const OctalRules& swept = book.at(0);
  bool all_tnb = swept.taking_no_breaking();
  bool all_removal = swept.points_equal_removal();
  for (const Heap& h : base.heaps()) {
    all_tnb = all_tnb && book.at(h.rules).taking_no_breaking();
    all_removal = all_removal && book.at(h.rules).points_equal_removal();
  }
  k = swept.largest_nontrivial_index();
  if (all_tnb && all_removal && k > 0) return Hypothesis::PeriodTwoK;
  if (all_tnb) return Hypothesis::TakingNoBreaking;
  return Hypothesis::Octal;
}

// Appends values for n = values.size() .. last. Returns false on budget exhaustion.
bool extend(GrundyEvaluator& ev, const Position& base, std::vector<Score>& values, std::uint64_t last) {
  try {
    for (auto n = static_cast<std::uint32_t>(values.size()); n <= last; ++n) values.push_back(ev.value(base.with({0, n})));
  } catch (const BudgetExceeded&) {
    return false;
  }
  return true;
}

}  // namespace

ScanSpec parse_scan_spec(std::string_view text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("malformed scan spec: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("scan spec must be a mapping");
  ScanSpec spec;
  try {
    spec.seed = root["seed"] ? root["seed"].as<std::uint64_t>() : 0;
    spec.min_window = root["min_window"] ? root["min_window"].as<std::uint64_t>() : kDefaultMinWindow;
    spec.threads = root["threads"] ? root["threads"].as<unsigned>() : 1;
    std::size_t budget = root["budget"] ? root["budget"].as<std::size_t>() : kDefaultInstanceBudget;
    if (!root["instances"] || !root["instances"].IsSequence()) {
      throw std::invalid_argument("scan spec needs an 'instances' list");
    }
    std::size_t counter = 0;
    for (const auto& entry : root["instances"]) expand_entry(entry, counter, spec.seed, budget, base_dir, spec.instances);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("malformed scan spec: ") + e.what());
  }
  if (spec.threads == 0) spec.threads = 1;
  return spec;
}

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::PeriodTwoK: return "period-2k";
    case Hypothesis::TakingNoBreaking: return "taking-no-breaking";
    case Hypothesis::Octal: return "octal";
  }
  return "?";
}

ScanRow scan_instance(const ScanInstance& instance, std::uint64_t min_window) {
  ScanRow row;
  row.key = instance.key;
  row.ruleset = instance.rules.front().name;
  row.digits = join_digits(instance.rules.front());
  row.points = join_points(instance.rules.front());
  row.fixed = instance.fixed;
  row.max_n = instance.max_n;

  RuleBook book(instance.rules);
  const Position base = parse_position(instance.fixed, book);
  row.hypothesis = classify(book, base, row.k);
  if (row.hypothesis == Hypothesis::PeriodTwoK) row.conjectured_period = 2 * static_cast<std::uint64_t>(row.k);

  GrundyTable table(instance.budget);
  GrundyEvaluator ev(book, table);
  if (!extend(ev, base, row.values, instance.max_n)) {
    row.status = "budget_exceeded";
    row.note = "stopped at n=" + std::to_string(row.values.size());
    return row;
  }

  auto report = detect_period(row.values, min_window);
  const OctalRules& swept = book.at(0);
  const bool certifiable = base.empty() && swept.taking_no_breaking();
  // The certificate needs period + f values past max(preperiod, f + 1); grow
  // the sweep until the detected report fits.
  for (int round = 0; report && certifiable && round < 4; ++round) {
    std::uint64_t need = certification_length(swept, *report);
    if (need <= row.values.size()) break;
    if (!extend(ev, base, row.values, need - 1)) break;
    report = detect_period(row.values, min_window);
  }
  if (!report) {
    row.status = "not_found";
    return row;
  }
  row.status = "ok";
  if (certifiable && certification_length(swept, *report) <= row.values.size()) {
    certify_period(swept, *report, row.values);
  }
  if (row.conjectured_period) {
    row.relation = (*row.conjectured_period % report->period == 0) ? "divides" : "not_divides";
  }

  if (report->certified) {
    GrundyTable fresh(instance.budget);
    GrundyEvaluator again(book, fresh);
    std::vector<Score> doubled;
    if (extend(again, base, doubled, 2 * row.values.size() - 1)) {
      auto second = detect_period(doubled, min_window);
      row.reverified = second && second->preperiod == report->preperiod && second->period == report->period;
    } else {
      row.note = "reverification ran out of budget";
    }
  }
  row.counterexample = report->certified && row.relation == "not_divides" && row.reverified.value_or(false);
  row.report = report;
  return row;
}

ScanReport conjecture_scan(const ScanSpec& spec) {
  ScanReport out;
  out.seed = spec.seed;
  out.min_window = spec.min_window;
  out.rows.resize(spec.instances.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < spec.instances.size(); i = next++) {
      try {
        out.rows[i] = scan_instance(spec.instances[i], spec.min_window);
      } catch (const std::exception& e) {
        ScanRow row;
        row.key = spec.instances[i].key;
        row.ruleset = spec.instances[i].rules.front().name;
        row.fixed = spec.instances[i].fixed;
        row.max_n = spec.instances[i].max_n;
        row.status = "error";
        row.note = e.what();
        out.rows[i] = std::move(row);
      }
    }
  };
  unsigned threads = std::min<unsigned>(spec.threads, static_cast<unsigned>(std::max<std::size_t>(1, spec.instances.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const ScanRow& a, const ScanRow& b) { return a.key < b.key; });
  return out;
}

std::string scan_csv(const ScanReport& report) {
  std::ostringstream os;
  os << "key,ruleset,digits,points,fixed,max_n,status,preperiod,period,checked_up_to,certified,certified_from,"
        "hypothesis,k,conjectured_period,relation,counterexample,reverified,digest\n";
  for (const ScanRow& r : report.rows) {
    os << r.key << ',' << r.ruleset << ',' << r.digits << ',' << r.points << ',' << csv_field(r.fixed) << ',' << r.max_n << ','
       << r.status << ',';
    if (r.report) {
      os << r.report->preperiod << ',' << r.report->period << ',' << r.report->checked_up_to << ','
         << (r.report->certified ? "true" : "false") << ',';
      if (r.report->certified) os << r.report->certified_from;
      os << ',';
    } else {
      os << ",,,false,,";
    }
    os << to_string(r.hypothesis) << ',' << r.k << ',';
    if (r.conjectured_period) os << *r.conjectured_period;
    os << ',' << r.relation << ',' << (r.counterexample ? "COUNTEREXAMPLE" : "false") << ',';
    if (r.reverified) os << (*r.reverified ? "true" : "false");
    os << ',' << digest_hex(sequence_digest(r.values)) << '\n';
  }
  return os.str();
}

std::string scan_detail(const ScanReport& report) {
  nlohmann::ordered_json doc;
  doc["seed"] = report.seed;
  doc["min_window"] = report.min_window;
  doc["instances"] = report.rows.size();
  std::size_t flagged = 0;
  auto rows = nlohmann::ordered_json::array();
  for (const ScanRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["key"] = r.key;
    row["ruleset"] = r.ruleset;
    row["digits"] = r.digits;
    row["points"] = r.points;
    row["fixed"] = r.fixed;
    row["max_n"] = r.max_n;
    row["status"] = r.status;
    if (!r.note.empty()) row["note"] = r.note;
    if (r.report) {
      row["preperiod"] = r.report->preperiod;
      row["period"] = r.report->period;
      row["checked_up_to"] = r.report->checked_up_to;
      row["certified"] = r.report->certified;
      if (r.report->certified) row["certified_from"] = r.report->certified_from;
    }
    row["hypothesis"] = std::string(to_string(r.hypothesis));
    row["k"] = r.k;
    if (r.conjectured_period) row["conjectured_period"] = *r.conjectured_period;
    row["relation"] = r.relation;
    row["counterexample"] = r.counterexample;
    if (r.reverified) row["reverified"] = *r.reverified;
    row["digest"] = digest_hex(sequence_digest(r.values));
    auto values = nlohmann::ordered_json::array();
    for (const Score& v : r.values) values.push_back(v.str());
    row["values"] = std::move(values);
    rows.push_back(std::move(row));
    flagged += r.counterexample ? 1 : 0;
  }
  doc["counterexamples"] = flagged;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace scoring
