#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoring/octal.hpp"
#include "scoring/periodicity.hpp"

namespace scoring {

struct ScanInstance {
  std::string key;
  /// rules.front() is swept; the rest may only appear in the fixed position.
  std::vector<OctalRules> rules;
  std::string fixed;
  std::uint32_t max_n = 0;
  std::size_t budget = 0;
};

struct ScanSpec {
  std::uint64_t seed = 0;
  std::uint64_t min_window = kDefaultMinWindow;
  unsigned threads = 1;
  std::vector<ScanInstance> instances;
};

/// Reads a YAML scan spec:
///
///   seed: 1
///   min_window: 3
///   budget: 2000000          # positions per instance
///   threads: 2
///   instances:
///     - subsets_of: 7        # every nonempty S in {1..7}, p_i = i
///       max_n: 500
///     - rules: o3333p2       # file path, built-in name, or inline mapping
///       with: [sub45]        # extra rulesets usable by `fixed`
///       fixed: "3@sub45"
///       max_n: 200
///     - random: {count: 8, max_length: 5, points: removal, breaking: false}
///       max_n: 300
///
/// Relative rule file paths resolve against `base_dir`.
ScanSpec parse_scan_spec(std::string_view text, const std::filesystem::path& base_dir = {});

/// Which periodicity claim an instance can speak to.
enum class Hypothesis {
  PeriodTwoK,        // taking-no-breaking with p_i = i: period divides 2k
  TakingNoBreaking,  // some period exists, none predicted
  Octal,             // breaking moves allowed: some period conjectured
};

std::string_view to_string(Hypothesis h);

struct ScanRow {
  std::string key;
  std::string ruleset;
  std::string digits;
  std::string points;
  std::string fixed;
  std::uint32_t max_n = 0;
  /// ok | not_found | budget_exceeded | error
  std::string status;
  std::string note;
  std::optional<PeriodReport> report;
  Hypothesis hypothesis = Hypothesis::Octal;
  int k = 0;
  /// 2k when the hypothesis is PeriodTwoK.
  std::optional<std::uint64_t> conjectured_period;
  /// divides | not_divides | n/a
  std::string relation = "n/a";
  bool counterexample = false;
  /// Certified rows are recomputed to twice their length; true when the
  /// (preperiod, period) pair survives.
  std::optional<bool> reverified;
  std::vector<Score> values;
};

struct ScanReport {
  std::uint64_t seed = 0;
  std::uint64_t min_window = 0;
  std::vector<ScanRow> rows;  // sorted by key
};

/// Classifies and analyzes every instance. Never asserts a conjecture: a
/// row is flagged as a counterexample only when a certified period does
/// not divide the conjectured 2k and survives recomputation at double length.
ScanReport conjecture_scan(const ScanSpec& spec);
ScanRow scan_instance(const ScanInstance& instance, std::uint64_t min_window);

std::string scan_csv(const ScanReport& report);
/// JSON detail: spec parameters, every row with its value sequence.
std::string scan_detail(const ScanReport& report);

}  // namespace scoring
