#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "scoring/octal.hpp"
#include "scoring/score.hpp"

namespace scoring {

struct PeriodReport {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
  /// Last index of the analyzed sequence.
  std::uint64_t checked_up_to = 0;
  bool certified = false;
  /// Index from which the finite-lookback argument applies; set by
  /// certify_period, 0 otherwise.
  std::uint64_t certified_from = 0;
  std::uint64_t sequence_digest = 0;
};

inline constexpr std::uint64_t kDefaultMinWindow = 3;

std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a over the exact renderings, comma separated.
std::uint64_t sequence_digest(std::span<const Score> values);
std::string digest_hex(std::uint64_t digest);

/// Smallest period, then smallest preperiod, such that v(n + period) = v(n)
/// for every n in [preperiod, N - period], at least `min_window` whole
/// periods fit after the preperiod, and the periodic stretch is no shorter
/// than the preperiod. The report is re-verified before it is
/// returned. std::nullopt when nothing fits.
std::optional<PeriodReport> detect_period(std::span<const Score> values,
                                          std::uint64_t min_window = kDefaultMinWindow);

/// True when `report` is provably valid for every n >= preperiod.
///
/// For a taking-no-breaking ruleset with f digits, every value at n > f is
/// the same function of the f values before it, so f consecutive matches
/// v(n + period) = v(n) past index f force the period forever. Sets
/// report.certified and report.certified_from. Throws std::invalid_argument
/// if `values` does not reach period + f entries past the certification
/// start, or if the report does not match `values`.
bool certify_period(const OctalRules& rules, PeriodReport& report, std::span<const Score> values);

/// Number of values a single-heap sweep needs so certify_period has room.
std::uint64_t certification_length(const OctalRules& rules, const PeriodReport& report);

}  // namespace scoring
