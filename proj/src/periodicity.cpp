#include "scoring/periodicity.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace scoring {

namespace {

bool holds(std::span<const Score> v, std::uint64_t preperiod, std::uint64_t period) {
  for (std::uint64_t n = preperiod; n + period < v.size(); ++n) {
    if (v[n + period] != v[n]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t sequence_digest(std::span<const Score> values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text += ',';
    text += values[i].str();
  }
  return fnv1a64(text);
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::optional<PeriodReport> detect_period(std::span<const Score> values, std::uint64_t min_window) {
  const std::uint64_t len = values.size();
  if (min_window == 0) min_window = 1;
  if (len == 0 || len < min_window) return std::nullopt;

  for (std::uint64_t period = 1; period * min_window <= len; ++period) {
    // Smallest preperiod: one past the last mismatch.
    std::uint64_t preperiod = 0;
    for (std::uint64_t n = len - period; n-- > 0;) {
      if (values[n + period] != values[n]) {
        preperiod = n + 1;
        break;
      }
    }
    // The periodic stretch must hold min_window whole periods and be at least
    // as long as the preperiod, which rules out short patterns that only
    // fill the tail of a longer period.
    if ((len - preperiod) / period < min_window || len - preperiod < preperiod) continue;

    PeriodReport report;
    report.preperiod = preperiod;
    report.period = period;
    report.checked_up_to = len - 1;
    report.sequence_digest = sequence_digest(values);
    if (!holds(values, report.preperiod, report.period)) {
      throw std::logic_error("detect_period: report failed self-check");
    }
    return report;
  }
  return std::nullopt;
}

std::uint64_t certification_length(const OctalRules& rules, const PeriodReport& report) {
  const auto f = static_cast<std::uint64_t>(rules.length());
  const std::uint64_t start = std::max<std::uint64_t>(report.preperiod, f + 1);
  return start + report.period + f;
}

bool certify_period(const OctalRules& rules, PeriodReport& report, std::span<const Score> values) {
  report.certified = false;
  report.certified_from = 0;
  if (report.period == 0) throw std::invalid_argument("certify_period: period must be positive");
  if (report.checked_up_to + 1 != values.size() || !holds(values, report.preperiod, report.period)) {
    throw std::invalid_argument("certify_period: report does not describe these values");
  }
  if (!rules.taking_no_breaking()) return false;

  const auto f = static_cast<std::uint64_t>(rules.length());
  const std::uint64_t start = std::max<std::uint64_t>(report.preperiod, f + 1);
  if (values.size() < start + report.period + f) {
    throw std::invalid_argument("certify_period: window shorter than period + digit count (need " +
                                std::to_string(start + report.period + f) + " values, have " +
                                std::to_string(values.size()) + ")");
  }
  for (std::uint64_t n = start; n < start + f; ++n) {
    if (values[n + report.period] != values[n]) return false;
  }
  report.certified = true;
  report.certified_from = start;
  return true;
}

}  // namespace scoring
