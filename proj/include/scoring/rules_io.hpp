#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoring/octal.hpp"

namespace scoring {

/// Parses a rules document. A document is either one mapping
///
///   name: sub45
///   digits: [0, 0, 0, 3, 3]
///   points: [0, 0, 0, 4, 5]
///
/// or a sequence of such mappings. Points are rational strings ("1/2",
/// "0.25", 3). Throws std::invalid_argument naming the offending field.
std::vector<OctalRules> parse_rules_document(std::string_view text);

/// Single-ruleset convenience; rejects documents with more than one ruleset.
OctalRules parse_rules(std::string_view text);

std::string rules_document(const OctalRules& rules);

/// Named rulesets that need no file:
///   sub45      subtraction set {4,5}, p_i = i
///   o3333p2    (3333, 2222)
///   o26        digits 2,6 with points 1,2
///   nim:<len>  scoring nim up to <len> beans per move
///   sub:<a,b,..>  subtraction game, p_i = i
std::optional<OctalRules> builtin_rules(std::string_view spec);

/// Resolves `ref` as a file path when one exists, else as a built-in name.
/// Throws std::invalid_argument when neither applies.
std::vector<OctalRules> load_rules(const std::string& ref);

}  // namespace scoring
