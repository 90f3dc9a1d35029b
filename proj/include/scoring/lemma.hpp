#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "scoring/score.hpp"

namespace scoring {

enum class LemmaCheck {
  Identity,    // Gs(s + 2ik) = k - Gs(s + (2i-1)k)
  UpperEven,   // Gs(r + 2ik) <= r
  LowerOdd,    // Gs(r + (2i+1)k) >= k - r
};

std::string_view to_string(LemmaCheck c);

struct LemmaFailure {
  LemmaCheck check;
  int s;  // s for Identity, r otherwise
  int i;
  Score lhs;
  Score rhs;
};

struct LemmaReport {
  std::vector<int> set;
  int k = 0;
  int i_max = 0;
  std::uint64_t checks = 0;
  std::vector<LemmaFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Evaluates the alternation identity for every s in `set`, 1 <= i <= i_max,
/// and the two residue bounds for 0 <= r <= k, 0 <= i <= i_max, on the
/// subtraction game over `set` with p_i = i.
LemmaReport check_lemma(std::vector<int> set, int i_max);

}  // namespace scoring
