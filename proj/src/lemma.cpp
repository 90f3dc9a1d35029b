#include "scoring/lemma.hpp"

#include <algorithm>
#include <stdexcept>

#include "scoring/grundy.hpp"

namespace scoring {

std::string_view to_string(LemmaCheck c) {
  switch (c) {
    case LemmaCheck::Identity: return "identity";
    case LemmaCheck::UpperEven: return "upper-even";
    case LemmaCheck::LowerOdd: return "lower-odd";
  }
  return "?";
}

LemmaReport check_lemma(std::vector<int> set, int i_max) {
  if (set.empty()) throw std::invalid_argument("check_lemma: subtraction set is empty");
  if (i_max < 0) throw std::invalid_argument("check_lemma: i_max must be >= 0");
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());

  LemmaReport report;
  report.set = set;
  report.k = set.back();
  report.i_max = i_max;
  const int k = report.k;

  RuleBook book;
  RulesetId id = book.add(subtraction_game("lemma", set));
  const auto max_n = static_cast<std::uint32_t>((2 * i_max + 2) * k);
  const std::vector<Score> g = sweep(book, Position(), id, max_n);
  auto at = [&](int n) -> const Score& { return g.at(static_cast<std::size_t>(n)); };

  for (int s : set) {
    for (int i = 1; i <= i_max; ++i) {
      ++report.checks;
      Score lhs = at(s + 2 * i * k);
      Score rhs = Score(k) - at(s + (2 * i - 1) * k);
      if (lhs != rhs) report.failures.push_back({LemmaCheck::Identity, s, i, lhs, rhs});
    }
  }
  for (int r = 0; r <= k; ++r) {
    for (int i = 0; i <= i_max; ++i) {
      ++report.checks;
      Score even = at(r + 2 * i * k);
      if (even > Score(r)) report.failures.push_back({LemmaCheck::UpperEven, r, i, even, Score(r)});
      ++report.checks;
      Score odd = at(r + (2 * i + 1) * k);
      if (odd < Score(k - r)) report.failures.push_back({LemmaCheck::LowerOdd, r, i, odd, Score(k - r)});
    }
  }
  return report;
}

}  // namespace scoring
