#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace scoring {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Components are 64-bit; every operation that would leave that range
/// throws std::overflow_error instead of wrapping.
class Score {
 public:
  constexpr Score() = default;
  Score(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Score(std::int64_t num, std::int64_t den);

  /// Accepts "7", "-3", "3/4", "-1.25" and ".5". Throws std::invalid_argument.
  static Score parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  /// "5", "-3", "7/2"; never decimal.
  std::string str() const;

  Score operator-() const;
  friend Score operator+(const Score& a, const Score& b);
  friend Score operator-(const Score& a, const Score& b);
  friend Score operator*(const Score& a, const Score& b);
  Score& operator+=(const Score& o) { return *this = *this + o; }
  Score& operator-=(const Score& o) { return *this = *this - o; }

  friend bool operator==(const Score& a, const Score& b) = default;
  friend std::strong_ordering operator<=>(const Score& a, const Score& b);

  std::size_t hash() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Score& s);

}  // namespace scoring

template <>
struct std::hash<scoring::Score> {
  std::size_t operator()(const scoring::Score& s) const noexcept { return s.hash(); }
};
