#include "scoring/score.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace scoring {

namespace {

using wide = __int128;

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr wide kMin = std::numeric_limits<std::int64_t>::min();

wide wide_gcd(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduces num/den and narrows back to 64 bits, throwing if it cannot.
Score make_checked(wide num, wide den) {
  if (den == 0) throw std::domain_error("score: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) {
    throw std::overflow_error("score: rational arithmetic overflowed 64-bit components");
  }
  return Score(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw std::overflow_error("score literal out of range: '" + std::string(whole) + "'");
  }
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not a rational score: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Score::Score(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("score: zero denominator");
  wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < kMin || d > kMax) {
    throw std::overflow_error("score: rational arithmetic overflowed 64-bit components");
  }
  num_ = static_cast<std::int64_t>(n);
  den_ = static_cast<std::int64_t>(d);
}

Score Score::parse(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  if (t.empty()) throw std::invalid_argument("empty score literal");

  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(t.substr(0, slash), text);
    std::string_view d_text = t.substr(slash + 1);
    if (!d_text.empty() && (d_text.front() == '-' || d_text.front() == '+')) {
      throw std::invalid_argument("score denominator must be a positive integer: '" + std::string(text) + "'");
    }
    std::int64_t d = parse_int(d_text, text);
    if (d <= 0) {
      throw std::invalid_argument("score denominator must be a positive integer: '" + std::string(text) + "'");
    }
    return Score(n, d);
  }

  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = t.substr(0, dot);
    std::string_view frac = t.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty() && frac.empty()) {
      throw std::invalid_argument("not a rational score: '" + std::string(text) + "'");
    }
    for (char c : frac) {
      if (c < '0' || c > '9') throw std::invalid_argument("not a rational score: '" + std::string(text) + "'");
    }
    if (frac.size() > 18) throw std::overflow_error("score literal has too many decimals: '" + std::string(text) + "'");
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      throw std::invalid_argument("not a rational score: '" + std::string(text) + "'");
    }
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t scale = 1;
    std::int64_t frac_value = 0;
    for (char c : frac) {
      scale *= 10;
      frac_value = frac_value * 10 + (c - '0');
    }
    Score result = make_checked(static_cast<wide>(whole) * scale + frac_value, scale);
    return negative ? -result : result;
  }

  return Score(parse_int(t, text));
}

std::string Score::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Score Score::operator-() const { return make_checked(-static_cast<wide>(num_), den_); }

Score operator+(const Score& a, const Score& b) {
  if (a.den_ == 1 && b.den_ == 1) return make_checked(static_cast<wide>(a.num_) + b.num_, 1);
  return make_checked(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                      static_cast<wide>(a.den_) * b.den_);
}

Score operator-(const Score& a, const Score& b) {
  if (a.den_ == 1 && b.den_ == 1) return make_checked(static_cast<wide>(a.num_) - b.num_, 1);
  return make_checked(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                      static_cast<wide>(a.den_) * b.den_);
}

Score operator*(const Score& a, const Score& b) {
  return make_checked(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const Score& a, const Score& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  wide lhs = static_cast<wide>(a.num_) * b.den_;
  wide rhs = static_cast<wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Score::hash() const {
  std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const Score& s) { return os << s.str(); }

}  // namespace scoring
