#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "fuzzproc/error.hpp"

namespace fuzzproc {

using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::optional<std::int64_t> parse_digits(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

inline bool all_digits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(),
                                      [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

/// Parses "n", "n/d" or an exact decimal "i.fff" into a rational. No sign is
/// accepted; range is not checked. Returns nullopt on malformed text.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num_text = text.substr(0, slash);
    auto den_text = text.substr(slash + 1);
    if (!detail::all_digits(num_text) || !detail::all_digits(den_text)) return std::nullopt;
    auto num = detail::parse_digits(num_text);
    auto den = detail::parse_digits(den_text);
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_text = text.substr(0, dot);
    auto frac_text = text.substr(dot + 1);
    if (int_text.empty()) int_text = "0";
    if (!detail::all_digits(int_text) || !detail::all_digits(frac_text)) return std::nullopt;
    // 10^18 is the largest power of ten an int64 holds.
    if (frac_text.size() > 18 || int_text.size() > 18) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    auto whole = detail::parse_digits(int_text);
    auto frac = detail::parse_digits(frac_text);
    if (!whole || !frac) return std::nullopt;
    if (*whole > 1) return Rational(*whole);  // out of range anyway; avoid overflow
    return Rational(*whole * scale + *frac, scale);
  }
  if (!detail::all_digits(text)) return std::nullopt;
  auto whole = detail::parse_digits(text);
  if (!whole) return std::nullopt;
  return Rational(*whole);
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Exact membership grade in [0, 1], always stored fully reduced.
class Grade {
 public:
  Grade() = default;

  /// Throws GradeOutOfRange unless 0 <= value <= 1.
  explicit Grade(const Rational& value) : value_(value) {
    if (value < Rational(0) || value > Rational(1)) {
      throw Error(ErrorKind::GradeOutOfRange,
                  "grade " + fuzzproc::to_string(value) + " is outside [0,1]");
    }
  }

  Grade(std::int64_t num, std::int64_t den) : Grade(checked(num, den)) {}

  /// Parses a grade literal ("3/5", "0.6", "1"); throws InvalidArgument on
  /// malformed text and GradeOutOfRange on values outside [0,1].
  static Grade parse(std::string_view text) {
    auto r = parse_rational(text);
    if (!r) {
      throw Error(ErrorKind::InvalidArgument,
                  "malformed grade literal '" + std::string(text) + "'");
    }
    return Grade(*r);
  }

  static Grade zero() { return Grade(); }
  static Grade one() { return Grade(Rational(1)); }

  const Rational& value() const noexcept { return value_; }
  std::int64_t numerator() const noexcept { return value_.numerator(); }
  std::int64_t denominator() const noexcept { return value_.denominator(); }

  bool is_zero() const noexcept { return value_.numerator() == 0; }
  bool is_one() const noexcept { return value_.numerator() == 1 && value_.denominator() == 1; }
  bool positive() const noexcept { return value_.numerator() > 0; }

  std::string to_string() const { return fuzzproc::to_string(value_); }

  friend bool operator==(const Grade& a, const Grade& b) noexcept { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Grade& a, const Grade& b) {
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    return a.value_ < b.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  friend std::ostream& operator<<(std::ostream& os, const Grade& g) { return os << g.to_string(); }

 private:
  static Rational checked(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    return Rational(num, den);
  }

  Rational value_{0};
};

inline Grade min(const Grade& a, const Grade& b) { return b < a ? b : a; }
inline Grade max(const Grade& a, const Grade& b) { return a < b ? b : a; }

}  // namespace fuzzproc
