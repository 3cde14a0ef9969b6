#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qunit {

/// Raised when a numerical self-check fails (dedup ambiguity, polynomial
/// residual breach, eigenvalue drift). Distinct from bad input.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value in (1/2)Z stored as twice its value, so 3/2 is held as 3.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int v) { return HalfInt(2 * v); }

  /// Accepts "3", "-1/2", "5/2", "1.5".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Spin quantum number s >= 0 held as 2s. The carrier space has N = 2s + 1 levels.
class SpinLabel {
 public:
  static constexpr int kMaxTwoS = 256;

  constexpr SpinLabel() = default;
  /// Throws std::invalid_argument for negative or oversized 2s.
  static SpinLabel from_two_s(int two_s);
  static SpinLabel from_dimension(int n) { return from_two_s(n - 1); }
  static SpinLabel parse(std::string_view text);

  constexpr int two_s() const { return two_s_; }
  constexpr int dimension() const { return two_s_ + 1; }
  constexpr bool is_integer() const { return two_s_ % 2 == 0; }
  constexpr double value() const { return 0.5 * two_s_; }
  constexpr HalfInt as_half_int() const { return HalfInt::from_twice(two_s_); }

  /// Level index i = m + s in [0, N).
  constexpr int index_of(HalfInt m) const { return (m.twice() + two_s_) / 2; }
  constexpr HalfInt level(int index) const { return HalfInt::from_twice(2 * index - two_s_); }
  constexpr bool admits(HalfInt m) const {
    return m.twice() >= -two_s_ && m.twice() <= two_s_ && (m.twice() - two_s_) % 2 == 0;
  }

  constexpr auto operator<=>(const SpinLabel&) const = default;

  std::string to_string() const { return as_half_int().to_string(); }

 private:
  constexpr explicit SpinLabel(int two_s) : two_s_(two_s) {}
  int two_s_ = 0;
};

}  // namespace qunit
