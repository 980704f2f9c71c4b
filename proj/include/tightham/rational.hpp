#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tightham {

// Exact nonnegative-friendly rational used for the user-facing constants
// (alpha, theta, ...). Thresholds such as floor(alpha * n) must not depend on
// binary floating point, so "0.15" parses to 3/20 exactly.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // floor(this * k), ceil(this * k) for integer k.
  std::int64_t floor_times(std::int64_t k) const;
  std::int64_t ceil_times(std::int64_t k) const;
  // floor(k / this), ceil(k / this); this must be positive.
  std::int64_t floor_divide(std::int64_t k) const;
  std::int64_t ceil_divide(std::int64_t k) const;

  Rational operator*(const Rational& o) const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;

  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace tightham
