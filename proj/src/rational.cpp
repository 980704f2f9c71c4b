#include "tightham/rational.hpp"

#include <charconv>
#include <numeric>

#include "tightham/error.hpp"

namespace tightham {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorKind::invalid_argument, "not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorKind::invalid_argument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) fail(ErrorKind::invalid_argument, "empty rational");
  if (frac.size() > 15) fail(ErrorKind::invalid_argument, "too many decimals: '" + std::string(text) + "'");
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::int64_t w = whole.empty() ? 0 : parse_int(whole, text);
  std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
  std::int64_t num = w * scale + f;
  return Rational(negative ? -num : num, scale);
}

std::int64_t Rational::floor_times(std::int64_t k) const { return floor_div(num_ * k, den_); }
std::int64_t Rational::ceil_times(std::int64_t k) const { return -floor_div(-num_ * k, den_); }

std::int64_t Rational::floor_divide(std::int64_t k) const {
  require(num_ > 0, ErrorKind::invalid_argument, "division by a non-positive rational");
  return floor_div(k * den_, num_);
}
std::int64_t Rational::ceil_divide(std::int64_t k) const {
  require(num_ > 0, ErrorKind::invalid_argument, "division by a non-positive rational");
  return -floor_div(-k * den_, num_);
}

Rational Rational::operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  // Exact decimal when the denominator only has factors 2 and 5.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d == 1) {
    int digits = std::max(twos, fives);
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    std::int64_t scaled = num_ * (scale / den_);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return (negative ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

}  // namespace tightham
