#include "ddff/fraction.hpp"

#include "ddff/errors.hpp"

#include <sstream>

namespace ddff {

namespace {

HighReal to_high(const Rational& r) {
  return HighReal(numerator(r)) / HighReal(denominator(r));
}

}  // namespace

Fraction::Fraction(long num, long den) {
  if (den == 0) throw InvalidArgument("fraction with zero denominator");
  exact_ = Rational(num, den);
  value_ = to_high(*exact_);
}

Fraction::Fraction(const Rational& r) : exact_(r), value_(to_high(r)) {}

Fraction Fraction::approximate(const HighReal& v) {
  Fraction f;
  f.exact_.reset();
  f.value_ = v;
  return f;
}

const Rational& Fraction::rational() const {
  if (!exact_) throw PreconditionError("fraction is not exact");
  return *exact_;
}

std::string Fraction::str() const {
  if (exact_) {
    std::ostringstream os;
    os << numerator(*exact_) << '/' << denominator(*exact_);
    return os.str();
  }
  return value_.str(20, std::ios_base::fixed);
}

Fraction Fraction::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const Rational num{boost::multiprecision::cpp_int(text.substr(0, slash))};
      const boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0) throw InvalidArgument("fraction with zero denominator: " + text);
      return Fraction(num / Rational(den));
    }
    return approximate(HighReal(text));
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse pulse fraction: " + text);
  }
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.exact_ && b.exact_) return Fraction(*a.exact_ + *b.exact_);
  return Fraction::approximate(a.value_ + b.value_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  if (a.exact_ && b.exact_) return Fraction(*a.exact_ - *b.exact_);
  return Fraction::approximate(a.value_ - b.value_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  if (a.exact_ && b.exact_) return Fraction(*a.exact_ * *b.exact_);
  return Fraction::approximate(a.value_ * b.value_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.value_ == 0) throw InvalidArgument("division by zero fraction");
  if (a.exact_ && b.exact_) return Fraction(*a.exact_ / *b.exact_);
  return Fraction::approximate(a.value_ / b.value_);
}

bool operator==(const Fraction& a, const Fraction& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  if (a.exact_ && b.exact_) {
    if (*a.exact_ < *b.exact_) return std::strong_ordering::less;
    if (*b.exact_ < *a.exact_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool same_instant(const Fraction& a, const Fraction& b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return abs(a.value() - b.value()) < Fraction::kTolerance;
}

}  // namespace ddff
