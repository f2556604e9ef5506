#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>

namespace ddff {

using Rational = boost::multiprecision::cpp_rational;
using HighReal = boost::multiprecision::cpp_bin_float_50;

// Position inside a period, as a fraction of its duration. Exact when every
// ingredient was rational; otherwise a 50-digit real.
class Fraction {
 public:
  // Two inexact fractions closer than this are the same instant.
  static constexpr double kTolerance = 1e-12;

  Fraction() : exact_(Rational(0)), value_(0) {}
  Fraction(long num, long den);
  explicit Fraction(const Rational& r);
  static Fraction approximate(const HighReal& v);

  bool exact() const { return exact_.has_value(); }
  const Rational& rational() const;  // throws unless exact()
  const HighReal& value() const { return value_; }
  double to_double() const { return static_cast<double>(value_); }

  // "p/q" for exact values, 20 significant digits otherwise.
  std::string str() const;
  static Fraction parse(const std::string& text);

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);

  // Strict comparisons; use same_instant() for tolerant equality.
  friend bool operator==(const Fraction& a, const Fraction& b);
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  std::optional<Rational> exact_;
  HighReal value_;
};

// Exact equality for rationals, |a - b| < kTolerance otherwise.
bool same_instant(const Fraction& a, const Fraction& b);

}  // namespace ddff
