#pragma once

#include "ddff/fraction.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <optional>
#include <vector>

namespace ddff {

using HighComplex = boost::multiprecision::cpp_complex_50;

// Truncated power series sum_n c_n w^n in a real frequency w.
class Series {
 public:
  static constexpr int kOrder = 32;

  Series() : coeffs_(kOrder) {}

  HighComplex& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
  const HighComplex& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  // e^{a w}
  static Series exponential(const HighComplex& a);

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const HighComplex& s, const Series& a);

  // w -> -w
  Series reflected() const;
  Series conj() const;

  std::complex<double> evaluate(double w) const;

  // Index of the first coefficient with |c_n| > tol * scale * time^n.
  std::optional<int> leading_order(double time, double scale, double tol = 1e-28) const;
  // Same, looking only at real (imaginary) parts.
  std::optional<int> leading_order_real(double time, double scale, double tol = 1e-28) const;
  std::optional<int> leading_order_imag(double time, double scale, double tol = 1e-28) const;

 private:
  std::vector<HighComplex> coeffs_;
};

}  // namespace ddff
