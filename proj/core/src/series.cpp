#include "ddff/series.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ddff {

namespace {

template <class Part>
std::optional<int> first_significant(const Series& s, double time, double scale, double tol,
                                     Part part) {
  HighReal bound = HighReal(tol) * HighReal(scale);
  for (int n = 0; n < Series::kOrder; ++n) {
    if (abs(part(s[n])) > bound) return n;
    bound *= HighReal(time);
  }
  return std::nullopt;
}

}  // namespace

Series Series::exponential(const HighComplex& a) {
  Series s;
  HighComplex term(1);
  for (int n = 0; n < kOrder; ++n) {
    s[n] = term;
    term = term * a / HighReal(n + 1);
  }
  return s;
}

Series operator+(const Series& a, const Series& b) {
  Series r;
  for (int n = 0; n < Series::kOrder; ++n) r[n] = a[n] + b[n];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  Series r;
  for (int n = 0; n < Series::kOrder; ++n) r[n] = a[n] - b[n];
  return r;
}

Series operator*(const Series& a, const Series& b) {
  Series r;
  for (int i = 0; i < Series::kOrder; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < Series::kOrder; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series operator*(const HighComplex& s, const Series& a) {
  Series r;
  for (int n = 0; n < Series::kOrder; ++n) r[n] = s * a[n];
  return r;
}

Series Series::reflected() const {
  Series r = *this;
  for (int n = 1; n < kOrder; n += 2) r[n] = -r[n];
  return r;
}

Series Series::conj() const {
  Series r;
  for (int n = 0; n < kOrder; ++n) r[n] = HighComplex(real((*this)[n]), -imag((*this)[n]));
  return r;
}

std::complex<double> Series::evaluate(double w) const {
  HighComplex acc(0);
  const HighReal x(w);
  for (int n = kOrder - 1; n >= 0; --n) acc = acc * x + (*this)[n];
  return {static_cast<double>(real(acc)), static_cast<double>(imag(acc))};
}

std::optional<int> Series::leading_order(double time, double scale, double tol) const {
  return first_significant(*this, time, scale, tol, [](const HighComplex& c) { return abs(c); });
}

std::optional<int> Series::leading_order_real(double time, double scale, double tol) const {
  return first_significant(*this, time, scale, tol, [](const HighComplex& c) { return real(c); });
}

std::optional<int> Series::leading_order_imag(double time, double scale, double tol) const {
  return first_significant(*this, time, scale, tol, [](const HighComplex& c) { return imag(c); });
}

}  // namespace ddff
