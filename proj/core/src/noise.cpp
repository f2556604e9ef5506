#include "ddff/noise.hpp"

#include "ddff/errors.hpp"

#include <cmath>
#include <numbers>

namespace ddff {

namespace {

constexpr double kPi = std::numbers::pi;

// coth(x) for x > 0 with the series branch near zero.
double coth_positive(double x) {
  if (x < 1e-4) return 1.0 / x + x / 3.0;
  if (x > 20.0) return 1.0;
  return 1.0 / std::tanh(x);
}

}  // namespace

double Cutoff::operator()(double w) const {
  const double a = std::abs(w);
  switch (kind) {
    case CutoffKind::hard:
      return a <= omega_c ? 1.0 : 0.0;
    case CutoffKind::gaussian:
      return std::exp(-(a * a) / (omega_c * omega_c));
    case CutoffKind::exponential:
      return std::exp(-a / omega_c);
  }
  return 0.0;
}

double Cutoff::support() const {
  switch (kind) {
    case CutoffKind::hard:
      return omega_c;
    case CutoffKind::gaussian:
      return 6.1 * omega_c;
    case CutoffKind::exponential:
      return 37.0 * omega_c;
  }
  return omega_c;
}

double PowerLaw::operator()(double w) const {
  if (amplitude == 0.0) return 0.0;
  const double c = cutoff(w);
  if (c == 0.0) return 0.0;
  const double wc = cutoff.omega_c;
  double base;
  if (omega_ir > 0) {
    base = std::pow((w * w + omega_ir * omega_ir) / (wc * wc), exponent / 2.0);
  } else {
    const double a = std::abs(w);
    if (a == 0.0) {
      if (exponent > 0) return 0.0;
      if (exponent == 0) return amplitude * c;
      throw DomainError("power-law spectrum is singular at zero frequency");
    }
    base = std::pow(a / wc, exponent);
  }
  return amplitude * base * c;
}

ClassicalPSD::ClassicalPSD(PowerLaw shape, double static_variance)
    : shape_(shape), static_variance_(static_variance) {
  if (!(shape_.amplitude >= 0) || !(static_variance_ >= 0)) {
    throw InvalidArgument("classical PSD must be non-negative");
  }
  if (!(shape_.cutoff.omega_c > 0)) throw InvalidArgument("cutoff frequency must be positive");
  if (shape_.omega_ir < 0) throw InvalidArgument("infrared frequency must be non-negative");
}

ClassicalPSD ClassicalPSD::zero() { return ClassicalPSD(PowerLaw{}); }

ClassicalPSD ClassicalPSD::static_only(double variance) { return ClassicalPSD(PowerLaw{}, variance); }

SpectrumMetadata ClassicalPSD::metadata() const {
  return {shape_.low_exponent(), shape_.cutoff.omega_c, shape_.cutoff.kind, static_variance_ > 0};
}

SpinBoson::SpinBoson(PowerLaw density, double beta, std::vector<std::vector<double>> transit,
                     int transit_sign)
    : density_(density), beta_(beta), transit_(std::move(transit)), sign_(transit_sign) {
  if (!(density_.amplitude >= 0)) throw InvalidArgument("spectral density must be non-negative");
  if (!(density_.cutoff.omega_c > 0)) throw InvalidArgument("cutoff frequency must be positive");
  if (!(beta_ > 0)) throw InvalidArgument("inverse temperature must be positive");
  if (sign_ != 1 && sign_ != -1) throw InvalidArgument("transit sign must be +1 or -1");
  const std::size_t n = transit_.size();
  if (n == 0) throw InvalidArgument("spin-boson bath needs at least one qubit");
  for (std::size_t l = 0; l < n; ++l) {
    if (transit_[l].size() != n) throw InvalidArgument("transit matrix must be square");
    if (transit_[l][l] != 0.0) throw InvalidArgument("transit matrix diagonal must vanish");
  }
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t lp = 0; lp < n; ++lp) {
      const double a = transit_[l][lp];
      const double b = transit_[lp][l];
      if (std::isnan(a) || !(a == -b)) throw InvalidArgument("transit matrix must be antisymmetric");
    }
  }
}

SpinBoson SpinBoson::two_qubit(PowerLaw density, double beta, double t01, int transit_sign) {
  return SpinBoson(density, beta, {{0.0, t01}, {-t01, 0.0}}, transit_sign);
}

double SpinBoson::transit(int l, int lp) const {
  return transit_.at(static_cast<std::size_t>(l)).at(static_cast<std::size_t>(lp));
}

bool SpinBoson::correlated(int l, int lp) const { return std::isfinite(transit(l, lp)); }

std::complex<double> SpinBoson::phase(int l, int lp, double w) const {
  if (l == lp) return 1.0;
  const double t = transit(l, lp);
  if (!std::isfinite(t)) return 0.0;
  return std::polar(1.0, -sign_ * w * t);
}

double SpinBoson::j_coth(double w) const {
  const double a = std::abs(w);
  const bool zero_t = std::isinf(beta_);
  if (a == 0.0) {
    const double s = density_.low_exponent();
    const double wc = density_.cutoff.omega_c;
    if (zero_t) return j(0.0);
    // pi J coth ~ amplitude (w/wc)^s * 2/(beta w)
    if (s > 1) return 0.0;
    if (s == 1) return density_.amplitude * 2.0 / (beta_ * wc);
    throw DomainError("S+ is singular at zero frequency for exponent < 1 at finite temperature");
  }
  const double jv = j(a);
  if (zero_t || jv == 0.0) return jv;
  return jv * coth_positive(beta_ * a / 2.0);
}

std::complex<double> SpinBoson::s_plus(int l, int lp, double w) const {
  return kPi * j_coth(w) * phase(l, lp, w);
}

std::complex<double> SpinBoson::s_minus(int l, int lp, double w) const {
  if (w == 0.0) {
    if (density_.low_exponent() < 0) throw DomainError("S- is singular at zero frequency");
    return 0.0;
  }
  const double sgn = w > 0 ? 1.0 : -1.0;
  return kPi * j(w) * sgn * phase(l, lp, w);
}

std::complex<double> SpinBoson::s_total(int l, int lp, double w) const {
  if (w == 0.0 || std::isinf(beta_)) return s_plus(l, lp, w) + s_minus(l, lp, w);
  // coth(x/2) + sgn = 2 / (1 - e^{-x}) for w > 0, 2 e^{-|x|} / (1 - e^{-|x|}) for w < 0
  const double x = beta_ * std::abs(w);
  const double occ = w > 0 ? -2.0 / std::expm1(-x) : 2.0 / std::expm1(x);
  return kPi * j(w) * occ * phase(l, lp, w);
}

SpectrumMetadata SpinBoson::plus_metadata() const {
  const double s = density_.low_exponent() - (std::isinf(beta_) ? 0.0 : 1.0);
  return {s, density_.cutoff.omega_c, density_.cutoff.kind, false};
}

SpectrumMetadata SpinBoson::minus_metadata() const {
  return {density_.low_exponent(), density_.cutoff.omega_c, density_.cutoff.kind, false};
}

}  // namespace ddff
