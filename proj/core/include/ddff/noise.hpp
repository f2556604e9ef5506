#pragma once

#include "ddff/filter.hpp"

#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace ddff {

enum class CutoffKind { hard, gaussian, exponential };

struct Cutoff {
  double omega_c = 1.0;
  CutoffKind kind = CutoffKind::hard;

  // Weight at frequency |w|.
  double operator()(double w) const;
  // Beyond this |w| the weight is zero (hard) or below 1e-16 of its peak.
  double support() const;
};

// amplitude * ((w^2 + w_ir^2) / w_c^2)^(s/2) * cutoff(|w|); even in w.
struct PowerLaw {
  double amplitude = 0.0;
  double exponent = 0.0;
  Cutoff cutoff;
  double omega_ir = 0.0;

  double operator()(double w) const;
  // Exponent of the leading power as w -> 0.
  double low_exponent() const { return omega_ir > 0 ? 0.0 : exponent; }
};

struct SpectrumMetadata {
  double exponent = 0.0;  // low-frequency power
  double omega_c = 0.0;
  CutoffKind kind = CutoffKind::hard;
  bool has_static = false;
};

// Classical stationary PSD S(w) = S(-w) >= 0 with an optional static
// component 2 pi sigma^2 delta(w). Convention:
// <xi(t) xi(t')> = int dw/2pi S(w) e^{-iw(t-t')}.
class ClassicalPSD {
 public:
  explicit ClassicalPSD(PowerLaw shape, double static_variance = 0.0);
  static ClassicalPSD zero();
  static ClassicalPSD static_only(double variance);

  double operator()(double w) const { return shape_(w); }
  double static_variance() const { return static_variance_; }
  const PowerLaw& shape() const { return shape_; }
  double support() const { return shape_.cutoff.support(); }
  bool continuous_zero() const { return shape_.amplitude == 0.0; }
  SpectrumMetadata metadata() const;

 private:
  PowerLaw shape_;
  double static_variance_;
};

// Linear spin-boson bath with spectral density J(w) = J(-w) >= 0 and
// couplings g_k^l g_k^l'* = |g_k|^2 e^{i W_k t_{l,l'}}.
// S+_{l,l'}(w) = pi J(w) e^{-i sigma w t_{l,l'}} coth(beta |w| / 2)
// S-_{l,l'}(w) = pi J(w) e^{-i sigma w t_{l,l'}} sgn(w)
// sigma = transit_sign; an infinite transit time means uncorrelated baths.
class SpinBoson {
 public:
  static constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

  SpinBoson(PowerLaw density, double beta, std::vector<std::vector<double>> transit,
            int transit_sign = 1);
  // Two qubits with transit time t_{0,1}.
  static SpinBoson two_qubit(PowerLaw density, double beta, double t01, int transit_sign = 1);

  int num_qubits() const { return static_cast<int>(transit_.size()); }
  double beta() const { return beta_; }
  const PowerLaw& density() const { return density_; }
  int transit_sign() const { return sign_; }
  double transit(int l, int lp) const;
  bool correlated(int l, int lp) const;

  double j(double w) const { return density_(w); }
  // coth(beta |w| / 2) * J(w), finite at w = 0 only when the limit is.
  double j_coth(double w) const;

  std::complex<double> s_plus(int l, int lp, double w) const;
  std::complex<double> s_minus(int l, int lp, double w) const;
  // S^B = S+ + S-; obeys detailed balance S_{l,l}(w) / S_{l,l}(-w) = e^{beta w}.
  std::complex<double> s_total(int l, int lp, double w) const;

  double support() const { return density_.cutoff.support(); }
  SpectrumMetadata plus_metadata() const;
  SpectrumMetadata minus_metadata() const;

 private:
  std::complex<double> phase(int l, int lp, double w) const;

  PowerLaw density_;
  double beta_;
  std::vector<std::vector<double>> transit_;
  int sign_;
};

// Classical noise xi driving channel `first` and, when different, its
// correlation with channel `second` (cross PSD, real and even).
struct ClassicalSource {
  Channel first;
  Channel second;
  ClassicalPSD psd;
};

// Deterministic energy offset d_c multiplying Z_c in the Hamiltonian.
struct StaticOffset {
  Channel channel;
  double value = 0.0;
};

struct NoiseModel {
  std::vector<ClassicalSource> classical;
  std::optional<SpinBoson> quantum;
  std::vector<StaticOffset> offsets;
};

}  // namespace ddff
