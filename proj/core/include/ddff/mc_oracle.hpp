#pragma once

#include "ddff/filter.hpp"
#include "ddff/noise.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace ddff {

// One Gaussian process xi(t) drives every listed channel with unit weight,
// so two channels in the same source are perfectly correlated.
struct McSource {
  std::vector<Channel> channels;
  ClassicalPSD psd;
};

struct TrajectoryConfig {
  double duration = 1.0;
  std::size_t trajectories = 10000;
  std::uint64_t seed = 0;
  // 0 picks max(64, ceil(64 w_max T / 2 pi)).
  int harmonics = 0;
};

// xi(t) = offset + sum_k a_k cos(w_k t) + b_k sin(w_k t) on midpoint
// frequencies w_k of [0, w_max], with a_k, b_k ~ N(0, S(w_k) dw / pi).
// Equivalently uniform phases with Rayleigh amplitudes. The covariance is
// the midpoint rule of int dw/2pi S(w) e^{-iw tau} plus sigma^2.
class Trajectory {
 public:
  Trajectory(double offset, std::vector<double> omega, std::vector<double> a, std::vector<double> b);

  double operator()(double t) const;
  // int_t0^t1 xi(t) dt
  double integral(double t0, double t1) const;
  double offset() const { return offset_; }
  std::size_t harmonics() const { return omega_.size(); }
  const std::vector<double>& cos_amplitudes() const { return a_; }
  const std::vector<double>& sin_amplitudes() const { return b_; }

 private:
  double offset_;
  std::vector<double> omega_;
  std::vector<double> a_;
  std::vector<double> b_;
};

int harmonic_count(const ClassicalPSD& psd, const TrajectoryConfig& config);

// Deterministic in (seed, stream, index); independent of scheduling.
Trajectory sample_gaussian_process(const ClassicalPSD& psd, const TrajectoryConfig& config,
                                   std::uint64_t index, std::uint64_t stream = 0);

// Midpoint-rule covariance <xi(t) xi(t + tau)> of the synthesized process.
double synthesized_covariance(const ClassicalPSD& psd, const TrajectoryConfig& config, double tau);

struct McEstimate {
  std::complex<double> estimate;
  double stderr = 0.0;  // of the complex mean
  std::size_t trajectories = 0;
};

// Mean over trajectories of exp(-i sum_c Delta_c int y_c xi_c dt), with the
// pair-channel weight 2 used by the first-order filter function.
McEstimate mc_coherence(const PulseSequence& seq, const std::vector<McSource>& sources,
                        const TrajectoryConfig& config, std::uint32_t a, std::uint32_t b,
                        unsigned threads = 0);

}  // namespace ddff
