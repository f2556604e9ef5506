#pragma once

#include "ddff/filter.hpp"
#include "ddff/noise.hpp"
#include "ddff/quadrature.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ddff {

// Basis strings are integers with qubit 0 in the most significant bit,
// so index 1 of a two-qubit register is |01>.
int basis_bit(std::uint32_t a, int qubit, int num_qubits);

// Delta[a_c, b_c] = (-1)^{|a & c|} - (-1)^{|b & c|} for a channel mask
// written in qubit indices.
int channel_delta(std::uint32_t a, std::uint32_t b, Channel c, int num_qubits);

// Zero order at w = 0 of Re (or Im) of P(w) e^{i kappa w}; nullopt when
// that part vanishes identically. `time` sets the coefficient scale.
std::optional<int> low_frequency_order(const Series& p, double time, double kappa, bool real_part);

// Decay term chi_ab = 1/2 sum_{c,d} Delta_c Delta_d K_cd. Each entry holds
// K_cd for one unordered channel pair.
struct DecayTerm {
  Channel first;
  Channel second;
  double k = 0.0;
  double error = 0.0;
};

struct PhaseTerm {
  int l = 0;
  int lp = 1;
  double phi0 = 0.0;
  double phi1 = 0.0;
  double error = 0.0;
};

// Deterministic first-order phase d_c G_c(0).
struct OffsetTerm {
  Channel channel;
  double value = 0.0;
};

// rho_ab(T) = rho_ab(0) exp(-chi_ab + i phi_ab)
class CoherenceFactors {
 public:
  CoherenceFactors(int num_qubits, std::vector<DecayTerm> decay, std::vector<PhaseTerm> phase,
                   std::vector<OffsetTerm> offsets = {});
  static CoherenceFactors zero(int num_qubits);

  int num_qubits() const { return n_; }
  std::uint32_t dimension() const { return 1u << n_; }

  double chi(std::uint32_t a, std::uint32_t b) const;
  double phi(std::uint32_t a, std::uint32_t b) const;
  std::complex<double> factor(std::uint32_t a, std::uint32_t b) const;

  // chi_{c,c} = 2 K_cc and chi_{c,d} = 4 K_cd, summed over all sources.
  double chi_component(Channel a, Channel b) const;
  double phi0(int l, int lp) const;
  double phi1(int l, int lp) const;

  const std::vector<DecayTerm>& decay_terms() const { return decay_; }
  const std::vector<PhaseTerm>& phase_terms() const { return phase_; }

 private:
  int n_;
  std::vector<DecayTerm> decay_;
  std::vector<PhaseTerm> phase_;
  std::vector<OffsetTerm> offsets_;
};

// K_cd for a classical source: int dw/2pi S(w) G_c(w) G_d(-w) + sigma^2 G_c(0) G_d(0).
QuadratureResult classical_overlap(const FilterBundle& ff, const ClassicalSource& source);
// K_ll' = int dw/2pi S+_{l,l'}(w) G_l(-w) G_l'(w).
QuadratureResult quantum_overlap(const FilterBundle& ff, const SpinBoson& bath, int l, int lp);

// Decay components chi_{c,c} = 2K, chi_{c,d} = 4K.
QuadratureResult overlap_chi(const FilterBundle& ff, const ClassicalSource& source);
QuadratureResult overlap_chi(const FilterBundle& ff, const SpinBoson& bath, int l, int lp);

// phi0 = -4 int dw/2pi S-_{l,l'}(w) G2_{l,l'}(-w, w)
// phi1 = -(2/pi) int_0^inf dw Im[S-_{l,l'}(w) G_l(-w) G_l'(w)]
// Both independent of temperature.
PhaseTerm overlap_phi(const FilterBundle& ff, const SpinBoson& bath, int l, int lp);

CoherenceFactors assemble_coherence(const FilterBundle& ff, const NoiseModel& noise);

class DensityMatrix {
 public:
  // Row-major 2^N x 2^N; Hermitian, unit trace, positive semidefinite.
  DensityMatrix(int num_qubits, std::vector<std::complex<double>> elements);
  static DensityMatrix pure(std::span<const std::complex<double>> psi);

  int num_qubits() const { return n_; }
  std::uint32_t dimension() const { return 1u << n_; }
  std::complex<double> operator()(std::uint32_t a, std::uint32_t b) const {
    return data_[a * dimension() + b];
  }
  const std::vector<std::complex<double>>& elements() const { return data_; }

 private:
  int n_;
  std::vector<std::complex<double>> data_;
};

DensityMatrix evolve(const DensityMatrix& rho0, const CoherenceFactors& factors);

// <psi| rho(T) |psi> = sum_ab |rho_ab(0)|^2 exp(-chi_ab + i phi_ab)
double fidelity(std::span<const std::complex<double>> psi, const CoherenceFactors& factors);
// Same with W_ab = |rho_ab(0)|^2 supplied directly (e.g. ensemble averages).
double fidelity_from_weights(std::span<const double> weights, const CoherenceFactors& factors);

}  // namespace ddff
