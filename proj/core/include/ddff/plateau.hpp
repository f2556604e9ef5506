#pragma once

#include "ddff/dynamics.hpp"
#include "ddff/filter.hpp"
#include "ddff/noise.hpp"
#include "ddff/sequence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ddff {

struct ConditionVerdict {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // positive when satisfied
};

struct PlateauReport {
  std::vector<ConditionVerdict> conditions;
  // Quantum case: a correlated pair lacks displacement anti-symmetry, so the
  // induced phase grows linearly with M.
  bool m_linear_divergence = false;

  bool pass() const;
  // Name of the first failing condition.
  std::optional<std::string> limiting() const;
  void append(const PlateauReport& other);
};

// Order-k condition for one set of k noise variables: exponents has k-1
// entries, cancellation orders k, cutoffs one per variable.
struct PlateauConditionInput {
  int order = 2;
  std::vector<double> exponents;
  std::vector<double> cancellation_orders;
  std::vector<double> cutoffs;
  double period = 1.0;
  std::string label;
};

// sum s + sum alpha > 1 and w_c T_p < 2 pi, all strict.
PlateauReport check_classical(const PlateauConditionInput& input);

// k = 2 input for one classical source under repetition of `base`.
PlateauConditionInput classical_plateau_input(const PulseSequence& base, const ClassicalSource& source);

struct PairOrders {
  int l = 0;
  int lp = 1;
  double alpha_l = 0.0;
  double alpha_lp = 0.0;
  bool displacement_antisymmetric = false;
};

struct QuantumPlateauInput {
  std::vector<PlateauConditionInput> plus;  // S+ conditions, one per variable set
  double minus_exponent = 0.0;
  double minus_cutoff = 0.0;
  double period = 1.0;
  std::vector<PairOrders> pairs;  // correlated pairs only
};

PlateauReport check_quantum(const QuantumPlateauInput& input);

// Second-order (k = 2) inputs for a base sequence in a spin-boson bath; the
// cancellation order of a qubit is the zero order of its first-order filter
// function at w = 0.
QuantumPlateauInput quantum_plateau_input(const PulseSequence& base, const SpinBoson& bath);

// Large-M limit of the coherence factors under repetition of `base`:
// the Fejer kernel |sum e^{ikx}|^2 is replaced by 1 / (2 sin^2(x/2)) and the
// induced-phase Dirichlet kernel sin(Mx)/sin(x/2) by its comb limit.
struct AsymptoticCoherence {
  CoherenceFactors factors;
  // A soft cutoff extends past the first comb frequency 2 pi / T_p; only the
  // r = 0 cell |w| < pi / T_p was kept for decay terms.
  bool truncated = false;
};

// Throws DivergenceError when the limit is infinite (failed exponent
// condition, M-linear term or static component) and PreconditionError for a
// hard cutoff reaching a comb frequency.
AsymptoticCoherence plateau_value(const PulseSequence& base, const NoiseModel& noise);

// Real amplitudes c_1 = cos t1, c_2 = sin t1 cos t2, ..., with the last angle
// uniform in [0, 2 pi) and the others in [0, pi).
std::vector<std::vector<double>> sample_real_states(int num_qubits, std::size_t count, std::uint64_t seed);

struct ScanRow {
  int repetitions = 0;
  double total_time = 0.0;
  double mean_fidelity = 1.0;
  double stderr = 0.0;
  bool diverged = false;    // overlap integral infinite at this M
  bool asymptotic = false;  // large-M limit used instead of exact repetition
};

struct RepetitionScan {
  std::vector<ScanRow> rows;
  // 1 - mean sum_a c_a^4: the loss once every coherence has decayed.
  double dephased_loss = 0.0;
};

// Rows with M above `asymptotic_above` use plateau_value.
RepetitionScan scan_fidelity(const PulseSequence& base, const NoiseModel& noise,
                             const std::vector<int>& repetitions,
                             const std::vector<std::vector<double>>& states, unsigned threads = 0,
                             std::optional<int> asymptotic_above = 1000);

// 1, 2, 4, ..., up to max_m.
std::vector<int> doubling_grid(int max_m);

struct PlateauDetection {
  bool plateau = false;
  double last_change = 0.0;  // |loss(M) - loss(M/2)| at the largest M
  bool at_dephased_floor = false;
  bool diverged = false;
};

// Plateau: loss changes by less than `tolerance` over each of the last
// `doublings` doublings of M, and the final loss stays below the fully
// dephased loss by more than `tolerance`. Any diverged row means no plateau.
PlateauDetection detect_plateau(const RepetitionScan& scan, double tolerance = 1e-3, int doublings = 3);

// Generation block repeated M_g times followed by storage block repeated M_s
// times. Either count may be zero, not both.
FilterBundle two_stage(const FilterBundle& generation, int m_gen, const FilterBundle& storage, int m_store);

}  // namespace ddff
