#pragma once

#include "ddff/fraction.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ddff {

struct SequenceLabel {
  std::string family;       // "free", "udd", "cdd", "nudd", "ncdd", ...
  std::vector<int> orders;  // per-qubit or per-level orders
};

// Instantaneous X pulses on N qubits over one period of length T.
// Qubits are 0-based. Pulse fractions lie in (0, 1]; a pulse at 1 closes
// the period and is present exactly when the number of interior pulses is
// odd, so the control propagator is always the identity.
class PulseSequence {
 public:
  PulseSequence(int num_qubits, double duration,
                std::vector<std::vector<Fraction>> pulses,
                SequenceLabel label = {},
                std::optional<std::size_t> nominal_count = std::nullopt);

  static PulseSequence free(int num_qubits, double duration);

  int num_qubits() const { return static_cast<int>(pulses_.size()); }
  double duration() const { return duration_; }
  const std::vector<Fraction>& pulses(int qubit) const;
  const SequenceLabel& label() const { return label_; }
  // Pulse count predicted by the construction formulas before any
  // coincident pulses are merged.
  std::size_t nominal_count() const { return nominal_; }
  bool exact() const;

  PulseSequence with_duration(double duration) const;
  PulseSequence with_label(SequenceLabel label) const;

 private:
  double duration_;
  std::vector<std::vector<Fraction>> pulses_;
  SequenceLabel label_;
  std::size_t nominal_;
};

// Piecewise-constant +-1 switching functions in absolute time.
struct QubitProfile {
  std::vector<double> edges;  // 0 = t_0 < t_1 < ... < t_n = T
  std::vector<int> signs;     // sign on [t_j, t_{j+1})
  bool end_parity = false;    // pulse exactly at T
};

class SwitchingProfile {
 public:
  explicit SwitchingProfile(const PulseSequence& seq);
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  double duration() const { return duration_; }
  const QubitProfile& qubit(int q) const { return qubits_.at(static_cast<std::size_t>(q)); }
  int sign_at(int q, double t) const;

 private:
  double duration_;
  std::vector<QubitProfile> qubits_;
};

// Single-qubit building blocks.
PulseSequence build_udd(int order, double duration);
PulseSequence build_cdd(int order, double duration);

// Embed a single-qubit sequence as qubit `qubit` of an N-qubit register.
PulseSequence on_qubit(const PulseSequence& single, int qubit, int num_qubits);
// Same single-qubit sequence applied to every qubit (global pulses).
PulseSequence nonselective(const PulseSequence& single, int num_qubits);

// Every free interval of `outer` is replaced by `inner` rescaled to fit.
PulseSequence compose(const PulseSequence& outer, const PulseSequence& inner);
// Independent single-qubit sequences of equal duration side by side.
PulseSequence product(std::span<const PulseSequence> singles);
// `first` followed by `second`.
PulseSequence concatenate(const PulseSequence& first, const PulseSequence& second);
PulseSequence repeat(const PulseSequence& seq, int times);

// Nested UDD / CDD: qubit 0 carries the outermost level.
PulseSequence build_nudd(std::span<const int> orders, double duration);
PulseSequence build_ncdd(std::span<const int> orders, double duration);
// Multi-qubit concatenation of the nested two-level CDD_1 block.
PulseSequence build_multi_cdd(int order, int num_qubits, double duration);

struct SymmetryMatrices {
  std::vector<std::vector<int>> p;  // N x (N-1)
  std::vector<std::vector<int>> q;  // N x 2^(N-1)
};
SymmetryMatrices symmetry_matrices(int num_qubits);

// 2^(N-1) conjugated copies of `base`. Qubit flip_order[j] plays the role
// of the (j+1)-th row of the symmetry matrices; by default qubit j. Each
// qubit's signs are normalized so that no pulse sits at t = 0.
PulseSequence enhance_displacement(const PulseSequence& base, int num_qubits,
                                   std::span<const int> flip_order = {});

// Enhanced two-level-or-more sequence from CDD or UDD blocks with the given
// orders, total duration T. Qubit 0 is the one conjugated at T/2.
PulseSequence build_displacement(const std::string& family, std::span<const int> orders,
                                 double duration);

// Operator string of the enhanced construction in the unnormalized
// convention, right to left in time, e.g. "X3X2*U*X2X3*U*X3".
std::string displacement_operator_string(int num_qubits);

enum class SymmetryKind { mirror, displacement, generalized_displacement };

// +1 (symmetric), -1 (anti-symmetric) or nullopt (neither) for one qubit.
// mirror: y(T/2 + t) y(T/2 - t); displacement: y(t) y(t + T/2);
// generalized at scale s in [1, N-1]: y(t) y(t + (2m-1) tau) on the m-th
// block left of T/2, tau = 2^(s-1) T / 2^(N-1).
std::optional<int> qubit_parity(const PulseSequence& seq, int qubit, SymmetryKind kind,
                                int scale = 0);

// Anti-symmetry of the pair product under `kind`.
bool check_symmetry(const PulseSequence& seq, SymmetryKind kind, int q1, int q2,
                    int scale = 0);
// Mirror-symmetric pair product (both parities equal).
bool is_mirror_symmetric(const PulseSequence& seq, int q1, int q2);

struct PulseStats {
  std::vector<std::size_t> per_qubit;
  std::size_t total = 0;
  std::size_t instants = 0;  // distinct pulse instants over all qubits
  std::size_t nominal = 0;
  double tau_min = 0;  // shortest free interval on any single qubit
};
PulseStats pulse_stats(const PulseSequence& seq);

}  // namespace ddff
