#include "ddff/plateau.hpp"

#include "ddff/errors.hpp"
#include "ddff/parallel.hpp"
#include "ddff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace ddff {

namespace {

constexpr double kPi = std::numbers::pi;
// Order reported for an identically vanishing filter function.
constexpr double kNoOrder = 1e9;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ConditionVerdict strict_greater(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs > rhs, lhs - rhs};
}

void check_input(const PlateauConditionInput& in) {
  if (in.order < 2) throw InvalidArgument("plateau condition needs order k >= 2");
  if (!(in.period > 0) || !std::isfinite(in.period)) throw InvalidArgument("base period must be positive");
  const auto k = static_cast<std::size_t>(in.order);
  if (in.exponents.size() != k - 1) throw InvalidArgument("expected k-1 spectral exponents");
  if (in.cancellation_orders.size() != k) throw InvalidArgument("expected k cancellation orders");
  if (in.cutoffs.size() != k) throw InvalidArgument("expected k cutoffs");
  for (double s : in.exponents) {
    if (!std::isfinite(s)) throw InvalidArgument("spectral exponents must be finite");
  }
}

// y restricted to [0, T/2), rescaled to a full sequence of length T/2.
PulseSequence first_half(const PulseSequence& seq) {
  const Fraction half(1, 2);
  const Fraction two(2, 1);
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(seq.num_qubits()));
  for (int q = 0; q < seq.num_qubits(); ++q) {
    for (const auto& p : seq.pulses(q)) {
      if (p < half && !same_instant(p, half)) pulses[static_cast<std::size_t>(q)].push_back(p * two);
    }
  }
  return PulseSequence(seq.num_qubits(), 0.5 * seq.duration(), std::move(pulses));
}

struct Cell {
  double upper = 0.0;
  bool truncated = false;
};

// Integration range for the r = 0 cell of the comb.
Cell comb_cell(double support, CutoffKind kind, double period) {
  const double first_peak = 2.0 * kPi / period;
  if (support < first_peak) return {support, false};
  if (kind == CutoffKind::hard) {
    throw PreconditionError("hard cutoff reaches the comb frequency 2 pi / T_p (w_c T_p = " +
                            fmt(support * period) + ")");
  }
  return {kPi / period, true};
}

QuadratureOptions comb_options(double period, double transit, double exponent) {
  QuadratureOptions opt;
  double scale = period;
  if (std::isfinite(transit)) scale = std::max(scale, std::abs(transit));
  opt.max_panel = kPi / (2.0 * scale);
  opt.endpoint_exponent = exponent;
  return opt;
}

// Weak large-M limit of the Fejer kernel sin^2(Mx/2) / sin^2(x/2).
double fejer_limit(double x) {
  const double s = std::sin(0.5 * x);
  return 0.5 / (s * s);
}

}  // namespace

bool PlateauReport::pass() const {
  if (m_linear_divergence) return false;
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

std::optional<std::string> PlateauReport::limiting() const {
  for (const auto& c : conditions) {
    if (!c.pass) return c.name;
  }
  if (m_linear_divergence) return std::string("M-linear divergence");
  return std::nullopt;
}

void PlateauReport::append(const PlateauReport& other) {
  conditions.insert(conditions.end(), other.conditions.begin(), other.conditions.end());
  m_linear_divergence = m_linear_divergence || other.m_linear_divergence;
}

PlateauReport check_classical(const PlateauConditionInput& input) {
  check_input(input);
  PlateauReport out;
  double sum = 0;
  for (double s : input.exponents) sum += s;
  for (double a : input.cancellation_orders) sum += a;
  const std::string tag = input.label.empty() ? "k=" + std::to_string(input.order) : input.label;
  out.conditions.push_back(strict_greater(tag + ": sum s + sum alpha > 1", sum, 1.0));
  for (std::size_t r = 0; r < input.cutoffs.size(); ++r) {
    const double wt = input.cutoffs[r] * input.period;
    out.conditions.push_back(
        strict_greater(tag + ": w_c T_p < 2 pi (variable " + std::to_string(r) + ")", 2.0 * kPi, wt));
  }
  return out;
}

PlateauConditionInput classical_plateau_input(const PulseSequence& base, const ClassicalSource& source) {
  const FilterBundle ff = FilterBundle::direct(base);
  auto alpha = [&](Channel c) {
    const auto o = ff.g1_order(c);
    return o ? static_cast<double>(*o) : kNoOrder;
  };
  const double wc = source.psd.shape().cutoff.omega_c;
  PlateauConditionInput in;
  in.order = 2;
  in.exponents = {source.psd.shape().low_exponent()};
  in.cancellation_orders = {alpha(source.first), alpha(source.second)};
  in.cutoffs = {wc, wc};
  in.period = base.duration();
  in.label = "classical (" + std::to_string(source.first.mask) + "," + std::to_string(source.second.mask) + ")";
  return in;
}

PlateauReport check_quantum(const QuantumPlateauInput& input) {
  if (!(input.period > 0)) throw InvalidArgument("base period must be positive");
  if (!std::isfinite(input.minus_exponent)) throw InvalidArgument("spectral exponents must be finite");
  PlateauReport out;
  for (const auto& p : input.plus) out.append(check_classical(p));
  for (const auto& pr : input.pairs) {
    const std::string tag = "pair (" + std::to_string(pr.l) + "," + std::to_string(pr.lp) + ")";
    out.conditions.push_back(
        strict_greater(tag + ": s- + alpha_l + alpha_l' > 1", input.minus_exponent + pr.alpha_l + pr.alpha_lp, 1.0));
    if (!pr.displacement_antisymmetric) out.m_linear_divergence = true;
  }
  if (!input.pairs.empty()) {
    out.conditions.push_back(strict_greater("w_c,- T_p < 2 pi", 2.0 * kPi, input.minus_cutoff * input.period));
  }
  return out;
}

QuantumPlateauInput quantum_plateau_input(const PulseSequence& base, const SpinBoson& bath) {
  if (bath.num_qubits() != base.num_qubits()) throw InvalidArgument("bath and sequence qubit counts differ");
  const FilterBundle ff = FilterBundle::direct(base);
  const int n = base.num_qubits();
  auto alpha = [&](int q) {
    const auto o = ff.g1_order(Channel::qubit(q));
    return o ? static_cast<double>(*o) : kNoOrder;
  };
  QuantumPlateauInput in;
  in.period = base.duration();
  in.minus_exponent = bath.minus_metadata().exponent;
  in.minus_cutoff = bath.density().cutoff.omega_c;
  const double sp = bath.plus_metadata().exponent;
  const double wc = bath.density().cutoff.omega_c;
  for (int l = 0; l < n; ++l) {
    for (int lp = l; lp < n; ++lp) {
      if (!bath.correlated(l, lp)) continue;
      PlateauConditionInput c;
      c.order = 2;
      c.exponents = {sp};
      c.cancellation_orders = {alpha(l), alpha(lp)};
      c.cutoffs = {wc, wc};
      c.period = in.period;
      c.label = "S+ (" + std::to_string(l) + "," + std::to_string(lp) + ")";
      in.plus.push_back(std::move(c));
      if (lp != l) {
        in.pairs.push_back({l, lp, alpha(l), alpha(lp),
                            check_symmetry(base, SymmetryKind::displacement, l, lp)});
      }
    }
  }
  return in;
}

AsymptoticCoherence plateau_value(const PulseSequence& base, const NoiseModel& noise) {
  const FilterBundle ff = FilterBundle::direct(base);
  const int n = base.num_qubits();
  const double tp = base.duration();
  bool truncated = false;
  std::vector<DecayTerm> decay;
  std::vector<PhaseTerm> phase;

  for (const auto& src : noise.classical) {
    DecayTerm term{src.first, src.second, 0.0, 0.0};
    const ClassicalPSD& psd = src.psd;
    if (psd.static_variance() > 0) {
      const auto oc = ff.g1_order(src.first);
      const auto od = ff.g1_order(src.second);
      if (oc && od && *oc == 0 && *od == 0) {
        throw DivergenceError("static noise on a channel with G1(0) != 0 grows as M^2", 0.0);
      }
    }
    if (!psd.continuous_zero()) {
      const Cell cell = comb_cell(psd.support(), psd.shape().cutoff.kind, tp);
      truncated = truncated || cell.truncated;
      const Series p = ff.transform_series(src.first) * ff.transform_series(src.second).reflected();
      if (const auto o = low_frequency_order(p, tp, 0.0, true)) {
        const double expo = *o + psd.shape().low_exponent() - 2.0;
        auto f = [&](double w) {
          return psd(w) * std::real(ff.g1(src.first, w) * ff.g1(src.second, -w)) * fejer_limit(w * tp) / kPi;
        };
        const auto r = integrate_panels(f, cell.upper, comb_options(tp, 0.0, expo));
        term.k = r.value;
        term.error = r.error;
      }
    }
    decay.push_back(term);
  }

  for (const auto& off : noise.offsets) {
    const auto o = ff.g1_order(off.channel);
    if (off.value != 0.0 && o && *o == 0) {
      throw DivergenceError("static offset on a channel with G1(0) != 0 grows as M", 0.0);
    }
  }

  if (noise.quantum && noise.quantum->density().amplitude != 0.0) {
    const SpinBoson& bath = *noise.quantum;
    if (bath.num_qubits() != n) throw InvalidArgument("bath and sequence qubit counts differ");
    const Cell cell = comb_cell(bath.support(), bath.density().cutoff.kind, tp);
    truncated = truncated || cell.truncated;
    const double s_plus = bath.plus_metadata().exponent;
    const double s_minus = bath.minus_metadata().exponent;
    std::optional<FilterBundle> half;

    for (int l = 0; l < n; ++l) {
      for (int lp = l; lp < n; ++lp) {
        if (lp != l && !bath.correlated(l, lp)) continue;
        const double t = l == lp ? 0.0 : bath.transit(l, lp);
        const double kappa = -bath.transit_sign() * t;
        const Channel cl = Channel::qubit(l);
        const Channel clp = Channel::qubit(lp);
        const Series p = ff.transform_series(cl).reflected() * ff.transform_series(clp);

        DecayTerm dk{cl, clp, 0.0, 0.0};
        if (const auto o = low_frequency_order(p, tp, kappa, true)) {
          auto f = [&](double w) {
            return std::real(bath.s_plus(l, lp, w) * std::conj(ff.transform(cl, w)) * ff.transform(clp, w)) *
                   fejer_limit(w * tp) / kPi;
          };
          const auto r = integrate_panels(f, cell.upper, comb_options(tp, t, *o + s_plus - 2.0));
          dk.k = r.value;
          dk.error = r.error;
        }
        decay.push_back(dk);
        if (lp == l) continue;

        PhaseTerm ph;
        ph.l = l;
        ph.lp = lp;
        if (const auto o = low_frequency_order(p, tp, kappa, false)) {
          auto f = [&](double w) {
            return std::imag(bath.s_minus(l, lp, w) * std::conj(ff.transform(cl, w)) * ff.transform(clp, w)) *
                   fejer_limit(w * tp);
          };
          const auto r = integrate_panels(f, cell.upper, comb_options(tp, t, *o + s_minus - 2.0));
          ph.phi1 = -2.0 / kPi * r.value;
          ph.error += 2.0 / kPi * r.error;
        }

        if (!check_symmetry(base, SymmetryKind::displacement, l, lp)) {
          throw DivergenceError("pair (" + std::to_string(l) + "," + std::to_string(lp) +
                                    ") lacks displacement anti-symmetry: induced phase grows linearly in M",
                                0.0);
        }
        const int sl = *qubit_parity(base, l, SymmetryKind::displacement);
        if (!half) half = FilterBundle::direct(first_half(base));
        const FilterBundle& hb = *half;
        // S- G2(-w, w, M T_p) = H(w) sin(M w T_p) / sin(w T_p / 2)
        auto h = [&](double w) {
          return Complex(0.0, -0.5 * sl) * bath.s_minus(l, lp, w) * hb.transform(cl, -w) * hb.transform(clp, w);
        };
        const auto ol = hb.g1_order(cl);
        const auto olp = hb.g1_order(clp);
        double h0 = 0.0;
        if (ol && olp) {
          const double p0 = s_minus + *ol + *olp;
          if (p0 < 0) {
            throw DivergenceError("induced phase diverges: s- + alpha_l + alpha_l' = " + fmt(p0 + 1.0), p0 + 1.0);
          }
          if (p0 == 0) h0 = std::real(h(1e-9 / tp));
        }
        double comb = h0;
        const double spacing = 2.0 * kPi / tp;
        for (int r = 1; r * spacing < bath.support(); ++r) {
          comb += 2.0 * (r % 2 ? -1.0 : 1.0) * std::real(h(r * spacing));
        }
        ph.phi0 = -4.0 / tp * comb;
        phase.push_back(ph);
      }
    }
  }
  return {CoherenceFactors(n, std::move(decay), std::move(phase)), truncated};
}

std::vector<std::vector<double>> sample_real_states(int num_qubits, std::size_t count, std::uint64_t seed) {
  if (num_qubits < 1 || num_qubits > 12) throw InvalidArgument("qubit count out of range");
  const std::size_t d = std::size_t{1} << num_qubits;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> polar(0.0, kPi);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> c(d);
    double carry = 1.0;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      const double angle = j + 2 == d ? azimuth(rng) : polar(rng);
      c[j] = carry * std::cos(angle);
      carry *= std::sin(angle);
    }
    c[d - 1] = carry;
    out.push_back(std::move(c));
  }
  return out;
}

RepetitionScan scan_fidelity(const PulseSequence& base, const NoiseModel& noise, const std::vector<int>& repetitions,
                             const std::vector<std::vector<double>>& states, unsigned threads,
                             std::optional<int> asymptotic_above) {
  if (states.empty()) throw InvalidArgument("state ensemble is empty");
  if (!std::is_sorted(repetitions.begin(), repetitions.end())) throw InvalidArgument("M values must ascend");
  if (!repetitions.empty() && repetitions.front() < 0) throw InvalidArgument("M must be >= 0");
  const std::size_t d = std::size_t{1} << base.num_qubits();
  for (const auto& s : states) {
    if (s.size() != d) throw InvalidArgument("state dimension does not match the sequence");
  }

  // Per state: weights c_a^2 c_b^2.
  std::vector<std::vector<double>> weights;
  weights.reserve(states.size());
  std::vector<double> purity(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<double> w(d * d);
    double norm = 0;
    for (double c : states[i]) norm += c * c;
    if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("state must be normalized");
    double p = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) w[a * d + b] = states[i][a] * states[i][a] * states[i][b] * states[i][b];
      p += w[a * d + a];
    }
    purity[i] = p;
    weights.push_back(std::move(w));
  }

  RepetitionScan scan;
  scan.dephased_loss = 1.0 - pairwise_sum(purity) / static_cast<double>(states.size());
  scan.rows.resize(repetitions.size());
  const FilterBundle ff = FilterBundle::direct(base);

  parallel_for(
      repetitions.size(),
      [&](std::size_t i) {
        ScanRow& row = scan.rows[i];
        const int m = repetitions[i];
        row.repetitions = m;
        row.total_time = m * base.duration();
        if (m == 0) return;
        std::optional<CoherenceFactors> cf;
        try {
          if (asymptotic_above && m > *asymptotic_above) {
            row.asymptotic = true;
            cf = plateau_value(base, noise).factors;
          } else {
            cf = assemble_coherence(FilterBundle::repeated(ff, m), noise);
          }
        } catch (const DivergenceError&) {
          row.diverged = true;
          row.mean_fidelity = std::numeric_limits<double>::quiet_NaN();
          row.stderr = std::numeric_limits<double>::quiet_NaN();
          return;
        }
        std::vector<double> f(weights.size());
        for (std::size_t s = 0; s < weights.size(); ++s) f[s] = fidelity_from_weights(weights[s], *cf);
        const double count = static_cast<double>(f.size());
        const double mean = pairwise_sum(f) / count;
        std::vector<double> dev(f.size());
        for (std::size_t s = 0; s < f.size(); ++s) dev[s] = (f[s] - mean) * (f[s] - mean);
        row.mean_fidelity = mean;
        row.stderr = f.size() > 1 ? std::sqrt(pairwise_sum(dev) / (count - 1) / count) : 0.0;
      },
      threads);
  return scan;
}

std::vector<int> doubling_grid(int max_m) {
  if (max_m < 1) throw InvalidArgument("max M must be >= 1");
  std::vector<int> out;
  for (long m = 1; m <= max_m; m *= 2) out.push_back(static_cast<int>(m));
  return out;
}

PlateauDetection detect_plateau(const RepetitionScan& scan, double tolerance, int doublings) {
  if (doublings < 1) throw InvalidArgument("need at least one doubling");
  PlateauDetection out;
  for (const auto& r : scan.rows) out.diverged = out.diverged || r.diverged;
  const auto& rows = scan.rows;
  const auto need = static_cast<std::size_t>(doublings) + 1;
  if (rows.size() < need) throw InvalidArgument("scan has too few rows for the requested doublings");
  if (out.diverged) return out;
  bool flat = true;
  for (std::size_t i = rows.size() - doublings; i < rows.size(); ++i) {
    if (rows[i].repetitions != 2 * rows[i - 1].repetitions) {
      throw InvalidArgument("plateau detection needs a doubling grid at the tail");
    }
    const double change = std::abs(rows[i].mean_fidelity - rows[i - 1].mean_fidelity);
    if (!(change < tolerance)) flat = false;
    out.last_change = change;
  }
  const double final_loss = 1.0 - rows.back().mean_fidelity;
  out.at_dephased_floor = !(final_loss < scan.dephased_loss - tolerance);
  out.plateau = flat && !out.at_dephased_floor;
  return out;
}

FilterBundle two_stage(const FilterBundle& generation, int m_gen, const FilterBundle& storage, int m_store) {
  if (m_gen < 0 || m_store < 0) throw InvalidArgument("repetition counts must be >= 0");
  if (m_gen == 0 && m_store == 0) throw InvalidArgument("at least one stage must be present");
  if (generation.num_qubits() != storage.num_qubits()) throw InvalidArgument("stages act on different qubits");
  if (m_gen == 0) return FilterBundle::repeated(storage, m_store);
  if (m_store == 0) return FilterBundle::repeated(generation, m_gen);
  return FilterBundle::concatenated(FilterBundle::repeated(generation, m_gen),
                                    FilterBundle::repeated(storage, m_store));
}

}  // namespace ddff
