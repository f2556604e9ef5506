// One PASS/FAIL line per acceptance criterion. Exits 0 once every criterion
// has been evaluated; a FAIL is a reported result, not a crash.

#include "ddff/dynamics.hpp"
#include "ddff/errors.hpp"
#include "ddff/filter.hpp"
#include "ddff/fit.hpp"
#include "ddff/mc_oracle.hpp"
#include "ddff/plateau.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ddff;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Pinned tolerances.
constexpr double kFreeTol = 1e-10;          // closed forms, relative
constexpr double kFreeBudget = 1.0;         // seconds
constexpr double kCddOneTol = 1e-9;         // relative
constexpr double kFactorizationTol = 1e-10;
constexpr double kImaginaryTol = 1e-12;     // max |Re G2| / max |G2|
constexpr double kSlopeTol = 0.1;
constexpr double kLinearTol = 1e-10;        // |m_linear| / Tp^2
constexpr double kLinearNonzero = 1e-6;
constexpr double kPlateauTol = 1e-3;        // loss change per doubling
constexpr int kPlateauMaxM = 1024;
constexpr double kPlateauBudget = 600.0;    // seconds
constexpr double kMcSigmas = 3.0;
constexpr std::size_t kMcTrajectories = 10000;

struct Result {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// x - sin x and 1 - cos x without cancellation.
double x_minus_sin(double x) {
  if (std::abs(x) > 0.5) return x - std::sin(x);
  double term = x * x * x / 6.0;
  double sum = 0;
  for (int k = 0; k < 12; ++k) {
    sum += term;
    term *= -x * x / ((2.0 * k + 4) * (2.0 * k + 5));
  }
  return sum;
}
double one_minus_cos(double x) { return 2.0 * std::sin(x / 2) * std::sin(x / 2); }

Result free_evolution() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> log_t(-3.0, 3.0);
  std::uniform_real_distribution<double> log_wt(-2.0, 3.0);
  double worst_f1 = 0, worst_f2 = 0, worst_g2 = 0;
  for (int i = 0; i < 1000; ++i) {
    const double T = std::pow(10.0, log_t(rng));
    const double w = std::pow(10.0, log_wt(rng)) / T * (i % 2 ? 1.0 : -1.0);
    const double x = w * T;
    const SwitchingProfile p(PulseSequence::free(2, T));
    const FilterBundle b = FilterBundle::direct(PulseSequence::free(2, T));
    const double ref1 = 2.0 * one_minus_cos(x) / (w * w);
    const double ref2 = -x_minus_sin(x) / (w * w);
    // |F1|^2 from the raw closed form and G1 G1(-w) through the bundle.
    const double a = std::norm(f1(p, 0, w));
    const Complex c = b.g1(Channel::qubit(0), w) * b.g1(Channel::qubit(1), -w);
    worst_f1 = std::max({worst_f1, std::abs(a - ref1) / ref1, std::abs(c - ref1) / ref1});
    // Im F2(w, -w) = -(wT - sin wT) / w^2; Re F2(w, -w) = -(1 - cos wT) / w^2.
    const Complex f = f2(p, 0, 1, w, -w);
    worst_f2 = std::max({worst_f2, std::abs(f.imag() - ref2) / std::abs(ref2),
                         std::abs(f.real() + ref1 / 2) / (ref1 / 2)});
    // The closed form -(wT - sin wT)/w^2 equals G2 at (-w, w) in the (i/2)(F2 - F2^T) convention.
    const Complex g = b.g2(Channel::qubit(0), Channel::qubit(1), -w);
    worst_g2 = std::max(worst_g2, std::abs(g - ref2) / std::abs(ref2));
  }
  const double dt = seconds_since(t0);
  Result r;
  r.pass = worst_f1 < kFreeTol && worst_f2 < kFreeTol && worst_g2 < kFreeTol && dt < kFreeBudget;
  r.detail = fmt("max rel err f1 %.2e, f2 %.2e, g2 %.2e over 1000 (w,T); %.3f s", worst_f1, worst_f2, worst_g2, dt);
  return r;
}

Result nonselective_limit() {
  double worst = 0;
  int cases = 0;
  for (int a = 1; a <= 6; ++a) {
    for (const bool udd : {false, true}) {
      for (double T : {0.3, 1.0, 1.7, 25.0}) {
        const auto seq = nonselective(udd ? build_udd(a, T) : build_cdd(a, T), 2);
        const double g = FilterBundle::direct(seq).g1(Channel::pair(0, 1), 0.0).real();
        worst = std::max(worst, std::abs(g - 2 * T) / (2 * T));
        ++cases;
      }
    }
  }
  Result r;
  // exact up to the last bit of the duration product
  r.pass = worst <= 4 * std::numeric_limits<double>::epsilon();
  r.detail = fmt("max |G1_Z1Z2(0,T) - 2T| / 2T = %.2e over %d CDD/UDD sequences, alpha <= 6", worst, cases);
  return r;
}

Result cdd_one_closed_form() {
  const double T = 1.0;
  double worst_display = 0, worst_half = 0;
  for (int M : {1, 3, 5, 11}) {
    const auto rep = FilterBundle::repeated(FilterBundle::direct(nonselective(build_cdd(1, T / M), 2)), M);
    for (int i = 1; i <= 100; ++i) {
      const double w = 0.37 * i;
      if (std::abs(std::cos(w * T / (4.0 * M))) < 1e-6) continue;
      const double t = std::tan(w * T / (4.0 * M));
      const double display = 2.0 * std::abs(w * T - t * (std::sin(w * T) * t + 4.0 * M)) / (w * w);
      const double got = std::abs(rep.g2(Channel::qubit(0), Channel::qubit(1), w));
      worst_display = std::max(worst_display, std::abs(got - display) / display);
      worst_half = std::max(worst_half, std::abs(got - display / 2) / (display / 2));
    }
  }
  bool monotone = true;
  double prev = kInf;
  for (int M = 1; M <= 41; M += 2) {
    const auto b = FilterBundle::repeated(FilterBundle::direct(nonselective(build_cdd(1, T / M), 2)), M);
    const double v = std::abs(b.g2(Channel::qubit(0), Channel::qubit(1), 0.05));
    monotone = monotone && v < prev;
    prev = v;
  }
  Result r;
  r.pass = worst_display < kCddOneTol && monotone;
  r.detail = fmt("max rel err vs displayed formula %.2e (vs half of it %.2e); monotone suppression at wT=0.05: %s",
                 worst_display, worst_half, monotone ? "yes" : "no");
  if (!r.pass) r.detail += "; displayed prefactor 2 is twice the defining double integral";
  return r;
}

Result factorization() {
  std::vector<double> ws;
  for (int i = 1; i <= 50; ++i) ws.push_back(0.29 * i);
  double worst_res = 0, worst_imag = 0;
  std::string real_cases;
  for (int a1 = 1; a1 <= 4; ++a1) {
    for (int a2 = 1; a2 <= 4; ++a2) {
      const auto seq = build_displacement("cdd", std::vector<int>{a1, a2}, 1.0);
      worst_res = std::max({worst_res, verify_factorization(seq, 0, 1, ws), verify_factorization(seq, 1, 0, ws)});
      const auto b = FilterBundle::direct(seq);
      // relative to the largest |G2| on the grid, so zero crossings do not count
      double re = 0, mag = 0;
      for (double w : ws) {
        const Complex g = b.g2(Channel::qubit(0), Channel::qubit(1), w);
        re = std::max(re, std::abs(g.real()));
        mag = std::max(mag, std::abs(g));
      }
      const double off = re / mag;
      worst_imag = std::max(worst_imag, off);
      if (off > kImaginaryTol) real_cases += fmt(" (%d,%d)", a1, a2);
    }
  }
  Result r;
  r.pass = worst_res < kFactorizationTol && worst_imag < kImaginaryTol;
  r.detail = fmt("max factorization residual %.2e; max |Re G2| / max |G2| %.2e", worst_res, worst_imag);
  if (!real_cases.empty()) r.detail += "; not purely imaginary (odd alpha sum, G2 real):" + real_cases;
  return r;
}

// Fitted exponent of |G2(w,-w)| on [1e-3/T, 1e-1/T].
double g2_slope(const PulseSequence& seq) {
  const auto b = FilterBundle::direct(seq);
  const double T = seq.duration();
  return estimate_order([&](double w) { return std::abs(b.g2(Channel::qubit(0), Channel::qubit(1), w)); }, 1e-3 / T,
                        1e-1 / T)
      .exponent;
}

PulseSequence mirror(int a1, int a2, double T) {
  const std::vector<PulseSequence> v{build_cdd(a1, T), build_cdd(a2, T)};
  return product(v);
}

// 2 pi |phi0| = |int I(w,T) dw| under the Gaussian-cutoff w^-2 bath; inf when
// the integral diverges at w = 0.
double induced_phase_integral(const PulseSequence& seq, double omega_ir) {
  const double wc = 2 * kPi * 1e4;
  const double g = 0.2078 * wc;
  const SpinBoson bath = SpinBoson::two_qubit(PowerLaw{g / kPi, -2.0, Cutoff{wc, CutoffKind::gaussian}, omega_ir},
                                              SpinBoson::kZeroTemperature, 1e-2, -1);
  try {
    return 2 * kPi * std::abs(overlap_phi(FilterBundle::direct(seq), bath, 0, 1).phi0);
  } catch (const DivergenceError&) {
    return kInf;
  }
}

Result table_and_ordering() {
  struct Row {
    std::string name;
    PulseSequence seq;
    int fo;
  };
  const double T = 1.0;
  const std::vector<Row> rows{
      {"free", PulseSequence::free(2, T), 1},
      {"CDD3 x CDD2", mirror(3, 2, T), 0},
      {"CDD5 x CDD4", mirror(5, 4, T), 0},
      {"CDD3 nonselective", nonselective(build_cdd(3, T), 2), 1},
      {"CDD5 nonselective", nonselective(build_cdd(5, T), 2), 1},
      {"CDD^d_{2,1}", build_displacement("cdd", std::vector<int>{2, 1}, T), 4},
      {"CDD^d_{4,4}", build_displacement("cdd", std::vector<int>{4, 4}, T), 8},
      {"NCDD_{2,1}", build_ncdd(std::vector<int>{2, 1}, T), 0},
      {"NCDD_{3,2}", build_ncdd(std::vector<int>{3, 2}, T), 4},
      {"ring-CDD_{1,1}", build_multi_cdd(1, 2, T), 1},
      {"ring-CDD_{2,2}", build_multi_cdd(2, 2, T), 2},
  };
  Result r;
  std::string misses;
  int matched = 0;
  for (const auto& row : rows) {
    const double s = g2_slope(row.seq);
    // CO = FO + 1 for the second-order filter function.
    const bool ok = std::abs(s - row.fo) <= kSlopeTol;
    if (ok) ++matched;
    else misses += fmt(" %s fit %.3f (CO,FO)=(%d,%d) vs table (%d,%d);", row.name.c_str(), s,
                       static_cast<int>(std::lround(s)) + 1, static_cast<int>(std::lround(s)), row.fo + 1, row.fo);
  }
  r.pass = matched == static_cast<int>(rows.size());
  r.detail = fmt("Table: %d/%zu rows within +-%.1f;", matched, rows.size(), kSlopeTol) + misses;

  // Fig. 4: the displacement sequence has the smallest |int I| at T1 and T2.
  struct Panel {
    double T;
    std::vector<std::pair<std::string, PulseSequence>> seqs;
  };
  const double T1 = 8e-6, T2 = 32e-6;
  const std::vector<Panel> panels{
      {T1,
       {{"CDD3xCDD2", mirror(3, 2, T1)},
        {"CDD3xCDD3", mirror(3, 3, T1)},
        {"CDD^d_{2,1}", build_displacement("cdd", std::vector<int>{2, 1}, T1)},
        {"NCDD_{2,1}", build_ncdd(std::vector<int>{2, 1}, T1)},
        {"ring-CDD_{1,1}", build_multi_cdd(1, 2, T1)}}},
      {T2,
       {{"CDD5xCDD4", mirror(5, 4, T2)},
        {"CDD5xCDD5", mirror(5, 5, T2)},
        {"CDD^d_{4,4}", build_displacement("cdd", std::vector<int>{4, 4}, T2)},
        {"NCDD_{3,2}", build_ncdd(std::vector<int>{3, 2}, T2)},
        {"ring-CDD_{2,2}", build_multi_cdd(2, 2, T2)}}}};
  bool ordering = true;
  std::string values;
  // The bare w^-2 spectrum, then with an infrared regulator w_ir = 2 pi rad/s.
  for (double omega_ir : {0.0, 2 * kPi}) {
    for (const auto& panel : panels) {
      values += fmt(" [T=%gus%s]", panel.T * 1e6, omega_ir > 0 ? ",w_ir" : "");
      double disp = kInf, best_other = kInf;
      for (const auto& [name, seq] : panel.seqs) {
        const double v = induced_phase_integral(seq, omega_ir);
        values += " " + name + "=" + (std::isinf(v) ? std::string("div") : fmt("%.2e", v));
        if (name.rfind("CDD^d", 0) == 0) disp = v;
        else best_other = std::min(best_other, v);
      }
      ordering = ordering && std::isfinite(disp) && disp < best_other;
    }
  }
  r.pass = r.pass && ordering;
  r.detail += fmt(" Fig.4 ordering (CDD^d smallest): %s;", ordering ? "yes" : "no") + values;
  return r;
}

Result m_linear_cancellation() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> wdist(0.05, 50.0);
  const std::vector<PulseSequence> bases{
      build_displacement("cdd", std::vector<int>{1, 1}, 1.0), build_displacement("cdd", std::vector<int>{2, 3}, 1.0),
      build_displacement("udd", std::vector<int>{2, 3}, 1.0), build_displacement("cdd", std::vector<int>{1, 2, 1}, 1.0),
      build_displacement("udd", std::vector<int>{2, 1, 3}, 1.0)};
  double worst = 0;
  for (const auto& base : bases) {
    const auto b = FilterBundle::direct(base);
    const double Tp = base.duration();
    for (int i = 0; i < 64; ++i) {
      const double w = wdist(rng);
      for (int l = 0; l < base.num_qubits(); ++l) {
        for (int lp = l + 1; lp < base.num_qubits(); ++lp) {
          const auto s = g2_repeat_split(b, 10, Channel::qubit(l), Channel::qubit(lp), w);
          worst = std::max(worst, std::abs(s.m_linear) / (Tp * Tp));
        }
      }
    }
  }
  double smallest_nudd = kInf;
  for (const auto& orders : {std::vector<int>{2, 2}, std::vector<int>{3, 2}, std::vector<int>{2, 2, 2}}) {
    const auto b = FilterBundle::direct(build_nudd(orders, 1.0));
    for (double w : {0.7, 3.1, 11.0}) {
      smallest_nudd = std::min(smallest_nudd,
                               std::abs(g2_repeat_split(b, 10, Channel::qubit(0), Channel::qubit(1), w).m_linear));
    }
  }
  Result r;
  r.pass = worst < kLinearTol && smallest_nudd > kLinearNonzero;
  r.detail = fmt("displacement bases N=2,3: max |m_linear|/Tp^2 = %.2e; NUDD min |m_linear| = %.2e", worst,
                 smallest_nudd);
  return r;
}

struct ScanOutcome {
  PlateauDetection detection;
  double final_loss = 0;
};

ScanOutcome scan(const PulseSequence& unit, double tau, const NoiseModel& noise,
                 const std::vector<std::vector<double>>& states) {
  const auto base = unit.with_duration(tau / pulse_stats(unit).tau_min);
  const auto s = scan_fidelity(base, noise, doubling_grid(kPlateauMaxM), states);
  return {detect_plateau(s, kPlateauTol), 1.0 - s.rows.back().mean_fidelity};
}

Result plateau_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const double wc = 2 * kPi * 1e4;
  auto model = [&](double t12) {
    NoiseModel m;
    m.quantum = SpinBoson::two_qubit(PowerLaw{wc, -2.0, Cutoff{wc, CutoffKind::hard}}, SpinBoson::kZeroTemperature,
                                     t12, -1);
    return m;
  };
  const auto states = sample_real_states(2, 1000, 2024);
  Result r;
  std::string d = "Fig.6:";
  std::vector<double> losses;
  bool ud12 = true, ud11 = true;
  for (const auto& orders : {std::vector<int>{1, 2}, std::vector<int>{1, 1}}) {
    const auto unit = build_displacement("cdd", orders, 1.0);
    for (double tau : {0.2e-6, 1e-6, 5e-6}) {
      const auto o = scan(unit, tau, model(1e-2), states);
      const bool flat = o.detection.plateau;
      if (orders[1] == 2) {
        ud12 = ud12 && flat;
        losses.push_back(o.final_loss);
        d += fmt(" Ud12 tau=%.1fus %s loss %.2e;", tau * 1e6, flat ? "plateau" : "none", o.final_loss);
      } else {
        ud11 = ud11 && !flat;
        d += fmt(" Ud11 tau=%.1fus %s%s;", tau * 1e6, flat ? "plateau" : "none",
                 o.detection.diverged ? " (diverged)" : "");
      }
    }
  }
  const bool degrade = std::is_sorted(losses.begin(), losses.end()) &&
                       std::adjacent_find(losses.begin(), losses.end()) == losses.end();
  d += fmt(" degrades with tau: %s.", degrade ? "yes" : "no");

  const double tau = 1e-6;
  const std::vector<PulseSequence> mirror_blocks{build_udd(2, 1.0), build_udd(3, 1.0)};
  const std::vector<std::pair<std::string, PulseSequence>> protocols{
      {"nonselective", nonselective(build_udd(2, 1.0), 2)},
      {"mirror", product(mirror_blocks)},
      {"displacement", build_displacement("cdd", std::vector<int>{1, 2}, 1.0)}};
  bool fig7 = true;
  d += " Fig.7:";
  for (double t12 : {1e-2, kInf}) {
    for (const auto& [name, unit] : protocols) {
      const auto o = scan(unit, tau, model(t12), states);
      const bool expect = std::isinf(t12) || name == "displacement";
      fig7 = fig7 && o.detection.plateau == expect;
      d += fmt(" %s t12=%g %s;", name.c_str(), t12, o.detection.plateau ? "plateau" : "none");
    }
  }
  const double dt = seconds_since(t0);
  r.pass = ud12 && ud11 && degrade && fig7 && dt < kPlateauBudget;
  r.detail = d + fmt(" runtime %.0f s", dt);
  return r;
}

Result mc_agreement() {
  const double T = 1.0;
  const double var = 0.1;
  const std::vector<std::pair<std::string, PulseSequence>> seqs{
      {"free", PulseSequence::free(1, T)}, {"CDD1", build_cdd(1, T)}, {"UDD2", build_udd(2, T)}};
  const std::vector<std::pair<std::string, ClassicalPSD>> spectra{
      {"static", ClassicalPSD::static_only(var)},
      {"flat", ClassicalPSD(PowerLaw{0.1, 0.0, Cutoff{20.0, CutoffKind::hard}})},
      {"sub-ohmic", ClassicalPSD(PowerLaw{0.02, -2.0, Cutoff{20.0, CutoffKind::hard}, 1.0})}};
  Result r;
  double worst = 0;
  std::uint64_t seed = 500;
  for (const auto& [sn, seq] : seqs) {
    for (const auto& [pn, psd] : spectra) {
      NoiseModel m;
      m.classical.push_back({Channel::qubit(0), Channel::qubit(0), psd});
      const double chi = assemble_coherence(FilterBundle::direct(seq), m).chi(0, 1);
      const auto mc = mc_coherence(seq, {McSource{{Channel::qubit(0)}, psd}}, TrajectoryConfig{T, kMcTrajectories, ++seed},
                                   0, 1);
      const double diff = std::abs(mc.estimate - std::exp(-chi));
      // Echoed static noise is deterministic: zero spread, exact agreement.
      const double sig = mc.stderr > 0 ? diff / mc.stderr : (diff < 1e-12 ? 0.0 : kInf);
      worst = std::max(worst, sig);
      if (sig > kMcSigmas) r.detail += fmt(" %s/%s off by %.1f sigma;", sn.c_str(), pn.c_str(), sig);
      if (sn == "free" && pn == "static") {
        const double exact = std::exp(-2 * var * T * T);
        const double sig_exact = diff / mc.stderr;
        const double formula = std::abs(std::exp(-chi) - exact);
        r.pass = r.pass && sig_exact <= kMcSigmas && std::abs(mc.estimate - exact) <= kMcSigmas * mc.stderr &&
                 formula < 1e-14;
        r.detail += fmt(" static free: analytic - e^{-2 s^2 T^2} = %.1e, MC within %.2f sigma;", formula,
                        std::abs(mc.estimate - exact) / mc.stderr);
      }
    }
  }
  r.pass = r.pass && worst <= kMcSigmas;
  r.detail = fmt("9 cases x %zu trajectories, worst deviation %.2f sigma;", kMcTrajectories, worst) + r.detail;
  return r;
}

Result resource_scaling() {
  Result r;
  std::string d;
  bool count_ok = true, tau_ok = true;
  std::size_t worst_excess = 0;
  for (const std::string family : {"cdd", "udd"}) {
    for (int n : {2, 3}) {
      for (int a = 1; a <= 4; ++a) {
        std::vector<int> orders(static_cast<std::size_t>(n), a);
        orders[0] = a + (n == 3 ? 1 : 0);  // one unequal order as well
        std::size_t bound = 0;
        for (int o : orders) bound += pulse_stats(family == "cdd" ? build_cdd(o, 1.0) : build_udd(o, 1.0)).total;
        bound <<= (n - 1);
        const PulseStats st = pulse_stats(build_displacement(family, orders, 1.0));
        // Pulses applied at one instant count once, as in the nested-sequence totals.
        count_ok = count_ok && st.instants <= bound;
        if (st.total > bound) worst_excess = std::max(worst_excess, st.total - bound);
      }
    }
  }
  d += fmt(" per-qubit pulse sum exceeds the bound by up to %zu (conjugating X pulses);", worst_excess);
  for (int n : {2, 3}) {
    for (int a = 2; a <= 5; ++a) {
      const std::vector<int> orders(static_cast<std::size_t>(n), a);
      const double disp = pulse_stats(build_displacement("udd", orders, 1.0)).tau_min;
      const double nudd = pulse_stats(build_nudd(orders, 1.0)).tau_min;
      tau_ok = tau_ok && disp > nudd;
      d += fmt(" N=%d a=%d %.2f;", n, a, disp / nudd);
    }
  }
  r.pass = count_ok && tau_ok;
  r.detail = fmt("pulse instants n_P^d <= 2^(N-1) sum n(alpha) for CDD/UDD blocks N=2,3: %s;", count_ok ? "yes" : "no") +
             d.substr(0, d.find(';') + 1) + " tau_min(U^d UDD) / tau_min(NUDD):" + d.substr(d.find(';') + 1);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string report_path = argc > 1 ? argv[1] : "acceptance_report.txt";
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"closed-form free evolution", free_evolution},
      {"non-selective limit G1(0,T) = 2T", nonselective_limit},
      {"CDD1^M closed form and suppression", cdd_one_closed_form},
      {"factorization and imaginary G2", factorization},
      {"order fits (Table 1) and Fig. 4 ordering", table_and_ordering},
      {"M-linear cancellation", m_linear_cancellation},
      {"plateau reproduction (Fig. 6/7)", plateau_reproduction},
      {"MC oracle agreement", mc_agreement},
      {"resource scaling", resource_scaling},
  };
  std::ostringstream all;
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    passed += res.pass;
    const std::string line =
        fmt("%s [%zu] %s: ", res.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str()) + res.detail;
    std::cout << line << std::endl;
    all << line << '\n';
  }
  const std::string summary = fmt("%d/%zu criteria passed", passed, criteria.size());
  std::cout << summary << std::endl;
  all << summary << '\n';
  std::ofstream(report_path) << all.str();
  return 0;
}
