#include "commands.hpp"

#include "ddff/dynamics.hpp"
#include "ddff/errors.hpp"
#include "ddff/fit.hpp"
#include "ddff/parallel.hpp"
#include "ddff/plateau.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

namespace ddff::cli {

namespace {

using Complex = std::complex<double>;

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(std::uint32_t v) { return std::to_string(v); }

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const json& sequence_spec(const Context& ctx) { return require(ctx.config, "sequence"); }

FilterBundle bundle_for(const PulseSequence& base, int m) {
  if (m < 1) throw InvalidArgument("repetition count must be >= 1");
  const FilterBundle direct = FilterBundle::direct(base);
  return m == 1 ? direct : FilterBundle::repeated(direct, m);
}

std::vector<int> repetitions_or_one(const json& cfg) {
  if (!cfg.contains("repetitions")) return {1};
  return parse_repetitions(cfg["repetitions"]);
}

// One filter-function query: g1 on a channel or g2 on a channel pair.
struct Query {
  std::string kind;
  Channel a;
  Channel b;
  std::string label;
};

Channel query_channel(const json& j, int n) {
  std::vector<int> qs;
  if (j.is_number_integer()) qs.push_back(j.get<int>());
  else for (const auto& v : j) qs.push_back(v.get<int>());
  for (int q : qs) {
    if (q < 0 || q >= n) throw InvalidArgument("query qubit out of range");
  }
  if (qs.size() == 1) return Channel::qubit(qs[0]);
  if (qs.size() == 2 && qs[0] != qs[1]) return Channel::pair(qs[0], qs[1]);
  throw InvalidArgument("a channel lists one qubit or two distinct qubits");
}

std::vector<Query> parse_queries(const json& cfg, int n) {
  std::vector<Query> out;
  if (!cfg.contains("queries")) {
    for (int q = 0; q < n; ++q) out.push_back({"g1", Channel::qubit(q), Channel::qubit(q), ""});
    for (int q = 0; q < n; ++q) {
      for (int r = q + 1; r < n; ++r) {
        out.push_back({"g1", Channel::pair(q, r), Channel::pair(q, r), ""});
        out.push_back({"g2", Channel::qubit(q), Channel::qubit(r), ""});
      }
    }
  } else {
    for (const auto& j : cfg["queries"]) {
      const std::string kind = require(j, "kind").get<std::string>();
      if (kind == "g1" || kind == "transform") {
        const Channel c = query_channel(require(j, "channel"), n);
        out.push_back({kind, c, c, ""});
      } else if (kind == "g2") {
        const json& cs = require(j, "channels");
        if (!cs.is_array() || cs.size() != 2) throw InvalidArgument("g2 query needs two channels");
        out.push_back({kind, query_channel(cs[0], n), query_channel(cs[1], n), ""});
      } else {
        throw InvalidArgument("unknown query kind: " + kind);
      }
    }
  }
  for (auto& q : out) {
    q.label = q.kind + "[" + channel_label(q.a) + (q.kind == "g2" ? ";" + channel_label(q.b) : "") + "]";
  }
  return out;
}

Complex evaluate(const FilterBundle& ff, const Query& q, double w) {
  if (q.kind == "g1") return ff.g1(q.a, w);
  if (q.kind == "transform") return ff.transform(q.a, w);
  return ff.g2(q.a, q.b, w);
}

std::optional<int> exact_order(const FilterBundle& ff, const Query& q) {
  if (q.kind == "g2") return ff.g2_order(q.a, q.b);
  return ff.g1_order(q.a);
}

// Amplitudes: "state" (numbers or [re, im]), "states": count (random real
// states), or the uniform superposition.
std::vector<std::vector<Complex>> parse_states(const json& cfg, int n, std::uint64_t seed) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::vector<Complex>> out;
  if (cfg.contains("state")) {
    auto& psi = out.emplace_back();
    for (const auto& v : cfg["state"]) {
      if (v.is_array()) {
        if (v.size() != 2) throw InvalidArgument("complex amplitude must be [re, im]");
        psi.emplace_back(number(v[0]), number(v[1]));
      } else {
        psi.emplace_back(number(v), 0.0);
      }
    }
    if (psi.size() != dim) throw InvalidArgument("state dimension must be 2^N");
    double norm = 0;
    for (auto c : psi) norm += std::norm(c);
    if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("state must be normalized");
  } else if (cfg.contains("states")) {
    const int count = require(cfg, "states").get<int>();
    if (count < 1) throw InvalidArgument("\"states\" must be >= 1");
    for (const auto& s : sample_real_states(n, static_cast<std::size_t>(count), seed)) {
      out.emplace_back(s.begin(), s.end());
    }
  } else {
    out.emplace_back(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  }
  return out;
}

struct Mean {
  double mean = 0;
  double stderr = 0;
};

Mean mean_fidelity(const std::vector<std::vector<Complex>>& states, const CoherenceFactors& cf) {
  std::vector<double> f(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) f[i] = fidelity(states[i], cf);
  const double n = static_cast<double>(f.size());
  const double mean = pairwise_sum(f) / n;
  if (f.size() < 2) return {mean, 0.0};
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = (f[i] - mean) * (f[i] - mean);
  return {mean, std::sqrt(pairwise_sum(sq) / (n - 1) / n)};
}

json coherence_json(const CoherenceFactors& cf) {
  json chi = json::object();
  for (const auto& t : cf.decay_terms()) {
    chi[channel_label(t.first) + "|" + channel_label(t.second)] = cf.chi_component(t.first, t.second);
  }
  json phi0 = json::object();
  json phi1 = json::object();
  for (const auto& p : cf.phase_terms()) {
    const std::string key = std::to_string(p.l) + "," + std::to_string(p.lp);
    phi0[key] = p.phi0;
    phi1[key] = p.phi1;
  }
  return {{"chi", chi}, {"phi0", phi0}, {"phi1", phi1}};
}

json report_json(const PlateauReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}});
  json out = {{"pass", r.pass()}, {"conditions", conds}, {"m_linear_divergence", r.m_linear_divergence}};
  if (const auto lim = r.limiting()) out["limiting"] = *lim;
  return out;
}

PlateauReport plateau_conditions(const PulseSequence& base, const NoiseModel& noise) {
  PlateauReport report;
  for (const auto& src : noise.classical) report.append(check_classical(classical_plateau_input(base, src)));
  if (noise.quantum) report.append(check_quantum(quantum_plateau_input(base, *noise.quantum)));
  return report;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Output run_seq(const Context& ctx) {
  const PulseSequence seq = parse_sequence(sequence_spec(ctx));
  CsvWriter csv({"qubit", "index", "fraction", "time"});
  for (int q = 0; q < seq.num_qubits(); ++q) {
    const auto& p = seq.pulses(q);
    for (std::size_t i = 0; i < p.size(); ++i) {
      csv.row({fmt(q), fmt(i), p[i].str(), fmt(p[i].to_double() * seq.duration())});
    }
  }
  const PulseStats st = pulse_stats(seq);
  Output out{csv.str()};
  out.report = {{"num_qubits", seq.num_qubits()},
                {"duration", seq.duration()},
                {"family", seq.label().family},
                {"pulses_per_qubit", st.per_qubit},
                {"total_pulses", st.total},
                {"pulse_instants", st.instants},
                {"nominal_pulses", st.nominal},
                {"tau_min", st.tau_min}};
  return out;
}

Output run_ff_scan(const Context& ctx) {
  const PulseSequence base = parse_sequence(sequence_spec(ctx));
  const auto queries = parse_queries(ctx.config, base.num_qubits());
  const auto grid = parse_grid(require(ctx.config, "omega"));
  const std::string units = ctx.config.value("omega_units", std::string("absolute"));
  if (units != "absolute" && units != "per_period" && units != "per_total")
    throw InvalidArgument("\"omega_units\" must be absolute, per_period or per_total");
  CsvWriter csv({"M", "query", "omega", "re", "im", "abs"});
  for (int m : repetitions_or_one(ctx.config)) {
    const FilterBundle ff = bundle_for(base, m);
    const double scale = units == "absolute" ? 1.0 : units == "per_period" ? base.duration() : ff.duration();
    std::vector<Complex> values(queries.size() * grid.size());
    parallel_for(values.size(), [&](std::size_t k) {
      values[k] = evaluate(ff, queries[k / grid.size()], grid[k % grid.size()] / scale);
    }, ctx.threads);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double w = grid[k % grid.size()] / scale;
      csv.row({fmt(m), queries[k / grid.size()].label, fmt(w), fmt(values[k].real()), fmt(values[k].imag()),
               fmt(std::abs(values[k]))});
    }
  }
  Output out{csv.str()};
  out.report = {{"omega_units", units}, {"period", base.duration()}};
  return out;
}

Output run_order_fit(const Context& ctx) {
  const PulseSequence base = parse_sequence(sequence_spec(ctx));
  const int m = integer_or(ctx.config, "repetitions", 1);
  const FilterBundle ff = bundle_for(base, m);
  const auto queries = parse_queries(ctx.config, base.num_qubits());
  const double t = ff.duration();
  const json window = ctx.config.value("window", json::object());
  const double lo = number_or(window, "min", 1e-3) / t;
  const double hi = number_or(window, "max", 1e-1) / t;
  const int points = integer_or(window, "points", 16);
  CsvWriter csv({"query", "exact_order", "fitted_exponent", "prefactor", "r_squared", "low_confidence"});
  json rows = json::array();
  for (const auto& q : queries) {
    const auto exact = exact_order(ff, q);
    json row = {{"query", q.label}, {"exact_order", exact ? json(*exact) : json(nullptr)}};
    if (!exact) {
      csv.row({q.label, "none", "nan", "nan", "nan", "1"});
    } else {
      const PowerLawFit fit = estimate_order([&](double w) { return std::abs(evaluate(ff, q, w)); }, lo, hi, points);
      csv.row({q.label, fmt(*exact), fmt(fit.exponent), fmt(fit.prefactor), fmt(fit.r_squared),
               fit.low_confidence ? "1" : "0"});
      row["fitted_exponent"] = fit.exponent;
      row["rounded"] = static_cast<int>(std::lround(fit.exponent));
      row["r_squared"] = fit.r_squared;
    }
    rows.push_back(row);
  }
  Output out{csv.str()};
  out.report = {{"window", {lo, hi}}, {"points", points}, {"total_time", t}, {"fits", rows}};
  return out;
}

Output run_dynamics(const Context& ctx) {
  const json& spec = sequence_spec(ctx);
  const PulseSequence base = parse_sequence(spec);
  const NoiseModel noise = parse_noise(ctx.config, base.num_qubits()).model();
  const int m = integer_or(ctx.config, "repetitions", 1);
  const auto states = parse_states(ctx.config, base.num_qubits(), ctx.seed);
  std::vector<double> periods{base.duration()};
  if (ctx.config.contains("durations")) periods = parse_grid(ctx.config["durations"]);

  std::vector<std::optional<CoherenceFactors>> factors(periods.size());
  parallel_for(periods.size(), [&](std::size_t i) {
    factors[i] = assemble_coherence(bundle_for(base.with_duration(periods[i]), m), noise);
  }, ctx.threads);

  CsvWriter csv({"T", "fidelity", "stderr"});
  json rows = json::array();
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const Mean f = mean_fidelity(states, *factors[i]);
    const double total = periods[i] * m;
    csv.row({fmt(total), fmt(f.mean), fmt(f.stderr)});
    json row = coherence_json(*factors[i]);
    row["T"] = total;
    row["fidelity"] = f.mean;
    rows.push_back(row);
  }
  Output out{csv.str()};
  out.report = {{"repetitions", m}, {"states", states.size()}, {"results", rows}};
  return out;
}

Output run_plateau_scan(const Context& ctx) {
  const json& spec = sequence_spec(ctx);
  // "tau_min" may list several values; one scan each.
  std::vector<json> variants;
  if (spec.contains("tau_min") && spec["tau_min"].is_array()) {
    for (const auto& t : spec["tau_min"]) {
      json v = spec;
      v["tau_min"] = t;
      variants.push_back(v);
    }
  } else {
    variants.push_back(spec);
  }
  const auto reps = parse_repetitions(require(ctx.config, "repetitions"));
  const int count = integer_or(ctx.config, "states", 1000);
  if (count < 1) throw InvalidArgument("\"states\" must be >= 1");
  const double tol = number_or(ctx.config, "tolerance", 1e-3);
  const int doublings = integer_or(ctx.config, "doublings", 3);
  std::optional<int> asymptotic_above = 1000;
  if (ctx.config.contains("asymptotic_above")) {
    const json& a = ctx.config["asymptotic_above"];
    asymptotic_above = a.is_null() ? std::nullopt : std::optional<int>(a.get<int>());
  }

  CsvWriter csv({"tau_min", "M", "T", "mean_fidelity", "stderr", "diverged", "asymptotic"});
  json elements = json::array();
  for (const auto& v : variants) {
    const PulseSequence base = parse_sequence(v);
    const double tau = pulse_stats(base).tau_min;
    const NoiseModel noise = parse_noise(ctx.config, base.num_qubits()).model();
    const auto states = sample_real_states(base.num_qubits(), static_cast<std::size_t>(count), ctx.seed);
    const RepetitionScan scan = scan_fidelity(base, noise, reps, states, ctx.threads, asymptotic_above);
    for (const auto& r : scan.rows) {
      csv.row({fmt(tau), fmt(r.repetitions), fmt(r.total_time), fmt(r.mean_fidelity), fmt(r.stderr),
               r.diverged ? "1" : "0", r.asymptotic ? "1" : "0"});
    }
    json detection;
    if (scan.rows.size() > static_cast<std::size_t>(doublings)) {
      const PlateauDetection det = detect_plateau(scan, tol, doublings);
      detection = {{"plateau", det.plateau},
                   {"last_change", nullable(det.last_change)},
                   {"at_dephased_floor", det.at_dephased_floor},
                   {"diverged", det.diverged}};
    } else {
      detection = {{"plateau", nullptr}, {"reason", "fewer rows than doublings + 1"}};
    }
    json element = {{"tau_min", tau},
                    {"period", base.duration()},
                    {"dephased_loss", scan.dephased_loss},
                    {"conditions", report_json(plateau_conditions(base, noise))},
                    {"detection", detection}};
    try {
      const AsymptoticCoherence lim = plateau_value(base, noise);
      std::vector<std::vector<Complex>> cs;
      for (const auto& s : states) cs.emplace_back(s.begin(), s.end());
      const Mean f = mean_fidelity(cs, lim.factors);
      element["plateau_value"] = {{"mean_fidelity", f.mean}, {"stderr", f.stderr}, {"truncated", lim.truncated}};
    } catch (const DivergenceError& e) {
      element["plateau_value"] = {{"diverged", true}, {"reason", e.what()}};
    } catch (const PreconditionError& e) {
      element["plateau_value"] = {{"unavailable", e.what()}};
    }
    elements.push_back(element);
  }
  Output out{csv.str()};
  out.report = {{"states", count}, {"tolerance", tol}, {"doublings", doublings}, {"scans", elements}};
  return out;
}

Output run_oracle(const Context& ctx) {
  const PulseSequence seq = parse_sequence(sequence_spec(ctx));
  const NoiseConfig nc = parse_noise(ctx.config, seq.num_qubits());
  const auto sources = nc.mc_sources();
  const int n = seq.num_qubits();
  const std::uint32_t dim = 1u << n;
  std::uint32_t a = 0;
  std::uint32_t b = dim - 1;
  if (ctx.config.contains("pair")) {
    const json& p = ctx.config["pair"];
    if (!p.is_array() || p.size() != 2) throw InvalidArgument("\"pair\" must be [a, b]");
    a = p[0].get<std::uint32_t>();
    b = p[1].get<std::uint32_t>();
    if (a >= dim || b >= dim) throw InvalidArgument("basis index out of range");
  }
  TrajectoryConfig tc;
  tc.duration = seq.duration();
  tc.trajectories = static_cast<std::size_t>(integer_or(ctx.config, "trajectories", 10000));
  tc.seed = ctx.seed;
  tc.harmonics = integer_or(ctx.config, "harmonics", 0);
  if (tc.trajectories < 2) throw InvalidArgument("\"trajectories\" must be >= 2");

  const McEstimate mc = mc_coherence(seq, sources, tc, a, b, ctx.threads);
  const CoherenceFactors cf = assemble_coherence(FilterBundle::direct(seq), nc.model());
  const Complex analytic = cf.factor(a, b);
  const double deviation = std::abs(mc.estimate - analytic) / mc.stderr;

  CsvWriter csv({"a", "b", "trajectories", "mc_re", "mc_im", "stderr", "analytic_re", "analytic_im", "sigmas"});
  csv.row({fmt(a), fmt(b), fmt(mc.trajectories), fmt(mc.estimate.real()), fmt(mc.estimate.imag()),
           fmt(mc.stderr), fmt(analytic.real()), fmt(analytic.imag()), fmt(deviation)});
  Output out{csv.str()};
  out.report = {{"a", a}, {"b", b}, {"trajectories", mc.trajectories}, {"sigmas", nullable(deviation)},
                {"within_3_sigma", deviation <= 3.0}};

  const int dump = integer_or(ctx.config, "dump_trajectories", 0);
  if (dump > 0) {
    const int samples = integer_or(ctx.config, "dump_samples", 64);
    if (samples < 2) throw InvalidArgument("\"dump_samples\" must be >= 2");
    CsvWriter raw({"source", "trajectory", "t", "xi"});
    for (std::size_t s = 0; s < sources.size(); ++s) {
      for (int i = 0; i < dump; ++i) {
        const Trajectory tr = sample_gaussian_process(sources[s].psd, tc, static_cast<std::uint64_t>(i), s);
        for (int k = 0; k < samples; ++k) {
          const double t = tc.duration * k / (samples - 1);
          raw.row({fmt(s), fmt(i), fmt(t), fmt(tr(t))});
        }
      }
    }
    out.extra_files.push_back({".trajectories.csv", raw.str()});
  }
  return out;
}

Output run_two_stage(const Context& ctx) {
  const PulseSequence gen = parse_sequence(require(ctx.config, "generation"));
  const PulseSequence store = parse_sequence(require(ctx.config, "storage"));
  if (gen.num_qubits() != store.num_qubits()) throw InvalidArgument("generation and storage qubit counts differ");
  const int m_gen = integer_or(ctx.config, "m_gen", 1);
  if (m_gen < 0) throw InvalidArgument("\"m_gen\" must be >= 0");
  std::vector<int> m_store{1};
  if (ctx.config.contains("m_store")) m_store = parse_repetitions(ctx.config["m_store"]);
  const NoiseModel noise = parse_noise(ctx.config, gen.num_qubits()).model();
  const auto states = parse_states(ctx.config, gen.num_qubits(), ctx.seed);
  const FilterBundle g = FilterBundle::direct(gen);
  const FilterBundle s = FilterBundle::direct(store);

  std::vector<std::optional<CoherenceFactors>> factors(m_store.size());
  parallel_for(m_store.size(), [&](std::size_t i) {
    if (m_store[i] < 0) throw InvalidArgument("storage repetitions must be >= 0");
    factors[i] = assemble_coherence(two_stage(g, m_gen, s, m_store[i]), noise);
  }, ctx.threads);

  CsvWriter csv({"m_gen", "m_store", "T", "mean_fidelity", "stderr"});
  json rows = json::array();
  for (std::size_t i = 0; i < m_store.size(); ++i) {
    const Mean f = mean_fidelity(states, *factors[i]);
    const double total = m_gen * gen.duration() + m_store[i] * store.duration();
    csv.row({fmt(m_gen), fmt(m_store[i]), fmt(total), fmt(f.mean), fmt(f.stderr)});
    json row = coherence_json(*factors[i]);
    row["m_store"] = m_store[i];
    row["fidelity"] = f.mean;
    rows.push_back(row);
  }
  Output out{csv.str()};
  out.report = {{"m_gen", m_gen}, {"states", states.size()}, {"results", rows}};
  return out;
}

}  // namespace ddff::cli
