#include "config.hpp"

#include "ddff/errors.hpp"
#include "ddff/plateau.hpp"

#include <cmath>
#include <limits>

namespace ddff::cli {

namespace {

std::vector<int> int_list(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) throw InvalidArgument("expected an integer list");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidArgument("expected an integer list");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<int> orders_of(const json& spec) {
  if (spec.contains("orders")) return int_list(spec["orders"]);
  if (spec.contains("order")) return int_list(spec["order"]);
  throw InvalidArgument("sequence needs \"order\" or \"orders\"");
}

int single_order(const json& spec) {
  const auto o = orders_of(spec);
  if (o.size() != 1) throw InvalidArgument("expected one order");
  return o.front();
}

PulseSequence single_block(const std::string& family, int order) {
  if (family == "udd") return build_udd(order, 1.0);
  if (family == "cdd") return build_cdd(order, 1.0);
  throw InvalidArgument("unknown block family: " + family);
}

std::string string_or(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw InvalidArgument("\"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

// Unit-duration sequence; the caller rescales.
PulseSequence unit_sequence(const json& spec) {
  if (!spec.is_object()) throw InvalidArgument("sequence spec must be an object");
  const std::string family = require(spec, "family").get<std::string>();
  const int n = integer_or(spec, "qubits", 1);
  PulseSequence seq = PulseSequence::free(n, 1.0);
  if (family == "free") {
    seq = PulseSequence::free(n, 1.0);
  } else if (family == "udd" || family == "cdd") {
    seq = single_block(family, single_order(spec));
    if (n > 1) seq = on_qubit(seq, integer_or(spec, "qubit", 0), n);
  } else if (family == "nudd" || family == "ncdd") {
    const auto o = orders_of(spec);
    seq = family == "nudd" ? build_nudd(o, 1.0) : build_ncdd(o, 1.0);
  } else if (family == "multi_cdd") {
    seq = build_multi_cdd(single_order(spec), n, 1.0);
  } else if (family == "displacement") {
    seq = build_displacement(string_or(spec, "block", "cdd"), orders_of(spec), 1.0);
  } else if (family == "nonselective") {
    seq = nonselective(single_block(string_or(spec, "block", "udd"), single_order(spec)), n);
  } else if (family == "product") {
    const json& parts = require(spec, "parts");
    if (!parts.is_array() || parts.empty()) throw InvalidArgument("\"parts\" must be a non-empty array");
    std::vector<PulseSequence> singles;
    for (const auto& p : parts) singles.push_back(unit_sequence(p));
    seq = product(singles);
  } else if (family == "explicit") {
    const json& pulses = require(spec, "pulses");
    if (!pulses.is_array() || pulses.empty()) throw InvalidArgument("\"pulses\" must list one array per qubit");
    std::vector<std::vector<Fraction>> fr;
    for (const auto& q : pulses) {
      if (!q.is_array()) throw InvalidArgument("\"pulses\" must list one array per qubit");
      auto& row = fr.emplace_back();
      for (const auto& p : q) {
        row.push_back(p.is_string() ? Fraction::parse(p.get<std::string>())
                                    : Fraction::approximate(HighReal(number(p))));
      }
    }
    const int nq = static_cast<int>(fr.size());
    seq = PulseSequence(nq, 1.0, std::move(fr), SequenceLabel{"explicit", {}});
  } else {
    throw InvalidArgument("unknown sequence family: " + family);
  }
  if (spec.contains("repeat")) {
    const int m = require(spec, "repeat").get<int>();
    if (m < 1) throw InvalidArgument("\"repeat\" must be >= 1");
    seq = repeat(seq, m);
  }
  return seq;
}

ClassicalPSD classical_psd(const json& s) {
  const PowerLaw shape{number_or(s, "amplitude", 0.0), number_or(s, "exponent", 0.0),
                       Cutoff{number_or(s, "cutoff", 1.0), CutoffKind::hard}, number_or(s, "omega_ir", 0.0)};
  PowerLaw p = shape;
  const std::string kind = string_or(s, "cutoff_kind", "hard");
  if (kind == "hard") p.cutoff.kind = CutoffKind::hard;
  else if (kind == "gaussian") p.cutoff.kind = CutoffKind::gaussian;
  else if (kind == "exponential") p.cutoff.kind = CutoffKind::exponential;
  else throw InvalidArgument("unknown cutoff kind: " + kind);
  return ClassicalPSD(p, number_or(s, "static_variance", 0.0));
}

Channel parse_channel(const json& j, int n) {
  const auto qs = int_list(j);
  if (qs.empty() || qs.size() > 2) throw InvalidArgument("a channel lists one or two qubits");
  for (int q : qs) {
    if (q < 0 || q >= n) throw InvalidArgument("channel qubit out of range");
  }
  if (qs.size() == 1) return Channel::qubit(qs[0]);
  if (qs[0] == qs[1]) throw InvalidArgument("pair channel needs two distinct qubits");
  return Channel::pair(qs[0], qs[1]);
}

SpinBoson parse_bath(const json& s, int n) {
  const PowerLaw density = classical_psd(s).shape();
  double beta = SpinBoson::kZeroTemperature;
  if (s.contains("beta")) beta = number(s["beta"]);
  const int sign = integer_or(s, "transit_sign", 1);
  if (s.contains("transit_times")) {
    std::vector<std::vector<double>> t;
    for (const auto& row : s["transit_times"]) {
      auto& r = t.emplace_back();
      for (const auto& v : row) r.push_back(number(v));
    }
    if (static_cast<int>(t.size()) != n) throw InvalidArgument("transit matrix size must match the qubit count");
    return SpinBoson(density, beta, std::move(t), sign);
  }
  if (n != 2) throw InvalidArgument("\"t12\" needs two qubits; use \"transit_times\"");
  return SpinBoson::two_qubit(density, beta, number(require(s, "t12")), sign);
}

}  // namespace

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InvalidArgument("expected a number, got " + j.dump());
}

double number_or(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? number(obj[key]) : fallback;
}

int integer_or(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw InvalidArgument("\"" + key + "\" must be an integer");
  return obj[key].get<int>();
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidArgument("missing field \"" + key + "\"");
  return obj[key];
}

PulseSequence parse_sequence(const json& spec) {
  const PulseSequence unit = unit_sequence(spec);
  const bool has_t = spec.contains("T");
  const bool has_tau = spec.contains("tau_min");
  if (has_t == has_tau) throw InvalidArgument("sequence needs exactly one of \"T\" and \"tau_min\"");
  if (has_t) return unit.with_duration(number(spec["T"]));
  const double frac = pulse_stats(unit).tau_min;
  return unit.with_duration(number(spec["tau_min"]) / frac);
}

NoiseModel NoiseConfig::model() const {
  NoiseModel m;
  for (const auto& p : processes) {
    for (std::size_t i = 0; i < p.channels.size(); ++i) {
      for (std::size_t j = i; j < p.channels.size(); ++j) m.classical.push_back({p.channels[i], p.channels[j], p.psd});
    }
  }
  m.quantum = bath;
  m.offsets = offsets;
  return m;
}

std::vector<McSource> NoiseConfig::mc_sources() const {
  if (bath) throw InvalidArgument("the Monte-Carlo oracle supports classical noise only");
  std::vector<McSource> out;
  for (const auto& p : processes) out.push_back({p.channels, p.psd});
  return out;
}

NoiseConfig parse_noise(const json& root, int num_qubits) {
  NoiseConfig out;
  if (root.contains("spectrum")) {
    const json& spec = root["spectrum"];
    const json items = spec.is_array() ? spec : json::array({spec});
    for (const auto& s : items) {
      const std::string variant = require(s, "variant").get<std::string>();
      if (variant == "classical") {
        const ClassicalPSD psd = classical_psd(s);
        if (s.contains("channels")) {
          ClassicalProcess p{{}, psd};
          for (const auto& c : s["channels"]) p.channels.push_back(parse_channel(c, num_qubits));
          if (p.channels.empty()) throw InvalidArgument("\"channels\" must not be empty");
          out.processes.push_back(std::move(p));
        } else {
          // Independent copies on every qubit.
          for (int q = 0; q < num_qubits; ++q) out.processes.push_back({{Channel::qubit(q)}, psd});
        }
      } else if (variant == "spin_boson") {
        if (out.bath) throw InvalidArgument("at most one spin-boson bath");
        out.bath = parse_bath(s, num_qubits);
      } else {
        throw InvalidArgument("unknown spectrum variant: " + variant);
      }
    }
  }
  if (root.contains("offsets")) {
    for (const auto& o : root["offsets"]) {
      out.offsets.push_back({parse_channel(require(o, "channel"), num_qubits), number(require(o, "value"))});
    }
  }
  return out;
}

std::vector<double> parse_grid(const json& spec) {
  std::vector<double> out;
  if (spec.is_array()) {
    for (const auto& v : spec) out.push_back(number(v));
    return out;
  }
  const double lo = number(require(spec, "min"));
  const double hi = number(require(spec, "max"));
  const int points = integer_or(spec, "points", 64);
  const std::string scale = string_or(spec, "scale", "log");
  if (points < 2 || !(hi > lo)) throw InvalidArgument("grid needs max > min and at least 2 points");
  if (scale == "log") {
    if (!(lo > 0)) throw InvalidArgument("log grid needs min > 0");
    for (int i = 0; i < points; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  } else if (scale == "linear") {
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
  } else {
    throw InvalidArgument("grid scale must be \"log\" or \"linear\"");
  }
  return out;
}

std::vector<int> parse_repetitions(const json& spec) {
  if (spec.is_object()) return doubling_grid(require(spec, "max").get<int>());
  return int_list(spec);
}

std::string channel_label(Channel c) {
  std::string out;
  for (int q = 0; q < 32; ++q) {
    if (!(c.mask >> q & 1u)) continue;
    if (!out.empty()) out += "+";
    out += std::to_string(q);
  }
  return out;
}

}  // namespace ddff::cli
