#include "ddff/sequence.hpp"

#include "ddff/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace ddff {

namespace {

const Fraction kOne(1, 1);
const Fraction kHalf(1, 2);

void require_positive_duration(double duration) {
  if (!(duration > 0) || !std::isfinite(duration)) {
    throw InvalidArgument("duration must be positive and finite");
  }
}

// Sort, cancel coincident pairs (X X = 1) and restore the closing pulse.
std::vector<Fraction> simplify(std::vector<Fraction> pulses) {
  for (const auto& p : pulses) {
    if (p.value() <= Fraction::kTolerance || p.value() > 1 + Fraction::kTolerance) {
      throw InvalidArgument("pulse fraction outside (0, 1]: " + p.str());
    }
  }
  std::sort(pulses.begin(), pulses.end());
  std::vector<Fraction> interior;
  for (std::size_t i = 0; i < pulses.size();) {
    std::size_t j = i + 1;
    while (j < pulses.size() && same_instant(pulses[i], pulses[j])) ++j;
    if ((j - i) % 2 == 1 && !same_instant(pulses[i], kOne)) interior.push_back(pulses[i]);
    i = j;
  }
  if (interior.size() % 2 == 1) interior.push_back(kOne);
  return interior;
}

Fraction udd_fraction(int j, int order) {
  // sin^2(pi j / (2 order + 2)); rational for the few special angles.
  const boost::multiprecision::cpp_int num = j;
  const boost::multiprecision::cpp_int den = 2 * order + 2;
  const Rational angle(num, den);
  const auto d = denominator(angle);
  if (d == 2) return Fraction(1, 1);
  if (d == 4) return Fraction(1, 2);
  if (d == 3) return Fraction(3, 4);
  if (d == 6) return Fraction(1, 4);
  const HighReal pi = boost::math::constants::pi<HighReal>();
  const HighReal s = sin(pi * HighReal(j) / HighReal(2 * order + 2));
  return Fraction::approximate(s * s);
}

std::size_t count_raw(const std::vector<std::vector<Fraction>>& pulses) {
  std::size_t n = 0;
  for (const auto& q : pulses) n += q.size();
  return n;
}

// Fraction for a double ratio, exact because doubles are dyadic.
Fraction exact_ratio(double a, double b) {
  return Fraction(Rational(a) / Rational(b));
}

int sign_at_fraction(const std::vector<Fraction>& pulses, const Fraction& t) {
  int s = 1;
  for (const auto& p : pulses) {
    if (p < t) s = -s;
    else break;
  }
  return s;
}

// Constant value of y(t) y(map(t)) over the sample blocks, if any.
std::optional<int> constant_product(const std::vector<Fraction>& pulses,
                                    const std::vector<std::pair<Fraction, Fraction>>& blocks,
                                    const std::function<Fraction(const Fraction&)>& map,
                                    const std::function<Fraction(const Fraction&)>& inverse) {
  std::optional<int> value;
  for (const auto& [lo, hi] : blocks) {
    std::vector<Fraction> pts{lo, hi};
    for (const auto& p : pulses) {
      if (lo < p && p < hi) pts.push_back(p);
      const Fraction back = inverse(p);
      if (lo < back && back < hi) pts.push_back(back);
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (same_instant(pts[i], pts[i + 1])) continue;
      if (pts[i + 1].value() - pts[i].value() < 1e-10) continue;
      const Fraction mid = (pts[i] + pts[i + 1]) * kHalf;
      const int v = sign_at_fraction(pulses, mid) * sign_at_fraction(pulses, map(mid));
      if (!value) value = v;
      else if (*value != v) return std::nullopt;
    }
  }
  return value;
}
}  // namespace

PulseSequence::PulseSequence(int num_qubits, double duration,
                             std::vector<std::vector<Fraction>> pulses, SequenceLabel label,
                             std::optional<std::size_t> nominal_count)
    : duration_(duration), label_(std::move(label)) {
  if (num_qubits < 1) throw InvalidArgument("sequence needs at least one qubit");
  require_positive_duration(duration);
  if (pulses.size() > static_cast<std::size_t>(num_qubits)) {
    throw InvalidArgument("more pulse lists than qubits");
  }
  pulses.resize(static_cast<std::size_t>(num_qubits));
  const std::size_t raw = count_raw(pulses);
  pulses_.reserve(pulses.size());
  for (auto& q : pulses) pulses_.push_back(simplify(std::move(q)));
  nominal_ = nominal_count.value_or(raw);
}

PulseSequence PulseSequence::free(int num_qubits, double duration) {
  return PulseSequence(num_qubits, duration, {}, {"free", {}}, 0);
}

const std::vector<Fraction>& PulseSequence::pulses(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits()) throw InvalidArgument("qubit index out of range");
  return pulses_[static_cast<std::size_t>(qubit)];
}

bool PulseSequence::exact() const {
  for (const auto& q : pulses_) {
    for (const auto& p : q) {
      if (!p.exact()) return false;
    }
  }
  return true;
}

PulseSequence PulseSequence::with_duration(double duration) const {
  return PulseSequence(num_qubits(), duration, pulses_, label_, nominal_);
}

PulseSequence PulseSequence::with_label(SequenceLabel label) const {
  return PulseSequence(num_qubits(), duration_, pulses_, std::move(label), nominal_);
}

SwitchingProfile::SwitchingProfile(const PulseSequence& seq) : duration_(seq.duration()) {
  const double T = seq.duration();
  for (int q = 0; q < seq.num_qubits(); ++q) {
    QubitProfile prof;
    prof.edges.push_back(0.0);
    int s = 1;
    for (const auto& p : seq.pulses(q)) {
      if (same_instant(p, kOne)) {
        prof.end_parity = true;
        continue;
      }
      prof.signs.push_back(s);
      prof.edges.push_back(p.to_double() * T);
      s = -s;
    }
    prof.signs.push_back(s);
    prof.edges.push_back(T);
    qubits_.push_back(std::move(prof));
  }
}

int SwitchingProfile::sign_at(int q, double t) const {
  const auto& prof = qubit(q);
  const auto it = std::upper_bound(prof.edges.begin(), prof.edges.end(), t);
  const auto idx = std::clamp<std::ptrdiff_t>(it - prof.edges.begin() - 1, 0,
                                              static_cast<std::ptrdiff_t>(prof.signs.size()) - 1);
  return prof.signs[static_cast<std::size_t>(idx)];
}

PulseSequence build_udd(int order, double duration) {
  if (order < 1) throw InvalidArgument("UDD order must be >= 1");
  require_positive_duration(duration);
  std::vector<Fraction> pulses;
  for (int j = 1; j <= order; ++j) pulses.push_back(udd_fraction(j, order));
  if (order % 2 == 1) pulses.push_back(kOne);
  return PulseSequence(1, duration, {pulses}, {"udd", {order}},
                       static_cast<std::size_t>(order + 1));
}

PulseSequence build_cdd(int order, double duration) {
  if (order < 1) throw InvalidArgument("CDD order must be >= 1");
  require_positive_duration(duration);
  const PulseSequence cdd1(1, duration, {{kHalf, kOne}}, {"cdd", {1}}, 2);
  PulseSequence seq = cdd1;
  for (int a = 2; a <= order; ++a) seq = compose(cdd1, seq);
  return seq.with_label({"cdd", {order}});
}

PulseSequence on_qubit(const PulseSequence& single, int qubit, int num_qubits) {
  if (single.num_qubits() != 1) throw InvalidArgument("on_qubit expects a single-qubit sequence");
  if (qubit < 0 || qubit >= num_qubits) throw InvalidArgument("qubit index out of range");
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(num_qubits));
  pulses[static_cast<std::size_t>(qubit)] = single.pulses(0);
  return PulseSequence(num_qubits, single.duration(), pulses, single.label(),
                       single.nominal_count());
}

PulseSequence nonselective(const PulseSequence& single, int num_qubits) {
  if (single.num_qubits() != 1) {
    throw InvalidArgument("nonselective expects a single-qubit sequence");
  }
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(num_qubits),
                                            single.pulses(0));
  SequenceLabel label = single.label();
  label.family = "nonselective-" + label.family;
  return PulseSequence(num_qubits, single.duration(), pulses, label, single.nominal_count());
}

PulseSequence compose(const PulseSequence& outer, const PulseSequence& inner) {
  if (outer.num_qubits() != inner.num_qubits()) {
    throw InvalidArgument("compose needs sequences on the same register");
  }
  const int n = outer.num_qubits();
  std::vector<Fraction> bounds{Fraction(0, 1), kOne};
  for (int q = 0; q < n; ++q) {
    for (const auto& p : outer.pulses(q)) bounds.push_back(p);
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end(),
                           [](const Fraction& a, const Fraction& b) { return same_instant(a, b); }),
               bounds.end());

  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    auto& out = pulses[static_cast<std::size_t>(q)];
    out = outer.pulses(q);
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
      const Fraction width = bounds[j + 1] - bounds[j];
      for (const auto& r : inner.pulses(q)) out.push_back(bounds[j] + width * r);
    }
  }
  SequenceLabel label{"composite", outer.label().orders};
  for (int o : inner.label().orders) label.orders.push_back(o);
  const std::size_t nominal = outer.nominal_count() == 0 ? inner.nominal_count()
                              : inner.nominal_count() == 0
                                  ? outer.nominal_count()
                                  : outer.nominal_count() * inner.nominal_count();
  return PulseSequence(n, outer.duration(), pulses, label, nominal);
}

PulseSequence product(std::span<const PulseSequence> singles) {
  if (singles.empty()) throw InvalidArgument("product of no sequences");
  const double T = singles.front().duration();
  std::vector<std::vector<Fraction>> pulses;
  SequenceLabel label{"product", {}};
  std::size_t nominal = 0;
  for (const auto& s : singles) {
    if (s.num_qubits() != 1) throw InvalidArgument("product expects single-qubit sequences");
    if (s.duration() != T) throw InvalidArgument("product of sequences with different durations");
    pulses.push_back(s.pulses(0));
    for (int o : s.label().orders) label.orders.push_back(o);
    nominal += s.nominal_count();
  }
  return PulseSequence(static_cast<int>(singles.size()), T, pulses, label, nominal);
}

PulseSequence concatenate(const PulseSequence& first, const PulseSequence& second) {
  if (first.num_qubits() != second.num_qubits()) {
    throw InvalidArgument("concatenate needs sequences on the same register");
  }
  const double T = first.duration() + second.duration();
  const Fraction split = exact_ratio(first.duration(), T);
  const Fraction rest = kOne - split;
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(first.num_qubits()));
  for (int q = 0; q < first.num_qubits(); ++q) {
    auto& out = pulses[static_cast<std::size_t>(q)];
    for (const auto& p : first.pulses(q)) out.push_back(p * split);
    for (const auto& p : second.pulses(q)) out.push_back(split + p * rest);
  }
  return PulseSequence(first.num_qubits(), T, pulses, {"concatenated", {}},
                       first.nominal_count() + second.nominal_count());
}

PulseSequence repeat(const PulseSequence& seq, int times) {
  if (times < 1) throw InvalidArgument("repetition count must be >= 1");
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(seq.num_qubits()));
  const Fraction inv(1, times);
  for (int q = 0; q < seq.num_qubits(); ++q) {
    auto& out = pulses[static_cast<std::size_t>(q)];
    for (int k = 0; k < times; ++k) {
      const Fraction offset(k, times);
      for (const auto& p : seq.pulses(q)) out.push_back(offset + p * inv);
    }
  }
  return PulseSequence(seq.num_qubits(), seq.duration() * times, pulses, seq.label(),
                       seq.nominal_count() * static_cast<std::size_t>(times));
}

namespace {

PulseSequence build_nested(std::span<const int> orders, double duration,
                           PulseSequence (*block)(int, double), const std::string& family) {
  if (orders.empty()) throw InvalidArgument("nested sequence needs at least one order");
  const int n = static_cast<int>(orders.size());
  PulseSequence seq = on_qubit(block(orders[orders.size() - 1], duration), n - 1, n);
  for (int q = n - 2; q >= 0; --q) {
    seq = compose(on_qubit(block(orders[static_cast<std::size_t>(q)], duration), q, n), seq);
  }
  return seq.with_label({family, std::vector<int>(orders.begin(), orders.end())});
}

}  // namespace

PulseSequence build_nudd(std::span<const int> orders, double duration) {
  return build_nested(orders, duration, &build_udd, "nudd");
}

PulseSequence build_ncdd(std::span<const int> orders, double duration) {
  return build_nested(orders, duration, &build_cdd, "ncdd");
}

PulseSequence build_multi_cdd(int order, int num_qubits, double duration) {
  if (order < 1) throw InvalidArgument("CDD order must be >= 1");
  const std::vector<int> ones(static_cast<std::size_t>(num_qubits), 1);
  const PulseSequence unit = build_ncdd(ones, duration);
  PulseSequence seq = unit;
  for (int a = 2; a <= order; ++a) seq = compose(unit, seq);
  return seq.with_label({"multi-cdd", std::vector<int>(static_cast<std::size_t>(num_qubits), order)});
}

SymmetryMatrices symmetry_matrices(int num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("need at least one qubit");
  const int n = num_qubits;
  SymmetryMatrices m;
  m.p.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(std::max(n - 1, 0)), 0));
  for (int l = 1; l < n; ++l) m.p[static_cast<std::size_t>(l)][static_cast<std::size_t>(l - 1)] = 1;
  const int cols = 1 << (n - 1);
  m.q.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(cols), 0));
  if (n == 1) return m;
  auto col_xor = [&](int dst, int src, int scale) {
    for (int l = 0; l < n; ++l) {
      auto& row = m.q[static_cast<std::size_t>(l)];
      row[static_cast<std::size_t>(dst)] =
          row[static_cast<std::size_t>(src)] ^ m.p[static_cast<std::size_t>(l)][static_cast<std::size_t>(scale - 1)];
    }
  };
  const int c = cols / 2 - 1;  // 0-based centre column, all zeros
  col_xor(c + 1, c, 1);
  for (int y = 2; y <= n - 1; ++y) {
    const int half = 1 << (y - 1);
    const int known = 1 << (y - 2);
    for (int i = c - half + 1; i <= c - known; ++i) col_xor(i, i + half, y);
    for (int j = c + known + 1; j <= c + half; ++j) col_xor(j, j - half, y);
  }
  return m;
}

PulseSequence enhance_displacement(const PulseSequence& base, int num_qubits,
                                   std::span<const int> flip_order) {
  if (num_qubits < 1) throw InvalidArgument("enhancement needs N >= 1");
  if (base.num_qubits() != num_qubits) {
    throw InvalidArgument("base sequence must act on exactly N qubits");
  }
  if (num_qubits == 1) return base;
  const int n = num_qubits;
  std::vector<int> role(static_cast<std::size_t>(n));
  if (flip_order.empty()) {
    std::iota(role.begin(), role.end(), 0);
  } else {
    if (static_cast<int>(flip_order.size()) != n) throw InvalidArgument("flip order has wrong length");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      const int q = flip_order[static_cast<std::size_t>(j)];
      if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)]++) {
        throw InvalidArgument("flip order is not a permutation");
      }
      role[static_cast<std::size_t>(q)] = j;
    }
  }
  const auto m = symmetry_matrices(n);
  const int k_total = 1 << (n - 1);
  // flip[k][q]: conjugation of qubit q in time segment k, normalized to segment 0.
  std::vector<std::vector<int>> flip(static_cast<std::size_t>(k_total), std::vector<int>(static_cast<std::size_t>(n)));
  for (int k = 0; k < k_total; ++k) {
    for (int q = 0; q < n; ++q) {
      const auto& row = m.q[static_cast<std::size_t>(role[static_cast<std::size_t>(q)])];
      flip[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] =
          row[static_cast<std::size_t>(k_total - 1 - k)] ^ row[static_cast<std::size_t>(k_total - 1)];
    }
  }
  std::vector<std::vector<Fraction>> pulses(static_cast<std::size_t>(n));
  const Fraction seg(1, k_total);
  for (int q = 0; q < n; ++q) {
    auto& out = pulses[static_cast<std::size_t>(q)];
    for (int k = 0; k < k_total; ++k) {
      const Fraction start(k, k_total);
      for (const auto& r : base.pulses(q)) out.push_back(start + r * seg);
      const int next = k + 1 < k_total ? flip[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(q)] : 0;
      if ((flip[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] ^ next) != 0) {
        out.push_back(Fraction(k + 1, k_total));
      }
    }
  }
  SequenceLabel label{"displacement", base.label().orders};
  return PulseSequence(n, base.duration() * k_total, pulses, label,
                       base.nominal_count() * static_cast<std::size_t>(k_total));
}

PulseSequence build_displacement(const std::string& family, std::span<const int> orders,
                                 double duration) {
  const int n = static_cast<int>(orders.size());
  if (n < 1) throw InvalidArgument("displacement sequence needs at least one order");
  const double block = duration / static_cast<double>(1 << (n - 1));
  std::vector<PulseSequence> singles;
  for (int o : orders) {
    if (family == "cdd") singles.push_back(build_cdd(o, block));
    else if (family == "udd") singles.push_back(build_udd(o, block));
    else throw InvalidArgument("unknown block family: " + family);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.rbegin(), order.rend(), 0);
  auto seq = enhance_displacement(product(singles), n, order);
  return seq.with_label({family + "-displacement", std::vector<int>(orders.begin(), orders.end())});
}

std::string displacement_operator_string(int num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("need at least one qubit");
  const auto m = symmetry_matrices(num_qubits);
  const int cols = 1 << (num_qubits - 1);
  auto group = [&](const std::vector<int>& bits) {
    std::string s;
    for (int l = num_qubits - 1; l >= 0; --l) {
      if (bits[static_cast<std::size_t>(l)]) s += "X" + std::to_string(l + 1);
    }
    return s;
  };
  auto column = [&](int c) {
    std::vector<int> bits(static_cast<std::size_t>(num_qubits));
    for (int l = 0; l < num_qubits; ++l) bits[static_cast<std::size_t>(l)] = m.q[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)];
    return bits;
  };
  // Factor s (1-based) is X^Q(.,s) U X^Q(.,s); factor 1 is leftmost.
  std::vector<std::string> parts;
  parts.push_back(group(column(0)));
  for (int c = 0; c < cols; ++c) {
    parts.push_back("U");
    std::vector<int> merged = column(c);
    if (c + 1 < cols) {
      const auto next = column(c + 1);
      for (std::size_t l = 0; l < merged.size(); ++l) merged[l] ^= next[l];
    }
    parts.push_back(group(merged));
  }
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += '*';
    out += p;
  }
  return out;
}

std::optional<int> qubit_parity(const PulseSequence& seq, int qubit, SymmetryKind kind,
                                int scale) {
  const auto& pulses = seq.pulses(qubit);
  switch (kind) {
    case SymmetryKind::mirror:
      return constant_product(
          pulses, {{kHalf, kOne}}, [](const Fraction& t) { return kOne - t; },
          [](const Fraction& t) { return kOne - t; });
    case SymmetryKind::displacement:
      return constant_product(
          pulses, {{Fraction(0, 1), kHalf}}, [](const Fraction& t) { return t + kHalf; },
          [](const Fraction& t) { return t - kHalf; });
    case SymmetryKind::generalized_displacement: {
      const int n = seq.num_qubits();
      if (scale < 1 || scale > n - 1) throw InvalidArgument("scale must lie in [1, N-1]");
      const Fraction tau(1 << (scale - 1), 1 << (n - 1));
      const int blocks = 1 << (n - 1 - scale);
      std::optional<int> value;
      for (int m = 1; m <= blocks; ++m) {
        const Fraction lo = kHalf - tau * Fraction(m, 1);
        const Fraction hi = kHalf - tau * Fraction(m - 1, 1);
        const Fraction shift = tau * Fraction(2 * m - 1, 1);
        const auto v = constant_product(
            pulses, {{lo, hi}}, [&](const Fraction& t) { return t + shift; },
            [&](const Fraction& t) { return t - shift; });
        if (!v) return std::nullopt;
        if (!value) value = v;
        else if (*value != *v) return std::nullopt;
      }
      return value;
    }
  }
  return std::nullopt;
}

bool check_symmetry(const PulseSequence& seq, SymmetryKind kind, int q1, int q2, int scale) {
  const auto a = qubit_parity(seq, q1, kind, scale);
  const auto b = qubit_parity(seq, q2, kind, scale);
  return a && b && (*a * *b == -1);
}

bool is_mirror_symmetric(const PulseSequence& seq, int q1, int q2) {
  const auto a = qubit_parity(seq, q1, SymmetryKind::mirror);
  const auto b = qubit_parity(seq, q2, SymmetryKind::mirror);
  return a && b && (*a * *b == 1);
}

PulseStats pulse_stats(const PulseSequence& seq) {
  PulseStats st;
  st.nominal = seq.nominal_count();
  HighReal min_gap = 1;
  std::vector<Fraction> all;
  for (int q = 0; q < seq.num_qubits(); ++q) {
    const auto& p = seq.pulses(q);
    all.insert(all.end(), p.begin(), p.end());
    st.per_qubit.push_back(p.size());
    st.total += p.size();
    HighReal prev = 0;
    for (const auto& f : p) {
      min_gap = std::min(min_gap, f.value() - prev);
      prev = f.value();
    }
    if (prev < 1) min_gap = std::min(min_gap, HighReal(1) - prev);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i == 0 || !same_instant(all[i - 1], all[i])) ++st.instants;
  }
  st.tau_min = static_cast<double>(min_gap) * seq.duration();
  return st;
}

}  // namespace ddff
