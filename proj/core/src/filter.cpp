#include "ddff/filter.hpp"

#include "ddff/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ddff {

namespace {

constexpr Complex kI{0.0, 1.0};

// (e^{i th} - 1) / (i th)
Complex e1(double th) {
  const double h = 0.5 * th;
  const double h2 = h * h;
  const double sinc = std::abs(h) < 1e-3 ? 1.0 - h2 / 6.0 * (1.0 - h2 / 20.0) : std::sin(h) / h;
  return Complex(std::cos(h), std::sin(h)) * sinc;
}

// First divided difference of exp at i*x, i*y.
Complex dd1(double x, double y) { return Complex(std::cos(x), std::sin(x)) * e1(y - x); }

// Second divided difference of exp at 0, i*th1, i*th2.
Complex e2(double th1, double th2) {
  const double sep = std::max({std::abs(th1), std::abs(th2), std::abs(th2 - th1)});
  if (sep < 1.0) {
    // sum_n h_n(a, b) / (n+2)!, h_n the complete homogeneous polynomial.
    const Complex a(0.0, th1);
    const Complex b(0.0, th2);
    Complex h = 1.0;
    Complex apow = 1.0;
    double fact = 2.0;
    Complex sum = h / fact;
    for (int n = 1; n < 24; ++n) {
      apow *= a;
      h = apow + b * h;
      fact *= static_cast<double>(n + 2);
      sum += h / fact;
    }
    return sum;
  }
  double p[3] = {0.0, th1, th2};
  // Put the most separated pair at the ends.
  if (std::abs(th1) == sep) std::swap(p[1], p[2]);
  else if (std::abs(th2 - th1) == sep) std::swap(p[0], p[1]);
  return (dd1(p[1], p[2]) - dd1(p[0], p[1])) / Complex(0.0, p[2] - p[0]);
}

// int_a^{a+d} e^{iwt} dt
Complex interval_transform(double w, double a, double d) {
  return Complex(std::cos(w * a), std::sin(w * a)) * d * e1(w * d);
}

// Merged breakpoints of two profiles with the signs on each piece.
struct MergedGrid {
  std::vector<double> edges;
  std::vector<int> sa;
  std::vector<int> sb;
};

MergedGrid merge(const QubitProfile& a, const QubitProfile& b) {
  MergedGrid g;
  const double T = std::max(a.edges.back(), b.edges.back());
  const double tol = 1e-14 * T;
  std::size_t i = 1;
  std::size_t j = 1;
  g.edges.push_back(0.0);
  while (i < a.edges.size() || j < b.edges.size()) {
    const double ea = i < a.edges.size() ? a.edges[i] : T;
    const double eb = j < b.edges.size() ? b.edges[j] : T;
    g.sa.push_back(a.signs[std::min(i, a.signs.size()) - 1]);
    g.sb.push_back(b.signs[std::min(j, b.signs.size()) - 1]);
    double next;
    if (std::abs(ea - eb) <= tol) {
      next = ea;
      ++i;
      ++j;
    } else if (ea < eb) {
      next = ea;
      ++i;
    } else {
      next = eb;
      ++j;
    }
    g.edges.push_back(next);
  }
  return g;
}

Complex transform_closed(const QubitProfile& y, double w) {
  Complex s = 0.0;
  for (std::size_t j = 0; j < y.signs.size(); ++j) {
    s += static_cast<double>(y.signs[j]) *
         interval_transform(w, y.edges[j], y.edges[j + 1] - y.edges[j]);
  }
  return s;
}

Complex f2_closed(const QubitProfile& a, const QubitProfile& b, double w1, double w2) {
  const MergedGrid g = merge(a, b);
  Complex cum = 0.0;  // int_0^{t_j} y_b e^{i w2 t}
  Complex acc = 0.0;
  for (std::size_t j = 0; j < g.sa.size(); ++j) {
    const double t = g.edges[j];
    const double d = g.edges[j + 1] - t;
    const double sa = g.sa[j];
    const double sb = g.sb[j];
    const Complex tri = Complex(std::cos((w1 + w2) * t), std::sin((w1 + w2) * t)) * d * d *
                        e2(w1 * d, (w1 + w2) * d);
    acc += sa * (cum * interval_transform(w1, t, d) + sb * tri);
    cum += sb * interval_transform(w2, t, d);
  }
  return -acc;
}

// Switching instants of a channel in (0, 1), high precision.
std::vector<HighReal> channel_cuts(const PulseSequence& seq, Channel c) {
  std::vector<Fraction> all;
  for (int q = 0; q < seq.num_qubits(); ++q) {
    if (!(c.mask >> q & 1u)) continue;
    for (const auto& p : seq.pulses(q)) {
      if (!same_instant(p, Fraction(1, 1))) all.push_back(p);
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<HighReal> cuts;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i + 1;
    while (j < all.size() && same_instant(all[i], all[j])) ++j;
    if ((j - i) % 2 == 1) cuts.push_back(all[i].value());
    i = j;
  }
  return cuts;
}

QubitProfile channel_profile(const SwitchingProfile& prof, Channel c) {
  QubitProfile out;
  out.edges = {0.0, prof.duration()};
  out.signs = {1};
  for (int q = 0; q < prof.num_qubits(); ++q) {
    if (c.mask >> q & 1u) out = product_profile(out, prof.qubit(q));
  }
  return out;
}

// Breakpoints 0 = x_0 < ... < x_n = 1 and the signs of the two channels.
struct HighGrid {
  std::vector<HighReal> x;
  std::vector<int> sa;
  std::vector<int> sb;
};

HighGrid merge_high(const std::vector<HighReal>& a, const std::vector<HighReal>& b) {
  HighGrid g;
  g.x.push_back(0);
  int sa = 1;
  int sb = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  const HighReal tol(Fraction::kTolerance);
  while (i < a.size() || j < b.size()) {
    g.sa.push_back(sa);
    g.sb.push_back(sb);
    if (i < a.size() && j < b.size() && abs(a[i] - b[j]) < tol) {
      g.x.push_back(a[i]);
      ++i;
      ++j;
      sa = -sa;
      sb = -sb;
    } else if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
      g.x.push_back(a[i++]);
      sa = -sa;
    } else {
      g.x.push_back(b[j++]);
      sb = -sb;
    }
  }
  g.sa.push_back(sa);
  g.sb.push_back(sb);
  g.x.push_back(1);
  return g;
}

std::vector<HighReal> factorials() {
  std::vector<HighReal> f(Series::kOrder + 1);
  f[0] = 1;
  for (int n = 1; n <= Series::kOrder; ++n) f[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n - 1)] * n;
  return f;
}

const std::vector<HighReal>& fact() {
  static const std::vector<HighReal> f = factorials();
  return f;
}

HighComplex i_pow(int n) {
  switch (n % 4) {
    case 0: return HighComplex(1, 0);
    case 1: return HighComplex(0, 1);
    case 2: return HighComplex(-1, 0);
    default: return HighComplex(0, -1);
  }
}

// mu_n = int_0^1 y(x) x^n dx
std::vector<HighReal> single_moments(const std::vector<HighReal>& cuts) {
  constexpr int K = Series::kOrder;
  std::vector<HighReal> mu(K, HighReal(0));
  std::vector<HighReal> x{HighReal(0)};
  x.insert(x.end(), cuts.begin(), cuts.end());
  x.push_back(1);
  int s = 1;
  for (std::size_t j = 0; j + 1 < x.size(); ++j, s = -s) {
    HighReal pa = x[j];
    HighReal pb = x[j + 1];
    for (int n = 0; n < K; ++n) {
      mu[static_cast<std::size_t>(n)] += s * (pb - pa) / (n + 1);
      pa *= x[j];
      pb *= x[j + 1];
    }
  }
  return mu;
}

// nu[m][n] = int_0^1 dx1 int_0^x1 dx2 y_a(x1) y_b(x2) x1^m x2^n, m + n < K
std::vector<std::vector<HighReal>> double_moments(const std::vector<HighReal>& a,
                                                  const std::vector<HighReal>& b) {
  constexpr int K = Series::kOrder;
  const HighGrid g = merge_high(a, b);
  std::vector<std::vector<HighReal>> nu(K, std::vector<HighReal>(K, HighReal(0)));
  std::vector<HighReal> cum(K, HighReal(0));
  std::vector<HighReal> pa(K + 2);
  std::vector<HighReal> pb(K + 2);
  std::vector<HighReal> im(K);
  for (std::size_t j = 0; j + 1 < g.x.size(); ++j) {
    const HighReal& xa = g.x[j];
    const HighReal& xb = g.x[j + 1];
    pa[0] = 1;
    pb[0] = 1;
    for (int p = 1; p < K + 2; ++p) {
      pa[static_cast<std::size_t>(p)] = pa[static_cast<std::size_t>(p - 1)] * xa;
      pb[static_cast<std::size_t>(p)] = pb[static_cast<std::size_t>(p - 1)] * xb;
    }
    for (int m = 0; m < K; ++m) {
      im[static_cast<std::size_t>(m)] =
          (pb[static_cast<std::size_t>(m + 1)] - pa[static_cast<std::size_t>(m + 1)]) / (m + 1);
    }
    const int sa = g.sa[j];
    const int sb = g.sb[j];
    for (int m = 0; m < K; ++m) {
      const HighReal& Im = im[static_cast<std::size_t>(m)];
      for (int n = 0; m + n < K; ++n) {
        const auto mn = static_cast<std::size_t>(m + n + 2);
        HighReal tri = (pb[mn] - pa[mn]) / (m + n + 2) - pa[static_cast<std::size_t>(n + 1)] * Im;
        tri /= (n + 1);
        HighReal term = Im * cum[static_cast<std::size_t>(n)];
        if (sb > 0) term += tri;
        else term -= tri;
        if (sa > 0) nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] += term;
        else nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] -= term;
      }
    }
    for (int n = 0; n < K; ++n) {
      if (sb > 0) cum[static_cast<std::size_t>(n)] += im[static_cast<std::size_t>(n)];
      else cum[static_cast<std::size_t>(n)] -= im[static_cast<std::size_t>(n)];
    }
  }
  return nu;
}

// sum_{k=0}^{M-1} k^n for n < K
std::vector<HighReal> power_sums(int M) {
  std::vector<HighReal> s(Series::kOrder, HighReal(0));
  for (int k = 0; k < M; ++k) {
    HighReal p = 1;
    for (int n = 0; n < Series::kOrder; ++n) {
      s[static_cast<std::size_t>(n)] += p;
      p *= k;
    }
  }
  return s;
}

}  // namespace

namespace detail {

class FilterNode {
 public:
  FilterNode(int num_qubits, double duration) : num_qubits_(num_qubits), duration_(duration) {}
  virtual ~FilterNode() = default;
  FilterNode(const FilterNode&) = delete;
  FilterNode& operator=(const FilterNode&) = delete;

  int num_qubits() const { return num_qubits_; }
  double duration() const { return duration_; }

  bool use_series(double w) const { return std::abs(w * duration_) < 1.0; }

  Complex transform(Channel c, double w) const {
    return use_series(w) ? transform_series(c).evaluate(w) : transform_closed(c, w);
  }
  Complex g2(Channel a, Channel b, double w) const {
    return use_series(w) ? g2_series(a, b).evaluate(w) : g2_closed(a, b, w);
  }

  const Series& transform_series(Channel c) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = t_cache_.find(c.mask); it != t_cache_.end()) return it->second;
    }
    Series s = compute_transform_series(c);
    std::lock_guard lock(mutex_);
    return t_cache_.emplace(c.mask, std::move(s)).first->second;
  }

  const Series& g2_series(Channel a, Channel b) const {
    const auto key = std::pair(a.mask, b.mask);
    {
      std::lock_guard lock(mutex_);
      if (auto it = g2_cache_.find(key); it != g2_cache_.end()) return it->second;
    }
    Series s = compute_g2_series(a, b);
    std::lock_guard lock(mutex_);
    return g2_cache_.emplace(key, std::move(s)).first->second;
  }

  virtual Complex transform_closed(Channel c, double w) const = 0;
  virtual Complex g2_closed(Channel a, Channel b, double w) const = 0;

 protected:
  virtual Series compute_transform_series(Channel c) const = 0;
  virtual Series compute_g2_series(Channel a, Channel b) const = 0;

 private:
  int num_qubits_;
  double duration_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, Series> t_cache_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, Series> g2_cache_;
};

namespace {

class DirectNode final : public FilterNode {
 public:
  explicit DirectNode(const PulseSequence& seq)
      : FilterNode(seq.num_qubits(), seq.duration()), seq_(seq), profile_(seq) {}

  Complex transform_closed(Channel c, double w) const override {
    return transform_closed_profile(channel(c), w);
  }

  Complex g2_closed(Channel a, Channel b, double w) const override {
    const QubitProfile& pa = channel(a);
    const QubitProfile& pb = channel(b);
    return 0.5 * kI * (f2_closed(pa, pb, w, -w) - f2_closed(pb, pa, -w, w));
  }

 protected:
  Series compute_transform_series(Channel c) const override {
    const auto mu = single_moments(channel_cuts(seq_, c));
    const HighReal T(duration());
    Series s;
    HighReal tp = T;
    for (int n = 0; n < Series::kOrder; ++n) {
      s[n] = i_pow(n) * HighComplex(tp * mu[static_cast<std::size_t>(n)] / fact()[static_cast<std::size_t>(n)]);
      tp *= T;
    }
    return s;
  }

  Series compute_g2_series(Channel a, Channel b) const override {
    const auto ca = channel_cuts(seq_, a);
    const auto cb = channel_cuts(seq_, b);
    const auto nab = double_moments(ca, cb);
    const auto nba = double_moments(cb, ca);
    const HighReal T(duration());
    Series s;
    HighReal tp = T * T;
    const auto& f = fact();
    for (int k = 0; k < Series::kOrder; ++k) {
      HighReal sum = 0;
      for (int m = 0; m <= k; ++m) {
        const int n = k - m;
        const HighReal ab = (n % 2 == 0 ? 1 : -1) * nab[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
        const HighReal ba = (m % 2 == 0 ? 1 : -1) * nba[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
        sum += (ab - ba) / (f[static_cast<std::size_t>(m)] * f[static_cast<std::size_t>(n)]);
      }
      // (i/2) * (-T^{k+2} i^k) * sum
      s[k] = HighComplex(0, HighReal(-0.5)) * i_pow(k) * HighComplex(tp * sum);
      tp *= T;
    }
    return s;
  }

 private:
  static Complex transform_closed_profile(const QubitProfile& y, double w) {
    return ::ddff::transform_closed(y, w);
  }

  const QubitProfile& channel(Channel c) const {
    std::lock_guard lock(channel_mutex_);
    auto it = channels_.find(c.mask);
    if (it == channels_.end()) it = channels_.emplace(c.mask, channel_profile(profile_, c)).first;
    return it->second;
  }

  PulseSequence seq_;
  SwitchingProfile profile_;
  mutable std::mutex channel_mutex_;
  mutable std::map<std::uint32_t, QubitProfile> channels_;
};

class RepeatedNode final : public FilterNode {
 public:
  RepeatedNode(std::shared_ptr<const FilterNode> base, int times)
      : FilterNode(base->num_qubits(), base->duration() * times),
        base_(std::move(base)),
        times_(times) {}

  Complex transform_closed(Channel c, double w) const override {
    return repeat_factor(w * base_->duration(), times_) * base_->transform(c, w);
  }

  Complex g2_closed(Channel a, Channel b, double w) const override {
    const double x = w * base_->duration();
    return static_cast<double>(times_) * base_->g2(a, b, w) +
           base_->transform(a, w) * base_->transform(b, -w) * repeat_weight(x, times_);
  }

 protected:
  Series compute_transform_series(Channel c) const override {
    return d_series() * base_->transform_series(c);
  }

  Series compute_g2_series(Channel a, Channel b) const override {
    const Series gg = base_->transform_series(a) * base_->transform_series(b).reflected();
    return HighComplex(times_) * base_->g2_series(a, b) + gg * w_series();
  }

 private:
  Series d_series() const {
    const auto ps = power_sums(times_);
    const HighReal tp(base_->duration());
    Series s;
    HighReal t = 1;
    for (int n = 0; n < Series::kOrder; ++n) {
      s[n] = i_pow(n) * HighComplex(t * ps[static_cast<std::size_t>(n)] / fact()[static_cast<std::size_t>(n)]);
      t *= tp;
    }
    return s;
  }

  // sum_{d=1}^{M-1} (M-d) sin(d w T_p)
  Series w_series() const {
    std::vector<HighReal> ps(Series::kOrder, HighReal(0));
    for (int d = 1; d < times_; ++d) {
      HighReal p = times_ - d;
      for (int n = 0; n < Series::kOrder; ++n) {
        ps[static_cast<std::size_t>(n)] += p;
        p *= d;
      }
    }
    const HighReal tp(base_->duration());
    Series s;
    HighReal t = 1;
    for (int n = 0; n < Series::kOrder; ++n) {
      if (n % 2 == 1) {
        const int sign = (n / 2) % 2 == 0 ? 1 : -1;
        s[n] = HighComplex(sign * t * ps[static_cast<std::size_t>(n)] / fact()[static_cast<std::size_t>(n)]);
      }
      t *= tp;
    }
    return s;
  }

  std::shared_ptr<const FilterNode> base_;
  int times_;
};

class ConcatNode final : public FilterNode {
 public:
  ConcatNode(std::shared_ptr<const FilterNode> first, std::shared_ptr<const FilterNode> second)
      : FilterNode(first->num_qubits(), first->duration() + second->duration()),
        first_(std::move(first)),
        second_(std::move(second)) {}

  Complex transform_closed(Channel c, double w) const override {
    const double t1 = first_->duration();
    return first_->transform(c, w) + Complex(std::cos(w * t1), std::sin(w * t1)) * second_->transform(c, w);
  }

  Complex g2_closed(Channel a, Channel b, double w) const override {
    const double t1 = first_->duration();
    const Complex ph(std::cos(w * t1), std::sin(w * t1));
    const Complex cross = -ph * second_->transform(a, w) * first_->transform(b, -w) +
                          std::conj(ph) * second_->transform(b, -w) * first_->transform(a, w);
    return first_->g2(a, b, w) + second_->g2(a, b, w) + 0.5 * kI * cross;
  }

 protected:
  Series compute_transform_series(Channel c) const override {
    return first_->transform_series(c) + phase() * second_->transform_series(c);
  }

  Series compute_g2_series(Channel a, Channel b) const override {
    const Series ph = phase();
    const Series cross =
        ph * (second_->transform_series(a) * first_->transform_series(b).reflected());
    const Series cross2 = ph.reflected() *
                          (second_->transform_series(b).reflected() * first_->transform_series(a));
    return first_->g2_series(a, b) + second_->g2_series(a, b) +
           HighComplex(0, HighReal(0.5)) * (cross2 - cross);
  }

 private:
  Series phase() const { return Series::exponential(HighComplex(0, HighReal(first_->duration()))); }

  std::shared_ptr<const FilterNode> first_;
  std::shared_ptr<const FilterNode> second_;
};

}  // namespace
}  // namespace detail

QubitProfile product_profile(const QubitProfile& a, const QubitProfile& b) {
  const MergedGrid g = merge(a, b);
  QubitProfile out;
  out.edges.push_back(0.0);
  for (std::size_t j = 0; j < g.sa.size(); ++j) {
    const int s = g.sa[j] * g.sb[j];
    if (!out.signs.empty() && out.signs.back() == s) {
      out.edges.back() = g.edges[j + 1];
      continue;
    }
    out.signs.push_back(s);
    out.edges.push_back(g.edges[j + 1]);
  }
  out.end_parity = a.end_parity != b.end_parity;
  return out;
}

Complex f1(const QubitProfile& y, double w) { return -kI * transform_closed(y, w); }

Complex f1(const SwitchingProfile& p, int q, double w) { return f1(p.qubit(q), w); }

Complex f1_pair(const SwitchingProfile& p, int q1, int q2, double w) {
  return f1(product_profile(p.qubit(q1), p.qubit(q2)), w);
}

Complex f2(const QubitProfile& a, const QubitProfile& b, double w1, double w2) {
  return f2_closed(a, b, w1, w2);
}

Complex f2(const SwitchingProfile& p, int l, int lp, double w1, double w2) {
  return f2_closed(p.qubit(l), p.qubit(lp), w1, w2);
}

Complex g1(const SwitchingProfile& p, int q, double w) { return kI * f1(p, q, w); }

Complex g1_pair(const SwitchingProfile& p, int q1, int q2, double w) {
  return 2.0 * kI * f1_pair(p, q1, q2, w);
}

Complex g2(const SwitchingProfile& p, int l, int lp, double w1, double w2) {
  return 0.5 * kI * (f2(p, l, lp, w1, w2) - f2(p, lp, l, w2, w1));
}

Complex g2_antidiag(const SwitchingProfile& p, int l, int lp, double w) {
  return g2(p, l, lp, w, -w);
}

Complex repeat_factor(double x, int M) {
  if (M < 1) throw InvalidArgument("repetition count must be >= 1");
  const double e = std::remainder(x, 2.0 * std::numbers::pi);
  const double h = 0.5 * e;
  const double ratio = std::abs(h) < 1e-300 ? static_cast<double>(M) : std::sin(M * h) / std::sin(h);
  const double ph = 0.5 * (M - 1) * e;
  return Complex(std::cos(ph), std::sin(ph)) * ratio;
}

double repeat_weight(double x, int M) {
  if (M < 1) throw InvalidArgument("repetition count must be >= 1");
  const double e = std::remainder(x, 2.0 * std::numbers::pi);
  if (std::abs(M * e) < 1.0) {
    double s = 0.0;
    for (int d = 1; d < M; ++d) s += (M - d) * std::sin(d * e);
    return s;
  }
  const double sh = std::sin(0.5 * e);
  return (M * std::sin(e) - std::sin(M * e)) / (4.0 * sh * sh);
}

Complex g1_repeat(double w, double period, int M, Complex base) {
  return repeat_factor(w * period, M) * base;
}

Channel Channel::qubit(int q) {
  if (q < 0 || q >= 32) throw InvalidArgument("qubit index out of range");
  return Channel{1u << q};
}

Channel Channel::pair(int q1, int q2) {
  if (q1 == q2) throw InvalidArgument("pair channel needs two distinct qubits");
  return Channel{qubit(q1).mask | qubit(q2).mask};
}

bool Channel::is_pair() const { return std::popcount(mask) == 2; }

FilterBundle::FilterBundle(std::shared_ptr<const detail::FilterNode> node) : node_(std::move(node)) {}

FilterBundle FilterBundle::direct(const PulseSequence& seq) {
  return FilterBundle(std::make_shared<detail::DirectNode>(seq));
}

FilterBundle FilterBundle::repeated(const FilterBundle& base, int times) {
  if (times < 1) throw InvalidArgument("repetition count must be >= 1");
  if (times == 1) return base;
  return FilterBundle(std::make_shared<detail::RepeatedNode>(base.node_, times));
}

FilterBundle FilterBundle::concatenated(const FilterBundle& first, const FilterBundle& second) {
  if (first.num_qubits() != second.num_qubits()) {
    throw InvalidArgument("concatenated stages must act on the same qubits");
  }
  return FilterBundle(std::make_shared<detail::ConcatNode>(first.node_, second.node_));
}

int FilterBundle::num_qubits() const { return node_->num_qubits(); }
double FilterBundle::duration() const { return node_->duration(); }

Complex FilterBundle::transform(Channel c, double w) const { return node_->transform(c, w); }

Complex FilterBundle::g1(Channel c, double w) const {
  return (c.is_pair() ? 2.0 : 1.0) * transform(c, w);
}

Complex FilterBundle::g2(Channel a, Channel b, double w) const { return node_->g2(a, b, w); }

const Series& FilterBundle::transform_series(Channel c) const { return node_->transform_series(c); }

const Series& FilterBundle::g2_series(Channel a, Channel b) const { return node_->g2_series(a, b); }

std::optional<int> FilterBundle::g1_order(Channel c) const {
  return transform_series(c).leading_order(duration(), duration());
}

std::optional<int> FilterBundle::g2_order(Channel a, Channel b) const {
  return g2_series(a, b).leading_order(duration(), duration() * duration());
}

RepeatSplit g2_repeat_split(const FilterBundle& base, int times, Channel a, Channel b, double w) {
  if (times < 1) throw InvalidArgument("repetition count must be >= 1");
  const double x = std::remainder(w * base.duration(), 2.0 * std::numbers::pi);
  const Complex gg = base.transform(a, w) * base.transform(b, -w);
  const Complex g2b = base.g2(a, b, w);
  const double sh = std::sin(0.5 * x);
  if (std::abs(sh) < 1e-12) {
    throw DomainError("repetition split is singular on a comb peak");
  }
  RepeatSplit r;
  r.m_linear = 2.0 * kI * g2b + kI * gg * (std::cos(0.5 * x) / sh);
  r.bounded = -kI * gg * std::sin(times * x) / (2.0 * sh * sh);
  return r;
}

double verify_factorization(const PulseSequence& seq, int q1, int q2,
                            std::span<const double> omegas) {
  if (!check_symmetry(seq, SymmetryKind::displacement, q1, q2)) {
    throw PreconditionError("pair is not displacement anti-symmetric");
  }
  int l = q1;
  int lp = q2;
  if (qubit_parity(seq, q1, SymmetryKind::displacement) != -1) std::swap(l, lp);

  std::vector<std::vector<Fraction>> half(static_cast<std::size_t>(seq.num_qubits()));
  const Fraction mid(1, 2);
  for (int q = 0; q < seq.num_qubits(); ++q) {
    for (const auto& p : seq.pulses(q)) {
      if (p < mid && !same_instant(p, mid)) half[static_cast<std::size_t>(q)].push_back(p * Fraction(2, 1));
    }
  }
  const double T = seq.duration();
  const FilterBundle full = FilterBundle::direct(seq);
  const FilterBundle first = FilterBundle::direct(PulseSequence(seq.num_qubits(), 0.5 * T, half));
  const Channel cl = Channel::qubit(l);
  const Channel clp = Channel::qubit(lp);
  double worst = 0.0;
  for (double w : omegas) {
    const Complex lhs = -kI * full.g2(cl, clp, w);
    const Complex f1l = -kI * first.transform(cl, w);
    const Complex f1lp = -kI * first.transform(clp, -w);
    worst = std::max(worst, std::abs(lhs + std::cos(0.5 * w * T) * f1l * f1lp));
  }
  return worst;
}

}  // namespace ddff
