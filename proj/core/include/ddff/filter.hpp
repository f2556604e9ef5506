#pragma once

#include "ddff/sequence.hpp"
#include "ddff/series.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ddff {

using Complex = std::complex<double>;

// Closed forms on a piecewise-constant profile, no series branch.
// F1 = -i int_0^T y e^{iwt} dt
Complex f1(const QubitProfile& y, double w);
Complex f1(const SwitchingProfile& p, int q, double w);
// F1 of the product profile y_l y_l'
Complex f1_pair(const SwitchingProfile& p, int q1, int q2, double w);
// F2 = - int_0^T dt1 int_0^t1 dt2 y_a(t1) y_b(t2) e^{i w1 t1 + i w2 t2}
Complex f2(const QubitProfile& a, const QubitProfile& b, double w1, double w2);
Complex f2(const SwitchingProfile& p, int l, int lp, double w1, double w2);

Complex g1(const SwitchingProfile& p, int q, double w);                 // i F1
Complex g1_pair(const SwitchingProfile& p, int q1, int q2, double w);   // 2 i F1_pair
// (i/2) (F2_{l,l'}(w1, w2) - F2_{l',l}(w2, w1))
Complex g2(const SwitchingProfile& p, int l, int lp, double w1, double w2);
Complex g2_antidiag(const SwitchingProfile& p, int l, int lp, double w);

QubitProfile product_profile(const QubitProfile& a, const QubitProfile& b);

// sum_{k<M} e^{ikx}
Complex repeat_factor(double x, int M);
// sum_{d=1}^{M-1} (M-d) sin(dx)
double repeat_weight(double x, int M);
Complex g1_repeat(double w, double period, int M, Complex base);

// Noise channel: the product of the switching functions of a qubit set.
struct Channel {
  std::uint32_t mask = 0;

  static Channel qubit(int q);
  static Channel pair(int q1, int q2);
  bool is_pair() const;
  friend bool operator==(Channel, Channel) = default;
  friend auto operator<=>(Channel, Channel) = default;
};

namespace detail {
class FilterNode;
}

// Filter functions of a (possibly repeated or concatenated) sequence, with
// a high-precision small-frequency series below |w T| = 1.
class FilterBundle {
 public:
  static FilterBundle direct(const PulseSequence& seq);
  static FilterBundle repeated(const FilterBundle& base, int times);
  static FilterBundle concatenated(const FilterBundle& first, const FilterBundle& second);

  int num_qubits() const;
  double duration() const;

  // int_0^T y_c(t) e^{iwt} dt
  Complex transform(Channel c, double w) const;
  // Generalized first-order FF: transform for a qubit, twice it for a pair.
  Complex g1(Channel c, double w) const;
  // G2_{a,b}(w, -w)
  Complex g2(Channel a, Channel b, double w) const;

  const Series& transform_series(Channel c) const;
  const Series& g2_series(Channel a, Channel b) const;

  // Order of the zero at w = 0, nullopt if identically zero to working precision.
  std::optional<int> g1_order(Channel c) const;
  std::optional<int> g2_order(Channel a, Channel b) const;

 private:
  explicit FilterBundle(std::shared_ptr<const detail::FilterNode> node);
  std::shared_ptr<const detail::FilterNode> node_;
};

struct RepeatSplit {
  Complex m_linear;  // coefficient of M
  Complex bounded;   // M-independent remainder
};
// 2i G2(w,-w, M T_p) = M * m_linear + bounded
RepeatSplit g2_repeat_split(const FilterBundle& base, int times, Channel a, Channel b, double w);

// max_w |-i G2(w,-w,T) + cos(wT/2) F1_l(w,T/2) F1_l'(-w,T/2)| with l the
// qubit that is anti-symmetric under displacement.
double verify_factorization(const PulseSequence& seq, int q1, int q2,
                            std::span<const double> omegas);

}  // namespace ddff
