#include "ddff/dynamics.hpp"

#include "ddff/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>

namespace ddff {

namespace {

constexpr double kPi = std::numbers::pi;

struct PartOrders {
  std::optional<int> re;
  std::optional<int> im;
};

PartOrders part_orders(const Series& s, double time) {
  HighReal scale(0);
  HighReal t(1);
  for (int n = 0; n < Series::kOrder; ++n) {
    scale = std::max(scale, HighReal(abs(s[n]) / t));
    t *= HighReal(time);
  }
  if (scale == 0) return {};
  const double sc = static_cast<double>(scale);
  return {s.leading_order_real(time, sc), s.leading_order_imag(time, sc)};
}

std::optional<int> min_order(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::optional<int> shifted(std::optional<int> a) {
  if (!a) return a;
  return *a + 1;
}

QuadratureOptions options_for(const FilterBundle& ff, double transit, double exponent) {
  QuadratureOptions opt;
  double scale = ff.duration();
  if (std::isfinite(transit)) scale = std::max(scale, std::abs(transit));
  opt.max_panel = kPi / (2.0 * scale);
  opt.endpoint_exponent = exponent;
  return opt;
}

double pair_multiplicity(Channel a, Channel b) { return a == b ? 1.0 : 2.0; }

}  // namespace

std::optional<int> low_frequency_order(const Series& p, double time, double kappa, bool real_part) {
  const PartOrders o = part_orders(p, time);
  if (kappa == 0.0) return real_part ? o.re : o.im;
  // Re[P e^{ikw}] = Re P cos - Im P sin; Im[P e^{ikw}] = Im P cos + Re P sin
  return real_part ? min_order(o.re, shifted(o.im)) : min_order(o.im, shifted(o.re));
}

int basis_bit(std::uint32_t a, int qubit, int num_qubits) {
  return static_cast<int>((a >> (num_qubits - 1 - qubit)) & 1u);
}

int channel_delta(std::uint32_t a, std::uint32_t b, Channel c, int num_qubits) {
  int pa = 0;
  int pb = 0;
  for (int q = 0; q < num_qubits; ++q) {
    if (!(c.mask >> q & 1u)) continue;
    pa ^= basis_bit(a, q, num_qubits);
    pb ^= basis_bit(b, q, num_qubits);
  }
  return (pa ? -1 : 1) - (pb ? -1 : 1);
}

CoherenceFactors::CoherenceFactors(int num_qubits, std::vector<DecayTerm> decay,
                                   std::vector<PhaseTerm> phase, std::vector<OffsetTerm> offsets)
    : n_(num_qubits), decay_(std::move(decay)), phase_(std::move(phase)), offsets_(std::move(offsets)) {
  if (n_ < 1 || n_ > 16) throw InvalidArgument("qubit count out of range");
  for (const auto& t : phase_) {
    if (t.l < 0 || t.lp >= n_ || t.l >= t.lp) throw InvalidArgument("phase term needs l < l'");
  }
}

CoherenceFactors CoherenceFactors::zero(int num_qubits) { return CoherenceFactors(num_qubits, {}, {}); }

double CoherenceFactors::chi(std::uint32_t a, std::uint32_t b) const {
  double acc = 0;
  for (const auto& t : decay_) {
    const int da = channel_delta(a, b, t.first, n_);
    const int db = channel_delta(a, b, t.second, n_);
    acc += 0.5 * pair_multiplicity(t.first, t.second) * da * db * t.k;
  }
  return acc;
}

double CoherenceFactors::phi(std::uint32_t a, std::uint32_t b) const {
  double acc = 0;
  auto z = [&](std::uint32_t s, int q) { return basis_bit(s, q, n_) ? -1 : 1; };
  for (const auto& t : phase_) {
    const int pa = z(a, t.l) * z(a, t.lp);
    const int pb = z(b, t.l) * z(b, t.lp);
    const int cross = z(b, t.l) * z(a, t.lp) - z(b, t.lp) * z(a, t.l);
    acc += 0.5 * (pa - pb) * t.phi0 - 0.5 * cross * t.phi1;
  }
  for (const auto& o : offsets_) acc -= channel_delta(a, b, o.channel, n_) * o.value;
  return acc;
}

std::complex<double> CoherenceFactors::factor(std::uint32_t a, std::uint32_t b) const {
  return std::exp(std::complex<double>(-chi(a, b), phi(a, b)));
}

double CoherenceFactors::chi_component(Channel a, Channel b) const {
  if (b < a) std::swap(a, b);
  double acc = 0;
  for (const auto& t : decay_) {
    Channel x = t.first;
    Channel y = t.second;
    if (y < x) std::swap(x, y);
    if (x == a && y == b) acc += (a == b ? 2.0 : 4.0) * t.k;
  }
  return acc;
}

double CoherenceFactors::phi0(int l, int lp) const {
  double acc = 0;
  for (const auto& t : phase_) {
    if (t.l == l && t.lp == lp) acc += t.phi0;
  }
  return acc;
}

double CoherenceFactors::phi1(int l, int lp) const {
  double acc = 0;
  for (const auto& t : phase_) {
    if (t.l == l && t.lp == lp) acc += t.phi1;
  }
  return acc;
}

QuadratureResult classical_overlap(const FilterBundle& ff, const ClassicalSource& source) {
  const Channel c = source.first;
  const Channel d = source.second;
  const ClassicalPSD& psd = source.psd;
  QuadratureResult out;
  if (!psd.continuous_zero()) {
    const Series p = ff.transform_series(c) * ff.transform_series(d).reflected();
    const auto order = low_frequency_order(p, ff.duration(), 0.0, true);
    if (order) {
      const double expo = *order + psd.shape().low_exponent();
      auto f = [&](double w) {
        return psd(w) * std::real(ff.g1(c, w) * ff.g1(d, -w)) / kPi;
      };
      out = integrate_panels(f, psd.support(), options_for(ff, 0.0, expo));
    }
  }
  if (psd.static_variance() > 0) {
    out.value += psd.static_variance() * std::real(ff.g1(c, 0.0) * ff.g1(d, 0.0));
  }
  return out;
}

QuadratureResult quantum_overlap(const FilterBundle& ff, const SpinBoson& bath, int l, int lp) {
  if (l < 0 || lp < 0 || l >= bath.num_qubits() || lp >= bath.num_qubits() ||
      l >= ff.num_qubits() || lp >= ff.num_qubits()) {
    throw InvalidArgument("qubit index out of range");
  }
  if (bath.density().amplitude == 0.0) return {};
  if (l != lp && !bath.correlated(l, lp)) return {};
  const double t = l == lp ? 0.0 : bath.transit(l, lp);
  const Channel cl = Channel::qubit(l);
  const Channel clp = Channel::qubit(lp);
  const Series p = ff.transform_series(cl).reflected() * ff.transform_series(clp);
  const auto order = low_frequency_order(p, ff.duration(), -bath.transit_sign() * t, true);
  if (!order) return {};
  const double expo = *order + bath.plus_metadata().exponent;
  auto f = [&](double w) {
    const Complex gl = ff.transform(cl, w);
    const Complex glp = l == lp ? gl : ff.transform(clp, w);
    return std::real(bath.s_plus(l, lp, w) * std::conj(gl) * glp) / kPi;
  };
  return integrate_panels(f, bath.support(), options_for(ff, t, expo));
}

QuadratureResult overlap_chi(const FilterBundle& ff, const ClassicalSource& source) {
  QuadratureResult r = classical_overlap(ff, source);
  const double m = source.first == source.second ? 2.0 : 4.0;
  r.value *= m;
  r.error *= m;
  return r;
}

QuadratureResult overlap_chi(const FilterBundle& ff, const SpinBoson& bath, int l, int lp) {
  QuadratureResult r = quantum_overlap(ff, bath, l, lp);
  const double m = l == lp ? 2.0 : 4.0;
  r.value *= m;
  r.error *= m;
  return r;
}

PhaseTerm overlap_phi(const FilterBundle& ff, const SpinBoson& bath, int l, int lp) {
  if (l < 0 || lp < 0 || l >= bath.num_qubits() || lp >= bath.num_qubits() ||
      l >= ff.num_qubits() || lp >= ff.num_qubits() || l == lp) {
    throw InvalidArgument("phase needs two distinct qubits");
  }
  PhaseTerm out;
  out.l = std::min(l, lp);
  out.lp = std::max(l, lp);
  if (bath.density().amplitude == 0.0 || !bath.correlated(l, lp)) return out;
  const double t = bath.transit(l, lp);
  const double kappa = -bath.transit_sign() * t;
  const double s = bath.minus_metadata().exponent;
  const Channel cl = Channel::qubit(l);
  const Channel clp = Channel::qubit(lp);

  const Series p0 = ff.g2_series(cl, clp).reflected();
  if (const auto o = low_frequency_order(p0, ff.duration(), kappa, true)) {
    auto f = [&](double w) { return std::real(bath.s_minus(l, lp, w) * ff.g2(cl, clp, -w)); };
    const QuadratureResult r = integrate_panels(f, bath.support(), options_for(ff, t, *o + s));
    out.phi0 = -4.0 / kPi * r.value;
    out.error += 4.0 / kPi * r.error;
  }

  const Series p1 = ff.transform_series(cl).reflected() * ff.transform_series(clp);
  if (const auto o = low_frequency_order(p1, ff.duration(), kappa, false)) {
    auto f = [&](double w) {
      return std::imag(bath.s_minus(l, lp, w) * std::conj(ff.transform(cl, w)) * ff.transform(clp, w));
    };
    const QuadratureResult r = integrate_panels(f, bath.support(), options_for(ff, t, *o + s));
    out.phi1 = -2.0 / kPi * r.value;
    out.error += 2.0 / kPi * r.error;
  }
  // Stored with l < l'; swapping the pair flips phi1.
  if (l > lp) out.phi1 = -out.phi1;
  return out;
}

CoherenceFactors assemble_coherence(const FilterBundle& ff, const NoiseModel& noise) {
  const int n = ff.num_qubits();
  std::vector<DecayTerm> decay;
  std::vector<PhaseTerm> phase;
  std::vector<OffsetTerm> offsets;
  for (const auto& src : noise.classical) {
    const auto r = classical_overlap(ff, src);
    decay.push_back({src.first, src.second, r.value, r.error});
  }
  if (noise.quantum) {
    const SpinBoson& bath = *noise.quantum;
    if (bath.num_qubits() != n) throw InvalidArgument("bath and sequence qubit counts differ");
    for (int l = 0; l < n; ++l) {
      for (int lp = l; lp < n; ++lp) {
        const auto r = quantum_overlap(ff, bath, l, lp);
        decay.push_back({Channel::qubit(l), Channel::qubit(lp), r.value, r.error});
        if (lp != l) phase.push_back(overlap_phi(ff, bath, l, lp));
      }
    }
  }
  for (const auto& o : noise.offsets) {
    offsets.push_back({o.channel, o.value * std::real(ff.g1(o.channel, 0.0))});
  }
  return CoherenceFactors(n, std::move(decay), std::move(phase), std::move(offsets));
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<std::complex<double>> elements)
    : n_(num_qubits), data_(std::move(elements)) {
  if (n_ < 1 || n_ > 12) throw InvalidArgument("qubit count out of range");
  const std::uint32_t d = dimension();
  if (data_.size() != static_cast<std::size_t>(d) * d) throw InvalidArgument("density matrix has wrong size");
  constexpr double tol = 1e-10;
  std::complex<double> trace = 0;
  for (std::uint32_t a = 0; a < d; ++a) {
    trace += (*this)(a, a);
    if ((*this)(a, a).real() < -tol) throw InvalidArgument("density matrix has negative diagonal");
    for (std::uint32_t b = 0; b < d; ++b) {
      if (std::abs((*this)(a, b) - std::conj((*this)(b, a))) > tol) {
        throw InvalidArgument("density matrix is not Hermitian");
      }
      // 2x2 principal minors of a PSD matrix are non-negative.
      if (std::norm((*this)(a, b)) > (*this)(a, a).real() * (*this)(b, b).real() + tol) {
        throw InvalidArgument("density matrix is not positive semidefinite");
      }
    }
  }
  if (std::abs(trace - 1.0) > tol) throw InvalidArgument("density matrix must have unit trace");
}

DensityMatrix DensityMatrix::pure(std::span<const std::complex<double>> psi) {
  const auto d = psi.size();
  if (d < 2 || !std::has_single_bit(d)) throw InvalidArgument("state length must be a power of two");
  double norm = 0;
  for (const auto& c : psi) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("state must be normalized");
  std::vector<std::complex<double>> rho(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) rho[a * d + b] = psi[a] * std::conj(psi[b]);
  }
  return DensityMatrix(std::countr_zero(d), std::move(rho));
}

DensityMatrix evolve(const DensityMatrix& rho0, const CoherenceFactors& factors) {
  if (rho0.num_qubits() != factors.num_qubits()) throw InvalidArgument("qubit counts differ");
  const std::uint32_t d = rho0.dimension();
  std::vector<std::complex<double>> out(rho0.elements());
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = 0; b < d; ++b) {
      if (a != b) out[a * d + b] *= factors.factor(a, b);
    }
  }
  return DensityMatrix(rho0.num_qubits(), std::move(out));
}

double fidelity(std::span<const std::complex<double>> psi, const CoherenceFactors& factors) {
  const std::uint32_t d = factors.dimension();
  if (psi.size() != d) throw InvalidArgument("state dimension does not match");
  std::vector<double> w(static_cast<std::size_t>(d) * d);
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = 0; b < d; ++b) w[a * d + b] = std::norm(psi[a]) * std::norm(psi[b]);
  }
  return fidelity_from_weights(w, factors);
}

double fidelity_from_weights(std::span<const double> weights, const CoherenceFactors& factors) {
  const std::uint32_t d = factors.dimension();
  if (weights.size() != static_cast<std::size_t>(d) * d) throw InvalidArgument("weight matrix has wrong size");
  double acc = 0;
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = 0; b < d; ++b) {
      const double w = weights[a * d + b];
      if (w == 0.0) continue;
      acc += w * (a == b ? 1.0 : std::real(factors.factor(a, b)));
    }
  }
  return acc;
}

}  // namespace ddff
