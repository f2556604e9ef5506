#include "ddff/mc_oracle.hpp"

#include "ddff/dynamics.hpp"
#include "ddff/errors.hpp"
#include "ddff/parallel.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ddff {

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
  return std::mt19937_64(seq);
}

// sum_c Delta_c w_c y_c(t) projected on 1, cos(w_k t), sin(w_k t)
struct Projection {
  double dc = 0.0;
  std::vector<double> c;
  std::vector<double> s;
};

void add_profile(Projection& p, const QubitProfile& y, double weight, const std::vector<double>& omega) {
  for (std::size_t j = 0; j + 1 < y.edges.size(); ++j) {
    const double t0 = y.edges[j];
    const double t1 = y.edges[j + 1];
    const double coef = weight * y.signs[j];
    p.dc += coef * (t1 - t0);
    for (std::size_t k = 0; k < omega.size(); ++k) {
      const double w = omega[k];
      p.c[k] += coef * (std::sin(w * t1) - std::sin(w * t0)) / w;
      p.s[k] += coef * (std::cos(w * t0) - std::cos(w * t1)) / w;
    }
  }
}

std::vector<double> midpoints(const ClassicalPSD& psd, int k) {
  std::vector<double> w(static_cast<std::size_t>(k));
  const double dw = psd.support() / k;
  for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = (i + 0.5) * dw;
  return w;
}

}  // namespace

Trajectory::Trajectory(double offset, std::vector<double> omega, std::vector<double> a, std::vector<double> b)
    : offset_(offset), omega_(std::move(omega)), a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != omega_.size() || b_.size() != omega_.size()) {
    throw InvalidArgument("harmonic arrays differ in length");
  }
}

double Trajectory::operator()(double t) const {
  double x = offset_;
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    x += a_[k] * std::cos(omega_[k] * t) + b_[k] * std::sin(omega_[k] * t);
  }
  return x;
}

double Trajectory::integral(double t0, double t1) const {
  double x = offset_ * (t1 - t0);
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const double w = omega_[k];
    x += a_[k] * (std::sin(w * t1) - std::sin(w * t0)) / w + b_[k] * (std::cos(w * t0) - std::cos(w * t1)) / w;
  }
  return x;
}

int harmonic_count(const ClassicalPSD& psd, const TrajectoryConfig& config) {
  if (psd.continuous_zero()) return 0;
  if (config.harmonics > 0) return config.harmonics;
  const double k = std::ceil(64.0 * psd.support() * config.duration / (2.0 * kPi));
  return static_cast<int>(std::max(64.0, k));
}

Trajectory sample_gaussian_process(const ClassicalPSD& psd, const TrajectoryConfig& config,
                                   std::uint64_t index, std::uint64_t stream) {
  if (!(config.duration > 0)) throw InvalidArgument("duration must be positive");
  const int k = harmonic_count(psd, config);
  auto rng = stream_rng(config.seed, stream, index);
  std::normal_distribution<double> normal;
  const double offset = psd.static_variance() > 0 ? std::sqrt(psd.static_variance()) * normal(rng) : 0.0;
  std::vector<double> omega = midpoints(psd, k);
  std::vector<double> a(omega.size());
  std::vector<double> b(omega.size());
  const double dw = k > 0 ? psd.support() / k : 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double sd = std::sqrt(psd(omega[i]) * dw / kPi);
    a[i] = sd * normal(rng);
    b[i] = sd * normal(rng);
  }
  return Trajectory(offset, std::move(omega), std::move(a), std::move(b));
}

double synthesized_covariance(const ClassicalPSD& psd, const TrajectoryConfig& config, double tau) {
  const int k = harmonic_count(psd, config);
  double c = psd.static_variance();
  if (k == 0) return c;
  const double dw = psd.support() / k;
  for (double w : midpoints(psd, k)) c += psd(w) * dw / kPi * std::cos(w * tau);
  return c;
}

McEstimate mc_coherence(const PulseSequence& seq, const std::vector<McSource>& sources,
                        const TrajectoryConfig& config, std::uint32_t a, std::uint32_t b,
                        unsigned threads) {
  if (config.trajectories < 2) throw InvalidArgument("need at least two trajectories");
  if (std::abs(seq.duration() - config.duration) > 1e-12 * seq.duration()) {
    throw InvalidArgument("trajectory duration must match the sequence");
  }
  const int n = seq.num_qubits();
  if (a >= (1u << n) || b >= (1u << n)) throw InvalidArgument("basis index out of range");
  const SwitchingProfile prof(seq);

  std::vector<Projection> proj;
  for (const auto& src : sources) {
    const int k = harmonic_count(src.psd, config);
    const std::vector<double> omega = midpoints(src.psd, k);
    Projection p{0.0, std::vector<double>(omega.size()), std::vector<double>(omega.size())};
    for (const Channel c : src.channels) {
      const int delta = channel_delta(a, b, c, n);
      if (delta == 0) continue;
      std::vector<int> qubits;
      for (int q = 0; q < n; ++q) {
        if (c.mask >> q & 1u) qubits.push_back(q);
      }
      if (qubits.size() == 1) {
        add_profile(p, prof.qubit(qubits[0]), delta, omega);
      } else if (qubits.size() == 2) {
        add_profile(p, product_profile(prof.qubit(qubits[0]), prof.qubit(qubits[1])), 2.0 * delta, omega);
      } else {
        throw InvalidArgument("channels act on one or two qubits");
      }
    }
    proj.push_back(std::move(p));
  }

  const std::size_t m = config.trajectories;
  std::vector<double> re(m);
  std::vector<double> im(m);
  parallel_for(
      m,
      [&](std::size_t i) {
        double x = 0;
        for (std::size_t s = 0; s < sources.size(); ++s) {
          const Trajectory xi = sample_gaussian_process(sources[s].psd, config, i, s);
          const Projection& p = proj[s];
          x += xi.offset() * p.dc;
          const auto& am = xi.cos_amplitudes();
          const auto& bm = xi.sin_amplitudes();
          for (std::size_t k = 0; k < p.c.size(); ++k) x += am[k] * p.c[k] + bm[k] * p.s[k];
        }
        re[i] = std::cos(x);
        im[i] = -std::sin(x);
      },
      threads);

  const double mr = pairwise_sum(re) / static_cast<double>(m);
  const double mi = pairwise_sum(im) / static_cast<double>(m);
  std::vector<double> dev(m);
  for (std::size_t i = 0; i < m; ++i) dev[i] = (re[i] - mr) * (re[i] - mr) + (im[i] - mi) * (im[i] - mi);
  const double var = pairwise_sum(dev) / static_cast<double>(m - 1);
  return {{mr, mi}, std::sqrt(var / static_cast<double>(m)), m};
}

}  // namespace ddff
