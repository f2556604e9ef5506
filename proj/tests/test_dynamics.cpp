#include "ddff/dynamics.hpp"
#include "ddff/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace ddff;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

PulseSequence pair_of(const PulseSequence& a, const PulseSequence& b) {
  const std::vector<PulseSequence> s{a, b};
  return product(s);
}

// Exact reduced dynamics of two qubits coupled to discretized bosonic modes,
// H = sum_l y_l(t) Z_l B_l(t), B_l = sum_k g_k^l b_k e^{-iW t} + h.c.
// Each mode is a driven oscillator; its displacement and geometric phase
// are integrated with RK4 on a grid aligned to the pulse times.
struct OscillatorOracle {
  std::array<std::array<C, 4>, 4> log_factor{};
};

OscillatorOracle oscillator_oracle(const PulseSequence& seq, const SpinBoson& bath, int panels,
                                   int steps_per_unit) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const SwitchingProfile prof(seq);
  const double wc = bath.density().cutoff.omega_c;
  const double t01 = bath.transit(0, 1);
  const int sigma = bath.transit_sign();
  const double beta = bath.beta();

  std::vector<double> grid{0.0};
  for (int q = 0; q < 2; ++q) {
    for (double e : prof.qubit(q).edges) grid.push_back(e);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             grid.end());

  OscillatorOracle out;
  for (int p = 0; p < panels; ++p) {
    const double lo = wc * p / panels;
    const double hi = wc * (p + 1) / panels;
    const double half = (hi - lo) / 2;
    const double mid = (hi + lo) / 2;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
      for (int side : {-1, 1}) {
        const double w = mid + side * half * GL::abscissa()[i];
        const double g = std::sqrt(bath.j(w) * half * GL::weights()[i]);
        // g^0 g^1* = |g|^2 e^{-i sigma w t01}
        const std::array<C, 2> gl{g * std::polar(1.0, -sigma * w * t01), C(g)};
        std::array<C, 4> alpha{};
        std::array<double, 4> theta{};
        for (std::size_t s = 0; s + 1 < grid.size(); ++s) {
          const double ta = grid[s];
          const double tb = grid[s + 1];
          const double tm = (ta + tb) / 2;
          const int n = std::max(4, static_cast<int>(std::ceil((tb - ta) * steps_per_unit)));
          const double h = (tb - ta) / n;
          for (int a = 0; a < 4; ++a) {
            const int z0 = (a >> 1 & 1) ? -1 : 1;
            const int z1 = (a & 1) ? -1 : 1;
            const C c = static_cast<double>(z0 * prof.sign_at(0, tm)) * std::conj(gl[0]) +
                        static_cast<double>(z1 * prof.sign_at(1, tm)) * std::conj(gl[1]);
            // d alpha/dt = -i f, d theta/dt = -Re(f* alpha), f = c e^{iwt}
            auto rhs = [&](double t, C al) {
              const C f = c * std::polar(1.0, w * t);
              return std::pair<C, double>(C(0, -1) * f, -std::real(std::conj(f) * al));
            };
            C al = alpha[a];
            double th = theta[a];
            for (int k = 0; k < n; ++k) {
              const double t = ta + k * h;
              const auto [a1, t1] = rhs(t, al);
              const auto [a2, t2] = rhs(t + h / 2, al + h / 2 * a1);
              const auto [a3, t3] = rhs(t + h / 2, al + h / 2 * a2);
              const auto [a4, t4] = rhs(t + h, al + h * a3);
              al += h / 6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
              th += h / 6 * (t1 + 2 * t2 + 2 * t3 + t4);
            }
            alpha[a] = al;
            theta[a] = th;
          }
        }
        const double occ = std::isinf(beta) ? 1.0 : 1.0 / std::tanh(beta * w / 2);
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            out.log_factor[a][b] += C(0, theta[a] - theta[b]) +
                                    C(0, std::imag(std::conj(alpha[b]) * alpha[a])) -
                                    std::norm(alpha[a] - alpha[b]) * occ / 2.0;
          }
        }
      }
    }
  }
  return out;
}

NoiseModel quantum_only(const SpinBoson& bath) {
  NoiseModel m;
  m.quantum = bath;
  return m;
}

NoiseModel classical_only(Channel a, Channel b, ClassicalPSD psd) {
  NoiseModel m;
  m.classical.push_back({a, b, psd});
  return m;
}

}  // namespace

TEST(Basis, BitsAndDeltas) {
  EXPECT_EQ(basis_bit(1, 0, 2), 0);
  EXPECT_EQ(basis_bit(1, 1, 2), 1);
  EXPECT_EQ(basis_bit(2, 0, 2), 1);
  EXPECT_EQ(channel_delta(0, 1, Channel::qubit(1), 2), 2);
  EXPECT_EQ(channel_delta(0, 1, Channel::qubit(0), 2), 0);
  EXPECT_EQ(channel_delta(1, 2, Channel::pair(0, 1), 2), 0);
  EXPECT_EQ(channel_delta(0, 3, Channel::pair(0, 1), 2), 0);
  EXPECT_EQ(channel_delta(3, 1, Channel::qubit(0), 2), -2);
}

struct OracleCase {
  double beta;
  int sign;
  double t01;
};

class ExactOscillator : public ::testing::TestWithParam<OracleCase> {};

TEST_P(ExactOscillator, MatchesCoherenceFactors) {
  const auto [beta, sign, t01] = GetParam();
  const auto seq = pair_of(build_udd(1, 1.0), build_udd(2, 1.0));
  const SpinBoson bath =
      SpinBoson::two_qubit(PowerLaw{0.05, 1.0, Cutoff{10.0, CutoffKind::hard}}, beta, t01, sign);
  const auto cf = assemble_coherence(FilterBundle::direct(seq), quantum_only(bath));
  const auto oracle = oscillator_oracle(seq, bath, 10, 3000);
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      const C ref = oracle.log_factor[a][b];
      EXPECT_NEAR(cf.chi(a, b), -ref.real(), 1e-7 * std::max(1.0, std::abs(ref))) << a << b;
      EXPECT_NEAR(cf.phi(a, b), ref.imag(), 1e-7 * std::max(1.0, std::abs(ref))) << a << b;
    }
  }
  EXPECT_GT(std::abs(cf.phi0(0, 1)), 1e-4);
  EXPECT_GT(std::abs(cf.phi1(0, 1)), 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Baths, ExactOscillator,
                         ::testing::Values(OracleCase{2.0, 1, 0.3}, OracleCase{SpinBoson::kZeroTemperature, -1, -0.7},
                                           OracleCase{0.5, 1, 2.5}));

TEST(Classical, StaticNoiseOnFreeQubit) {
  const double T = 2.0;
  const double var = 0.15;
  const auto seq = PulseSequence::free(1, T);
  const auto cf = assemble_coherence(FilterBundle::direct(seq),
                                     classical_only(Channel::qubit(0), Channel::qubit(0),
                                                    ClassicalPSD::static_only(var)));
  EXPECT_NEAR(cf.chi(0, 1), 2.0 * var * T * T, 1e-13);
  EXPECT_NEAR(std::abs(cf.factor(0, 1)), std::exp(-2.0 * var * T * T), 1e-13);
  // a spin echo refocuses it
  const auto echo = assemble_coherence(FilterBundle::direct(build_cdd(1, T)),
                                       classical_only(Channel::qubit(0), Channel::qubit(0),
                                                      ClassicalPSD::static_only(var)));
  EXPECT_NEAR(echo.chi(0, 1), 0.0, 1e-15);
}

TEST(Classical, DeterministicOffsetPhase) {
  NoiseModel m;
  m.offsets.push_back({Channel::qubit(0), 0.3});
  m.offsets.push_back({Channel::pair(0, 1), 0.1});
  const auto cf = assemble_coherence(FilterBundle::direct(PulseSequence::free(2, 1.5)), m);
  // (00, 10): Delta_0 = 2, Delta_01 = 2, pair G(0) = 2T
  EXPECT_NEAR(cf.phi(0, 2), -2.0 * 0.3 * 1.5 - 2.0 * 0.1 * 3.0, 1e-14);
  EXPECT_EQ(cf.chi(0, 2), 0.0);
}

TEST(Classical, MatchesQuantumSymmetrizedPart) {
  // A classical PSD equal to S+ gives the same decay as the bath.
  const double amp = 0.02;
  const auto seq = pair_of(build_cdd(2, 1.0), build_udd(3, 1.0));
  const auto ff = FilterBundle::direct(seq);
  const auto bath = SpinBoson::two_qubit(PowerLaw{amp, 1.0, Cutoff{30.0, CutoffKind::gaussian}},
                                         SpinBoson::kZeroTemperature, 0.0);
  const ClassicalPSD psd(PowerLaw{kPi * amp, 1.0, Cutoff{30.0, CutoffKind::gaussian}});
  for (int q = 0; q < 2; ++q) {
    const auto c = overlap_chi(ff, ClassicalSource{Channel::qubit(q), Channel::qubit(q), psd});
    const auto qv = overlap_chi(ff, bath, q, q);
    EXPECT_NEAR(c.value, qv.value, 1e-12 * qv.value);
  }
  const auto c01 = overlap_chi(ff, ClassicalSource{Channel::qubit(0), Channel::qubit(1), psd});
  EXPECT_NEAR(c01.value, overlap_chi(ff, bath, 0, 1).value, 1e-12 * std::abs(c01.value) + 1e-16);
}

TEST(Quantum, CollectiveDecoherenceFreeSubspace) {
  const auto seq = nonselective(build_udd(3, 1.0), 2);
  const auto bath = SpinBoson::two_qubit(PowerLaw{0.1, 1.0, Cutoff{20.0, CutoffKind::exponential}},
                                         1.5, 0.0);
  const auto cf = assemble_coherence(FilterBundle::direct(seq), quantum_only(bath));
  const double single = cf.chi_component(Channel::qubit(0), Channel::qubit(0));
  EXPECT_GT(single, 0.0);
  EXPECT_NEAR(cf.chi_component(Channel::qubit(0), Channel::qubit(1)), 2.0 * single, 1e-12 * single);
  EXPECT_NEAR(cf.chi(1, 2), 0.0, 1e-12 * single);
  EXPECT_NEAR(cf.chi(0, 3), 4.0 * cf.chi(0, 1), 1e-12 * single);
  // Identical sequences with t12 = 0 leave only the bath-mediated ZZ phase.
  EXPECT_NEAR(cf.phi1(0, 1), 0.0, 1e-12);
}

TEST(Quantum, PhasePattern) {
  const auto seq = pair_of(build_udd(2, 1.0), build_cdd(1, 1.0));
  const auto bath = SpinBoson::two_qubit(PowerLaw{0.1, 1.0, Cutoff{20.0, CutoffKind::gaussian}},
                                         1.0, 0.4, -1);
  const auto cf = assemble_coherence(FilterBundle::direct(seq), quantum_only(bath));
  const double p0 = cf.phi0(0, 1);
  const double p1 = cf.phi1(0, 1);
  EXPECT_NEAR(cf.phi(0, 1), p0 - p1, 1e-15);
  EXPECT_NEAR(cf.phi(0, 2), p0 + p1, 1e-15);
  EXPECT_NEAR(cf.phi(1, 2), 0.0, 1e-15);
  EXPECT_NEAR(cf.phi(0, 3), 0.0, 1e-15);
  EXPECT_NEAR(cf.phi(1, 3), -p0 - p1, 1e-15);
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      EXPECT_NEAR(cf.phi(a, b), -cf.phi(b, a), 1e-15);
      EXPECT_NEAR(cf.chi(a, b), cf.chi(b, a), 1e-15);
    }
  }
}

TEST(Quantum, PhaseIsTemperatureIndependent) {
  const auto ff = FilterBundle::direct(pair_of(build_udd(3, 1.0), build_udd(1, 1.0)));
  const PowerLaw j{0.1, 1.0, Cutoff{15.0, CutoffKind::gaussian}};
  const auto hot = overlap_phi(ff, SpinBoson::two_qubit(j, 0.2, 0.3), 0, 1);
  const auto cold = overlap_phi(ff, SpinBoson::two_qubit(j, SpinBoson::kZeroTemperature, 0.3), 0, 1);
  EXPECT_EQ(hot.phi0, cold.phi0);
  EXPECT_EQ(hot.phi1, cold.phi1);
  const auto swapped = overlap_phi(ff, SpinBoson::two_qubit(j, 0.2, 0.3), 1, 0);
  // stored for the ordered pair either way
  EXPECT_NEAR(swapped.phi1, hot.phi1, 1e-15);
  EXPECT_NEAR(swapped.phi0, hot.phi0, 1e-15);
}

TEST(Quantum, ZeroSpectraAndPrivateBaths) {
  const auto ff = FilterBundle::direct(pair_of(build_udd(2, 1.0), build_cdd(2, 1.0)));
  const auto zero = assemble_coherence(ff, quantum_only(SpinBoson::two_qubit(PowerLaw{}, 1.0, 0.1)));
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) EXPECT_EQ(zero.factor(a, b), C(1.0));
  }
  const double inf = std::numeric_limits<double>::infinity();
  const auto apart = assemble_coherence(
      ff, quantum_only(SpinBoson::two_qubit(PowerLaw{0.1, 1.0, Cutoff{10.0}}, 1.0, inf)));
  EXPECT_EQ(apart.chi_component(Channel::qubit(0), Channel::qubit(1)), 0.0);
  EXPECT_EQ(apart.phi(0, 1), 0.0);
  EXPECT_NEAR(apart.chi(1, 2), apart.chi(0, 1) + apart.chi(0, 2), 1e-14);
}

TEST(Quantum, SubOhmicFreeEvolutionDiverges) {
  const auto ff = FilterBundle::direct(PulseSequence::free(2, 1.0));
  const auto bath = SpinBoson::two_qubit(PowerLaw{0.1, -2.0, Cutoff{10.0}}, SpinBoson::kZeroTemperature,
                                         1e-2, -1);
  EXPECT_THROW(assemble_coherence(ff, quantum_only(bath)), DivergenceError);
  // Nonselective decoupling leaves G2(w,-w) linear in w, so phi0 still diverges.
  const auto cdd = FilterBundle::direct(nonselective(build_cdd(3, 1.0), 2));
  EXPECT_THROW(assemble_coherence(cdd, quantum_only(bath)), DivergenceError);
  const std::vector<int> orders{2, 2};
  const auto enhanced = FilterBundle::direct(build_displacement("cdd", orders, 1.0));
  EXPECT_NO_THROW(assemble_coherence(enhanced, quantum_only(bath)));
}

TEST(Fidelity, BellStateFormula) {
  const auto seq = pair_of(build_cdd(2, 1.0), build_udd(2, 1.0));
  const auto bath = SpinBoson::two_qubit(PowerLaw{0.2, 1.0, Cutoff{20.0, CutoffKind::gaussian}}, 1.0,
                                         0.05);
  const auto cf = assemble_coherence(FilterBundle::direct(seq), quantum_only(bath));
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<C> bell{r, 0, 0, r};
  EXPECT_NEAR(fidelity(bell, cf), 0.5 + 0.5 * std::exp(-cf.chi(0, 3)), 1e-14);
  const auto rho = evolve(DensityMatrix::pure(bell), cf);
  EXPECT_NEAR(std::abs(rho(0, 3)), 0.5 * std::exp(-cf.chi(0, 3)), 1e-14);
  EXPECT_NEAR(std::abs(rho(0, 0) - 0.5), 0.0, 1e-15);
}

TEST(Fidelity, EvolvedStatesStayPhysical) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const auto bath = SpinBoson::two_qubit(PowerLaw{0.3, 1.0, Cutoff{25.0, CutoffKind::gaussian}}, 0.7,
                                         0.1);
  const std::array<PulseSequence, 3> seqs{pair_of(build_udd(1, 1.0), build_cdd(2, 1.0)),
                                          pair_of(build_udd(4, 1.0), build_udd(2, 1.0)),
                                          PulseSequence::free(2, 1.0)};
  for (const auto& seq : seqs) {
    const auto cf = assemble_coherence(FilterBundle::direct(seq), quantum_only(bath));
    for (std::uint32_t a = 0; a < 4; ++a) {
      for (std::uint32_t b = 0; b < 4; ++b) EXPECT_GE(cf.chi(a, b), -1e-15);
    }
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<C> psi(4);
      double norm = 0;
      for (auto& c : psi) {
        c = C(g(rng), g(rng));
        norm += std::norm(c);
      }
      for (auto& c : psi) c /= std::sqrt(norm);
      const double f = fidelity(psi, cf);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0 + 1e-14);
      EXPECT_NO_THROW(evolve(DensityMatrix::pure(psi), cf));
    }
  }
}

TEST(Fidelity, InputValidation) {
  EXPECT_THROW(DensityMatrix(1, {1.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(1, {0.5, 0.1, 0.2, 0.5}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(1, {0.5, 0.0, 0.0, 0.6}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(1, {0.5, 0.6, 0.6, 0.5}), InvalidArgument);
  const std::vector<C> bad{1.0, 1.0};
  EXPECT_THROW(DensityMatrix::pure(bad), InvalidArgument);
  const std::vector<C> three{1.0, 0.0, 0.0};
  EXPECT_THROW(DensityMatrix::pure(three), InvalidArgument);
  const auto cf = CoherenceFactors::zero(2);
  const std::vector<C> one{1.0, 0.0};
  EXPECT_THROW(fidelity(one, cf), InvalidArgument);
}
