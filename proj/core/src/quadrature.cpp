#include "ddff/quadrature.hpp"

#include "ddff/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace ddff {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Estimate {
  double value = 0;
  double error = 0;
  double l1 = 0;
};

template <class F>
Estimate single(const F& f, double a, double b) {
  Estimate e;
  e.value = Rule::integrate(f, a, b, 0, 0.0, &e.error, &e.l1);
  return e;
}

// Bisect until the local error meets the relative target or the absolute
// floor derived from the whole integral. A bisection that barely lowers the
// estimate means rounding noise dominates; further splits cannot help.
template <class F>
Estimate refine(const F& f, double a, double b, Estimate e, double rel_tol, double floor, int depth) {
  if (depth <= 0 || e.error <= std::max(rel_tol * e.l1, floor)) return e;
  const double m = 0.5 * (a + b);
  Estimate l = single(f, a, m);
  Estimate r = single(f, m, b);
  if (l.error + r.error < 0.75 * e.error) {
    l = refine(f, a, m, l, rel_tol, 0.5 * floor, depth - 1);
    r = refine(f, m, b, r, rel_tol, 0.5 * floor, depth - 1);
  }
  return {l.value + r.value, l.error + r.error, l.l1 + r.l1};
}

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)>& f, double upper,
                                  const QuadratureOptions& options) {
  if (!(upper > 0)) return {};
  if (!(options.max_panel > 0)) throw InvalidArgument("panel width must be positive");
  const double p = options.endpoint_exponent;
  if (!(p > -1)) throw DivergenceError("integrand is not integrable at zero frequency", p);

  const auto count = static_cast<long>(std::ceil(upper / options.max_panel));
  const double width = upper / static_cast<double>(count);
  QuadratureResult out;
  out.panels = static_cast<int>(count);

  // u^k maps w^p to u^(k(p+1)-1); k(p+1) >= 3 keeps the first panel smooth.
  const int k = std::max(1, static_cast<int>(std::ceil(3.0 / (p + 1.0) - 1e-12)));
  auto first = [&](double u) {
    if (u <= 0) return 0.0;
    const double w = width * std::pow(u, k);
    return f(w) * width * k * std::pow(u, k - 1);
  };
  auto bounds = [&](long i) {
    const double a = width * static_cast<double>(i);
    return std::pair(a, i + 1 == count ? upper : a + width);
  };

  std::vector<Estimate> est(static_cast<std::size_t>(count));
  double l1 = 0;
  for (long i = 0; i < count; ++i) {
    const auto [a, b] = bounds(i);
    est[static_cast<std::size_t>(i)] = i == 0 ? single(first, 0.0, 1.0) : single(f, a, b);
    l1 += est[static_cast<std::size_t>(i)].l1;
  }
  const double floor = options.rel_tol * l1 / static_cast<double>(count);
  for (long i = 0; i < count; ++i) {
    const auto [a, b] = bounds(i);
    const Estimate& e0 = est[static_cast<std::size_t>(i)];
    const Estimate e = i == 0 ? refine(first, 0.0, 1.0, e0, options.rel_tol, floor, options.max_depth)
                              : refine(f, a, b, e0, options.rel_tol, floor, options.max_depth);
    out.value += e.value;
    out.error += e.error;
  }
  return out;
}

}  // namespace ddff
