#include "ddff/fit.hpp"

#include "ddff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ddff {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("power-law fit needs matching samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidArgument("power-law fit needs positive samples");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("power-law fit needs distinct abscissae");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.lo = std::exp(*std::min_element(lx.begin(), lx.end()));
  fit.hi = std::exp(*std::max_element(lx.begin(), lx.end()));
  fit.low_confidence = fit.r_squared < 0.999;
  return fit;
}

PowerLawFit estimate_order(const std::function<double(double)>& magnitude, double lo, double hi,
                           int points) {
  if (points < 8) throw InvalidArgument("order fit needs at least 8 points");
  if (!(lo > 0) || !(hi > lo) || std::log10(hi / lo) < 1.5 - 1e-12) {
    throw InvalidArgument("order fit window must span at least 1.5 decades");
  }
  std::vector<double> x, y;
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    x.push_back(lo * std::exp(step * i));
    y.push_back(magnitude(x.back()));
  }
  return fit_power_law(x, y);
}

}  // namespace ddff
