#pragma once

#include <functional>
#include <span>

namespace ddff {

struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;
  double r_squared = 0;
  double lo = 0;  // sampling window
  double hi = 0;
  bool low_confidence = false;  // r^2 < 0.999
};

// Least squares on (log x, log y); y must be positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Fit of magnitude(x) over `points` log-spaced samples in [lo, hi].
// Needs at least 8 points over at least 1.5 decades.
PowerLawFit estimate_order(const std::function<double(double)>& magnitude, double lo, double hi,
                           int points = 16);

}  // namespace ddff
