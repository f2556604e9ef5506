#pragma once

#include <functional>

namespace ddff {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // summed per-panel estimates, >= 0
  int panels = 0;
};

struct QuadratureOptions {
  double max_panel = 1.0;         // panel width cap
  double endpoint_exponent = 0.0;  // integrand ~ w^p at the lower limit, p > -1
  double rel_tol = 1e-10;
  int max_depth = 12;
};

// int_0^upper f(w) dw on equal panels of width <= max_panel with adaptive
// Gauss-Kronrod on each. The first panel uses w = w1 u^k so that a weak
// power-law endpoint singularity becomes a smooth integrand.
QuadratureResult integrate_panels(const std::function<double(double)>& f, double upper,
                                  const QuadratureOptions& options);

}  // namespace ddff
