#pragma once

#include <functional>

#include "rwm/numeric.hpp"

namespace rwm {

struct QuadratureSpec {
  enum class TailMode { Analytic, Doubling };

  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  /// Truncation height for integrals toward the cusp ∞.
  double Y = 12.0;
  TailMode tail_mode = TailMode::Analytic;

  /// InvalidArgument unless tolerances are positive and Y >= 2.
  void validate() const;
};

struct QuadResult {
  cplx value{};
  double error = 0.0;
  int subdivisions = 0;
};

using RealIntegrand = std::function<cplx(double)>;

/// Global adaptive Gauss-Kronrod (7/15) on [a, b]; stops once the summed
/// |K15 - G7| estimate is below max(abs_tol, rel_tol |I|). Throws
/// ToleranceNotMet after max_subdivisions bisections. `initial_panels` equal
/// panels seed the rule, for integrands with features narrower than [a, b].
QuadResult integrate(const RealIntegrand& f, double a, double b, double abs_tol, double rel_tol,
                     int max_subdivisions = 4000, int initial_panels = 1);

/// [a, ∞) through t = a + s / (1 - s).
QuadResult integrate_to_infinity(const RealIntegrand& f, double a, double abs_tol, double rel_tol,
                                 int max_subdivisions = 4000);

/// ∫_{x0}^{x1} ∫_{ylo(x)}^{yhi(x)} f(x, y) dy dx by nesting the 1-D rule.
QuadResult integrate_2d(const std::function<cplx(double, double)>& f, double x0, double x1,
                        const std::function<double(double)>& ylo,
                        const std::function<double(double)>& yhi, double abs_tol, double rel_tol,
                        int max_subdivisions = 4000, int initial_panels = 1);

/// e^x Γ(s, x) for real s and x > 0.
double upper_gamma_scaled(double s, double x);

}  // namespace rwm
