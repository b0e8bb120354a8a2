#pragma once

#include <functional>

#include "decaycert/error.hpp"

namespace decaycert {

// Tolerances and refinement limits shared by every numerical functional.
// tail_cutoff == 0 means "automatic": exponential tails are split at 40/rate
// and the remainder is bounded analytically.
struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-10;
  int max_refinements = 18;
  double tail_cutoff = 0.0;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw error("quadrature.BadConfig", "tolerances must be positive");
    if (max_refinements < 1)
      throw error("quadrature.BadConfig", "max_refinements must be >= 1");
  }

  double tail_span(double rate) const {
    if (tail_cutoff > 0.0) return tail_cutoff;
    return 40.0 / rate;
  }
};

using Fn1 = std::function<double(double)>;

// Composite Simpson with interval doubling until the change between
// refinements drops below max(abs_tol, rel_tol*|I|)/4 or the refinement
// budget is exhausted. Smooth integrands only.
double integrate_simpson(const Fn1& f, double a, double b,
                         const QuadratureConfig& cfg);

// Composite trapezoid with interval doubling (reusing previous samples).
// Used after singularity substitutions where the transformed integrand is
// smooth but only C^0 data is trusted.
double integrate_trapezoid(const Fn1& f, double a, double b,
                           const QuadratureConfig& cfg);

// Integral of C * u^(-alpha) * exp(-beta*u) over u in [0, T], alpha in [0,1).
// The substitution w = u^(1-alpha) removes the integrable singularity; the
// transformed integrand is evaluated with the plain trapezoid rule.
double integrate_power_singular(double scale, double alpha, double beta,
                                double T, const QuadratureConfig& cfg);

// Integral of max(f, 0) over [a, b] for a continuous f. Sign changes are
// located by scanning and bisection so each smooth piece is integrated
// without a kink in the integrand.
double integrate_positive_part(const Fn1& f, double a, double b,
                               const QuadratureConfig& cfg);

}  // namespace decaycert
