#pragma once

#include <iosfwd>
#include <vector>

#include "decaycert/certificate.hpp"

namespace decaycert {

// Discretized extremal envelope of the inequality family, obtained by
// Jacobi fixed-point iteration of the right-hand side on a uniform grid
// over [-r, t_max]. The limit dominates every discretized member of the
// family with the same initial norm.
struct MajorantTable {
  std::vector<double> grid;
  std::vector<double> values;
  int iterations = 0;
  double residual = 0.0;
  double lag = 0.0;

  double eval(double t) const;  // linear interpolation, clamped ends
  void write_csv(std::ostream& os) const;  // header: t, ystar
};

MajorantTable majorant_fixed_point(const InequalityData& data, double y0_norm,
                                   double t_max, int n_grid,
                                   int max_iterations = 500,
                                   double fp_tol = 1e-10);

// The unique real root of  lambda + a = b e^(-lambda lag); its sign
// classifies the stability of  x' = -a x + b x(t - lag).
double characteristic_root(double a, double b, double lag);

}  // namespace decaycert
