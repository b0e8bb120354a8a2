#include "decaycert/quadrature.hpp"

#include <cmath>
#include <vector>

namespace decaycert {

namespace {

bool close_enough(double next, double prev, const QuadratureConfig& cfg) {
  const double delta = std::abs(next - prev);
  return delta <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(next)) * 0.25;
}

}  // namespace

double integrate_simpson(const Fn1& f, double a, double b,
                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) return 0.0;

  int n = 16;
  auto simpson = [&](int cells) {
    const double h = (b - a) / cells;
    double sum = f(a) + f(b);
    for (int i = 1; i < cells; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
  };

  double prev = simpson(n);
  for (int k = 0; k < cfg.max_refinements; ++k) {
    n *= 2;
    const double next = simpson(n);
    if (close_enough(next, prev, cfg)) return next;
    prev = next;
  }
  return prev;
}

double integrate_trapezoid(const Fn1& f, double a, double b,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) return 0.0;

  int n = 32;
  double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  double prev = sum * h;

  for (int k = 0; k < cfg.max_refinements; ++k) {
    // midpoints of the current cells; previous samples are reused
    double mid = 0.0;
    for (int i = 0; i < n; ++i) mid += f(a + (i + 0.5) * h);
    n *= 2;
    h *= 0.5;
    sum += mid;
    const double next = sum * h;
    if (close_enough(next, prev, cfg)) return next;
    prev = next;
  }
  return prev;
}

double integrate_power_singular(double scale, double alpha, double beta,
                                double T, const QuadratureConfig& cfg) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw error("quadrature.BadExponent", "alpha must lie in [0,1)");
  if (!(T > 0.0) || scale == 0.0) return 0.0;

  const double p = 1.0 - alpha;
  // u = w^(1/p), du = (1/p) w^(1/p - 1) dw, u^(-alpha) du = (1/p) dw
  const auto g = [&](double w) {
    return std::exp(-beta * std::pow(w, 1.0 / p));
  };
  const double span = std::pow(T, p);
  return scale / p * integrate_trapezoid(g, 0.0, span, cfg);
}

double integrate_positive_part(const Fn1& f, double a, double b,
                               const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) return 0.0;

  // locate sign changes on a scan grid, then bisect each bracket
  const int scan = 4096;
  const double h = (b - a) / scan;
  std::vector<double> cuts{a};
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= scan; ++i) {
    const double x1 = a + i * h;
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  cuts.push_back(b);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    if (f(0.5 * (lo + hi)) > 0.0) total += integrate_simpson(f, lo, hi, cfg);
  }
  return total;
}

}  // namespace decaycert
