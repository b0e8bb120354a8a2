#include "decaycert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>

namespace decaycert {

double MajorantTable::eval(double t) const {
  if (t <= grid.front()) return values.front();
  if (t >= grid.back()) return values.back();
  const double dt = grid[1] - grid[0];
  const auto i = std::min(static_cast<std::size_t>((t - grid.front()) / dt),
                          grid.size() - 2);
  const double w = (t - grid[i]) / dt;
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

void MajorantTable::write_csv(std::ostream& os) const {
  os << "t,ystar\n";
  char buf[32];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", grid[i]);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    os << buf << '\n';
  }
}

namespace {

// sliding segment maxima: out[i] = max(values[j] : t_j in [t_i - lag, t_i])
std::vector<double> segment_maxima(const std::vector<double>& values,
                                   int window) {
  std::vector<double> out(values.size());
  std::deque<std::size_t> dq;
  for (std::size_t i = 0; i < values.size(); ++i) {
    while (!dq.empty() && values[dq.back()] <= values[i]) dq.pop_back();
    dq.push_back(i);
    if (dq.front() + window < i) dq.pop_front();
    out[i] = values[dq.front()];
  }
  return out;
}

}  // namespace

MajorantTable majorant_fixed_point(const InequalityData& data, double y0_norm,
                                   double t_max, int n_grid,
                                   int max_iterations, double fp_tol) {
  if (!(t_max > 0.0) || n_grid < 8)
    throw error("oracle.BadParameter", "degenerate majorant grid");
  if (!(y0_norm >= 0.0))
    throw error("oracle.BadParameter", "initial norm must be nonnegative");

  QuadratureConfig cfg;
  const double kappa = kappa_sup(data.k1, data.k2, std::max(t_max, 1.0), cfg).value;
  if (kappa >= 1.0)
    throw error("oracle.NotContractive",
                "fixed-point iteration needs kappa < 1");

  // uniform grid with nodes aligned so that t = 0 is a node and the lag is
  // an integer number of cells
  double dt = t_max / (n_grid - 1);
  int lag_cells = 0;
  if (data.r > 0.0) {
    lag_cells = std::max(1, static_cast<int>(std::lround(data.r / dt)));
    dt = data.r / lag_cells;
  }
  const int n_future = static_cast<int>(std::ceil(t_max / dt - 1e-12)) + 1;
  const int n_total = lag_cells + n_future;

  MajorantTable table;
  table.lag = data.r;
  table.grid.resize(n_total);
  for (int i = 0; i < n_total; ++i)
    table.grid[i] = dt * (i - lag_cells);

  // future-kernel tail beyond the grid, bounded analytically per unit sup
  double future_tail_rate = 0.0;
  if (data.k2) {
    const auto* fe = std::get_if<Kernel2::FutureExponential>(&data.k2->form());
    if (fe == nullptr)
      throw error("oracle.BadParameter",
                  "future kernel must be of exponential type");
    if (fe->scale > 0.0 && !(fe->beta > 0.0))
      throw error("kernels.DivergentTail", "future kernel has no tail");
    future_tail_rate = fe->scale > 0.0 ? fe->beta : 0.0;
  }

  // kernel rows cached on the triangular grid (t >= 0 rows only)
  const bool cache_k1 =
      data.k1 && static_cast<long long>(n_future) * n_future <= (1LL << 24);
  std::vector<std::vector<double>> k1_rows;
  // diagonal entries of singular kernels are not evaluable; drop their
  // trapezoid weight (the singularity is integrable)
  auto k1_at = [&](double t, double s) -> double {
    try {
      return (*data.k1)(t, s);
    } catch (const error&) {
      return 0.0;
    }
  };
  if (cache_k1) {
    k1_rows.resize(n_future);
    for (int i = 0; i < n_future; ++i) {
      k1_rows[i].resize(i + 1);
      for (int j = 0; j <= i; ++j) k1_rows[i][j] = k1_at(dt * i, dt * j);
    }
  }

  std::vector<double> y(n_total, y0_norm), ynext(n_total, y0_norm);
  table.iterations = 0;
  table.residual = 0.0;

  for (int it = 0; it < max_iterations; ++it) {
    const auto seg = segment_maxima(y, lag_cells);
    const double total_sup = *std::max_element(y.begin(), y.end());

    double change = 0.0;
    for (int i = 0; i < n_future; ++i) {
      const int gi = lag_cells + i;
      const double t = dt * i;
      double acc = data.E(t, 0.0) * y0_norm + data.rho;

      if (data.k1 && i > 0) {
        // trapezoid over s in [0, t] on the solution grid
        double sum = 0.0;
        for (int j = 0; j <= i; ++j) {
          const double k = cache_k1 ? k1_rows[i][j] : k1_at(t, dt * j);
          const double w = (j == 0 || j == i) ? 0.5 : 1.0;
          sum += w * k * seg[lag_cells + j];
        }
        acc += sum * dt;
      }
      if (data.k2) {
        const auto* fe =
            std::get_if<Kernel2::FutureExponential>(&data.k2->form());
        if (fe->scale > 0.0) {
          double sum = 0.0;
          for (int j = i; j < n_future; ++j) {
            const double w = (j == i || j == n_future - 1) ? 0.5 : 1.0;
            sum += w * (*data.k2)(t, dt * j) * seg[lag_cells + j];
          }
          acc += sum * dt;
          // analytic tail beyond the grid times the current sup
          acc += fe->scale / future_tail_rate *
                 std::exp(future_tail_rate * (t - t_max)) * total_sup;
        }
      }
      ynext[gi] = acc;
      change = std::max(change, std::abs(acc - y[gi]));
    }
    std::copy(ynext.begin() + lag_cells, ynext.end(), y.begin() + lag_cells);
    table.iterations = it + 1;
    table.residual = change;
    if (change < fp_tol) break;
  }
  if (table.residual >= fp_tol && max_iterations > 0 && table.iterations == max_iterations)
    throw error("oracle.NoConvergence",
                "fixed-point iteration did not settle");

  table.values = std::move(y);
  return table;
}

double characteristic_root(double a, double b, double lag) {
  if (!(b >= 0.0)) throw error("oracle.BadParameter", "gain must be >= 0");
  if (!(lag > 0.0)) throw error("oracle.BadParameter", "lag must be positive");
  if (b == 0.0) return -a;

  // g(x) = x + a - b e^(-x lag) is strictly increasing
  auto g = [&](double x) { return x + a - b * std::exp(-x * lag); };
  double lo = -(std::abs(a) + b + 1.0);
  while (g(lo) > 0.0) lo *= 2.0;
  double hi = std::abs(a) + b + 1.0;
  while (g(hi) < 0.0) hi *= 2.0;

  double mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) < 1e-13 * (1.0 + std::abs(a) + b)) break;
    (gm < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace decaycert
