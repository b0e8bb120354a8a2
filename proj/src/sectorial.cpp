#include "decaycert/sectorial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace decaycert {

namespace {

void check_fractional(double alpha, double beta) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw error("sectorial.BadParameter", "alpha must lie in [0,1)");
  if (!(beta > 0.0))
    throw error("sectorial.BadParameter", "beta must be positive");
}

// int_0^inf s^(-alpha) e^(-beta s) ds by the singularity substitution plus
// the analytic remainder beyond the tail split
double singular_decay_integral(double alpha, double beta,
                               const QuadratureConfig& cfg) {
  const double span = cfg.tail_span(beta);
  const double body = integrate_power_singular(1.0, alpha, beta, span, cfg);
  const double tail =
      std::pow(span, -alpha) * std::exp(-beta * span) / beta;
  return body + tail;
}

}  // namespace

double kappa0(double alpha, double beta, Kappa0Variant variant,
              const QuadratureConfig& cfg) {
  check_fractional(alpha, beta);
  double value = singular_decay_integral(alpha, beta, cfg);
  if (variant == Kappa0Variant::full) value += 1.0 / beta;
  return value;
}

SectorialVerdict sectorial_thresholds(const SectorialParams& params,
                                      Kappa0Variant variant,
                                      const QuadratureConfig& cfg) {
  check_fractional(params.alpha, params.beta);
  if (!(params.M_sect >= 1.0))
    throw error("sectorial.BadParameter", "semigroup constant must be >= 1");
  if (params.L < 0.0 || params.C0 < 0.0 || params.C1 < 0.0)
    throw error("sectorial.BadParameter", "L, C0, C1 must be nonnegative");

  SectorialVerdict out;
  out.kappa0 = kappa0(params.alpha, params.beta, variant, cfg);
  const double M = params.M_sect;
  out.equilibrium_exists = params.L < 1.0 / (out.kappa0 * M);
  const bool stable = variant == Kappa0Variant::stable;
  out.gas = stable && out.equilibrium_exists;
  out.geas = stable && params.L < 1.0 / (out.kappa0 * M * (1.0 + M));

  const double denom = 1.0 - out.kappa0 * params.C0 * M;
  if (denom > 0.0) {
    const double weight =
        1.0 / params.beta + singular_decay_integral(params.alpha, params.beta, cfg);
    out.rho_eq = params.C1 * M / denom * weight;
  }
  return out;
}

double neural_lipschitz(const std::vector<std::vector<double>>& T,
                        const std::vector<double>& Lg) {
  const std::size_t n = T.size();
  if (Lg.size() != n)
    throw error("sectorial.DimensionMismatch",
                "one Lipschitz constant per neuron");
  for (double l : Lg)
    if (!(l >= 0.0))
      throw error("sectorial.BadParameter", "Lipschitz constants must be >= 0");

  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (T[i].size() != n)
      throw error("sectorial.DimensionMismatch", "connection matrix not square");
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(T[i][j]) * Lg[j];
    sum_sq += row * row;
  }
  return 2.0 * std::sqrt(sum_sq);
}

NeuralActivation tanh_pair_activation() {
  return {[](double u, double v) { return 0.5 * (std::tanh(u) + std::tanh(v)); },
          0.5, "tanh_pair"};
}

NeuralActivation tanh_delayed_activation() {
  return {[](double, double v) { return std::tanh(v); }, 1.0, "tanh_delayed"};
}

NeuralActivation linear_delayed_activation() {
  return {[](double, double v) { return v; }, 1.0, "linear_delayed"};
}

NeuralDemo neural_demo_build(int n_neurons, int mesh_points,
                             const std::vector<double>& diffusion,
                             const std::vector<std::vector<double>>& b,
                             const std::vector<std::vector<double>>& T,
                             const NeuralActivation& g,
                             const std::vector<std::vector<double>>& delays,
                             const std::vector<ScalarFn>& J) {
  const std::size_t n = static_cast<std::size_t>(n_neurons);
  if (n_neurons < 1 || mesh_points < 3)
    throw error("sectorial.BadParameter", "need >= 1 neuron and >= 3 mesh points");
  if (diffusion.size() != n || b.size() != n || T.size() != n ||
      delays.size() != n || J.size() != n)
    throw error("sectorial.DimensionMismatch", "per-neuron data sizes differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i].size() != n || T[i].size() != n || delays[i].size() != n)
      throw error("sectorial.DimensionMismatch", "coupling matrices not square");
    if (!(diffusion[i] > 0.0))
      throw error("sectorial.BadParameter", "diffusion must be positive");
  }

  NeuralDemo demo;
  demo.n_neurons = n_neurons;
  demo.mesh_points = mesh_points;
  const int m = mesh_points;
  const double h = 1.0 / (m + 1);
  demo.mesh_h = h;
  const int N = n_neurons * m;

  // linear part A - B: block-diagonal second differences minus the coupling
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < n_neurons; ++i) {
    const double d = diffusion[i] / (h * h);
    for (int k = 0; k < m; ++k) {
      const int row = i * m + k;
      lin(row, row) += 2.0 * d;
      if (k > 0) lin(row, row - 1) -= d;
      if (k + 1 < m) lin(row, row + 1) -= d;
      for (int j = 0; j < n_neurons; ++j) lin(row, j * m + k) -= b[i][j];
    }
  }

  demo.symmetric = true;
  for (std::size_t i = 0; i < n && demo.symmetric; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] != b[j][i]) {
        demo.symmetric = false;
        break;
      }

  const Eigen::MatrixXd sym = 0.5 * (lin + lin.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const double beta = eig.eigenvalues().minCoeff();
  if (!(beta > 0.0))
    throw error("sectorial.UnstableLinearPart",
                "smallest symmetric-part eigenvalue is not positive");

  demo.gershgorin_lower = std::numeric_limits<double>::infinity();
  for (int r = 0; r < N; ++r) {
    double off = 0.0;
    for (int c = 0; c < N; ++c)
      if (c != r) off += std::abs(sym(r, c));
    demo.gershgorin_lower = std::min(demo.gershgorin_lower, sym(r, r) - off);
  }

  std::vector<double> Lg(n, g.lipschitz);
  const double L = neural_lipschitz(T, Lg);

  // input profile J_i(t) sin(pi x); its peak norm feeds the growth offset
  std::vector<double> profile(m);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < m; ++k) profile[k] = std::sin(pi * (k + 1) * h);
  double profile_sq = 0.0;
  for (double v : profile) profile_sq += v * v;
  double c1 = 0.0;
  for (int step = 0; step <= 400; ++step) {
    const double t = 4.0 * pi * step / 400.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += J[i](t) * J[i](t);
    c1 = std::max(c1, std::sqrt(s * profile_sq));
  }
  const double g00 = g.g(0.0, 0.0);
  if (g00 != 0.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += std::abs(T[i][j]) * g00;
      s += row * row;
    }
    c1 += std::sqrt(s * static_cast<double>(m));
  }

  demo.params = SectorialParams{0.0, beta, 1.0, L, L, c1};
  demo.estimate_based = true;

  // deduplicate delay values into the integrator's delay list
  double max_lag = 0.0;
  std::map<double, int> delay_index;
  std::vector<std::vector<int>> dmap(n, std::vector<int>(n, -1));
  DelaySystemSpec spec;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double r = delays[i][j];
      if (!(r >= 0.0))
        throw error("sectorial.BadParameter", "delays must be nonnegative");
      max_lag = std::max(max_lag, r);
      auto it = delay_index.find(r);
      if (it == delay_index.end()) {
        it = delay_index.emplace(r, static_cast<int>(spec.delays.size())).first;
        spec.delays.push_back([r](double) { return r; });
      }
      dmap[i][j] = it->second;
    }

  spec.dim = N;
  spec.max_lag = max_lag;
  auto activation = g.g;
  auto inputs = J;
  const std::vector<double> diff = diffusion;
  const auto bmat = b;
  const auto tmat = T;
  spec.rhs = [=](double t, const Vec& x, const std::vector<Vec>& xd) {
    Vec out(static_cast<std::size_t>(n_neurons) * m, 0.0);
    for (int i = 0; i < n_neurons; ++i) {
      const double jt = inputs[i](t);
      for (int k = 0; k < m; ++k) {
        const int idx = i * m + k;
        const double left = k > 0 ? x[idx - 1] : 0.0;
        const double right = k + 1 < m ? x[idx + 1] : 0.0;
        double v = diff[i] * (left - 2.0 * x[idx] + right) / (h * h);
        for (int j = 0; j < n_neurons; ++j) {
          const int jdx = j * m + k;
          v += bmat[i][j] * x[jdx];
          v += tmat[i][j] * activation(x[jdx], xd[dmap[i][j]][jdx]);
        }
        v += jt * profile[k];
        out[idx] = v;
      }
    }
    return out;
  };
  demo.spec = std::move(spec);
  return demo;
}

}  // namespace decaycert
