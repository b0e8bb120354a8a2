#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "decaycert/certificate.hpp"
#include "decaycert/dde.hpp"

namespace decaycert {

// Scalar equation  x' = -a(t) x + B(t, x_t)  with |B(t, phi)| <= b(t) ||phi||.
// The abstract functional is realized either as b(t) x(t - lag) or as the
// sampled supremum  b(t) max_k |x(t - s_k)|.
struct ScalarFDE {
  ScalarFn a;
  ScalarFn b;
  double r = 1.0;    // sup-norm window
  double lag = 1.0;  // realization lag, <= r
  enum class Functional { delayed_point, sampled_supremum };
  Functional functional = Functional::delayed_point;
  std::vector<double> sup_offsets;  // offsets in [0, r] for sampled_supremum
};

Kernel2 fde_decay_kernel(const ScalarFDE& sys, double tau);
Kernel2 fde_gain_kernel(const ScalarFDE& sys, double tau);

struct FdeCertificateRow {
  double tau;
  double theta;
  double kappa;
};

struct FdeCertificate {
  std::vector<FdeCertificateRow> rows;
  Verdict verdict = Verdict::uncertified;
  double theta_max = 0.0;
  double kappa_max = 0.0;
};

FdeCertificate scalar_fde_certificate(const ScalarFDE& sys,
                                      const std::vector<double>& tau_grid,
                                      double horizon,
                                      const QuadratureConfig& cfg);

// Periodic-coefficient report: mean I over one period, the positive and
// negative parts I+, I-, the uniform rate Lambda = I/omega, the kernel
// bounds e^(I-) and beta*omega*e^(I+)/I, and the gain thresholds
//   beta1 = I/(omega e^(I+))            (asymptotic stability)
//   beta2 = I/(omega e^(I+)(1+e^(I-)))  (exponential stability)
struct PeriodicCoefficientReport {
  double I = 0.0, I_plus = 0.0, I_minus = 0.0;
  double Lambda = 0.0;
  double theta_bound = 0.0, kappa_bound = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  double exact_kappa_tau_max = 0.0;
  double exact_theta_tau_max = 0.0;
  bool bound_dominates_exact = false;
};

PeriodicCoefficientReport periodic_certificate(const ScalarFn& a, double omega,
                                               double beta,
                                               const QuadratureConfig& cfg);

// Closed-form thresholds for the sine-plus-offset family a = sin t + eps,
// from the coarse estimates I+ < 2 + 2 pi eps, I- < 2.
struct CoarseSineThresholds {
  double gas;
  double geas;
};
CoarseSineThresholds sine_example_coarse_thresholds(double eps);

// x' = F0(t, x) + sum_i Fi(t, x(t - r_i)) with superlinear structure:
//   (F0(t,x), x) <= -alpha0 |x|^(p+1) + beta0(t)
//   |Fi(t,x)|    <=  alpha_i |x|^q    + beta_i(t),   p > q >= 1
struct SuperlinearSystem {
  int dim = 1;
  std::function<Vec(double, const Vec&)> F0;
  std::vector<std::function<Vec(double, const Vec&)>> Fi;
  std::vector<double> delays;  // constant r_i in [0, max_lag]
  double max_lag = 0.0;
  double p = 3.0, q = 1.0;
  std::vector<double> alpha;  // alpha_0 .. alpha_m
  std::vector<ScalarFn> beta;  // beta_0 .. beta_m
  double M = 0.0, N = 0.0;  // forcing integral bound: sum int beta <= M dt + N
};

// Dissipativity constants from the power structure:
//   gamma_exp = p(q-1)/(p-q) + 1, c0 = (gamma_exp+1) alpha0, c1 = c0/2,
//   c2 = (gamma_exp+1) N, theta = e^c2,
//   kappa0 = alpha_sum (gamma_exp+1) e^c2 / c1,
// with eps_star the largest scale for which eps kappa0 < 1/(1+theta) and
// eps (gamma_exp+1)(alpha_sum + M) < c0/2 (also eps < 1, eps alpha_sum < alpha0).
struct SuperlinearCertificate {
  double gamma_exp = 0.0;
  double alpha_sum = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double theta = 0.0;
  double kappa0 = 0.0;
  double eps_star = 0.0;
  bool dissipative = false;
  std::optional<double> rho_empirical;
  std::string binding_constraint;
};

SuperlinearCertificate superlinear_certificate(const SuperlinearSystem& sys);

// Checks sum_i int_s^t beta_i <= M (t-s) + N on sliding windows; throws
// systems.ForcingBoundViolated on failure.
void verify_forcing_bound(const SuperlinearSystem& sys, double window_span,
                          const QuadratureConfig& cfg);

// Constant-coefficient lag equation  x' = -a x + b x(t - lag).
struct LinearLag {
  double a;
  double b;
  double lag;
};

InequalityData linear_lag_map(const LinearLag& sys);

DelaySystemSpec build_rhs(const ScalarFDE& sys);
DelaySystemSpec build_rhs(const SuperlinearSystem& sys);
DelaySystemSpec build_rhs(const LinearLag& sys);

}  // namespace decaycert
