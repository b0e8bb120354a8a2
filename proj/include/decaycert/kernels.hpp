#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decaycert/scalar_function.hpp"

namespace decaycert {

// Two-variable kernel K(t, s) on t, s >= 0. All forms evaluate to a
// nonnegative finite value on their admissible domain; values are immutable
// after construction and safe to share across threads.
class Kernel2 {
 public:
  // M0 * exp(-lambda0 (t-s)); satisfies K(t+h, s+h) = K(t, s) exactly.
  struct ExponentialScaled {
    double m0;
    double lambda0;
  };
  // exp(-int_s^t a(sigma) dsigma)
  struct CoefficientIntegral {
    ScalarFn a;
  };
  // base(t, s) * b(s)
  struct ScaledBy {
    std::shared_ptr<const Kernel2> base;
    ScalarFn b;
  };
  // scale * (t-s)^(-alpha) * exp(-beta (t-s)), evaluated only for t > s
  struct PowerSingular {
    double scale;
    double alpha;  // in [0, 1)
    double beta;
  };
  // scale * exp(beta (t-s)), evaluated only for s >= t; integrable tail
  // iff beta > 0
  struct FutureExponential {
    double scale;
    double beta;
  };
  // bilinear interpolation on a uniform (t, s) grid; exact on nodes, no
  // extrapolation beyond the table
  struct Tabulated {
    double t_lo, t_hi, s_lo, s_hi;
    int nt, ns;
    std::vector<double> values;  // row-major, t index major
  };

  using Form = std::variant<ExponentialScaled, CoefficientIntegral, ScaledBy,
                            PowerSingular, FutureExponential, Tabulated>;

  static Kernel2 exponential_scaled(double m0, double lambda0);
  static Kernel2 coefficient_integral(ScalarFn a);
  static Kernel2 scaled_by(Kernel2 base, ScalarFn b);
  static Kernel2 power_singular(double scale, double alpha, double beta);
  static Kernel2 future_exponential(double scale, double beta);
  static Kernel2 tabulated(double t_lo, double t_hi, double s_lo, double s_hi,
                           int nt, int ns, std::vector<double> values);

  double operator()(double t, double s) const;

  bool decay_type() const;  // everything except FutureExponential
  const Form& form() const { return form_; }

  // Kernel translated by tau: (t, s) -> K(t + tau, s + tau).
  Kernel2 translated(double tau) const;

  std::string describe() const;

 private:
  explicit Kernel2(Form form) : form_(std::move(form)) {}
  Form form_;
};

// A conservative supremum estimate: value = raw grid supremum + pad, where
// pad is the last refinement delta (plus horizon sensitivity where the
// supremum is only approached at infinity). Overestimating is safe for the
// certificates; underestimating is not.
struct SupEstimate {
  double value;
  double raw;
  double pad;
};

// sup_{horizon >= t >= s >= 0} E(t, s). Analytic for ExponentialScaled.
SupEstimate theta_sup(const Kernel2& E, double horizon,
                      const QuadratureConfig& cfg);

// sup_{t in [0, horizon]} ( int_0^t K1(t,s) ds + int_t^inf K2(t,s) ds ).
// Either kernel may be absent. FutureExponential tails are integrated
// analytically; exponential-family K1 with constant gain uses the exact
// t -> infinity limit.
SupEstimate kappa_sup(const std::optional<Kernel2>& k1,
                      const std::optional<Kernel2>& k2, double horizon,
                      const QuadratureConfig& cfg);

// Sampled nonincreasing envelope e(t) >= E(t+s, s) on a uniform grid over
// [0, t_max], enforced by a running maximum from the right.
struct DecayMajorant {
  double t_max = 0.0;
  double dt = 0.0;
  std::vector<double> values;
  double tail_bound = 0.0;

  // Left-node lookup: conservative for a nonincreasing envelope.
  double eval(double t) const;
};

DecayMajorant decay_majorant(const Kernel2& E, double t_max, int n_s_samples,
                             const QuadratureConfig& cfg);

}  // namespace decaycert
