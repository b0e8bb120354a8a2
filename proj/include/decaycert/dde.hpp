#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "decaycert/error.hpp"

namespace decaycert {

using Vec = std::vector<double>;

double euclidean_norm(const Vec& v);

// Finite-dimensional delay system  x' = rhs(t, x, [x(t - r_i(t))]).
struct DelaySystemSpec {
  int dim = 1;
  std::function<Vec(double, const Vec&, const std::vector<Vec>&)> rhs;
  std::vector<std::function<double(double)>> delays;
  double max_lag = 0.0;
  double blowup_guard = 1e12;
  bool allow_overlap = true;  // predictor iteration for delays shorter than a step
};

// Initial history on [-r, 0]: constant, polynomial in s, or a tabulated
// function with linear interpolation.
class History {
 public:
  static History constant(Vec value);
  // coeffs[k][j]: coefficient of (s/r)^k for component j (r = max lag)
  static History polynomial(std::vector<Vec> coeffs, double max_lag);
  static History tabulated(std::vector<Vec> nodes, double max_lag);

  Vec eval(double s) const;  // s in [-max_lag, 0] (constant histories: any s)
  double sup_norm() const;
  int dim() const;

 private:
  enum class Kind { constant, polynomial, tabulated } kind_ = Kind::constant;
  std::vector<Vec> data_;
  double max_lag_ = 0.0;
};

// Dense-output solution on [tau - r, t_end]; values at mesh nodes are exact,
// between nodes a cubic Hermite built from stored states and derivatives.
class Trajectory {
 public:
  Trajectory(double tau, double max_lag, History history);

  double tau() const { return tau_; }
  double t_end() const { return mesh_.back(); }
  double max_lag() const { return max_lag_; }
  const std::vector<double>& mesh() const { return mesh_; }
  const std::vector<Vec>& states() const { return states_; }
  const History& history() const { return history_; }

  Vec eval(double t) const;
  double eval_norm(double t) const;

  // sup of |x| over the window [t - r, t], sampled at mesh nodes inside the
  // window plus a uniform fill including both endpoints
  double segment_norm(double t, int n_samples = 64) const;

  // header: t, x1..xn, segnorm; one row per mesh node; %.17g formatting
  void write_csv(std::ostream& os) const;

 private:
  friend Trajectory integrate(const DelaySystemSpec&, const History&, double,
                              double, double);
  double tau_;
  double max_lag_;
  History history_;
  std::vector<double> mesh_;
  std::vector<Vec> states_;
  std::vector<Vec> derivs_;
};

Trajectory integrate(const DelaySystemSpec& spec, const History& phi,
                     double tau, double t_end, double h);

struct EnvelopeReport {
  bool passed = false;
  double max_violation = 0.0;
  double worst_time = 0.0;
  int samples = 0;
  double tolerance = 0.0;
};

struct ExpDecayCertificate;  // certificate.hpp

// Checks segment_norm(t) <= M ||phi|| e^(-lambda (t - tau)) + gamma rho up to
// the slack tol*(M||phi|| + gamma rho + 1) on a dense grid.
EnvelopeReport verify_envelope(const Trajectory& traj,
                               const ExpDecayCertificate& cert, double gamma,
                               double rho, double tol);

}  // namespace decaycert
