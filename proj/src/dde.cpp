#include "decaycert/dde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "decaycert/certificate.hpp"

namespace decaycert {

double euclidean_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// History
// ---------------------------------------------------------------------------

History History::constant(Vec value) {
  History h;
  h.kind_ = Kind::constant;
  h.data_ = {std::move(value)};
  return h;
}

History History::polynomial(std::vector<Vec> coeffs, double max_lag) {
  if (coeffs.empty()) throw error("dde.BadHistory", "no coefficients");
  History h;
  h.kind_ = Kind::polynomial;
  h.data_ = std::move(coeffs);
  h.max_lag_ = max_lag;
  return h;
}

History History::tabulated(std::vector<Vec> nodes, double max_lag) {
  if (nodes.size() < 2) throw error("dde.BadHistory", "need >= 2 nodes");
  if (!(max_lag > 0.0)) throw error("dde.BadHistory", "tabulated history needs a lag");
  History h;
  h.kind_ = Kind::tabulated;
  h.data_ = std::move(nodes);
  h.max_lag_ = max_lag;
  return h;
}

int History::dim() const {
  return static_cast<int>(data_.front().size());
}

Vec History::eval(double s) const {
  switch (kind_) {
    case Kind::constant:
      return data_.front();
    case Kind::polynomial: {
      const double u = max_lag_ > 0.0 ? s / max_lag_ : 0.0;
      Vec out(data_.front().size(), 0.0);
      double pw = 1.0;
      for (const Vec& coeff : data_) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeff[j] * pw;
        pw *= u;
      }
      return out;
    }
    case Kind::tabulated: {
      const std::size_t n = data_.size();
      const double pos =
          std::clamp((s + max_lag_) / max_lag_, 0.0, 1.0) * (n - 1);
      const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 2);
      const double w = pos - static_cast<double>(i);
      Vec out(data_.front().size());
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = data_[i][j] * (1.0 - w) + data_[i + 1][j] * w;
      return out;
    }
  }
  throw error("dde.BadHistory", "unreachable");
}

double History::sup_norm() const {
  switch (kind_) {
    case Kind::constant:
      return euclidean_norm(data_.front());
    case Kind::polynomial: {
      double best = 0.0;
      const int n = 4096;
      for (int i = 0; i <= n; ++i)
        best = std::max(best, euclidean_norm(eval(-max_lag_ * i / n)));
      return best;
    }
    case Kind::tabulated: {
      double best = 0.0;
      for (const Vec& v : data_) best = std::max(best, euclidean_norm(v));
      return best;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Trajectory
// ---------------------------------------------------------------------------

Trajectory::Trajectory(double tau, double max_lag, History history)
    : tau_(tau), max_lag_(max_lag), history_(std::move(history)) {}

namespace {

Vec hermite(double t0, const Vec& x0, const Vec& f0, double t1, const Vec& x1,
            const Vec& f1, double t) {
  const double h = t1 - t0;
  const double u = (t - t0) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double c00 = 2 * u3 - 3 * u2 + 1;
  const double c10 = u3 - 2 * u2 + u;
  const double c01 = -2 * u3 + 3 * u2;
  const double c11 = u3 - u2;
  Vec out(x0.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = c00 * x0[j] + c10 * h * f0[j] + c01 * x1[j] + c11 * h * f1[j];
  return out;
}

}  // namespace

Vec Trajectory::eval(double t) const {
  const double tol = 1e-12 * (1.0 + std::abs(t));
  if (t < tau_ - max_lag_ - tol)
    throw error("dde.OutOfDomain", "time before the history window");
  if (t > mesh_.back() + tol)
    throw error("dde.OutOfDomain", "time beyond the integrated range");

  if (t <= tau_) return history_.eval(std::clamp(t - tau_, -max_lag_, 0.0));

  const double tc = std::min(t, mesh_.back());
  auto it = std::upper_bound(mesh_.begin(), mesh_.end(), tc);
  std::size_t i = static_cast<std::size_t>(it - mesh_.begin());
  i = std::min(std::max<std::size_t>(i, 1), mesh_.size() - 1) - 1;
  if (tc == mesh_[i]) return states_[i];
  if (tc == mesh_[i + 1]) return states_[i + 1];
  return hermite(mesh_[i], states_[i], derivs_[i], mesh_[i + 1], states_[i + 1],
                 derivs_[i + 1], tc);
}

double Trajectory::eval_norm(double t) const { return euclidean_norm(eval(t)); }

double Trajectory::segment_norm(double t, int n_samples) const {
  const double tol = 1e-12 * (1.0 + std::abs(t));
  if (t < tau_ - tol || t > t_end() + tol)
    throw error("dde.OutOfDomain", "segment norm needs t in [tau, t_end]");
  if (max_lag_ <= 0.0) return eval_norm(t);

  const double lo = t - max_lag_;
  double best = std::max(eval_norm(lo), eval_norm(t));
  auto first = std::lower_bound(mesh_.begin(), mesh_.end(), lo);
  for (auto it = first; it != mesh_.end() && *it < t; ++it)
    best = std::max(best, euclidean_norm(states_[it - mesh_.begin()]));
  for (int j = 1; j < n_samples; ++j)
    best = std::max(best, eval_norm(lo + max_lag_ * j / n_samples));
  return best;
}

void Trajectory::write_csv(std::ostream& os) const {
  const int dim = static_cast<int>(states_.front().size());
  os << "t";
  for (int j = 1; j <= dim; ++j) os << ",x" << j;
  os << ",segnorm\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < mesh_.size(); ++i) {
    put(mesh_[i]);
    for (int j = 0; j < dim; ++j) {
      os << ',';
      put(states_[i][j]);
    }
    os << ',';
    put(segment_norm(mesh_[i]));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// integrate
// ---------------------------------------------------------------------------

namespace {

struct StepContext {
  const DelaySystemSpec& spec;
  const Trajectory& traj;
  double t0, t1;       // current step
  const Vec *x0, *f0;  // left state/derivative
  const Vec *xe, *fe;  // provisional right state/derivative

  Vec lookup(double theta) const {
    const double tol = 1e-12 * (1.0 + std::abs(theta));
    if (theta <= t0 + tol && theta >= t0 - tol) return *x0;
    if (theta >= t1 - tol) return *xe;
    if (theta > t0) return hermite(t0, *x0, *f0, t1, *xe, *fe, theta);
    return traj.eval(theta);
  }

  std::vector<Vec> delayed(double t) const {
    std::vector<Vec> xd;
    xd.reserve(spec.delays.size());
    for (const auto& r : spec.delays) {
      const double lag = r(t);
      if (lag < -1e-12 || lag > spec.max_lag + 1e-9)
        throw error("dde.DelayOutOfRange",
                    "delay value outside [0, max_lag]");
      xd.push_back(lookup(t - lag));
    }
    return xd;
  }
};

bool state_ok(const Vec& v, double guard) {
  for (double x : v)
    if (!std::isfinite(x) || std::abs(x) > guard) return false;
  return true;
}

}  // namespace

Trajectory integrate(const DelaySystemSpec& spec, const History& phi,
                     double tau, double t_end, double h) {
  if (!(h > 0.0)) throw error("dde.BadParameter", "step size must be positive");
  if (!(t_end > tau)) throw error("dde.BadParameter", "t_end must exceed tau");
  if (!spec.rhs) throw error("dde.BadParameter", "missing right-hand side");
  if (phi.dim() != spec.dim)
    throw error("dde.BadParameter", "history dimension mismatch");

  const double span = t_end - tau;
  const long long n = std::max<long long>(1, std::llround(span / h));
  const double dt = span / static_cast<double>(n);

  Trajectory traj(tau, spec.max_lag, phi);
  traj.mesh_.reserve(n + 1);
  traj.states_.reserve(n + 1);
  traj.derivs_.reserve(n + 1);

  traj.mesh_.push_back(tau);
  traj.states_.push_back(phi.eval(0.0));

  // derivative at tau: all delayed lookups land in the history
  {
    StepContext ctx{spec, traj, tau, tau, &traj.states_[0], nullptr,
                    &traj.states_[0], nullptr};
    traj.derivs_.push_back(spec.rhs(tau, traj.states_[0], ctx.delayed(tau)));
  }

  for (long long k = 0; k < n; ++k) {
    const double t = traj.mesh_.back();
    const double tn = (k + 1 == n) ? t_end : tau + dt * static_cast<double>(k + 1);
    const double hk = tn - t;
    const Vec& x = traj.states_.back();
    const Vec& fx = traj.derivs_.back();

    // does any stage lookup land inside the current step?
    bool overlap = false;
    for (double stage : {t + 0.5 * hk, tn}) {
      for (const auto& r : spec.delays)
        if (stage - r(stage) > t + 1e-12 * (1.0 + std::abs(t))) overlap = true;
      if (overlap) break;
    }
    if (overlap && !spec.allow_overlap)
      throw error("dde.OverlapDisabled",
                  "delay shorter than the step size; enable the predictor");

    // provisional endpoint by extrapolation
    Vec xe(x.size()), fe = fx;
    for (std::size_t j = 0; j < x.size(); ++j) xe[j] = x[j] + hk * fx[j];

    Vec xn, fn;
    const int max_sweeps = overlap ? 5 : 1;
    bool converged = !overlap;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      StepContext ctx{spec, traj, t, tn, &x, &fx, &xe, &fe};
      const Vec k1 = spec.rhs(t, x, ctx.delayed(t));
      Vec w(x.size());
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = x[j] + 0.5 * hk * k1[j];
      const Vec k2 = spec.rhs(t + 0.5 * hk, w, ctx.delayed(t + 0.5 * hk));
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = x[j] + 0.5 * hk * k2[j];
      const Vec k3 = spec.rhs(t + 0.5 * hk, w, ctx.delayed(t + 0.5 * hk));
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = x[j] + hk * k3[j];
      const Vec k4 = spec.rhs(tn, w, ctx.delayed(tn));

      xn.assign(x.size(), 0.0);
      for (std::size_t j = 0; j < x.size(); ++j)
        xn[j] = x[j] + hk / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);

      double delta = 0.0, scale = 1.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        delta = std::max(delta, std::abs(xn[j] - xe[j]));
        scale = std::max(scale, std::abs(xn[j]));
      }
      xe = xn;
      StepContext end_ctx{spec, traj, t, tn, &x, &fx, &xe, &fe};
      fn = spec.rhs(tn, xn, end_ctx.delayed(tn));
      fe = fn;
      if (overlap && delta <= 1e-12 * scale) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw error("dde.PredictorDiverged",
                  "overlap iteration failed to settle in 5 sweeps");
    if (!state_ok(xn, spec.blowup_guard))
      throw error("dde.Blowup", "state norm exceeded the guard");

    traj.mesh_.push_back(tn);
    traj.states_.push_back(std::move(xn));
    traj.derivs_.push_back(std::move(fn));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// envelope verification
// ---------------------------------------------------------------------------

EnvelopeReport verify_envelope(const Trajectory& traj,
                               const ExpDecayCertificate& cert, double gamma,
                               double rho, double tol) {
  if (traj.t_end() - traj.tau() < cert.T)
    throw error("dde.TooShort",
                "trajectory shorter than the certificate horizon T");

  const double phi_norm = traj.history().sup_norm();
  const double scale = cert.M * phi_norm + gamma * rho;
  const double slack = tol * (scale + 1.0);

  EnvelopeReport rep;
  rep.tolerance = slack;
  rep.max_violation = -std::numeric_limits<double>::infinity();

  const auto& mesh = traj.mesh();
  auto probe = [&](double t) {
    const double envelope =
        cert.M * phi_norm * std::exp(-cert.lambda * (t - traj.tau())) +
        gamma * rho;
    const double v = traj.segment_norm(t) - envelope;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_time = t;
    }
    ++rep.samples;
  };
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    probe(mesh[i]);
    if (i + 1 < mesh.size()) probe(0.5 * (mesh[i] + mesh[i + 1]));
  }
  rep.passed = rep.max_violation <= slack;
  return rep;
}

}  // namespace decaycert
