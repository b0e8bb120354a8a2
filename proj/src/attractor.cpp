#include "decaycert/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace decaycert {

namespace {

double segment_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double s = 0.0;
    for (std::size_t c = 0; c < a[j].size(); ++c) {
      const double d = a[j][c] - b[j][c];
      s += d * d;
    }
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

void check_compatible(const SetCloud& A, const SetCloud& B) {
  if (A.n_nodes != B.n_nodes || A.dim != B.dim ||
      std::abs(A.max_lag - B.max_lag) > 1e-12)
    throw error("attractor.IncompatibleClouds",
                "clouds must share lag, tabulation and dimension");
  if (A.segments.empty() || B.segments.empty())
    throw error("attractor.EmptyCloud", "clouds must be nonempty");
}

}  // namespace

double SetCloud::segment_norm(std::size_t i) const {
  double best = 0.0;
  for (const Vec& v : segments[i]) best = std::max(best, euclidean_norm(v));
  return best;
}

double SetCloud::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = i + 1; j < segments.size(); ++j)
      best = std::max(best, segment_distance(segments[i], segments[j]));
  return best;
}

SetCloud sample_cloud(int dim, double max_lag, int n_nodes, double radius,
                      int n_random, std::uint64_t seed, std::string label) {
  if (n_nodes < 2) throw error("attractor.BadParameter", "need >= 2 nodes");
  if (!(max_lag > 0.0))
    throw error("attractor.BadParameter", "cloud needs a positive lag");

  SetCloud cloud;
  cloud.max_lag = max_lag;
  cloud.n_nodes = n_nodes;
  cloud.dim = dim;
  cloud.label = std::move(label);

  auto tabulate = [&](auto&& fn) {
    std::vector<Vec> seg(n_nodes, Vec(dim, 0.0));
    for (int j = 0; j < n_nodes; ++j) {
      const double s = cloud.node_time(j);
      for (int c = 0; c < dim; ++c) seg[j][c] = fn(s, c);
    }
    cloud.segments.push_back(std::move(seg));
  };

  // corners of the coefficient ball of c0 + c1 u + c2 u^2, u = s/r in [-1,0];
  // the 1/3 scale keeps every corner inside the radius-ball in sup norm
  const double scale = radius / 3.0;
  for (int corner = 0; corner < 8; ++corner) {
    const double c0 = (corner & 1) ? scale : -scale;
    const double c1 = (corner & 2) ? scale : -scale;
    const double c2 = (corner & 4) ? scale : -scale;
    tabulate([&](double s, int) {
      const double u = s / max_lag;
      return c0 + c1 * u + c2 * u * u;
    });
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  for (int k = 0; k < n_random; ++k) {
    Vec value(dim);
    for (int c = 0; c < dim; ++c) value[c] = unif(rng);
    // constant history
    tabulate([&](double, int c) { return value[c]; });
  }
  return cloud;
}

History segment_history(const SetCloud& cloud, std::size_t i) {
  return History::tabulated(cloud.segments[i], cloud.max_lag);
}

EvolveResult process_evolve(const DelaySystemSpec& spec, const SetCloud& cloud,
                            double tau, double t, double h) {
  if (t < tau) throw error("attractor.BadParameter", "need t >= tau");
  if (cloud.segments.empty())
    throw error("attractor.EmptyCloud", "nothing to evolve");

  EvolveResult out;
  out.cloud.max_lag = cloud.max_lag;
  out.cloud.n_nodes = cloud.n_nodes;
  out.cloud.dim = cloud.dim;
  out.cloud.label = cloud.label + "->evolved";
  if (t == tau) {
    out.cloud.segments = cloud.segments;  // the identity, exactly
    return out;
  }

  for (std::size_t i = 0; i < cloud.segments.size(); ++i) {
    try {
      const Trajectory traj =
          integrate(spec, segment_history(cloud, i), tau, t, h);
      std::vector<Vec> seg(cloud.n_nodes);
      for (int j = 0; j < cloud.n_nodes; ++j)
        seg[j] = traj.eval(t + out.cloud.node_time(j));
      out.cloud.segments.push_back(std::move(seg));
    } catch (const error& e) {
      if (std::string(e.code()) == "dde.Blowup")
        ++out.dropped;
      else
        throw;
    }
  }
  if (out.cloud.segments.empty())
    throw error("attractor.AllSegmentsBlewUp",
                "every segment left the integration guard");
  return out;
}

double hausdorff_semidist(const SetCloud& A, const SetCloud& B) {
  check_compatible(A, B);
  double worst = 0.0;
  for (const auto& a : A.segments) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : B.segments)
      nearest = std::min(nearest, segment_distance(a, b));
    worst = std::max(worst, nearest);
  }
  return worst;
}

PullbackReport pullback_attractor(const DelaySystemSpec& spec, double t_star,
                                  const SetCloud& cloud0,
                                  std::vector<double> tau_schedule, double h,
                                  double tol, double ball_radius) {
  if (tau_schedule.empty())
    throw error("attractor.BadParameter", "empty pullback schedule");
  for (std::size_t i = 0; i + 1 < tau_schedule.size(); ++i)
    if (!(tau_schedule[i + 1] < tau_schedule[i]))
      throw error("attractor.BadParameter",
                  "pullback schedule must decrease strictly");
  if (!(tau_schedule.front() <= t_star - cloud0.max_lag))
    throw error("attractor.BadParameter",
                "schedule must start below t_star - r");

  PullbackReport rep;
  rep.t_star = t_star;
  rep.tau_schedule = tau_schedule;
  rep.ball_radius = ball_radius;
  rep.tabulation_dt = cloud0.max_lag / (cloud0.n_nodes - 1);

  SetCloud previous;
  bool have_previous = false;
  for (double tau : tau_schedule) {
    EvolveResult ev = process_evolve(spec, cloud0, tau, t_star, h);
    rep.dropped_total += ev.dropped;
    if (have_previous) {
      const double mutual = std::max(hausdorff_semidist(ev.cloud, previous),
                                     hausdorff_semidist(previous, ev.cloud));
      rep.dH_history.push_back(mutual);
    }
    previous = std::move(ev.cloud);
    have_previous = true;
  }
  rep.attractor_sample = previous;
  rep.attractor_sample.label = "attractor_sample(t=" + std::to_string(t_star) + ")";
  rep.converged = !rep.dH_history.empty() && rep.dH_history.back() < tol;

  rep.contained_in_ball = rep.dropped_total == 0;
  for (std::size_t i = 0; i < rep.attractor_sample.segments.size(); ++i)
    if (rep.attractor_sample.segment_norm(i) > ball_radius)
      rep.contained_in_ball = false;
  return rep;
}

void write_cloud_csv(const SetCloud& cloud, std::ostream& os) {
  os << "segment,s";
  for (int c = 1; c <= cloud.dim; ++c) os << ",x" << c;
  os << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < cloud.segments.size(); ++i)
    for (int j = 0; j < cloud.n_nodes; ++j) {
      os << i << ',';
      put(cloud.node_time(j));
      for (int c = 0; c < cloud.dim; ++c) {
        os << ',';
        put(cloud.segments[i][j][c]);
      }
      os << '\n';
    }
}

}  // namespace decaycert
