#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "decaycert/dde.hpp"

namespace decaycert {

// A finite sample of history segments, each tabulated on the same uniform
// node set over [-r, 0].
struct SetCloud {
  double max_lag = 0.0;
  int n_nodes = 0;
  int dim = 0;
  std::vector<std::vector<Vec>> segments;  // [segment][node][component]
  std::string label;

  double node_time(int j) const {
    return -max_lag + max_lag * j / (n_nodes - 1);
  }
  double segment_norm(std::size_t i) const;
  double diameter() const;  // max pairwise sup-distance
};

// Bounded initial set sampled by the corners of a ball in the coefficient
// space of quadratic polynomial histories plus uniform random constant
// histories; deterministic for a fixed seed.
SetCloud sample_cloud(int dim, double max_lag, int n_nodes, double radius,
                      int n_random, std::uint64_t seed,
                      std::string label = "initial");

History segment_history(const SetCloud& cloud, std::size_t i);

struct EvolveResult {
  SetCloud cloud;
  int dropped = 0;  // segments lost to blow-up
};

// The two-parameter solution operator applied to every segment: images are
// the lifted segments at time t of the solutions starting at tau.
EvolveResult process_evolve(const DelaySystemSpec& spec, const SetCloud& cloud,
                            double tau, double t, double h);

// sup over A of the distance to B, in the segment sup-norm evaluated over
// the shared tabulation nodes
double hausdorff_semidist(const SetCloud& A, const SetCloud& B);

struct PullbackReport {
  double t_star = 0.0;
  std::vector<double> tau_schedule;
  std::vector<double> dH_history;  // mutual semi-distance of successive images
  bool converged = false;
  SetCloud attractor_sample;
  bool contained_in_ball = false;
  double ball_radius = 0.0;
  int dropped_total = 0;
  double tabulation_dt = 0.0;
};

PullbackReport pullback_attractor(const DelaySystemSpec& spec, double t_star,
                                  const SetCloud& cloud0,
                                  std::vector<double> tau_schedule, double h,
                                  double tol, double ball_radius);

void write_cloud_csv(const SetCloud& cloud, std::ostream& os);

}  // namespace decaycert
