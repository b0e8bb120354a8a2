#include <doctest.h>

#include <cmath>

#include "decaycert/attractor.hpp"
#include "decaycert/systems.hpp"

using namespace decaycert;

namespace {

DelaySystemSpec cubic_system() {
  // x' = -x^3 + 0.1 x(t-1)
  SuperlinearSystem sys;
  sys.dim = 1;
  sys.p = 3.0;
  sys.q = 1.0;
  sys.alpha = {1.0, 0.1};
  sys.max_lag = 1.0;
  sys.delays = {1.0};
  sys.F0 = [](double, const Vec& x) { return Vec{-x[0] * x[0] * x[0]}; };
  sys.Fi = {[](double, const Vec& xd) { return Vec{0.1 * xd[0]}; }};
  return build_rhs(sys);
}

DelaySystemSpec forced_cubic_system() {
  // x' = -x^3 + 0.1 x(t-1) + sin t
  SuperlinearSystem sys;
  sys.dim = 1;
  sys.p = 3.0;
  sys.q = 1.0;
  sys.alpha = {0.5, 0.1};
  sys.max_lag = 1.0;
  sys.delays = {1.0};
  sys.F0 = [](double t, const Vec& x) {
    return Vec{-x[0] * x[0] * x[0] + std::sin(t)};
  };
  sys.Fi = {[](double, const Vec& xd) { return Vec{0.1 * xd[0]}; }};
  return build_rhs(sys);
}

}  // namespace

TEST_CASE("cloud sampling is deterministic and bounded") {
  const auto c1 = sample_cloud(1, 1.0, 17, 2.0, 6, 42);
  const auto c2 = sample_cloud(1, 1.0, 17, 2.0, 6, 42);
  REQUIRE(c1.segments.size() == c2.segments.size());
  CHECK(c1.segments.size() == 14);  // 8 corners + 6 random constants
  for (std::size_t i = 0; i < c1.segments.size(); ++i) {
    CHECK(c1.segment_norm(i) <= 2.0 + 1e-12);
    for (int j = 0; j < c1.n_nodes; ++j)
      CHECK(c1.segments[i][j][0] == c2.segments[i][j][0]);
  }
  const auto c3 = sample_cloud(1, 1.0, 17, 2.0, 6, 43);
  bool any_different = false;
  for (int j = 0; j < c3.n_nodes && !any_different; ++j)
    any_different = c3.segments.back()[j][0] != c1.segments.back()[j][0];
  CHECK(any_different);
}

TEST_CASE("semi-distance basics") {
  const auto zero = sample_cloud(1, 1.0, 9, 0.0, 0, 1);
  SetCloud two = zero;
  for (auto& seg : two.segments)
    for (auto& node : seg) node[0] = 2.0;
  CHECK(hausdorff_semidist(zero, zero) == 0.0);
  CHECK(hausdorff_semidist(two, zero) == 2.0);
  CHECK(hausdorff_semidist(zero, two) == 2.0);
}

TEST_CASE("semi-distance is one-sided") {
  SetCloud a;
  a.max_lag = 1.0;
  a.n_nodes = 5;
  a.dim = 1;
  a.segments = {std::vector<Vec>(5, Vec{0.0})};
  SetCloud b = a;
  b.segments.push_back(std::vector<Vec>(5, Vec{5.0}));
  CHECK(hausdorff_semidist(a, b) == 0.0);
  CHECK(hausdorff_semidist(b, a) == 5.0);
}

TEST_CASE("semi-distance triangle bound on sampled triples") {
  const auto A = sample_cloud(1, 1.0, 9, 1.0, 4, 7, "A");
  const auto B = sample_cloud(1, 1.0, 9, 2.0, 4, 8, "B");
  const auto C = sample_cloud(1, 1.0, 9, 3.0, 4, 9, "C");
  CHECK(hausdorff_semidist(A, C) <=
        hausdorff_semidist(A, B) + hausdorff_semidist(B, C) + 1e-12);
}

TEST_CASE("evolving to the initial time is the identity, exactly") {
  const auto cloud = sample_cloud(1, 1.0, 17, 1.5, 4, 42);
  const auto out = process_evolve(cubic_system(), cloud, 0.0, 0.0, 0.01);
  CHECK(out.dropped == 0);
  for (std::size_t i = 0; i < cloud.segments.size(); ++i)
    for (int j = 0; j < cloud.n_nodes; ++j)
      CHECK(out.cloud.segments[i][j][0] == cloud.segments[i][j][0]);
}

TEST_CASE("two-leg composition matches the single leg") {
  // segment tabulation at the step spacing keeps the hand-off error tiny
  const auto spec = cubic_system();
  const auto cloud = sample_cloud(1, 1.0, 201, 1.5, 6, 42);
  const auto direct = process_evolve(spec, cloud, 0.0, 6.0, 0.005);
  const auto leg1 = process_evolve(spec, cloud, 0.0, 3.0, 0.005);
  const auto leg2 = process_evolve(spec, leg1.cloud, 3.0, 6.0, 0.005);
  REQUIRE(direct.cloud.segments.size() == leg2.cloud.segments.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < direct.cloud.segments.size(); ++i)
    for (int j = 0; j < direct.cloud.n_nodes; ++j)
      gap = std::max(gap, std::abs(direct.cloud.segments[i][j][0] -
                                   leg2.cloud.segments[i][j][0]));
  CHECK(gap < 1e-8);
}

TEST_CASE("contraction shrinks the cloud diameter monotonically") {
  const auto spec = build_rhs(LinearLag{3.0, 1.0, 1.0});
  auto cloud = sample_cloud(1, 1.0, 17, 2.0, 6, 42);
  double prev = cloud.diameter();
  for (double t : {2.0, 4.0, 6.0}) {
    const auto out = process_evolve(spec, cloud, t - 2.0, t, 0.01);
    const double d = out.cloud.diameter();
    CHECK(d <= prev + 1e-12);
    prev = d;
    cloud = out.cloud;
  }
}

TEST_CASE("pullback of a contraction collapses to the origin") {
  DelaySystemSpec spec;
  spec.dim = 1;
  spec.max_lag = 1.0;
  spec.rhs = [](double, const Vec& x, const std::vector<Vec>&) {
    return Vec{-x[0]};
  };
  const auto cloud = sample_cloud(1, 1.0, 17, 2.0, 6, 42);
  const auto rep = pullback_attractor(spec, 0.0, cloud,
                                      {-10.0, -20.0, -30.0}, 0.01, 1e-6, 1.0);
  CHECK(rep.converged);
  CHECK(rep.dH_history.back() < 1e-6);
  for (std::size_t i = 0; i < rep.attractor_sample.segments.size(); ++i)
    CHECK(rep.attractor_sample.segment_norm(i) < 1e-4);
  CHECK(rep.contained_in_ball);
}

TEST_CASE("pullback of the forced cubic converges to a nontrivial section") {
  const auto spec = forced_cubic_system();
  const auto cloud = sample_cloud(1, 1.0, 17, 2.0, 4, 42);
  const auto rep = pullback_attractor(
      spec, 0.0, cloud, {-10.0, -20.0, -40.0, -80.0}, 0.01, 1e-3, 2.0);
  CHECK(rep.converged);
  CHECK(rep.dH_history.back() < 1e-3);
  // the section is away from zero (the forcing keeps it alive)
  double peak = 0.0;
  for (std::size_t i = 0; i < rep.attractor_sample.segments.size(); ++i)
    peak = std::max(peak, rep.attractor_sample.segment_norm(i));
  CHECK(peak > 0.1);
  CHECK(rep.contained_in_ball);
}

TEST_CASE("pullback distances shrink monotonically on a contraction") {
  const auto spec = build_rhs(LinearLag{3.0, 1.0, 1.0});
  const auto cloud = sample_cloud(1, 1.0, 17, 2.0, 6, 42);
  const auto rep = pullback_attractor(spec, 0.0, cloud,
                                      {-5.0, -10.0, -20.0, -40.0}, 0.01,
                                      1e-6, 2.0);
  REQUIRE(rep.dH_history.size() == 3);
  for (std::size_t i = 1; i < rep.dH_history.size(); ++i)
    CHECK(rep.dH_history[i] <= rep.dH_history[i - 1] + 1e-10);
}

TEST_CASE("schedule exhaustion reports without converging") {
  const auto spec = forced_cubic_system();
  const auto cloud = sample_cloud(1, 1.0, 17, 2.0, 4, 42);
  const auto rep = pullback_attractor(spec, 0.0, cloud, {-5.0, -6.0}, 0.01,
                                      1e-30, 2.0);
  CHECK_FALSE(rep.converged);
  CHECK(rep.dH_history.size() == 1);
  CHECK_FALSE(rep.attractor_sample.segments.empty());
}

TEST_CASE("a cloud already at a fixed point converges immediately") {
  DelaySystemSpec spec;
  spec.dim = 1;
  spec.max_lag = 1.0;
  spec.rhs = [](double, const Vec& x, const std::vector<Vec>&) {
    return Vec{-(x[0] - 1.0)};
  };
  SetCloud cloud;
  cloud.max_lag = 1.0;
  cloud.n_nodes = 9;
  cloud.dim = 1;
  cloud.segments = {std::vector<Vec>(9, Vec{1.0}),
                    std::vector<Vec>(9, Vec{1.0})};
  const auto rep =
      pullback_attractor(spec, 0.0, cloud, {-5.0, -10.0}, 0.01, 1e-9, 2.0);
  CHECK(rep.converged);
  CHECK(rep.dH_history.front() < 1e-9);
}

TEST_CASE("forward invariance of the pulled-back sample") {
  const auto spec = forced_cubic_system();
  const auto cloud = sample_cloud(1, 1.0, 17, 2.0, 4, 42);
  const double tol = 1e-3;
  const auto rep = pullback_attractor(spec, 0.0, cloud,
                                      {-20.0, -40.0, -80.0}, 0.01, tol, 2.0);
  REQUIRE(rep.converged);
  const double delta = 2.0;
  const auto pushed =
      process_evolve(spec, rep.attractor_sample, 0.0, delta, 0.01);
  const auto pulled = pullback_attractor(spec, delta, cloud,
                                         {-20.0, -40.0, -80.0}, 0.01, tol, 2.0);
  const double mismatch =
      std::max(hausdorff_semidist(pushed.cloud, pulled.attractor_sample),
               hausdorff_semidist(pulled.attractor_sample, pushed.cloud));
  CHECK(mismatch < 10.0 * tol);
}

TEST_CASE("blown-up segments are dropped and flagged") {
  DelaySystemSpec spec;
  spec.dim = 1;
  spec.max_lag = 1.0;
  spec.blowup_guard = 1e6;
  spec.rhs = [](double, const Vec& x, const std::vector<Vec>&) {
    return Vec{x[0] * x[0]};  // blows up from positive data
  };
  SetCloud cloud;
  cloud.max_lag = 1.0;
  cloud.n_nodes = 9;
  cloud.dim = 1;
  cloud.segments = {std::vector<Vec>(9, Vec{2.0}),
                    std::vector<Vec>(9, Vec{-0.5})};
  const auto out = process_evolve(spec, cloud, 0.0, 5.0, 0.01);
  CHECK(out.dropped == 1);
  CHECK(out.cloud.segments.size() == 1);
}

TEST_CASE("incompatible clouds are rejected") {
  const auto a = sample_cloud(1, 1.0, 9, 1.0, 2, 1);
  const auto b = sample_cloud(1, 1.0, 17, 1.0, 2, 1);
  CHECK_THROWS_WITH_AS(static_cast<void>(hausdorff_semidist(a, b)),
                       doctest::Contains("attractor.IncompatibleClouds"),
                       error);
}

TEST_CASE("schedule validation") {
  const auto cloud = sample_cloud(1, 1.0, 9, 1.0, 2, 1);
  const auto spec = cubic_system();
  CHECK_THROWS_WITH_AS(
      static_cast<void>(
          pullback_attractor(spec, 0.0, cloud, {-10.0, -5.0}, 0.01, 1e-3, 1.0)),
      doctest::Contains("attractor.BadParameter"), error);
}
