#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "errors.hpp"
#include "ik.hpp"
#include "model.hpp"
#include "oracle.hpp"

using namespace prp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS3 = std::sqrt(3.0);

}  // namespace

TEST_CASE("central configuration zeroes every joint coordinate") {
  const RobotGeometry g = default_geometry();
  const IkSolution s = solve_position(g, {0.0, 0.0, 0.0});
  for (const LegSolution& leg : s.legs) {
    CHECK(std::abs(leg.lambda10) < 1e-15);
    CHECK(std::abs(leg.lambda32) < 1e-15);
    // the three legs run through bitwise identical arithmetic here
    CHECK(leg.lambda10 == s.legs[0].lambda10);
    CHECK(leg.lambda32 == s.legs[0].lambda32);
  }
  CHECK(s.phi21 == 0.0);
}

TEST_CASE("known poses reproduce the closed-form slide lengths") {
  const RobotGeometry g = default_geometry();

  SUBCASE("displaced and rotated") {
    // x = y = 0.05, phi = pi/6; leg a closes with both slides equal
    const IkSolution s = solve_position(g, {0.05, 0.05, kPi / 6});
    const double la = kS3 / 4 - 0.35;         // 0.0830127...
    const double lb10 = 3 * kS3 / 20 - 0.35;  // -0.0901923...
    const double lb32 = kS3 / 5 - 0.2;        // 0.1464101...
    CHECK(s.legs[0].lambda10 == doctest::Approx(la).epsilon(1e-13));
    CHECK(s.legs[0].lambda32 == doctest::Approx(la).epsilon(1e-13));
    CHECK(s.legs[1].lambda10 == doctest::Approx(lb10).epsilon(1e-13));
    CHECK(s.legs[1].lambda32 == doctest::Approx(lb32).epsilon(1e-13));
    // leg c mirrors leg b for this pose
    CHECK(s.legs[2].lambda10 == doctest::Approx(lb32).epsilon(1e-13));
    CHECK(s.legs[2].lambda32 == doctest::Approx(lb10).epsilon(1e-13));
  }

  SUBCASE("pure rotation") {
    const IkSolution s = solve_position(g, {0.0, 0.0, kPi / 6});
    const double l = kS3 / 5 - 0.3;  // 0.0464101...
    for (const LegSolution& leg : s.legs) {
      CHECK(leg.lambda10 == doctest::Approx(l).epsilon(1e-13));
      CHECK(leg.lambda32 == doctest::Approx(l).epsilon(1e-13));
      // rotation about the centroid treats the legs identically to the bit
      CHECK(leg.lambda10 == s.legs[0].lambda10);
      CHECK(leg.lambda32 == s.legs[0].lambda32);
    }
  }

  SUBCASE("pure y translation") {
    const IkSolution s = solve_position(g, {0.0, 0.05, 0.0});
    CHECK(s.legs[0].lambda10 == doctest::Approx(kS3 / 30).epsilon(1e-13));
    CHECK(s.legs[1].lambda10 == doctest::Approx(-kS3 / 60).epsilon(1e-13));
    CHECK(s.legs[2].lambda10 == doctest::Approx(-kS3 / 60).epsilon(1e-13));
    // the actuated slides of b and c agree to roundoff, though not bitwise:
    // their inputs differ (the passive slides do not pair up at all)
    CHECK(std::abs(s.legs[1].lambda10 - s.legs[2].lambda10) < 1e-15);
  }

  SUBCASE("pure x translation") {
    const IkSolution s = solve_position(g, {0.05, 0.0, 0.0});
    CHECK(std::abs(s.legs[0].lambda10) < 1e-15);
    CHECK(s.legs[1].lambda10 == doctest::Approx(-0.05).epsilon(1e-13));
    CHECK(s.legs[2].lambda10 == doctest::Approx(0.05).epsilon(1e-13));
  }
}

TEST_CASE("closure residual vanishes on solved poses") {
  const RobotGeometry g = default_geometry();
  std::mt19937_64 rng(20240501);
  double worst_flat = 0.0, worst_chain = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PlatformPose pose = oracle::random_pose(rng);
    const IkSolution s = solve_position(g, pose);
    const std::array<double, 6> res = closure_residual(
        g, pose,
        {s.legs[0].lambda10, s.legs[1].lambda10, s.legs[2].lambda10},
        {s.legs[0].lambda32, s.legs[1].lambda32, s.legs[2].lambda32});
    for (double r : res) worst_flat = std::max(worst_flat, std::abs(r));
    worst_chain =
        std::max(worst_chain, oracle::chain_closure_error(g, pose, s));
  }
  CHECK(worst_flat < 1e-13);
  CHECK(worst_chain < 1e-13);
}

TEST_CASE("closure residual flags wrong joint values") {
  const RobotGeometry g = default_geometry();
  const PlatformPose pose{0.02, -0.01, 0.3};
  const IkSolution s = solve_position(g, pose);
  std::array<double, 3> l10{s.legs[0].lambda10, s.legs[1].lambda10,
                            s.legs[2].lambda10};
  const std::array<double, 3> l32{s.legs[0].lambda32, s.legs[1].lambda32,
                                  s.legs[2].lambda32};
  l10[1] += 1e-3;
  const std::array<double, 6> res = closure_residual(g, pose, l10, l32);
  CHECK(std::abs(res[0]) < 1e-13);  // leg a untouched
  CHECK(std::abs(res[1]) < 1e-13);
  CHECK(std::max(std::abs(res[2]), std::abs(res[3])) > 1e-4);
  CHECK(std::abs(res[4]) < 1e-13);
  CHECK(std::abs(res[5]) < 1e-13);
}

TEST_CASE("singular orientations are rejected with the pose attached") {
  const RobotGeometry g = default_geometry();
  const double phi_s = kPi / 3;
  CHECK_THROWS_AS(solve_position(g, {0.0, 0.0, phi_s}), SingularPose);
  CHECK_THROWS_AS(solve_position(g, {0.03, 0.01, phi_s - kPi}), SingularPose);

  try {
    solve_position(g, {0.0, 0.0, phi_s + 0.9e-9});
    FAIL("expected SingularPose");
  } catch (const SingularPose& e) {
    CHECK(e.phi == phi_s + 0.9e-9);
    CHECK(e.margin <= kSingularTol);
    CHECK(std::isnan(e.time));  // no trajectory context here
  }
  // just outside the guard band the solve succeeds
  CHECK_NOTHROW(solve_position(g, {0.0, 0.0, phi_s + 2e-9}));

  // velocity and acceleration level guards fire too
  PlatformState st;
  st.pose = {0.0, 0.0, phi_s};
  st.vx = 0.1;
  const IkSolution near = solve_position(g, {0.0, 0.0, 0.0});
  CHECK_THROWS_AS(solve_velocity(g, st, near), SingularPose);
  std::array<LegRates, 3> rates{};
  CHECK_THROWS_AS(solve_acceleration(g, st, near, rates), SingularPose);
}

TEST_CASE("velocity solve matches finite differences") {
  const RobotGeometry g = default_geometry();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const PlatformState st = oracle::random_state(rng);
    const IkSolution s = solve_position(g, st.pose);
    const std::array<LegRates, 3> rates = solve_velocity(g, st, s);
    const std::array<double, 3> fd = oracle::fd_v10(g, st);
    for (int l = 0; l < 3; ++l) {
      const double denom = std::max(std::abs(fd[l]), 1e-3);
      CHECK(std::abs(rates[l].v10 - fd[l]) / denom < 1e-5);
      CHECK(rates[l].omega21 == st.vphi);
    }
  }
}

TEST_CASE("acceleration solve matches finite differences") {
  const RobotGeometry g = default_geometry();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const PlatformState st = oracle::random_state(rng);
    const IkSolution s = solve_position(g, st.pose);
    const std::array<LegRates, 3> rates = solve_velocity(g, st, s);
    const std::array<LegAccels, 3> acc = solve_acceleration(g, st, s, rates);
    const std::array<double, 3> fd = oracle::fd_gamma10(g, st);
    for (int l = 0; l < 3; ++l) {
      const double denom = std::max(std::abs(fd[l]), 1e-2);
      CHECK(std::abs(acc[l].gamma10 - fd[l]) / denom < 1e-4);
      CHECK(acc[l].epsilon21 == st.aphi);
    }
  }
}

TEST_CASE("velocity relation j1 * lambda_dot = j2 * q_dot") {
  const RobotGeometry g = default_geometry();
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PlatformState st = oracle::random_state(rng);
    const MotionSolution m = solve_motion(g, st);
    const JacobianPair jac = jacobians(g, st.pose, m.position);
    const Vec3 lhs = jac.j1 * Vec3{m.velocity[0].v10, m.velocity[1].v10,
                                   m.velocity[2].v10};
    const Vec3 rhs = jac.j2 * Vec3{st.vx, st.vy, st.vphi};
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("jacobian structure at the central configuration") {
  const RobotGeometry g = default_geometry();
  const PlatformPose pose{0.0, 0.0, 0.0};
  const JacobianPair jac = jacobians(g, pose, solve_position(g, pose));

  const double sw = std::sin(-kPi / 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(jac.j1(r, c) == (r == c ? sw : 0.0));

  CHECK(jac.det_j1 == doctest::Approx(-3 * kS3 / 8).epsilon(1e-14));
  CHECK(jac.det_j2 == doctest::Approx(-3 * g.l0 / 4).epsilon(1e-13));

  // row a: psi_a = 0 there, so the row reads (0, -1, -l0/(2*sqrt(3)))
  CHECK(std::abs(jac.j2(0, 0)) < 1e-15);
  CHECK(jac.j2(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(jac.j2(0, 2) == doctest::Approx(-g.l0 / (2 * kS3)).epsilon(1e-13));
}

TEST_CASE("third jacobian column reduces to the passive slide length") {
  // For the default geometry the column entry is lambda32 - l0/(2*sqrt(3)),
  // a useful cross-check because the solver never forms it that way.
  const RobotGeometry g = default_geometry();
  const double shift = g.l0 / (2 * kS3);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const PlatformPose pose = oracle::random_pose(rng);
    const IkSolution s = solve_position(g, pose);
    const JacobianPair jac = jacobians(g, pose, s);
    for (int l = 0; l < 3; ++l)
      CHECK(std::abs(jac.j2(l, 2) - (s.legs[l].lambda32 - shift)) < 1e-12);
  }
}

TEST_CASE("singularity metrics agree with the jacobian path and go NaN") {
  const RobotGeometry g = default_geometry();

  const PlatformPose regular{0.03, -0.02, 0.4};
  const SingularityMetrics m = singularity_metrics(g, regular);
  const JacobianPair jac = jacobians(g, regular, solve_position(g, regular));
  CHECK(m.det_j1 == jac.det_j1);
  CHECK(m.det_j2 == jac.det_j2);

  const SingularityMetrics sing = singularity_metrics(g, {0.0, 0.0, kPi / 3});
  CHECK(std::abs(sing.det_j1) < 1e-45);  // sin^3 of an epsilon-sized angle
  CHECK(std::isnan(sing.det_j2));

  const SingularityMetrics near =
      singularity_metrics(g, {0.0, 0.0, kPi / 3 + 1e-12});
  CHECK(std::isnan(near.det_j2));  // still inside the guard band
}

TEST_CASE("scan of the central slice") {
  const RobotGeometry g = default_geometry();
  const ScanResult r = singularity_scan(g, 0.0, 0.0, 0.0, kPi, 721);

  CHECK(r.samples.size() == 721);
  CHECK(r.samples.front().phi == 0.0);
  CHECK(r.samples.back().phi == kPi);
  CHECK(r.samples.front().det_j1 ==
        doctest::Approx(-3 * kS3 / 8).epsilon(1e-14));

  int nan_count = 0;
  for (const ScanSample& s : r.samples)
    if (std::isnan(s.det_j2)) ++nan_count;
  CHECK(nan_count == 1);  // only the grid point on the singular surface

  REQUIRE(r.j1_roots.size() == 1);
  CHECK(std::abs(r.j1_roots[0] - kPi / 3) <= 1e-10);

  // det_j2 changes sign across phi = pi/3 but stays small there: a genuine
  // zero crossing that happens to sit on the singular surface, not a pole
  REQUIRE(r.j2_roots.size() == 1);
  CHECK(std::abs(r.j2_roots[0] - kPi / 3) <= 1e-9);
  CHECK(r.j2_poles.empty());
}

TEST_CASE("scan away from the center separates roots from poles") {
  const RobotGeometry g = default_geometry();
  const ScanResult r = singularity_scan(g, 0.04, 0.02, -kPi, kPi, 1441);

  REQUIRE(r.j1_roots.size() == 2);
  CHECK(std::abs(r.j1_roots[0] + 2 * kPi / 3) <= 1e-10);
  CHECK(std::abs(r.j1_roots[1] - kPi / 3) <= 1e-10);

  REQUIRE(r.j2_roots.size() == 1);
  CHECK(std::abs(r.j2_roots[0] - kPi / 3) <= 1e-9);

  // at phi = pi/3 - pi the passive slides diverge: det_j2 blows up
  REQUIRE(r.j2_poles.size() == 1);
  CHECK(std::abs(r.j2_poles[0] + 2 * kPi / 3) <= 1e-9);
}

TEST_CASE("scan rejects bad arguments") {
  const RobotGeometry g = default_geometry();
  CHECK_THROWS_AS(singularity_scan(g, 0, 0, 0.0, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(singularity_scan(g, 0, 0, 1.0, 1.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(singularity_scan(g, 0, 0, 0.0,
                                   std::numeric_limits<double>::quiet_NaN(),
                                   10),
                  std::invalid_argument);
}

TEST_CASE("a rotated rail layout still closes and differentiates") {
  const RobotGeometry g =
      make_geometry(0.25, {kPi / 2, kPi / 2 + 2 * kPi / 3, kPi / 2 - 2 * kPi / 3});
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const PlatformState st = oracle::random_state(rng);
    const IkSolution s = solve_position(g, st.pose);
    CHECK(oracle::chain_closure_error(g, st.pose, s) < 1e-13);

    const std::array<LegRates, 3> rates = solve_velocity(g, st, s);
    const std::array<double, 3> fd = oracle::fd_v10(g, st);
    for (int l = 0; l < 3; ++l) {
      const double denom = std::max(std::abs(fd[l]), 1e-3);
      CHECK(std::abs(rates[l].v10 - fd[l]) / denom < 1e-5);
    }

    const JacobianPair jac = jacobians(g, st.pose, s);
    const Vec3 lhs =
        jac.j1 * Vec3{rates[0].v10, rates[1].v10, rates[2].v10};
    const Vec3 rhs = jac.j2 * Vec3{st.vx, st.vy, st.vphi};
    CHECK(max_abs(lhs - rhs) < 1e-12);
  }
}
