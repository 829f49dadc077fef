#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ik.hpp"
#include "model.hpp"

namespace prp {

/// Rest-to-rest displacement program. Each pose component follows
///
///   q(t) = q_star * (1 - cos(pi t / duration)),
///
/// so it starts and ends at zero velocity and reaches 2 * q_star at
/// t = duration. The factor of two is deliberate: q_star is the value at the
/// half-way point, where the speed peaks.
struct MotionSpec {
  double x_star = 0.025;                       ///< [m]
  double y_star = 0.025;                       ///< [m]
  double phi_star = std::numbers::pi / 12.0;   ///< [rad]
  double duration = 3.0;                       ///< [s]
  int samples = 301;  ///< trajectory rows produced by simulate()
};

/// The displacement program used by all defaults: 25 mm in x and y, pi/12 in
/// phi, over three seconds, 301 samples. The final pose at t = 3 is
/// (0.05 m, 0.05 m, pi/6) exactly.
MotionSpec reference_motion();

/// Which pose components the program drives; the others stay at zero.
enum class Scenario { Rotation, TranslationX, TranslationY, Combined };

const char* to_string(Scenario sc);
std::optional<Scenario> parse_scenario(const std::string& name);

/// Pose, velocity and acceleration of the program at time t.
/// Throws OutOfRange unless 0 <= t <= spec.duration.
PlatformState motion_law(const MotionSpec& spec, Scenario sc, double t);

/// One trajectory row: platform motion and the full inverse-kinematics
/// solution of every leg. fk_error is NaN unless the simulation was asked
/// to verify each sample through the forward solver.
struct SimulationRecord {
  double t;
  double x, y, phi;
  double vx, vy, vphi;
  double ax, ay, aphi;
  std::array<double, 3> lambda10, v10, gamma10;
  std::array<double, 3> lambda32, v32, gamma32;
  double fk_error;
};

/// Samples the program at spec.samples evenly spaced times and solves the
/// complete inverse kinematics at each. With verify_fk, every sample is also
/// pushed through forward_kinematics (warm-started from the previous pose)
/// and fk_error records the worst pose-component disagreement.
///
/// Throws std::invalid_argument on a bad spec. A SingularPose thrown by a
/// sample is rethrown with its time field set.
std::vector<SimulationRecord> simulate(const RobotGeometry& geom, Scenario sc,
                                       const MotionSpec& spec,
                                       bool verify_fk = false);

}  // namespace prp
