#include "trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "fk.hpp"

namespace prp {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const MotionSpec& spec) {
  if (!(spec.duration > 0.0))
    throw std::invalid_argument("duration must be positive");
  if (spec.samples < 2)
    throw std::invalid_argument("need at least 2 samples");
  if (!std::isfinite(spec.x_star) || !std::isfinite(spec.y_star) ||
      !std::isfinite(spec.phi_star))
    throw std::invalid_argument("amplitudes must be finite");
}

struct Mask {
  double x, y, phi;
};

Mask mask_of(Scenario sc) {
  switch (sc) {
    case Scenario::Rotation: return {0.0, 0.0, 1.0};
    case Scenario::TranslationX: return {1.0, 0.0, 0.0};
    case Scenario::TranslationY: return {0.0, 1.0, 0.0};
    case Scenario::Combined: return {1.0, 1.0, 1.0};
  }
  throw std::invalid_argument("bad scenario");
}

}  // namespace

MotionSpec reference_motion() { return {}; }

const char* to_string(Scenario sc) {
  switch (sc) {
    case Scenario::Rotation: return "rotation";
    case Scenario::TranslationX: return "trans-x";
    case Scenario::TranslationY: return "trans-y";
    case Scenario::Combined: return "combined";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(const std::string& name) {
  for (Scenario sc : {Scenario::Rotation, Scenario::TranslationX,
                      Scenario::TranslationY, Scenario::Combined})
    if (name == to_string(sc)) return sc;
  return std::nullopt;
}

PlatformState motion_law(const MotionSpec& spec, Scenario sc, double t) {
  validate(spec);
  if (!(t >= 0.0) || !(t <= spec.duration)) {
    std::ostringstream msg;
    msg << "time " << t << " outside [0, " << spec.duration << "]";
    throw OutOfRange(msg.str());
  }

  const double rate = kPi / spec.duration;
  const double c = std::cos(rate * t);
  const double s = std::sin(rate * t);
  // (1 - c) hits exactly 2 at t = duration, so the final pose components are
  // exact doublings of the amplitudes, free of trigonometric roundoff.
  const double pos = 1.0 - c;
  const double vel = rate * s;
  const double acc = rate * rate * c;

  const Mask m = mask_of(sc);
  PlatformState st;
  st.pose.x = m.x * spec.x_star * pos;
  st.pose.y = m.y * spec.y_star * pos;
  st.pose.phi = m.phi * spec.phi_star * pos;
  st.vx = m.x * spec.x_star * vel;
  st.vy = m.y * spec.y_star * vel;
  st.vphi = m.phi * spec.phi_star * vel;
  st.ax = m.x * spec.x_star * acc;
  st.ay = m.y * spec.y_star * acc;
  st.aphi = m.phi * spec.phi_star * acc;
  return st;
}

std::vector<SimulationRecord> simulate(const RobotGeometry& geom, Scenario sc,
                                       const MotionSpec& spec,
                                       bool verify_fk) {
  validate(spec);
  std::vector<SimulationRecord> rows;
  rows.reserve(spec.samples);

  PlatformPose warm{};  // previous sample's pose, the forward solver's guess
  for (int i = 0; i < spec.samples; ++i) {
    const double t = spec.duration * double(i) / double(spec.samples - 1);
    const PlatformState st = motion_law(spec, sc, t);
    try {
      const MotionSolution m = solve_motion(geom, st);

      SimulationRecord rec;
      rec.t = t;
      rec.x = st.pose.x;
      rec.y = st.pose.y;
      rec.phi = st.pose.phi;
      rec.vx = st.vx;
      rec.vy = st.vy;
      rec.vphi = st.vphi;
      rec.ax = st.ax;
      rec.ay = st.ay;
      rec.aphi = st.aphi;
      for (int leg = 0; leg < 3; ++leg) {
        rec.lambda10[leg] = m.position.legs[leg].lambda10;
        rec.lambda32[leg] = m.position.legs[leg].lambda32;
        rec.v10[leg] = m.velocity[leg].v10;
        rec.v32[leg] = m.velocity[leg].v32;
        rec.gamma10[leg] = m.acceleration[leg].gamma10;
        rec.gamma32[leg] = m.acceleration[leg].gamma32;
      }
      rec.fk_error = std::numeric_limits<double>::quiet_NaN();

      if (verify_fk) {
        const std::array<double, 3> l10{rec.lambda10[0], rec.lambda10[1],
                                        rec.lambda10[2]};
        const FkResult fk = forward_kinematics(geom, l10, warm);
        rec.fk_error = std::max({std::abs(fk.pose.x - st.pose.x),
                                 std::abs(fk.pose.y - st.pose.y),
                                 std::abs(fk.pose.phi - st.pose.phi)});
      }
      warm = st.pose;
      rows.push_back(rec);
    } catch (const SingularPose& e) {
      SingularPose with_time = e;
      with_time.time = t;
      throw with_time;
    }
  }
  return rows;
}

}  // namespace prp
