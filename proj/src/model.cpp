#include "model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prp {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 rotate_into_leg(double c, double s, const Vec3& v) {
  // R^T(alpha) * v restricted to the plane.
  return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

}  // namespace

const char* to_string(LegId leg) {
  switch (leg) {
    case LegId::A: return "a";
    case LegId::B: return "b";
    case LegId::C: return "c";
  }
  return "?";
}

RobotGeometry default_geometry() { return default_geometry(0.3); }

RobotGeometry default_geometry(double l0) {
  if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
  RobotGeometry g;
  g.l0 = l0;
  const double s3 = std::sqrt(3.0);
  const double e = 0.5 * s3 * g.l0;    // sqrt(3)/2 * l0
  const double h = 0.5 * g.l0;

  // Rails run along the triangle edges. The cached sines and cosines are
  // written out exactly so that all three legs share identical magnitudes.
  g.legs[0] = {kPi / 3, 0.5, 0.5 * s3, {0.0, -g.l0, 0.0}, {}};
  g.legs[1] = {kPi, -1.0, 0.0, {e, h, 0.0}, {}};
  g.legs[2] = {-kPi / 3, 0.5, -0.5 * s3, {-e, h, 0.0}, {}};

  // R^T(alpha) * anchor is the same point for every leg; store one value so
  // the three legs are bitwise interchangeable in leg-local computations.
  const Vec3 local{-e, -h, 0.0};
  for (auto& leg : g.legs) leg.local_anchor = local;

  g.platform_anchor = {0.0, h, -s3 * g.l0 / 6.0};
  return g;
}

RobotGeometry make_geometry(double l0, const std::array<double, 3>& alpha) {
  if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
  const double s3 = std::sqrt(3.0);
  const double e = 0.5 * s3 * l0;
  const std::array<Vec3, 3> anchors{
      Vec3{0.0, -l0, 0.0}, Vec3{e, 0.5 * l0, 0.0}, Vec3{-e, 0.5 * l0, 0.0}};
  return make_geometry(l0, alpha, anchors, {0.0, 0.5 * l0, -s3 * l0 / 6.0});
}

RobotGeometry make_geometry(double l0, const std::array<double, 3>& alpha,
                            const std::array<Vec3, 3>& anchors,
                            const Vec3& platform_anchor) {
  if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
  RobotGeometry g;
  g.l0 = l0;
  for (int i = 0; i < 3; ++i) {
    LegGeometry& leg = g.legs[i];
    leg.alpha = alpha[i];
    leg.cos_alpha = std::cos(alpha[i]);
    leg.sin_alpha = std::sin(alpha[i]);
    leg.anchor = anchors[i];
    leg.local_anchor =
        rotate_into_leg(leg.cos_alpha, leg.sin_alpha, leg.anchor);
  }
  g.platform_anchor = platform_anchor;
  return g;
}

LegChain leg_chain(const RobotGeometry& geom, LegId leg, double phi,
                   double lambda10, double lambda32) {
  const LegGeometry& lg = geom.leg(leg);
  LegChain c;
  c.leg = leg;
  c.phi21 = phi;
  c.lambda10 = lambda10;
  c.lambda32 = lambda32;

  const Mat3 t1 = theta1();
  const Mat3 t2 = rot_z(-kPi / 3);
  c.q10 = t1 * rot_z_from(lg.cos_alpha, lg.sin_alpha);
  c.q21 = rot_z(phi) * transpose(t1);
  c.q32 = t1 * t2;
  c.q20 = c.q21 * c.q10;
  c.q30 = c.q32 * c.q20;
  c.q30_init = c.q32 * transpose(t1) * c.q10;

  c.r10 = lg.anchor +
          lambda10 * Vec3{lg.cos_alpha, lg.sin_alpha, 0.0};
  c.r32 = lambda32 * (transpose(c.q32) * Vec3{0.0, 0.0, 1.0});
  return c;
}

double orientation_residual(const LegChain& chain, double phi) {
  const Mat3 rel = transpose(chain.q30_init) * chain.q30;
  return max_abs(rel - rot_z(phi));
}

}  // namespace prp
