#include "ik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace prp {

namespace {

constexpr double kPi = std::numbers::pi;

struct PoseTrig {
  double sin_w, cos_w;  ///< w = phi - pi/3, the passive rail offset angle
  double gx, gy;        ///< platform anchor term (l0/sqrt(3)) * e^{i(phi+pi/3)}
  double k;             ///< l0/sqrt(3)
};

/// Quantities common to all three legs at a pose. Computed once so the legs
/// see bitwise identical values; this is what makes symmetric poses produce
/// identical joint coordinates rather than merely close ones.
PoseTrig pose_trig(const RobotGeometry& geom, double phi) {
  PoseTrig t;
  const double w = phi - kPi / 3;
  t.sin_w = std::sin(w);
  t.cos_w = std::cos(w);
  t.k = geom.l0 / std::sqrt(3.0);
  const double chi = phi + kPi / 3;
  t.gx = t.k * std::cos(chi);
  t.gy = t.k * std::sin(chi);
  return t;
}

void check_regular(double phi, double sin_w) {
  if (std::abs(sin_w) <= kSingularTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "singular pose: phi = " << phi << " is within " << kSingularTol
        << " of the singular surface sin(phi - pi/3) = 0";
    throw SingularPose(msg.str(), phi, std::abs(sin_w));
  }
}

}  // namespace

std::array<double, 6> closure_residual(const RobotGeometry& geom,
                                       const PlatformPose& pose,
                                       const std::array<double, 3>& lambda10,
                                       const std::array<double, 3>& lambda32) {
  const double k = geom.l0 / std::sqrt(3.0);
  std::array<double, 6> res;
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    const double psi = pose.phi - kPi / 3 + leg.alpha;
    const double chi = pose.phi + kPi / 3 + leg.alpha;
    res[2 * i] = leg.anchor.x + (k + lambda10[i]) * leg.cos_alpha +
                 lambda32[i] * std::cos(psi) + k * std::cos(chi) - pose.x;
    res[2 * i + 1] = leg.anchor.y + (k + lambda10[i]) * leg.sin_alpha +
                     lambda32[i] * std::sin(psi) + k * std::sin(chi) - pose.y;
  }
  return res;
}

IkSolution solve_position(const RobotGeometry& geom, const PlatformPose& pose) {
  const PoseTrig t = pose_trig(geom, pose.phi);
  check_regular(pose.phi, t.sin_w);

  IkSolution sol;
  sol.phi21 = pose.phi;
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    // Work in the leg frame (base frame rotated by alpha): the actuated rail
    // is the local x axis and the passive rail sits at angle w for every leg.
    const double px = leg.cos_alpha * pose.x + leg.sin_alpha * pose.y;
    const double py = -leg.sin_alpha * pose.x + leg.cos_alpha * pose.y;
    const double bx = px - leg.local_anchor.x - t.k - t.gx;
    const double by = py - leg.local_anchor.y - t.gy;
    const auto [l10, l32] = solve2(1.0, t.cos_w, 0.0, t.sin_w, bx, by);
    sol.legs[i] = {l10, l32};
  }
  return sol;
}

std::array<LegRates, 3> solve_velocity(const RobotGeometry& geom,
                                       const PlatformState& state,
                                       const IkSolution& sol) {
  const PoseTrig t = pose_trig(geom, state.pose.phi);
  check_regular(state.pose.phi, t.sin_w);

  std::array<LegRates, 3> rates;
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    const double px = leg.cos_alpha * state.vx + leg.sin_alpha * state.vy;
    const double py = -leg.sin_alpha * state.vx + leg.cos_alpha * state.vy;
    // m is the leg-frame vector from the revolute joint to the platform
    // centroid; its quarter-turn rotation carries the vphi contribution.
    const double mx = sol.legs[i].lambda32 * t.cos_w + t.gx;
    const double my = sol.legs[i].lambda32 * t.sin_w + t.gy;
    const double bx = px + state.vphi * my;
    const double by = py - state.vphi * mx;
    const auto [v10, v32] = solve2(1.0, t.cos_w, 0.0, t.sin_w, bx, by);
    rates[i] = {v10, v32, state.vphi};
  }
  return rates;
}

std::array<LegAccels, 3> solve_acceleration(
    const RobotGeometry& geom, const PlatformState& state,
    const IkSolution& sol, const std::array<LegRates, 3>& rates) {
  const PoseTrig t = pose_trig(geom, state.pose.phi);
  check_regular(state.pose.phi, t.sin_w);

  std::array<LegAccels, 3> acc;
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    const double px = leg.cos_alpha * state.ax + leg.sin_alpha * state.ay;
    const double py = -leg.sin_alpha * state.ax + leg.cos_alpha * state.ay;
    const double mx = sol.legs[i].lambda32 * t.cos_w + t.gx;
    const double my = sol.legs[i].lambda32 * t.sin_w + t.gy;
    const double w2 = state.vphi * state.vphi;
    const double cor = 2.0 * state.vphi * rates[i].v32;  // Coriolis term
    const double bx = px + state.aphi * my + w2 * mx + cor * t.sin_w;
    const double by = py - state.aphi * mx + w2 * my - cor * t.cos_w;
    const auto [g10, g32] = solve2(1.0, t.cos_w, 0.0, t.sin_w, bx, by);
    acc[i] = {g10, g32, state.aphi};
  }
  return acc;
}

MotionSolution solve_motion(const RobotGeometry& geom,
                            const PlatformState& state) {
  MotionSolution m;
  m.position = solve_position(geom, state.pose);
  m.velocity = solve_velocity(geom, state, m.position);
  m.acceleration = solve_acceleration(geom, state, m.position, m.velocity);
  return m;
}

JacobianPair jacobians(const RobotGeometry& geom, const PlatformPose& pose,
                       const IkSolution& sol) {
  const double w = pose.phi - kPi / 3;
  const double sin_w = std::sin(w);
  const double cos_w = std::cos(w);
  const double k = geom.l0 / std::sqrt(3.0);

  JacobianPair jac;
  jac.j1 = Mat3::zero();
  jac.j2 = Mat3::zero();
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    const double sin_psi = sin_w * leg.cos_alpha + cos_w * leg.sin_alpha;
    const double cos_psi = cos_w * leg.cos_alpha - sin_w * leg.sin_alpha;
    jac.j1(i, i) = sin_w;
    jac.j2(i, 0) = sin_psi;
    jac.j2(i, 1) = -cos_psi;
    jac.j2(i, 2) = (pose.x - leg.anchor.x) * cos_psi +
                   (pose.y - leg.anchor.y) * sin_psi -
                   (k + sol.legs[i].lambda10) * cos_w;
  }
  jac.det_j1 = sin_w * sin_w * sin_w;
  jac.det_j2 = det3(jac.j2);
  return jac;
}

SingularityMetrics singularity_metrics(const RobotGeometry& geom,
                                       const PlatformPose& pose) {
  const double s = std::sin(pose.phi - kPi / 3);
  SingularityMetrics m{s * s * s,
                       std::numeric_limits<double>::quiet_NaN()};
  try {
    m.det_j2 = jacobians(geom, pose, solve_position(geom, pose)).det_j2;
  } catch (const SingularPose&) {
    // det_j2 stays NaN: the configuration itself does not exist here.
  }
  return m;
}

namespace {

/// Plain bisection. det_j1 has cubic-order roots where its derivative
/// vanishes too, which defeats secant-type refinement; bisection converges
/// unconditionally on a sign change.
template <class F>
double bisect(F f, double a, double b, double fa) {
  while (b - a > 1e-12) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct J2Refined {
  double phi;
  double last_abs;  ///< |det_j2| at the last finite midpoint evaluation
};

/// Bisection that tolerates the NaN window around det_j1 = 0. A sign change
/// whose bracket shrinks onto that window is either a genuine zero crossing
/// that happens to sit on the singular surface or a pole of det_j2 (the
/// passive slide diverges there). The two are told apart by the magnitude
/// of det_j2 just outside the window, which differs by many orders: tiny at
/// a crossing, enormous at a pole. When a midpoint lands in the window the
/// refinement therefore closes in on the window's edges from both sides and
/// keeps the smaller adjacent magnitude.
template <class F>
J2Refined refine_j2(F f, double a, double b, double fa, double fb) {
  double last_abs = std::min(std::abs(fa), std::abs(fb));
  while (b - a > 1e-12) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (std::isnan(fm)) {
      double lo = a, hi = mid;  // f(lo) finite, f(hi) NaN
      while (hi - lo > 1e-12) {
        const double m = 0.5 * (lo + hi);
        const double v = f(m);
        if (std::isnan(v)) {
          hi = m;
        } else {
          lo = m;
          last_abs = std::min(last_abs, std::abs(v));
        }
      }
      double lo2 = mid, hi2 = b;  // f(lo2) NaN, f(hi2) finite
      while (hi2 - lo2 > 1e-12) {
        const double m = 0.5 * (lo2 + hi2);
        const double v = f(m);
        if (std::isnan(v)) {
          lo2 = m;
        } else {
          hi2 = m;
          last_abs = std::min(last_abs, std::abs(v));
        }
      }
      return {0.5 * (hi + lo2), last_abs};
    }
    last_abs = std::abs(fm);
    if (fm == 0.0) return {mid, 0.0};
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return {0.5 * (a + b), last_abs};
}

}  // namespace

ScanResult singularity_scan(const RobotGeometry& geom, double x, double y,
                            double phi_min, double phi_max, int steps) {
  if (steps < 2) throw std::invalid_argument("scan needs at least 2 steps");
  if (!(phi_max > phi_min) || !std::isfinite(phi_min) ||
      !std::isfinite(phi_max))
    throw std::invalid_argument("bad scan range");

  const auto f1 = [](double phi) {
    const double s = std::sin(phi - kPi / 3);
    return s * s * s;
  };
  const auto f2 = [&](double phi) {
    return singularity_metrics(geom, {x, y, phi}).det_j2;
  };

  ScanResult r;
  r.samples.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double phi =
        phi_min + (phi_max - phi_min) * double(i) / double(steps - 1);
    const SingularityMetrics m = singularity_metrics(geom, {x, y, phi});
    r.samples.push_back({phi, m.det_j1, m.det_j2});
  }

  for (size_t i = 0; i < r.samples.size(); ++i) {
    const ScanSample& s = r.samples[i];
    if (s.det_j1 == 0.0) r.j1_roots.push_back(s.phi);
    if (i + 1 < r.samples.size()) {
      const ScanSample& n = r.samples[i + 1];
      if (s.det_j1 * n.det_j1 < 0.0)
        r.j1_roots.push_back(bisect(f1, s.phi, n.phi, s.det_j1));
    }
  }

  // det_j2 brackets pair consecutive finite samples, stepping over any NaN
  // gap in between (a pole then sits inside the widened bracket).
  size_t prev = r.samples.size();
  for (size_t i = 0; i < r.samples.size(); ++i) {
    if (std::isnan(r.samples[i].det_j2)) continue;
    if (r.samples[i].det_j2 == 0.0) {
      r.j2_roots.push_back(r.samples[i].phi);
    } else if (prev < i) {
      const ScanSample& lo = r.samples[prev];
      const ScanSample& hi = r.samples[i];
      if (lo.det_j2 != 0.0 && lo.det_j2 * hi.det_j2 < 0.0) {
        const J2Refined ref =
            refine_j2(f2, lo.phi, hi.phi, lo.det_j2, hi.det_j2);
        if (ref.last_abs <= 1e-4)
          r.j2_roots.push_back(ref.phi);
        else
          r.j2_poles.push_back(ref.phi);
      }
    }
    prev = i;
  }
  return r;
}

}  // namespace prp
