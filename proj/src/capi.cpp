#include "prp/prp.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fk.hpp"
#include "geometry_io.hpp"
#include "ik.hpp"
#include "model.hpp"
#include "recursive.hpp"
#include "trajectory.hpp"

struct prp_robot {
  prp::RobotGeometry geom;
};

struct prp_sim {
  std::vector<prp::SimulationRecord> rows;
};

struct prp_scan {
  prp::ScanResult result;
};

namespace {

thread_local std::string g_error;
thread_local prp_status g_status = PRP_OK;

prp_status fail(prp_status status, const std::string& message) {
  g_status = status;
  g_error = message;
  return status;
}

prp_status ok() {
  g_status = PRP_OK;
  g_error.clear();
  return PRP_OK;
}

/// Runs `body`, translating the library's exceptions into status codes.
template <class F>
prp_status guarded(F&& body) {
  try {
    body();
    return ok();
  } catch (const prp::SingularPose& e) {
    std::ostringstream msg;
    msg << e.what();
    if (!std::isnan(e.time)) msg << " (reached at t = " << e.time << " s)";
    return fail(PRP_SINGULAR_POSE, msg.str());
  } catch (const prp::NoConvergence& e) {
    return fail(PRP_NO_CONVERGENCE, e.what());
  } catch (const prp::SingularJacobian& e) {
    return fail(PRP_SINGULAR_JACOBIAN, e.what());
  } catch (const prp::SingularSystem& e) {
    return fail(PRP_SINGULAR_JACOBIAN, e.what());
  } catch (const prp::OutOfRange& e) {
    return fail(PRP_OUT_OF_RANGE, e.what());
  } catch (const prp::ParseError& e) {
    std::ostringstream msg;
    if (e.line > 0) msg << "line " << e.line << ": ";
    msg << e.what();
    return fail(PRP_PARSE, msg.str());
  } catch (const prp::IoError& e) {
    return fail(PRP_IO, e.what());
  } catch (const std::exception& e) {
    return fail(PRP_INVALID_ARG, e.what());
  }
}

prp::PlatformPose as_pose(const double pose[3]) {
  return {pose[0], pose[1], pose[2]};
}

prp::PlatformState as_state(const double state[9]) {
  prp::PlatformState st;
  st.pose = {state[0], state[1], state[2]};
  st.vx = state[3];
  st.vy = state[4];
  st.vphi = state[5];
  st.ax = state[6];
  st.ay = state[7];
  st.aphi = state[8];
  return st;
}

const std::vector<double>* scan_list(const prp_scan* scan,
                                     prp_scan_list list) {
  if (!scan) return nullptr;
  switch (list) {
    case PRP_SCAN_J1_ROOTS: return &scan->result.j1_roots;
    case PRP_SCAN_J2_ROOTS: return &scan->result.j2_roots;
    case PRP_SCAN_J2_POLES: return &scan->result.j2_poles;
  }
  return nullptr;
}

}  // namespace

extern "C" {

const char* prp_status_name(prp_status status) {
  switch (status) {
    case PRP_OK: return "ok";
    case PRP_INVALID_ARG: return "invalid_arg";
    case PRP_SINGULAR_POSE: return "singular_pose";
    case PRP_NO_CONVERGENCE: return "no_convergence";
    case PRP_SINGULAR_JACOBIAN: return "singular_jacobian";
    case PRP_OUT_OF_RANGE: return "out_of_range";
    case PRP_PARSE: return "parse_error";
    case PRP_IO: return "io_error";
  }
  return "unknown";
}

const char* prp_last_error(void) { return g_error.c_str(); }

prp_status prp_last_status(void) { return g_status; }

const char* prp_version(void) { return "1.0.0"; }

prp_robot* prp_robot_create_default(void) {
  auto* robot = new prp_robot{prp::default_geometry()};
  ok();
  return robot;
}

prp_robot* prp_robot_create(double l0, const double alpha[3]) {
  prp_robot* robot = nullptr;
  const prp_status s = guarded([&] {
    if (!alpha) throw std::invalid_argument("alpha must not be NULL");
    robot = new prp_robot{
        prp::make_geometry(l0, {alpha[0], alpha[1], alpha[2]})};
  });
  return s == PRP_OK ? robot : nullptr;
}

prp_robot* prp_robot_load(const char* path) {
  prp_robot* robot = nullptr;
  const prp_status s = guarded([&] {
    if (!path) throw std::invalid_argument("path must not be NULL");
    robot = new prp_robot{prp::load_geometry(path)};
  });
  return s == PRP_OK ? robot : nullptr;
}

void prp_robot_destroy(prp_robot* robot) { delete robot; }

double prp_robot_l0(const prp_robot* robot) {
  return robot ? robot->geom.l0 : 0.0;
}

void prp_robot_alpha(const prp_robot* robot, double alpha[3]) {
  if (!robot || !alpha) return;
  for (int i = 0; i < 3; ++i) alpha[i] = robot->geom.legs[i].alpha;
}

void prp_robot_anchor(const prp_robot* robot, int leg, double anchor[2]) {
  if (!robot || !anchor || leg < 0 || leg > 2) return;
  anchor[0] = robot->geom.legs[leg].anchor.x;
  anchor[1] = robot->geom.legs[leg].anchor.y;
}

prp_status prp_solve_position(const prp_robot* robot, const double pose[3],
                              double lambda10[3], double lambda32[3]) {
  return guarded([&] {
    if (!robot || !pose) throw std::invalid_argument("NULL argument");
    const prp::IkSolution sol =
        prp::solve_position(robot->geom, as_pose(pose));
    for (int i = 0; i < 3; ++i) {
      if (lambda10) lambda10[i] = sol.legs[i].lambda10;
      if (lambda32) lambda32[i] = sol.legs[i].lambda32;
    }
  });
}

prp_status prp_solve_motion(const prp_robot* robot, const double state[9],
                            double out[18]) {
  return guarded([&] {
    if (!robot || !state || !out) throw std::invalid_argument("NULL argument");
    const prp::MotionSolution m =
        prp::solve_motion(robot->geom, as_state(state));
    for (int i = 0; i < 3; ++i) {
      out[6 * i + 0] = m.position.legs[i].lambda10;
      out[6 * i + 1] = m.velocity[i].v10;
      out[6 * i + 2] = m.acceleration[i].gamma10;
      out[6 * i + 3] = m.position.legs[i].lambda32;
      out[6 * i + 4] = m.velocity[i].v32;
      out[6 * i + 5] = m.acceleration[i].gamma32;
    }
  });
}

prp_status prp_jacobians(const prp_robot* robot, const double pose[3],
                         double j1[9], double j2[9], double* det_j1,
                         double* det_j2) {
  return guarded([&] {
    if (!robot || !pose) throw std::invalid_argument("NULL argument");
    const prp::PlatformPose p = as_pose(pose);
    const prp::IkSolution sol = prp::solve_position(robot->geom, p);
    const prp::JacobianPair jac = prp::jacobians(robot->geom, p, sol);
    for (int i = 0; i < 9; ++i) {
      if (j1) j1[i] = jac.j1.m[i];
      if (j2) j2[i] = jac.j2.m[i];
    }
    if (det_j1) *det_j1 = jac.det_j1;
    if (det_j2) *det_j2 = jac.det_j2;
  });
}

prp_status prp_singularity_metrics(const prp_robot* robot,
                                   const double pose[3], double* det_j1,
                                   double* det_j2) {
  return guarded([&] {
    if (!robot || !pose) throw std::invalid_argument("NULL argument");
    const prp::SingularityMetrics m =
        prp::singularity_metrics(robot->geom, as_pose(pose));
    if (det_j1) *det_j1 = m.det_j1;
    if (det_j2) *det_j2 = m.det_j2;
  });
}

prp_status prp_consistency(const prp_robot* robot, const double state[9],
                           double out[5]) {
  return guarded([&] {
    if (!robot || !state || !out) throw std::invalid_argument("NULL argument");
    const prp::ConsistencyReport rep =
        prp::leg_consistency_report(robot->geom, as_state(state));
    out[0] = rep.velocity_error;
    out[1] = rep.acceleration_error;
    out[2] = rep.omega_error;
    out[3] = rep.epsilon_error;
    out[4] = rep.acc_matrix_error;
  });
}

prp_status prp_forward_kinematics(const prp_robot* robot,
                                  const double lambda10[3],
                                  const double guess[3], double tol,
                                  int max_iter, double pose[3],
                                  double lambda32[3], int* iterations,
                                  double* residual) {
  return guarded([&] {
    if (!robot || !lambda10 || !pose)
      throw std::invalid_argument("NULL argument");
    prp::FkOptions options;
    if (tol > 0.0) options.tol = tol;
    if (max_iter > 0) options.max_iter = max_iter;
    const prp::PlatformPose start =
        guess ? as_pose(guess) : prp::PlatformPose{};
    const prp::FkResult fk = prp::forward_kinematics(
        robot->geom, {lambda10[0], lambda10[1], lambda10[2]}, start, options);
    pose[0] = fk.pose.x;
    pose[1] = fk.pose.y;
    pose[2] = fk.pose.phi;
    if (lambda32)
      for (int i = 0; i < 3; ++i) lambda32[i] = fk.lambda32[i];
    if (iterations) *iterations = fk.iterations;
    if (residual) *residual = fk.residual;
  });
}

int prp_scenario_parse(const char* name) {
  if (!name) return -1;
  const auto sc = prp::parse_scenario(name);
  return sc ? static_cast<int>(*sc) : -1;
}

const char* prp_scenario_name(prp_scenario scenario) {
  return prp::to_string(static_cast<prp::Scenario>(scenario));
}

prp_status prp_simulate(const prp_robot* robot, prp_scenario scenario,
                        double x_star, double y_star, double phi_star,
                        double duration, int samples, int verify_fk,
                        prp_sim** out) {
  return guarded([&] {
    if (!robot || !out) throw std::invalid_argument("NULL argument");
    *out = nullptr;  // stays NULL on failure, no stale handle for the caller
    if (scenario < PRP_SCENARIO_ROTATION || scenario > PRP_SCENARIO_COMBINED)
      throw std::invalid_argument("bad scenario");
    prp::MotionSpec spec;
    spec.x_star = x_star;
    spec.y_star = y_star;
    spec.phi_star = phi_star;
    spec.duration = duration;
    spec.samples = samples;
    auto rows = prp::simulate(robot->geom,
                              static_cast<prp::Scenario>(scenario), spec,
                              verify_fk != 0);
    *out = new prp_sim{std::move(rows)};
  });
}

int prp_sim_rows(const prp_sim* sim) {
  return sim ? static_cast<int>(sim->rows.size()) : 0;
}

prp_status prp_sim_row(const prp_sim* sim, int row,
                       double out[PRP_SIM_COLS]) {
  return guarded([&] {
    if (!sim || !out) throw std::invalid_argument("NULL argument");
    if (row < 0 || row >= static_cast<int>(sim->rows.size()))
      throw prp::OutOfRange("row index out of bounds");
    const prp::SimulationRecord& r = sim->rows[row];
    double* p = out;
    *p++ = r.t;
    *p++ = r.x;
    *p++ = r.y;
    *p++ = r.phi;
    *p++ = r.vx;
    *p++ = r.vy;
    *p++ = r.vphi;
    *p++ = r.ax;
    *p++ = r.ay;
    *p++ = r.aphi;
    for (double v : r.lambda10) *p++ = v;
    for (double v : r.v10) *p++ = v;
    for (double v : r.gamma10) *p++ = v;
    for (double v : r.lambda32) *p++ = v;
    for (double v : r.v32) *p++ = v;
    for (double v : r.gamma32) *p++ = v;
    *p++ = r.fk_error;
  });
}

void prp_sim_destroy(prp_sim* sim) { delete sim; }

prp_status prp_singularity_scan(const prp_robot* robot, double x, double y,
                                double phi_min, double phi_max, int steps,
                                prp_scan** out) {
  return guarded([&] {
    if (!robot || !out) throw std::invalid_argument("NULL argument");
    *out = nullptr;
    *out = new prp_scan{
        prp::singularity_scan(robot->geom, x, y, phi_min, phi_max, steps)};
  });
}

int prp_scan_samples(const prp_scan* scan) {
  return scan ? static_cast<int>(scan->result.samples.size()) : 0;
}

prp_status prp_scan_sample(const prp_scan* scan, int index, double* phi,
                           double* det_j1, double* det_j2) {
  return guarded([&] {
    if (!scan) throw std::invalid_argument("NULL argument");
    if (index < 0 || index >= static_cast<int>(scan->result.samples.size()))
      throw prp::OutOfRange("sample index out of bounds");
    const prp::ScanSample& s = scan->result.samples[index];
    if (phi) *phi = s.phi;
    if (det_j1) *det_j1 = s.det_j1;
    if (det_j2) *det_j2 = s.det_j2;
  });
}

int prp_scan_count(const prp_scan* scan, prp_scan_list list) {
  const std::vector<double>* v = scan_list(scan, list);
  return v ? static_cast<int>(v->size()) : 0;
}

double prp_scan_value(const prp_scan* scan, prp_scan_list list, int index) {
  const std::vector<double>* v = scan_list(scan, list);
  if (!v || index < 0 || index >= static_cast<int>(v->size()))
    return std::numeric_limits<double>::quiet_NaN();
  return (*v)[index];
}

void prp_scan_destroy(prp_scan* scan) { delete scan; }

}  // extern "C"
