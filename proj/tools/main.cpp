// Command-line front end for the 3-PRP kinematics library. Everything goes
// through the public C API in prp/prp.h; scalar results are printed as
// "name = value" lines, tables as CSV, plots as SVG.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prp/prp.h"
#include "svg.hpp"
#include "table.hpp"

namespace {

using cli::format_g17;

/// 0 on success, 1 for usage / input / file problems, 2 when the robot's
/// numerics reject the request (singular pose, no convergence, lost rank).
int exit_code_of(prp_status status) {
  switch (status) {
    case PRP_OK:
      return 0;
    case PRP_INVALID_ARG:
    case PRP_OUT_OF_RANGE:
    case PRP_PARSE:
    case PRP_IO:
      return 1;
    case PRP_SINGULAR_POSE:
    case PRP_NO_CONVERGENCE:
    case PRP_SINGULAR_JACOBIAN:
      return 2;
  }
  return 1;
}

int report_failure(prp_status status) {
  std::fprintf(stderr, "error: %s [%s]\n", prp_last_error(),
               prp_status_name(status));
  return exit_code_of(status);
}

using Robot = std::unique_ptr<prp_robot, decltype(&prp_robot_destroy)>;

Robot make_robot(const std::string& geometry_path) {
  prp_robot* robot = geometry_path.empty()
                         ? prp_robot_create_default()
                         : prp_robot_load(geometry_path.c_str());
  return Robot(robot, &prp_robot_destroy);
}

void print_value(const char* name, double v) {
  std::printf("%s = %s\n", name, format_g17(v).c_str());
}

void print_leg_values(const char* base, const double v[3]) {
  static const char* const suffix[] = {"_a", "_b", "_c"};
  for (int i = 0; i < 3; ++i) {
    std::printf("%s%s = %s\n", base, suffix[i], format_g17(v[i]).c_str());
  }
}

bool write_text_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << payload;
  return bool(out.flush());
}

struct SimArgs {
  std::string scenario = "combined";
  double x_star = 0.025;
  double y_star = 0.025;
  double phi_star = M_PI / 12;
  double duration = 3.0;
  int samples = 301;
  bool full = false;
  bool verify_fk = false;
  std::string out_path;
  std::string plot_path;
};

int run_simulate(const Robot& robot, const SimArgs& args) {
  const int scenario = prp_scenario_parse(args.scenario.c_str());
  if (scenario < 0) {
    std::fprintf(stderr,
                 "error: unknown scenario '%s' (rotation, trans-x, trans-y, "
                 "combined)\n",
                 args.scenario.c_str());
    return 1;
  }

  prp_sim* sim_raw = nullptr;
  const prp_status status = prp_simulate(
      robot.get(), static_cast<prp_scenario>(scenario), args.x_star,
      args.y_star, args.phi_star, args.duration, args.samples,
      args.verify_fk ? 1 : 0, &sim_raw);
  if (status != PRP_OK) return report_failure(status);
  std::unique_ptr<prp_sim, decltype(&prp_sim_destroy)> sim(sim_raw,
                                                           &prp_sim_destroy);

  // Column indices into the PRP_SIM_COLS row layout.
  std::vector<std::string> names = {"t",  "x",  "y",  "phi", "vx",
                                    "vy", "vphi", "ax", "ay",  "aphi"};
  std::vector<int> take = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto add_leg_block = [&](const char* base, int first) {
    for (int i = 0; i < 3; ++i) {
      names.push_back(std::string(base) + "_" + char('a' + i));
      take.push_back(first + i);
    }
  };
  add_leg_block("lambda10", 10);
  add_leg_block("v10", 13);
  add_leg_block("gamma10", 16);
  if (args.full) {
    add_leg_block("lambda32", 19);
    add_leg_block("v32", 22);
    add_leg_block("gamma32", 25);
  }
  if (args.verify_fk) {
    names.push_back("fk_error");
    take.push_back(28);
  }

  cli::OutputTable table(names);
  const int rows = prp_sim_rows(sim.get());
  std::vector<double> t_axis;
  std::vector<std::vector<double>> leg_series(9);
  for (int r = 0; r < rows; ++r) {
    double row[PRP_SIM_COLS];
    if (prp_status s = prp_sim_row(sim.get(), r, row); s != PRP_OK)
      return report_failure(s);
    std::vector<double> selected;
    selected.reserve(take.size());
    for (int idx : take) selected.push_back(row[idx]);
    table.add_row(selected);
    t_axis.push_back(row[0]);
    for (int i = 0; i < 9; ++i) leg_series[i].push_back(row[10 + i]);
  }

  if (!args.plot_path.empty()) {
    static const char* const dashes[] = {"", "7,4", "2,3"};
    static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
    static const char* const leg_names[] = {"leg a", "leg b", "leg c"};
    const char* const panel_labels[] = {"lambda10 [m]", "v10 [m/s]",
                                        "gamma10 [m/s^2]"};
    std::vector<cli::Panel> panels;
    for (int p = 0; p < 3; ++p) {
      cli::Panel panel;
      panel.y_label = panel_labels[p];
      for (int leg = 0; leg < 3; ++leg)
        panel.series.push_back({leg_names[leg], dashes[leg], colors[leg],
                                leg_series[3 * p + leg]});
      panels.push_back(std::move(panel));
    }
    std::ostringstream svg;
    cli::write_plot(svg, "actuated slides - " + args.scenario, t_axis,
                    "t [s]", panels);
    if (!write_text_file(args.plot_path, svg.str())) {
      std::fprintf(stderr, "error: cannot write %s\n",
                   args.plot_path.c_str());
      return 1;
    }
  }

  std::ostringstream csv;
  table.write_csv(csv);
  if (args.out_path.empty()) {
    std::cout << csv.str();
  } else if (!write_text_file(args.out_path, csv.str())) {
    std::fprintf(stderr, "error: cannot write %s\n", args.out_path.c_str());
    return 1;
  }
  return 0;
}

struct ScanArgs {
  double x = 0.0;
  double y = 0.0;
  double phi_min = -M_PI;
  double phi_max = M_PI;
  int steps = 721;
  std::string out_path;
};

int run_scan(const Robot& robot, const ScanArgs& args) {
  prp_scan* scan_raw = nullptr;
  const prp_status status =
      prp_singularity_scan(robot.get(), args.x, args.y, args.phi_min,
                           args.phi_max, args.steps, &scan_raw);
  if (status != PRP_OK) return report_failure(status);
  std::unique_ptr<prp_scan, decltype(&prp_scan_destroy)> scan(
      scan_raw, &prp_scan_destroy);

  const struct {
    const char* count_name;
    const char* item_name;
    prp_scan_list list;
  } lists[] = {
      {"j1_roots", "j1_root", PRP_SCAN_J1_ROOTS},
      {"j2_roots", "j2_root", PRP_SCAN_J2_ROOTS},
      {"j2_poles", "j2_pole", PRP_SCAN_J2_POLES},
  };
  for (const auto& l : lists) {
    const int n = prp_scan_count(scan.get(), l.list);
    std::printf("%s = %d\n", l.count_name, n);
    for (int i = 0; i < n; ++i) {
      std::printf("%s_%d = %s\n", l.item_name, i,
                  format_g17(prp_scan_value(scan.get(), l.list, i)).c_str());
    }
  }

  if (!args.out_path.empty()) {
    cli::OutputTable table({"phi", "det_j1", "det_j2"});
    const int n = prp_scan_samples(scan.get());
    for (int i = 0; i < n; ++i) {
      double phi, d1, d2;
      if (prp_status s = prp_scan_sample(scan.get(), i, &phi, &d1, &d2);
          s != PRP_OK)
        return report_failure(s);
      table.add_row({phi, d1, d2});
    }
    std::ostringstream csv;
    table.write_csv(csv);
    if (!write_text_file(args.out_path, csv.str())) {
      std::fprintf(stderr, "error: cannot write %s\n", args.out_path.c_str());
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar 3-PRP parallel robot kinematics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string geometry_path;
  app.add_option("--geometry", geometry_path,
                 "geometry description file (default: built-in reference "
                 "geometry)");

  int rc = 0;

  // ik: pose (and optionally rates) -> joint coordinates
  double state[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  auto* ik = app.add_subcommand(
      "ik", "inverse kinematics at a pose; add velocities/accelerations "
            "for the full motion solution");
  ik->add_option("--x", state[0], "platform x [m]");
  ik->add_option("--y", state[1], "platform y [m]");
  ik->add_option("--phi", state[2], "platform angle [rad]");
  ik->add_option("--vx", state[3], "platform x velocity [m/s]");
  ik->add_option("--vy", state[4], "platform y velocity [m/s]");
  ik->add_option("--vphi", state[5], "platform angular velocity [rad/s]");
  ik->add_option("--ax", state[6], "platform x acceleration [m/s^2]");
  ik->add_option("--ay", state[7], "platform y acceleration [m/s^2]");
  ik->add_option("--aphi", state[8],
                 "platform angular acceleration [rad/s^2]");
  ik->callback([&] {
    const Robot robot = make_robot(geometry_path);
    if (!robot) {
      rc = report_failure(prp_last_status());
      return;
    }
    const bool with_rates =
        ik->count("--vx") || ik->count("--vy") || ik->count("--vphi") ||
        ik->count("--ax") || ik->count("--ay") || ik->count("--aphi");
    const bool with_accels =
        ik->count("--ax") || ik->count("--ay") || ik->count("--aphi");
    double out[18];
    const prp_status status = prp_solve_motion(robot.get(), state, out);
    if (status != PRP_OK) {
      rc = report_failure(status);
      return;
    }
    const double l10[3] = {out[0], out[6], out[12]};
    const double l32[3] = {out[3], out[9], out[15]};
    print_value("phi21", state[2]);
    print_leg_values("lambda10", l10);
    print_leg_values("lambda32", l32);
    if (with_rates) {
      const double v10[3] = {out[1], out[7], out[13]};
      const double v32[3] = {out[4], out[10], out[16]};
      print_leg_values("v10", v10);
      print_leg_values("v32", v32);
      print_value("omega21", state[5]);
    }
    if (with_accels) {
      const double g10[3] = {out[2], out[8], out[14]};
      const double g32[3] = {out[5], out[11], out[17]};
      print_leg_values("gamma10", g10);
      print_leg_values("gamma32", g32);
      print_value("epsilon21", state[8]);
    }
  });

  // fk: actuated slides -> pose
  std::vector<double> lambda10;
  std::vector<double> guess;
  double fk_tol = 0.0;
  int fk_max_iter = 0;
  auto* fk = app.add_subcommand("fk",
                                "forward kinematics from actuated slides");
  fk->add_option("--lambda10", lambda10, "slide positions, legs a b c [m]")
      ->expected(3)
      ->required();
  fk->add_option("--guess", guess, "starting pose x y phi")->expected(3);
  fk->add_option("--tol", fk_tol, "residual tolerance (default 1e-11)");
  fk->add_option("--max-iter", fk_max_iter, "iteration cap (default 50)");
  fk->callback([&] {
    const Robot robot = make_robot(geometry_path);
    if (!robot) {
      rc = report_failure(prp_last_status());
      return;
    }
    double pose[3], l32[3], residual;
    int iterations;
    const prp_status status = prp_forward_kinematics(
        robot.get(), lambda10.data(), guess.empty() ? nullptr : guess.data(),
        fk_tol, fk_max_iter, pose, l32, &iterations, &residual);
    if (status != PRP_OK) {
      rc = report_failure(status);
      return;
    }
    print_value("x", pose[0]);
    print_value("y", pose[1]);
    print_value("phi", pose[2]);
    print_leg_values("lambda32", l32);
    std::printf("iterations = %d\n", iterations);
    print_value("residual", residual);
  });

  // jacobian: pose -> matrix pair
  double jpose[3] = {0, 0, 0};
  auto* jac = app.add_subcommand("jacobian",
                                 "velocity-relation matrices at a pose");
  jac->add_option("--x", jpose[0], "platform x [m]");
  jac->add_option("--y", jpose[1], "platform y [m]");
  jac->add_option("--phi", jpose[2], "platform angle [rad]");
  jac->callback([&] {
    const Robot robot = make_robot(geometry_path);
    if (!robot) {
      rc = report_failure(prp_last_status());
      return;
    }
    double j1[9], j2[9], d1, d2;
    const prp_status status =
        prp_jacobians(robot.get(), jpose, j1, j2, &d1, &d2);
    if (status != PRP_OK) {
      rc = report_failure(status);
      return;
    }
    print_value("det_j1", d1);
    print_value("det_j2", d2);
    for (int r = 0; r < 3; ++r) {
      std::printf("j1_row%d = %s %s %s\n", r, format_g17(j1[3 * r]).c_str(),
                  format_g17(j1[3 * r + 1]).c_str(),
                  format_g17(j1[3 * r + 2]).c_str());
    }
    for (int r = 0; r < 3; ++r) {
      std::printf("j2_row%d = %s %s %s\n", r, format_g17(j2[3 * r]).c_str(),
                  format_g17(j2[3 * r + 1]).c_str(),
                  format_g17(j2[3 * r + 2]).c_str());
    }
  });

  // simulate: motion program -> CSV / SVG
  SimArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "run the rest-to-rest motion program and solve every "
                  "sample");
  sim->add_option("--scenario", sim_args.scenario,
                  "rotation, trans-x, trans-y or combined");
  sim->add_option("--x-star", sim_args.x_star, "x amplitude [m]");
  sim->add_option("--y-star", sim_args.y_star, "y amplitude [m]");
  sim->add_option("--phi-star", sim_args.phi_star, "phi amplitude [rad]");
  sim->add_option("--duration", sim_args.duration, "program length [s]");
  sim->add_option("--samples", sim_args.samples, "number of rows");
  sim->add_flag("--full", sim_args.full,
                "include passive-slide columns in the CSV");
  sim->add_flag("--verify-fk", sim_args.verify_fk,
                "round-trip every sample through the forward solver");
  sim->add_option("--out", sim_args.out_path,
                  "CSV file (default: standard output)");
  sim->add_option("--plot", sim_args.plot_path, "SVG plot file");
  sim->callback([&] {
    const Robot robot = make_robot(geometry_path);
    if (!robot) {
      rc = report_failure(prp_last_status());
      return;
    }
    rc = run_simulate(robot, sim_args);
  });

  // scan: singularity sweep over phi
  ScanArgs scan_args;
  auto* scan = app.add_subcommand(
      "scan", "sweep phi at fixed (x, y) and locate singularities");
  scan->add_option("--x", scan_args.x, "platform x [m]");
  scan->add_option("--y", scan_args.y, "platform y [m]");
  scan->add_option("--min", scan_args.phi_min, "sweep start [rad]");
  scan->add_option("--max", scan_args.phi_max, "sweep end [rad]");
  scan->add_option("--steps", scan_args.steps, "number of samples");
  scan->add_option("--out", scan_args.out_path, "sample CSV file");
  scan->callback([&] {
    const Robot robot = make_robot(geometry_path);
    if (!robot) {
      rc = report_failure(prp_last_status());
      return;
    }
    rc = run_scan(robot, scan_args);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_rc = app.exit(e);
    return cli_rc == 0 ? 0 : 1;
  }
  return rc;
}
