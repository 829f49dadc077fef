// End-to-end checks of the command-line tool: spawns the real binary and
// inspects exit codes, stdout and the files it writes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subprocess.hpp"

namespace {

const std::string kCli = PRP_CLI_PATH;
constexpr double kPi = 3.14159265358979323846;

std::string tmp_path(const std::string& name) {
  return "/tmp/prp_cli_" + std::to_string(getpid()) + "_" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("ik at the centered pose") {
  const auto r = subprocess::run(kCli + " ik");
  CHECK(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "phi21") == 0.0);
  CHECK(std::abs(subprocess::value_of(r.output, "lambda10_a")) < 1e-15);
  CHECK(std::abs(subprocess::value_of(r.output, "lambda32_c")) < 1e-15);
  // no rates were requested, so none are printed
  CHECK(r.output.find("v10_a") == std::string::npos);
  CHECK(r.output.find("gamma10_a") == std::string::npos);
}

TEST_CASE("ik prints rate and acceleration blocks only when driven") {
  const auto vel = subprocess::run(kCli + " ik --x 0.02 --vphi 0.5");
  CHECK(vel.exit_code == 0);
  CHECK(vel.output.find("v10_a") != std::string::npos);
  CHECK(subprocess::value_of(vel.output, "omega21") == 0.5);
  CHECK(vel.output.find("gamma10_a") == std::string::npos);

  const auto acc = subprocess::run(kCli + " ik --x 0.02 --ay -0.3");
  CHECK(acc.exit_code == 0);
  CHECK(acc.output.find("gamma10_b") != std::string::npos);
  CHECK(subprocess::value_of(acc.output, "epsilon21") == 0.0);
}

TEST_CASE("ik reproduces the displaced-pose fixture") {
  const auto r = subprocess::run(
      kCli + " ik --x 0.05 --y 0.05 --phi 0.52359877559829887");
  CHECK(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "lambda10_a") ==
        doctest::Approx(0.08301270189221932).epsilon(1e-13));
  CHECK(subprocess::value_of(r.output, "lambda10_b") ==
        doctest::Approx(-0.09019237886466841).epsilon(1e-13));
  CHECK(subprocess::value_of(r.output, "lambda32_b") ==
        doctest::Approx(0.14641016151377546).epsilon(1e-13));
}

TEST_CASE("fk inverts the ik fixture") {
  const auto r = subprocess::run(
      kCli +
      " fk --lambda10 0.08301270189221932 -0.09019237886466841 "
      "0.14641016151377546");
  CHECK(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "x") ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(subprocess::value_of(r.output, "y") ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(subprocess::value_of(r.output, "phi") ==
        doctest::Approx(kPi / 6).epsilon(1e-9));
  CHECK(subprocess::value_of(r.output, "residual") <= 1e-11);
  CHECK(subprocess::value_of(r.output, "iterations") >= 1);
}

TEST_CASE("jacobian at the centered pose") {
  const auto r = subprocess::run(kCli + " jacobian");
  CHECK(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "det_j1") ==
        doctest::Approx(-3 * std::sqrt(3.0) / 8).epsilon(1e-14));
  CHECK(subprocess::value_of(r.output, "det_j2") ==
        doctest::Approx(-0.225).epsilon(1e-13));
  CHECK(r.output.find("j1_row0 = ") != std::string::npos);
  CHECK(r.output.find("j2_row2 = ") != std::string::npos);
}

TEST_CASE("simulate writes a deterministic CSV") {
  const std::string csv_a = tmp_path("a.csv");
  const std::string csv_b = tmp_path("b.csv");
  const auto ra = subprocess::run(kCli + " simulate --out " + csv_a);
  const auto rb = subprocess::run(kCli + " simulate --out " + csv_b);
  REQUIRE(ra.exit_code == 0);
  REQUIRE(rb.exit_code == 0);
  CHECK(ra.output.empty());  // table went to the file, not stdout

  const std::string a = read_file(csv_a);
  CHECK(a == read_file(csv_b));  // bytewise repeatable

  const auto rows = lines_of(a);
  REQUIRE(rows.size() == 302);  // header + 301 samples
  CHECK(rows[0] ==
        "t,x,y,phi,vx,vy,vphi,ax,ay,aphi,lambda10_a,lambda10_b,lambda10_c,"
        "v10_a,v10_b,v10_c,gamma10_a,gamma10_b,gamma10_c");
  CHECK(rows[1].substr(0, 8) == "0,0,0,0,");
  CHECK(split_csv(rows[301])[0] == "3");
  CHECK(a.find("nan") == std::string::npos);
  std::remove(csv_a.c_str());
  std::remove(csv_b.c_str());
}

TEST_CASE("simulate without --out streams the table") {
  const auto r = subprocess::run(kCli + " simulate --samples 11");
  CHECK(r.exit_code == 0);
  CHECK(r.output.substr(0, 6) == "t,x,y,");
  CHECK(lines_of(r.output).size() == 12);
}

TEST_CASE("rotation scenario moves the legs in lockstep, textually") {
  const auto r =
      subprocess::run(kCli + " simulate --scenario rotation --samples 51");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 52);
  // %.17g round-trips doubles, but +0 and -0 print differently; comparing
  // the parsed values keeps the check exact while ignoring the zero sign
  const auto lockstep = [](const std::string& a, const std::string& b) {
    return a == b || std::stod(a) == std::stod(b);
  };
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 19);
    CHECK(lockstep(cells[10], cells[11]));  // lambda10 a == b
    CHECK(lockstep(cells[10], cells[12]));
    CHECK(lockstep(cells[13], cells[14]));  // v10
    CHECK(lockstep(cells[13], cells[15]));
    CHECK(lockstep(cells[16], cells[17]));  // gamma10
    CHECK(lockstep(cells[16], cells[18]));
  }
}

TEST_CASE("full and verified tables add their columns") {
  const auto r = subprocess::run(
      kCli + " simulate --samples 31 --full --verify-fk");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  const auto header = split_csv(rows[0]);
  REQUIRE(header.size() == 29);
  CHECK(header[19] == "lambda32_a");
  CHECK(header[27] == "gamma32_c");
  CHECK(header[28] == "fk_error");
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 29);
    CHECK(std::stod(cells[28]) < 1e-9);
  }
}

TEST_CASE("simulate renders an SVG plot") {
  const std::string svg_path = tmp_path("plot.svg");
  const auto r = subprocess::run(kCli + " simulate --samples 61 --plot " +
                                 svg_path + " --out /dev/null");
  REQUIRE(r.exit_code == 0);
  const std::string svg = read_file(svg_path);
  CHECK(svg.substr(0, 5) == "<?xml");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("leg b") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);

  size_t polylines = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++polylines;
    pos += 9;
  }
  CHECK(polylines == 9);  // three legs in each of the three panels
  std::remove(svg_path.c_str());
}

TEST_CASE("scan locates the singular orientation") {
  const auto r = subprocess::run(kCli + " scan --min 0 --max " +
                                 std::to_string(kPi) + " --steps 721");
  CHECK(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "j1_roots") == 1);
  CHECK(subprocess::value_of(r.output, "j1_root_0") ==
        doctest::Approx(kPi / 3).epsilon(1e-10));
  CHECK(subprocess::value_of(r.output, "j2_roots") == 1);
  CHECK(subprocess::value_of(r.output, "j2_poles") == 0);
}

TEST_CASE("scan CSV marks singular samples as nan") {
  const std::string csv = tmp_path("scan.csv");
  const auto r = subprocess::run(
      kCli + " scan --x 0.04 --y 0.02 --out " + csv);
  REQUIRE(r.exit_code == 0);
  CHECK(subprocess::value_of(r.output, "j2_poles") == 1);
  CHECK(subprocess::value_of(r.output, "j2_pole_0") ==
        doctest::Approx(-2 * kPi / 3).epsilon(1e-9));

  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 722);
  CHECK(rows[0] == "phi,det_j1,det_j2");
  CHECK(read_file(csv).find("nan") != std::string::npos);
  std::remove(csv.c_str());
}

TEST_CASE("geometry files change the answers only when they differ") {
  const std::string same = tmp_path("same.txt");
  const std::string bigger = tmp_path("bigger.txt");
  {
    std::ofstream out(same);
    out << "# reference layout\nl0 = 0.3\n";
  }
  {
    std::ofstream out(bigger);
    out << "l0 = 0.6\n";
  }
  const std::string args = " ik --x 0.01 --y 0.02 --phi 0.3";
  const auto base = subprocess::run(kCli + args);
  const auto with_same =
      subprocess::run(kCli + " --geometry " + same + args);
  const auto with_bigger =
      subprocess::run(kCli + " --geometry " + bigger + args);
  REQUIRE(base.exit_code == 0);
  REQUIRE(with_same.exit_code == 0);
  REQUIRE(with_bigger.exit_code == 0);
  CHECK(base.output == with_same.output);
  CHECK(base.output != with_bigger.output);
  std::remove(same.c_str());
  std::remove(bigger.c_str());
}

TEST_CASE("failures map to documented exit codes") {
  // numerical rejection: singular pose
  const auto singular = subprocess::run(
      kCli + " ik --phi 1.0471975511965976 2>&1");
  CHECK(singular.exit_code == 2);
  CHECK(singular.output.find("singular_pose") != std::string::npos);

  // numerical rejection: starved iteration budget
  const auto stalled = subprocess::run(
      kCli + " fk --lambda10 0.05 0.06 0.07 --max-iter 1 2>&1");
  CHECK(stalled.exit_code == 2);
  CHECK(stalled.output.find("no_convergence") != std::string::npos);

  // a motion program that runs onto the singular surface, with the time
  const auto hits = subprocess::run(
      kCli +
      " simulate --scenario rotation --phi-star 0.52359877559829887 2>&1");
  CHECK(hits.exit_code == 2);
  CHECK(hits.output.find("singular_pose") != std::string::npos);
  CHECK(hits.output.find("t = 3") != std::string::npos);

  // usage problems
  CHECK(subprocess::run(kCli + " ik --bogus 2>/dev/null").exit_code == 1);
  CHECK(subprocess::run(kCli + " fk 2>/dev/null").exit_code == 1);
  CHECK(subprocess::run(kCli + " 2>/dev/null").exit_code == 1);
  CHECK(subprocess::run(kCli + " simulate --scenario sideways 2>/dev/null")
            .exit_code == 1);
  CHECK(subprocess::run(kCli + " scan --steps 1 2>/dev/null").exit_code == 1);

  // file problems
  CHECK(subprocess::run(kCli + " --geometry /nonexistent/g.txt ik "
                               "2>/dev/null")
            .exit_code == 1);
  const std::string bad = tmp_path("bad.txt");
  {
    std::ofstream out(bad);
    out << "l0 = banana\n";
  }
  const auto parse = subprocess::run(
      kCli + " --geometry " + bad + " ik 2>&1");
  CHECK(parse.exit_code == 1);
  CHECK(parse.output.find("line 1") != std::string::npos);
  std::remove(bad.c_str());
}
