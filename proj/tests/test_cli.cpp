#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwind/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = PWIND_CLI_PATH;
const std::string kProblems = PWIND_PROBLEMS_DIR;

struct RunOutcome {
  int exit_code;
};

RunOutcome run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "pwind_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("integrate: rigid rotation CSV ends at (1, 0)") {
  const fs::path out = scratch() / "i1";
  REQUIRE(run_cli("integrate --problem " + kProblems + "/rigid_rotation.json --u0 1,0 --out " +
                  out.string()).exit_code == 0);
  const pwind::Trajectory traj = pwind::read_trajectory_csv((out / "trajectory.csv").string());
  CHECK(traj.times.back() == doctest::Approx(2.0 * pwind::kPi).epsilon(1e-15));
  CHECK(pwind::distance(traj.back(), pwind::Point2{1.0, 0.0}) < 1e-8);
  CHECK(fs::exists(out / "orbit.svg"));
}

TEST_CASE("integrate: usage and runtime failures") {
  CHECK(run_cli("integrate --problem " + kProblems + "/rigid_rotation.json --out /tmp/x").exit_code == 2);

  // Degree-5 polynomial from |u0| = 1000: finite-time blow-up, exit 1.
  const fs::path prob = scratch() / "quintic.json";
  pwind::write_text_file(prob.string(),
                         R"({"field": {"variant": "conjugate_polynomial",
                              "coefficients": [[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]},
                              "forcing": {"T": 1.0, "mean": [0,0], "harmonics": []}})");
  CHECK(run_cli("integrate --problem " + prob.string() + " --u0 1000,0 --out /tmp/x2").exit_code == 1);

  CHECK(run_cli("integrate --problem /nonexistent.json --u0 1,0 --out /tmp/x3").exit_code == 2);
}

TEST_CASE("check: exit codes follow the verdict") {
  CHECK(run_cli("check --problem " + kProblems + "/bounded_benchmark.json --out " +
                (scratch() / "c0").string()).exit_code == 0);
  CHECK(run_cli("check --problem " + kProblems + "/violated_mean.json --out " +
                (scratch() / "c1").string()).exit_code == 3);
  CHECK(run_cli("check --problem " + kProblems + "/bounded_benchmark.json --set conditions.ladder=16,64 --out " +
                (scratch() / "c2").string()).exit_code == 4);
}

TEST_CASE("check: unknown --set keys are rejected with a listing") {
  CHECK(run_cli("check --problem " + kProblems + "/bounded_benchmark.json --set nope=1 --out " +
                (scratch() / "c3").string()).exit_code == 2);
}

TEST_CASE("solve: benchmark problem yields a verified solution") {
  const fs::path out = scratch() / "s1";
  REQUIRE(run_cli("solve --problem " + kProblems + "/bounded_benchmark.json --out " + out.string())
              .exit_code == 0);
  const json j = json::parse(slurp(out / "results.json"));
  CHECK(j["status"] == "solutions");
  REQUIRE(j["solutions"].size() >= 1);
  CHECK(j["solutions"][0]["residual"].get<double>() < 1e-8);
  CHECK(fs::exists(out / "solution_0.csv"));
  CHECK(fs::exists(out / "displacement_curve.svg"));
}

TEST_CASE("solve: violated conditions exit 3 with an empty list") {
  const fs::path out = scratch() / "s2";
  CHECK(run_cli("solve --problem " + kProblems + "/violated_mean.json --out " + out.string()).exit_code == 3);
  const json j = json::parse(slurp(out / "results.json"));
  CHECK(j["solutions"].empty());
  CHECK(j["conditions"]["verdict"] == "violated");
}

TEST_CASE("fta: z^2 - 1 produces both roots") {
  const fs::path out = scratch() / "f1";
  REQUIRE(run_cli("fta --coeff -1,0 --coeff 0,0 --coeff 1,0 --out " + out.string()).exit_code == 0);
  const json j = json::parse(slurp(out / "results.json"));
  REQUIRE(j["roots"].size() == 2);
  CHECK(std::abs(j["roots"][0]["root"][0].get<double>() + 1.0) < 1e-7);
  CHECK(std::abs(j["roots"][1]["root"][0].get<double>() - 1.0) < 1e-7);
}

TEST_CASE("demo-exp: zero winding and SVG output") {
  const fs::path out = scratch() / "d1";
  REQUIRE(run_cli("demo-exp --R 3 --out " + out.string()).exit_code == 0);
  const json j = json::parse(slurp(out / "results.json"));
  CHECK(j["winding"] == 0);
  CHECK(fs::exists(out / "exp_curve.svg"));
}

TEST_CASE("winding: strict point lists refuse refinement") {
  const fs::path coarse = scratch() / "coarse.csv";
  pwind::write_text_file(coarse.string(), "x,y\n1,0\n-0.5,0.866\n-0.5,-0.866\n");
  CHECK(run_cli("winding --points " + coarse.string() + " --out " + (scratch() / "w1").string()).exit_code ==
        1);

  std::ostringstream os;
  os << "x,y\n";
  for (int i = 0; i < 64; ++i)
    os << std::cos(pwind::kTwoPi * i / 64.0) << ',' << std::sin(pwind::kTwoPi * i / 64.0) << '\n';
  const fs::path fine = scratch() / "fine.csv";
  pwind::write_text_file(fine.string(), os.str());
  const fs::path out = scratch() / "w2";
  REQUIRE(run_cli("winding --points " + fine.string() + " --out " + out.string()).exit_code == 0);
  const json j = json::parse(slurp(out / "results.json"));
  CHECK(j["winding"] == 1);
}

TEST_CASE("reproducibility: identical runs produce byte-identical results.json") {
  const fs::path a = scratch() / "r1", b = scratch() / "r2";
  REQUIRE(run_cli("solve --problem " + kProblems + "/bounded_benchmark.json --out " + a.string()).exit_code ==
          0);
  REQUIRE(run_cli("solve --problem " + kProblems + "/bounded_benchmark.json --out " + b.string()).exit_code ==
          0);
  CHECK(slurp(a / "results.json") == slurp(b / "results.json"));

  const fs::path c = scratch() / "r3", d = scratch() / "r4";
  REQUIRE(run_cli("fta --coeff 0,0 --coeff -1,0 --coeff 0,0 --coeff 1,0 --out " + c.string()).exit_code == 0);
  REQUIRE(run_cli("fta --coeff 0,0 --coeff -1,0 --coeff 0,0 --coeff 1,0 --out " + d.string()).exit_code == 0);
  CHECK(slurp(c / "results.json") == slurp(d / "results.json"));
}
