#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef ASYMLAB_CLI_PATH
#error "ASYMLAB_CLI_PATH must be defined"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, bool capture = true) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "asymlab_cli_tests";
  fs::create_directories(dir);
  fs::path out = dir / ("out_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string("\"") + ASYMLAB_CLI_PATH + "\" " + args;
  if (capture) cmd += " --out \"" + out.string() + "\"";
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (capture && fs::exists(out)) {
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
  }
  return result;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find("\r\n", start);
    if (end == std::string::npos) break;
    lines.push_back(text.substr(start, end - start));
    start = end + 2;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

TEST_CASE("config errors exit with code 2") {
  CHECK(run_cli("sweep --example voiculescu --sizes ,", false).exit_code == 2);
  CHECK(run_cli("sweep --example nonsense --sizes 4:8:x2", false).exit_code == 2);
  CHECK(run_cli("sweep --example voiculescu --sizes 4:8:x2 --norm nonsense", false)
            .exit_code == 2);
  CHECK(run_cli("correct --rep bs23:1", false).exit_code == 2);
  CHECK(run_cli("correct --rep perturbed:z^2:4:0.01:1 --radius 1", false).exit_code == 2);
  CHECK(run_cli("verify --check no-such-check", false).exit_code == 2);
  CHECK(run_cli("nonsense-subcommand", false).exit_code == 2);
}

TEST_CASE("sweep emits an RFC 4180 table with summary rows") {
  RunResult r = run_cli("sweep --example voiculescu --sizes 4:32:x2 --seed 3");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> lines = split_lines(r.output);
  REQUIRE(lines.size() == 7);  // header + 4 rows + slope + intercept
  CHECK(lines[0] == "n,defect_op,defect_frob,defect_hs,homdist_lb");
  std::vector<std::string> row4 = split_fields(lines[1]);
  REQUIRE(row4.size() == 5);
  CHECK(row4[0] == "4");
  CHECK(std::abs(std::stod(row4[1]) - std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(std::stod(row4[2]) - 2.0 * std::sqrt(2.0)) < 1e-10);
  std::vector<std::string> slope = split_fields(lines[5]);
  CHECK(slope[0] == "slope");
  double frob_slope = std::stod(slope[2]);
  CHECK(frob_slope > -0.6);
  CHECK(frob_slope < -0.4);
  CHECK(split_fields(lines[6])[0] == "intercept");
}

TEST_CASE("bs23 sweep carries the obstruction columns") {
  RunResult r = run_cli("sweep --example bs23 --sizes 1,2 --seed 3");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> lines = split_lines(r.output);
  CHECK(lines[0] == "n,defect_op,defect_frob,defect_hs,commutator_gap,sqrt6n_minus_gap");
  std::vector<std::string> row1 = split_fields(lines[1]);
  CHECK(std::abs(std::stod(row1[2]) - 3.0) < 1e-10);
  CHECK(std::abs(std::stod(row1[4]) - std::sqrt(5.0)) < 1e-10);
}

TEST_CASE("perturbed sweep runs over dimensions") {
  RunResult r = run_cli("sweep --example perturbed:z^2:0.01 --sizes 2,4 --seed 9");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> lines = split_lines(r.output);
  CHECK(lines[0] == "n,defect_op,defect_frob,defect_hs");
  CHECK(std::stod(split_fields(lines[1])[2]) > 0.0);
  CHECK(std::stod(split_fields(lines[1])[2]) < 0.1);
}

TEST_CASE("verify runs single checks and full suites") {
  RunResult hs = run_cli("verify --check hs-submult --seed 1");
  REQUIRE(hs.exit_code == 0);
  auto j = nlohmann::json::parse(hs.output);
  REQUIRE(j.contains("hs-submult"));
  CHECK(j["hs-submult"]["pass"] == true);
  CHECK(std::abs(j["hs-submult"]["measured"].get<double>() -
                 (1.0 / std::sqrt(2.0) - 0.5)) < 1e-12);

  RunResult bc = run_cli("verify --check block-constant --seed 1");
  REQUIRE(bc.exit_code == 0);
  auto jb = nlohmann::json::parse(bc.output);
  CHECK(std::abs(jb["block-constant"]["measured"].get<double>() - 6.0) < 1e-10);

  RunResult all = run_cli("verify --seed 1");
  REQUIRE(all.exit_code == 0);
  auto ja = nlohmann::json::parse(all.output);
  CHECK(ja.size() >= 10);
  for (const auto& [name, entry] : ja.items()) CHECK(entry["pass"] == true);
}

TEST_CASE("serial and parallel sweeps agree byte for byte") {
  fs::path dir = fs::temp_directory_path() / "asymlab_cli_tests";
  fs::create_directories(dir);
  std::string out1 = (dir / "threads1.csv").string();
  std::string out2 = (dir / "threads2.csv").string();
  auto run = [](const std::string& env, const std::string& out) {
    std::string cmd = env + " \"" + ASYMLAB_CLI_PATH +
                      "\" sweep --example bs23 --sizes 1,2,4 --seed 5 --out \"" + out +
                      "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };
  REQUIRE(run("ASYMLAB_THREADS=1", out1) == 0);
  REQUIRE(run("ASYMLAB_THREADS=2", out2) == 0);
  std::ifstream a(out1, std::ios::binary), b(out2, std::ios::binary);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(!sa.str().empty());
  CHECK(sa.str() == sb.str());
}

TEST_CASE("correct reduces a perturbed representation and reports stalls") {
  RunResult good = run_cli("correct --rep perturbed:z^2:8:0.01:42 --radius 2");
  REQUIRE(good.exit_code == 0);
  auto j = nlohmann::json::parse(good.output);
  double before = j["defect_before"].get<double>();
  double after = j["defect_after"].get<double>();
  CHECK(after <= 0.1 * before);
  CHECK(after <= 1e-8);
  CHECK(j["iterations"].get<int>() <= 6);
  CHECK(j["stalled"] == false);

  RunResult cyc = run_cli("correct --rep perturbed:cyclic:6:8:0.01:7");
  REQUIRE(cyc.exit_code == 0);
  auto jc = nlohmann::json::parse(cyc.output);
  CHECK(jc["defect_after"].get<double>() < jc["defect_before"].get<double>());
  CHECK(jc["stalled"] == false);

  RunResult stalled = run_cli("correct --rep voiculescu:8 --radius 2");
  REQUIRE(stalled.exit_code == 0);
  auto js = nlohmann::json::parse(stalled.output);
  CHECK(js.contains("stalled"));
  CHECK(js["iterations"].get<int>() >= 1);
}
