// End-to-end checks of the command line surface: spawns the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hamming_boot/io.hpp"

namespace hb = hamming_boot;

namespace {

const std::string kCli = HAMMING_BOOT_CLI_PATH;

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int run_cli(const std::string& args, const std::string& stdout_path = "") {
  std::string command = kCli + " " + args;
  if (!stdout_path.empty()) command += " > " + stdout_path;
  command += " 2> /dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("exponents reproduces the exact d=3 table") {
  const std::string path = tmp("hb_cli_exponents.csv");
  REQUIRE(run_cli("exponents --d 3 --theta 2..12 --output " + path) == 0);
  const std::string text = slurp(path);
  CHECK(text ==
        "d,theta,lower,upper,upper_source\n"
        "3,2,5/2,5/2,line-threshold\n"
        "3,3,2/1,2/1,line-threshold\n"
        "3,4,7/4,7/4,line-threshold\n"
        "3,5,11/7,11/7,plane-obstruction-odd\n"
        "3,6,3/2,3/2,line-threshold\n"
        "3,7,7/5,7/5,plane-obstruction-odd\n"
        "3,8,19/14,15/11,plane-obstruction-even\n"
        "3,9,17/13,17/13,plane-obstruction-odd\n"
        "3,10,23/18,9/7,plane-obstruction-even\n"
        "3,11,5/4,5/4,plane-obstruction-odd\n"
        "3,12,27/22,21/17,plane-obstruction-even\n");
  std::remove(path.c_str());
}

TEST_CASE("limits prints the closed-form value") {
  const std::string path = tmp("hb_cli_limits.txt");
  REQUIRE(run_cli("limits --mode 2d --theta 3 --a 1 --output " + path) == 0);
  CHECK(slurp(path).rfind("0.63212055882", 0) == 0);
  REQUIRE(run_cli("limits --mode means --a-grid 0.5:0.5:2 --output " + path) == 0);
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "a,basic,enhanced_basic,line,line_empty_axis,non_enhanced_line_axis,"
        "enhanced_line");
  std::remove(path.c_str());
}

TEST_CASE("simulate output is byte-identical across reruns") {
  const std::string first = tmp("hb_cli_sim1.csv");
  const std::string second = tmp("hb_cli_sim2.csv");
  const std::string flags =
      "simulate --d 2 --n 24 --theta 2 --a 1 --alpha 3/2 "
      "--events spanned,open_line,above_threshold --replicas 400 --seed 9 "
      "--output ";
  REQUIRE(run_cli(flags + first) == 0);
  REQUIRE(run_cli(flags + second) == 0);
  const std::string text = slurp(first);
  CHECK(text == slurp(second));
  CHECK(!text.empty());
  std::istringstream in(text);
  const auto rows = hb::read_rows_csv(in);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].event == "spanned");
  CHECK(rows[0].alpha == "3/2");
  std::remove(first.c_str());
  std::remove(second.c_str());
}

TEST_CASE("simulate accepts a run config file") {
  const std::string config_path = tmp("hb_cli_config.json");
  const std::string out_path = tmp("hb_cli_config_out.csv");
  hb::RunConfig config;
  config.command = "simulate";
  config.d = 2;
  config.n = 16;
  config.theta = 2;
  config.p = 0.15;
  config.events = {"spanned"};
  config.replicas = 200;
  config.seed = 4;
  config.output = out_path;
  hb::write_config(config, config_path);
  REQUIRE(run_cli("simulate --config " + config_path) == 0);
  std::ifstream in(out_path);
  const auto rows = hb::read_rows_csv(in);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].replicas == 200);
  CHECK(rows[0].alpha.empty());  // raw-p run
  std::remove(config_path.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("detect reports counts, class and dynamics flags") {
  const std::string input = tmp("hb_cli_detect.json");
  {
    std::ofstream out(input);
    out << R"({"d":3,"n":12,"theta":3,
               "open":[[2,1,1],[6,4,1],[6,9,1],[9,2,1],[10,7,1],[11,11,1]]})";
  }
  const std::string out_path = tmp("hb_cli_detect_out.json");
  REQUIRE(run_cli("detect --input " + input + " --f-lines", out_path) == 0);
  const auto result = nlohmann::json::parse(slurp(out_path));
  CHECK(result["open_count"] == 6);
  CHECK(result["f_lines_fired"].get<int64_t>() >= 1);
  CHECK(result.contains("good_class"));
  CHECK(result.contains("spanned"));
  std::remove(input.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("oracle cross-check and equivalence battery") {
  const std::string out_path = tmp("hb_cli_oracle.txt");
  REQUIRE(run_cli("oracle --d 2 --n 3 --theta 2 --p 0.2 --mc-replicas 20000 "
                  "--seed 3",
                  out_path) == 0);
  const std::string text = slurp(out_path);
  CHECK(text.find("exact spanned probability: 0.4002145280") != std::string::npos);
  CHECK(text.find("verdict: COVERED") != std::string::npos);

  REQUIRE(run_cli("oracle --equivalence --instances 40 --seed 2", out_path) == 0);
  CHECK(slurp(out_path).find("mismatches: 0") != std::string::npos);
  std::remove(out_path.c_str());
}

TEST_CASE("sweep writes a single header") {
  const std::string out_path = tmp("hb_cli_sweep.csv");
  REQUIRE(run_cli("sweep --d 2 --theta 2 --alpha 3/2 --a-list 0.5,1.0 "
                  "--n-list 8,12 --events spanned --replicas 100 --seed 6 "
                  "--output " + out_path) == 0);
  std::ifstream in(out_path);
  const auto rows = hb::read_rows_csv(in);
  CHECK(rows.size() == 4);
  std::remove(out_path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run_cli("simulate --d 2 --n 8 --theta 2 --p 0.1 --events bogus") == 1);
  CHECK(run_cli("oracle --d 2 --n 5 --theta 2 --p 0.1") == 2);  // 25 > 22
  CHECK(run_cli("limits --mode nope --a 1") == 1);
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("simulate --d 2 --n 8 --theta 2 --events spanned") == 1);  // no density
}
