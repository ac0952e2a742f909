// End-to-end checks through the installed binary: exit codes, output
// formats, seed requirements, and byte-level reproducibility. The binary
// path comes from the build system.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(DFTT_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  REQUIRE(out.good());
  out << content;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  REQUIRE(out.good());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli reports its version and demands a subcommand") {
  const auto version = run_cli("--version");
  CHECK(version.code == 0);
  CHECK(contains(version.out, "0.1.0"));

  CHECK(run_cli("", true).code == 1);
  CHECK(run_cli("frobnicate", true).code == 1);

  const auto help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(contains(help.out, "mc-variance"));
  CHECK(contains(help.out, "lemma-a1"));
}

TEST_CASE("cli test subcommand on a known sequence") {
  write_text("cli_ones16.txt", "1111111111111111");

  const auto plain = run_cli("test --input cli_ones16.txt --format ascii");
  CHECK(plain.code == 0);
  CHECK(contains(plain.out, "n1:"));
  CHECK(contains(plain.out, "model:     limit"));

  const auto res =
      run_cli("test --input cli_ones16.txt --format ascii --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["version"] == "0.1.0");
  CHECK(j["subcommand"] == "test");
  CHECK(j["config"]["input"] == "cli_ones16.txt");
  CHECK(j["n"] == 16);
  CHECK(j["n1"] == 7);
  CHECK(j["threshold"] == "log005");
  CHECK(j["model"] == "limit");
  CHECK(j["a"] == 3.7903);
  CHECK(std::abs(j["d"].get<double>() - (-1.3399273350289904)) < 1e-12);
  CHECK(std::abs(j["p"].get<double>() - 0.180268970195825) < 1e-12);
  CHECK(std::abs(j["threshold_value"].get<double>() - 6.9232735304091415) <
        1e-12);

  const auto csv =
      run_cli("test --input cli_ones16.txt --format ascii --csv");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "# version=0.1.0\n"));
  CHECK(contains(csv.out, "# subcommand=test\n"));
  CHECK(contains(csv.out, "n,n1,d,p,threshold,model,a\n"));
  CHECK(contains(csv.out, "\n16,7,"));
}

TEST_CASE("cli accepts packed input with an explicit bit count") {
  write_bytes("cli_ones16.bin", {0xFF, 0xFF});
  const auto res = run_cli(
      "test --input cli_ones16.bin --format packed --n 16 --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["n1"] == 7);

  const auto missing_n =
      run_cli("test --input cli_ones16.bin --format packed", true);
  CHECK(missing_n.code == 1);
  CHECK(contains(missing_n.out, "input error"));
}

TEST_CASE("cli rejects malformed sequence input") {
  write_text("cli_bad.txt", "0102");
  const auto bad = run_cli("test --input cli_bad.txt --format ascii", true);
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "input error"));

  write_text("cli_ones8.txt", "11111111");
  const auto mismatch =
      run_cli("test --input cli_ones8.txt --format ascii --n 16", true);
  CHECK(mismatch.code == 1);

  const auto missing =
      run_cli("test --input cli_no_such_file.txt --format ascii", true);
  CHECK(missing.code == 1);
  CHECK(contains(missing.out, "cannot open"));

  CHECK(run_cli("test --format ascii", true).code == 1);
}

TEST_CASE("cli spectrum emits one magnitude row per line") {
  write_text("cli_ones16.txt", "1111111111111111");
  const auto res = run_cli("spectrum --input cli_ones16.txt --format ascii");
  REQUIRE(res.code == 0);
  CHECK(contains(res.out, "# subcommand=spectrum\n"));
  CHECK(contains(res.out, "# n=16\n"));
  CHECK(contains(res.out, "j,magnitude\n"));
  CHECK(contains(res.out, "\n0,16\n"));
  CHECK(contains(res.out, "\n1,0\n"));
  CHECK(contains(res.out, "\n8,0\n"));
}

TEST_CASE("cli theory single point and grid") {
  const auto single = run_cli("theory --m 4096 --json");
  REQUIRE(single.code == 0);
  const json j = json::parse(single.out);
  CHECK(j["subcommand"] == "theory");
  CHECK(j["config"]["m"] == 4096);
  CHECK(j["m"] == 4096);
  CHECK(std::abs(j["a"].get<double>() - 3.78989726351) < 1e-10);

  const auto csv = run_cli("theory --m 4096 --csv");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "m,t2,mean_f,var_f,corr,var_n1,a\n"));
  CHECK(contains(csv.out, "\n4096,"));

  const auto grid = run_cli("theory --m-grid 100:10000:log --points 5");
  REQUIRE(grid.code == 0);
  CHECK(contains(grid.out, "m,a,vF,corr,varN1\n"));
  std::istringstream lines(grid.out);
  std::string line;
  std::vector<double> a_values;
  std::size_t first_m = 0;
  std::size_t last_m = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'm') continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    last_m = std::stoul(field);
    if (first_m == 0) first_m = last_m;
    std::getline(row, field, ',');
    a_values.push_back(std::stod(field));
  }
  REQUIRE(a_values.size() == 5);
  CHECK(first_m == 100);
  CHECK(last_m == 10000);
  for (std::size_t k = 1; k < a_values.size(); ++k) {
    CHECK(a_values[k] > a_values[k - 1]);
  }

  const auto grid_json =
      run_cli("theory --m-grid 100:10000:log --points 5 --json");
  REQUIRE(grid_json.code == 0);
  CHECK(json::parse(grid_json.out)["rows"].size() == 5);

  CHECK(run_cli("theory --m 100 --m-grid 10:100:log", true).code == 1);
  CHECK(run_cli("theory", true).code == 1);
}

TEST_CASE("cli theory maps out-of-range arguments to the right exit codes") {
  // m = 5 is structurally valid input but outside the closed form's domain.
  const auto domain = run_cli("theory --m 5", true);
  CHECK(domain.code == 2);
  CHECK(contains(domain.out, "domain error"));

  CHECK(run_cli("theory --m-grid nonsense", true).code == 1);
}

TEST_CASE("cli simplex summarizes empirical against closed form") {
  const auto csv =
      run_cli("simplex --m 20 --samples 1000 --seed 9 --batches 5");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "# m=20\n"));
  CHECK(contains(csv.out, "# seed=9\n"));
  CHECK(contains(csv.out, "quantity,empirical,stderr,closed_form\n"));
  CHECK(contains(csv.out, "\nmean_f,"));
  CHECK(contains(csv.out, "\nvar_f,"));
  CHECK(contains(csv.out, "\ncorr,"));
  CHECK(contains(csv.out, "\nvar_n1,"));

  const auto res =
      run_cli("simplex --m 20 --samples 1000 --seed 9 --batches 5 --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["stats"]["m"] == 20);
  CHECK(j["stats"]["master_seed"] == 9);
  CHECK(j["closed_form"]["var_n1"].is_number());

  // Below the closed form's validity floor the empirical columns survive
  // and the predictions degrade to null.
  const auto small =
      run_cli("simplex --m 4 --samples 1000 --seed 9 --batches 5 --json");
  REQUIRE(small.code == 0);
  const json js = json::parse(small.out);
  CHECK(js["stats"]["mean_f"].is_number());
  CHECK(js["closed_form"]["corr"].is_null());

  CHECK(run_cli("simplex --m 20 --samples 1000 --batches 5", true).code == 1);
  CHECK(run_cli("simplex --samples 1000 --seed 1", true).code == 1);
}

TEST_CASE("cli mc-variance output is reproducible and worker independent") {
  const std::string args =
      "mc-variance --n 64 --sequences 500 --batches 5 --seed 4";
  const auto res = run_cli(args + " --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["subcommand"] == "mc-variance");
  CHECK(j["config"]["n"] == 64);
  CHECK(j["config"]["master_seed"] == 4);
  REQUIRE(j["per_batch"].size() == 5);
  CHECK(j["estimate"].get<double>() > 0.0);
  CHECK(j["predicted"].get<double>() > 3.0);
  CHECK(j["predicted"].get<double>() < 4.0);
  CHECK(j["warnings"].empty());

  const auto rerun = run_cli(args + " --json");
  CHECK(rerun.out == res.out);

  const auto w1 = run_cli(args + " --json --workers 1");
  const auto w3 = run_cli(args + " --json --workers 3");
  CHECK(w1.out == res.out);
  CHECK(w3.out == res.out);

  const auto csv = run_cli(args + " --csv");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "# subcommand=mc-variance\n"));
  CHECK(contains(csv.out, "# n=64\n"));
  CHECK(contains(csv.out, "# estimate="));
  CHECK(contains(csv.out, "batch,value\n"));

  const auto noseed = run_cli("mc-variance --n 64 --sequences 500", true);
  CHECK(noseed.code == 1);
  CHECK(contains(noseed.out, "--seed is required"));
}

TEST_CASE("cli mc-correlation reports the line pair") {
  const auto res = run_cli(
      "mc-correlation --n 64 --i 1 --j 2 --sequences 400 --batches 4 "
      "--seed 8 --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["i"] == 1);
  CHECK(j["j"] == 2);
  REQUIRE(j["per_batch"].size() == 4);
  CHECK(j["predicted"].get<double>() < 0.0);

  const auto bad = run_cli(
      "mc-correlation --n 64 --i 0 --j 2 --sequences 400 --batches 4 --seed 8",
      true);
  CHECK(bad.code == 1);

  CHECK(run_cli("mc-correlation --n 64 --sequences 400", true).code == 1);
}

TEST_CASE("cli exhaustive emits the exact moments") {
  const auto csv = run_cli("exhaustive --n 8");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "# mean_n1=3.8515625\n"));
  CHECK(contains(csv.out, "# var_n1=0.12640380859375\n"));
  CHECK(contains(csv.out, "# max_restriction_error="));
  CHECK(contains(csv.out, "j,mean_energy,var_energy\n"));
  CHECK(contains(csv.out, "\n0,8,112\n"));
  CHECK(contains(csv.out, "\n4,8,112\n"));

  const auto res = run_cli("exhaustive --n 8 --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["mean_n1"] == 3.8515625);
  CHECK(j["var_n1"] == 0.12640380859375);
  CHECK(j["threshold"] == "log005");

  CHECK(run_cli("exhaustive --n 18", true).code == 1);
  CHECK(run_cli("exhaustive --n 7", true).code == 1);
}

TEST_CASE("cli normality reports coefficient statistics") {
  const std::string args = "normality --n 64 --r 1 --sequences 1000 --seed 2";
  const auto res = run_cli(args + " --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["r_pairs"] == 1);
  CHECK(j["master_seed"] == 2);
  REQUIRE(j["coefficients"].size() == 2);
  CHECK(j["coefficients"][0]["kind"] == "s");
  CHECK(j["coefficients"][1]["kind"] == "c");
  CHECK(j["means"].size() == 2);
  CHECK(j["correlations"].size() == 4);

  const auto w2 = run_cli(args + " --json --workers 2");
  CHECK(w2.out == res.out);

  const auto csv = run_cli(args + " --csv");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out, "coefficient,index,mean,variance,excess_kurtosis,ks\n"));
  CHECK(contains(csv.out, "\ns,1,"));
  CHECK(contains(csv.out, "\nc,1,"));

  CHECK(run_cli("normality --n 64 --r 1 --sequences 1000", true).code == 1);
  CHECK(run_cli("normality --n 64 --r 0 --sequences 1000 --seed 2", true)
            .code == 1);
}

TEST_CASE("cli lemma-a1 reports failure honestly with exit zero") {
  const auto res = run_cli("lemma-a1 --json");
  REQUIRE(res.code == 0);
  const json j = json::parse(res.out);
  CHECK(j["pass"] == true);
  CHECK(j["grid"] == 10000);
  CHECK(std::abs(j["max_ratio"].get<double>() - 0.089347847099570933) < 1e-12);

  // A constant below 1/12 is unachievable; the run still exits cleanly.
  const auto fail = run_cli("lemma-a1 --x-max 0.01 --c 0.0823 --grid 100");
  REQUIRE(fail.code == 0);
  CHECK(json::parse(fail.out)["pass"] == false);

  const auto csv = run_cli("lemma-a1 --csv");
  REQUIRE(csv.code == 0);
  CHECK(contains(csv.out,
                 "x_max,c,grid,pass,max_ratio,argmax_x,ratio_at_smallest\n"));

  CHECK(run_cli("lemma-a1 --x-max 2.0", true).code == 1);
}
