#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const std::string err_path = "heunspec_cli_test.err";
  const std::string cmd = std::string(HEUNSPEC_CLI_PATH) + " " + args + " 2>" + err_path;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

// omega0 = 2, beta = 0.5, iota = 1 - 0.25 - 0.5 = 0.25.
const std::string kTwoBranch =
    "--omega-convention printed --omega0 2 --beta 0.5 --ell 1 --flux 0.25 --k 1";

}  // namespace

TEST_CASE("energy command") {
  const Run r = run("energy " + kTwoBranch);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["branch"] == "minus");
  CHECK(j[1]["branch"] == "plus");
  CHECK(j[0]["discriminant"].get<double>() == doctest::Approx(25.5));

  const Run csv = run("energy --format csv --method truncation --n 2 " + kTwoBranch);
  CHECK(csv.code == 0);
  CHECK(lines(csv.out)[0].rfind("n,ell,branch", 0) == 0);
}

TEST_CASE("energy errors") {
  const Run neg = run("energy --model inverse-square --ell 1 --flux 0.25 --k 1");
  CHECK(neg.code == 2);
  CHECK(neg.err.find("negative discriminant") != std::string::npos);

  CHECK(run("energy --mass").code == 1);
  CHECK(run("energy --no-such-flag 3").code == 1);
  CHECK(run("energy --beta 1.5").code == 1);
  CHECK(run("energy --model inverse-square --omega0 1").code == 1);

  const Run warn = run("energy --omega-convention printed --omega0 2 --ell 1 --flux -0.5");
  CHECK(warn.code == 0);
  CHECK(warn.err.find("negative flux") != std::string::npos);
}

TEST_CASE("oracle command") {
  const Run flat = run("oracle");
  REQUIRE(flat.code == 0);
  const auto rows = lines(flat.out);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto comma = rows[i].find(',', rows[i].find(',') + 1);
    const auto cells = fields(rows[i].substr(comma + 1));
    CHECK(cells[1] <= 1e-6);
  }

  CHECK(run("oracle --mode outer --beta 0.5 --rmin 0.3").code == 1);
  const Run core = run("oracle --mode core --beta 0.5 --rmax 0.49 --points 2000");
  CHECK(core.code == 0);
  CHECK(lines(core.out).size() == 6);
  CHECK(lines(core.out)[1].rfind("core,0,", 0) == 0);
}

TEST_CASE("sweep command") {
  const std::string args = "sweep --param flux --from 0 --to 3 --steps 13 --ell 2";
  const Run a = run(args), b = run(args + " --jobs 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 1 + 13 * 2);
  CHECK(run("sweep --param ell --from 0 --to 1 --steps 3").code == 1);
}

TEST_CASE("wavefunction command") {
  CHECK(run("wavefunction --method series --spectral 1 --xmax 1.2").code != 0);

  const std::string params = "--omega0 1.5 --beta 0.6 --ell 2 --flux 0.3 --k 1";
  const Run energy = run("energy --branch minus " + params);
  REQUIRE(energy.code == 0);
  const double c1 = nlohmann::json::parse(energy.out)[0]["c1_over_c0"].get<double>();
  const double omega = 1.5 * 0.36;  // M w0 beta^2

  const Run wave = run("wavefunction --branch minus --xmax 3 --samples 30 " + params);
  REQUIRE(wave.code == 0);
  const auto rows = lines(wave.out);
  REQUIRE(rows.size() == 31);
  CHECK(rows[0] == "x,r,psi,dpsi_dx");
  double peak = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto v = fields(rows[i]);
    const double x = v[0];
    const double expect = std::sqrt(x) * std::exp(-omega * x / 2.0) * (1.0 + c1 * x);
    CHECK(v[2] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(0.6 * std::sqrt(x)).epsilon(1e-15));
    peak = std::max(peak, std::abs(v[2]));
  }
  CHECK(std::abs(fields(rows[1])[2]) < peak);
}

TEST_CASE("verify command") {
  const Run r = run("verify --fast --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["overall"] == "PASS");
  CHECK(j["checks"].size() >= 8);
  CHECK(run("verify --fast --tamper-recurrence-sign --format json").code == 1);
}
