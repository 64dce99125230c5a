#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SUPERAD_CLI_PATH
#define SUPERAD_CLI_PATH "superad"
#endif

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  std::string cmd = std::string(SUPERAD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("superad_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("invalid configurations exit 1") {
  CHECK(run("") == 1);
  CHECK(run("scatter --eps 0") == 1);
  CHECK(run("scatter --eps -0.1") == 1);
  CHECK(run("scatter --tc 0") == 1);
  CHECK(run("scatter --unknown-flag 1") == 1);
  CHECK(run("frame --points 1") == 1);
  CHECK(run("frame --tmin 2 --tmax 1") == 1);
  CHECK(run("scatter --eps 0.5") == 1);  // n_eps >= 2 infeasible
  CHECK(run("--help") == 0);
}

TEST_CASE("coeffs CSV content and schema") {
  TempDir tmp;
  fs::path out = tmp.path / "coeffs.csv";
  CHECK(run("coeffs --nmax 4 --gamma 1 --out " + out.string()) == 0);
  std::string body = slurp(out);
  CHECK(body.rfind("n,j,a,b\n", 0) == 0);
  CHECK(body.find("4,0,0.75,") != std::string::npos);
  CHECK(!fs::exists(tmp.path / "coeffs.csv.tmp"));
}

TEST_CASE("scatter JSON matches the closed-form amplitude") {
  TempDir tmp;
  fs::path out = tmp.path / "scatter.json";
  CHECK(run("scatter --gamma 0.5 --tc 1 --eps 0.2 --out " + out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["amplitude_theory"].get<double>() == doctest::Approx(9.5296e-3).epsilon(1e-4));
  CHECK(std::abs(j["relative_error"].get<double>()) < 0.1);
  CHECK(j["n_eps"].get<int>() == 4);
  CHECK(j["eps"].get<double>() == 0.2);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir tmp;
  fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv";
  std::string args = "frame --gamma 0.5 --eps 0.1 --tmin -3 --tmax 3 --points 41 --out ";
  CHECK(run(args + a.string()) == 0);
  CHECK(run(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("t,xi,eta,zeta,g,lambda1,lambda2,alpha,beta_re,beta_im,rho,", 0) == 0);

  fs::path c = tmp.path / "c.json", d = tmp.path / "d.json";
  CHECK(run("scatter --eps 0.2 --out " + c.string()) == 0);
  CHECK(run("scatter --eps 0.2 --out " + d.string()) == 0);
  CHECK(slurp(c) == slurp(d));
}

TEST_CASE("config file with flag override and parity") {
  TempDir tmp;
  fs::path cfgfile = tmp.path / "run.cfg";
  {
    std::ofstream os(cfgfile);
    os << "gamma=0.5\neps=0.2\ntc=1\n";
  }
  fs::path out = tmp.path / "s.json";
  CHECK(run("scatter --config " + cfgfile.string() + " --out " + out.string()) == 0);
  auto j1 = nlohmann::json::parse(slurp(out));
  CHECK(j1["n_eps"].get<int>() == 4);
  // flags override the file
  CHECK(run("scatter --config " + cfgfile.string() + " --eps 0.1 --out " + out.string()) == 0);
  auto j2 = nlohmann::json::parse(slurp(out));
  CHECK(j2["n_eps"].get<int>() == 10);
  CHECK(j2["sigma_eps"].get<double>() == doctest::Approx(1.0));
  // odd parity forces n=9, sigma=0
  CHECK(run("scatter --eps 0.1 --parity odd --out " + out.string()) == 0);
  auto j3 = nlohmann::json::parse(slurp(out));
  CHECK(j3["n_eps"].get<int>() == 9);
  CHECK(j3["sigma_eps"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("SUPERAD_RTOL environment override") {
  TempDir tmp;
  fs::path out = tmp.path / "s.json";
  ::setenv("SUPERAD_RTOL", "1e-10", 1);
  CHECK(run("scatter --eps 0.2 --out " + out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["rtol"].get<double>() == doctest::Approx(1e-10));
  ::unsetenv("SUPERAD_RTOL");
  CHECK(run("scatter --eps 0.2 --out " + out.string()) == 0);
  auto j2 = nlohmann::json::parse(slurp(out));
  CHECK(j2["rtol"].get<double>() == doctest::Approx(1e-12));
}

TEST_CASE("history CSV reaches the erf-law amplitude") {
  TempDir tmp;
  fs::path out = tmp.path / "h.csv";
  CHECK(run("history --gamma 0.5 --tc 1 --eps 0.1 --points 41 --out " + out.string()) == 0);
  std::string body = slurp(out);
  CHECK(body.rfind("t,re_k11,", 0) == 0);
  // last row: |k_off| ~ 2 sin(pi/4) e^{-10} within 10%
  auto last_nl = body.find_last_of('\n', body.size() - 2);
  std::string last = body.substr(last_nl + 1);
  std::vector<std::string> cells;
  std::stringstream ss(last);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 12);
  double koff = std::stod(cells[9]);
  CHECK(koff == doctest::Approx(6.4205e-5).epsilon(0.1));
}

TEST_CASE("sweep emits one row per epsilon in input order") {
  TempDir tmp;
  fs::path out = tmp.path / "sweep.csv";
  CHECK(run("sweep --eps-list 0.25 0.2 --format csv --out " + out.string()) == 0);
  std::string body = slurp(out);
  std::vector<std::string> lines;
  std::stringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("eps,", 0) == 0);
  CHECK(lines[1].rfind("0.25,", 0) == 0);
  CHECK(lines[2].rfind("0.2", 0) == 0);
}
