#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "fuzzydynsym/report.hpp"

#ifndef FUZZYDYNSYM_CLI_PATH
#error "FUZZYDYNSYM_CLI_PATH must point at the CLI binary"
#endif

using fuzzydynsym::report::Json;
using fuzzydynsym::report::validate_report;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

int g_run_id = 0;

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string out_file = "cli_out_" + std::to_string(++g_run_id) + ".txt";
  std::string err_file = "cli_err_" + std::to_string(g_run_id) + ".txt";
  std::string cmd = env_prefix + std::string(FUZZYDYNSYM_CLI_PATH) + " " + args + " > " +
                    out_file + " 2> " + err_file;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  std::remove(out_file.c_str());
  std::remove(err_file.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
}

}  // namespace

TEST_CASE("verify: identity suite and user equations") {
  RunResult r = run_cli("verify");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  std::string why;
  CHECK(validate_report(j, &why));
  INFO(why);
  CHECK(j["status"] == "pass");
  CHECK(j["checks"].size() >= 10);
  for (const auto& c : j["checks"]) CHECK(c["tolerance"] == "exact");

  // a true equation passes, a false one fails with exit code 1
  CHECK(run_cli("verify 'comm(x(1),x(2)) == 2*i*lam*x(3)'").exit_code == 0);
  CHECK(run_cli("verify 'comm(L(1),L(2)) == i*L(3)'").exit_code == 0);
  RunResult bad = run_cli("verify 'comm(x(1),x(2)) == x(3)'");
  CHECK(bad.exit_code == 1);
  CHECK(Json::parse(bad.out)["status"] == "fail");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("verify '((broken'").exit_code == 2);
  CHECK(run_cli("verify 'x(1)*x(2)'").exit_code == 2);      // not an equation
  CHECK(run_cli("spectrum --no-such-flag").exit_code == 2);  // unknown option
  CHECK(run_cli("").exit_code == 2);                         // missing subcommand
  CHECK(run_cli("zwanziger").exit_code == 2);                // missing sub-subcommand
  CHECK(run_cli("spectrum --format yaml").exit_code == 2);   // invalid enum value
}

TEST_CASE("schema subcommand describes the report layout") {
  RunResult r = run_cli("schema");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("schema_version") != std::string::npos);
  CHECK(r.out.find("stability_hash") != std::string::npos);
  CHECK(r.out.find("wall_seconds") != std::string::npos);
}

TEST_CASE("spectrum: valid report, determinism, CSV") {
  RunResult a = run_cli("spectrum --nmax 8 -k 5");
  REQUIRE(a.exit_code == 0);
  Json ja = Json::parse(a.out);
  std::string why;
  CHECK(validate_report(ja, &why));
  INFO(why);
  CHECK(ja["command"] == "spectrum");
  CHECK(ja["config"]["nmax"] == 8);
  CHECK(ja["tables"]["clusters"].size() >= 1);

  // two runs agree byte-for-byte once the wall clock is erased
  RunResult b = run_cli("spectrum --nmax 8 -k 5");
  Json jb = Json::parse(b.out);
  CHECK(ja["stability_hash"] == jb["stability_hash"]);
  ja.erase("wall_seconds");
  jb.erase("wall_seconds");
  CHECK(ja.dump() == jb.dump());

  RunResult csv = run_cli("spectrum --nmax 8 -k 5 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("cluster,energy,multiplicity", 0) == 0);

  RunResult sweep = run_cli("spectrum --nmax 12 -k 2 --sweep");
  CHECK(sweep.exit_code == 0);
  CHECK(Json::parse(sweep.out)["tables"].contains("convergence_ladder"));
}

TEST_CASE("symmetry: conservation checks and the hydrogen-limit sweep") {
  RunResult r = run_cli("symmetry --nmax 12 -k 1 --sweep");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  std::string why;
  CHECK(validate_report(j, &why));
  INFO(why);
  bool saw_conservation = false, saw_power = false;
  for (const auto& c : j["checks"]) {
    std::string name = c["name"];
    if (name.rfind("conservation", 0) == 0) {
      saw_conservation = true;
      CHECK(c["status"] == "pass");
    }
    if (name == "hydrogen-limit power") {
      saw_power = true;
      CHECK(c["status"] == "pass");
    }
  }
  CHECK(saw_conservation);
  CHECK(saw_power);
  CHECK(j["tables"]["clusters"][0]["regime"] == "SO(4)");
}

TEST_CASE("cache: write, hit, and corruption maps to the environment exit code") {
  std::string dir = "cli_cache_dir_" + std::to_string(::getpid());
  std::string mk = "mkdir -p " + dir;
  REQUIRE(std::system(mk.c_str()) == 0);

  RunResult first = run_cli("spectrum --nmax 6 -k 2 --cache-dir " + dir);
  REQUIRE(first.exit_code == 0);
  CHECK(Json::parse(first.out)["tables"]["cache"]["cache"] == "written");

  RunResult second = run_cli("spectrum --nmax 6 -k 2 --cache-dir " + dir);
  REQUIRE(second.exit_code == 0);
  CHECK(Json::parse(second.out)["tables"]["cache"]["cache"] == "hit");
  // repeated cached runs produce byte-identical stability-hashed reports
  RunResult third = run_cli("spectrum --nmax 6 -k 2 --cache-dir " + dir);
  CHECK(Json::parse(second.out)["stability_hash"] == Json::parse(third.out)["stability_hash"]);
  // the numeric content matches the uncached run
  CHECK(Json::parse(first.out)["tables"]["clusters"] ==
        Json::parse(second.out)["tables"]["clusters"]);

  // the environment variable points at the same cache
  RunResult env = run_cli("spectrum --nmax 6 -k 2", "FUZZYDYNSYM_CACHE=" + dir + " ");
  REQUIRE(env.exit_code == 0);
  CHECK(Json::parse(env.out)["tables"]["cache"]["cache"] == "hit");

  // truncate every cache file in the directory -> corrupt payload -> exit 3
  std::string corrupt = "for f in " + dir + "/*.fdsm; do truncate -s 40 $f; done";
  REQUIRE(std::system(corrupt.c_str()) == 0);
  CHECK(run_cli("spectrum --nmax 6 -k 2 --cache-dir " + dir).exit_code == 3);

  std::string rm = "rm -rf " + dir;
  CHECK(std::system(rm.c_str()) == 0);
}

TEST_CASE("config file: flat key=value with command-line precedence") {
  std::string cfg = "cli_cfg_" + std::to_string(::getpid()) + ".ini";
  write_file(cfg, "nmax=6\nk=2\nlambda=0.5\n");

  RunResult from_file = run_cli("spectrum --config " + cfg);
  REQUIRE(from_file.exit_code == 0);
  CHECK(Json::parse(from_file.out)["config"]["nmax"] == 6);
  CHECK(Json::parse(from_file.out)["config"]["k"] == 2);

  RunResult overridden = run_cli("spectrum --config " + cfg + " --nmax 8");
  REQUIRE(overridden.exit_code == 0);
  CHECK(Json::parse(overridden.out)["config"]["nmax"] == 8);
  CHECK(Json::parse(overridden.out)["config"]["k"] == 2);

  CHECK(run_cli("spectrum --config no_such_config.ini").exit_code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("zwanziger subcommands") {
  SUBCASE("levels") {
    RunResult r = run_cli("zwanziger levels --mu 0.5 --gamma 1 -k 3");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["tables"]["levels"].size() == 3);
    CHECK(j["tables"]["levels"][0]["n"] == "3/2");
    CHECK(j["tables"]["levels"][0]["degeneracy"] == "2");
    // non-half-integer mu is a usage error
    CHECK(run_cli("zwanziger levels --mu 0.3").exit_code == 2);
    CHECK(run_cli("zwanziger levels --mu 0.5 --gamma -1").exit_code == 2);
  }
  SUBCASE("oracle") {
    RunResult r = run_cli("zwanziger oracle --mu 0.5 --gamma 1 --j 0.5 -k 2");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["tables"]["oracle"].size() == 2);
    CHECK(run_cli("zwanziger oracle --mu 0.5 --j 0.25").exit_code == 2);
  }
  SUBCASE("fields") {
    std::string pts = "cli_pts_" + std::to_string(::getpid()) + ".csv";
    write_file(pts, "x,y,z\n1,0,0\n0,2,0\n1,1,1\n");
    RunResult r = run_cli("zwanziger fields --points " + pts);
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["tables"]["field"].size() == 3);
    // missing --points is a usage error; a malformed file is an environment error
    CHECK(run_cli("zwanziger fields").exit_code == 2);
    write_file(pts, "a,b,c\n1,0,0\n");
    CHECK(run_cli("zwanziger fields --points " + pts).exit_code == 3);
    CHECK(run_cli("zwanziger fields --points no_such_points.csv").exit_code == 3);
    std::remove(pts.c_str());
  }
  SUBCASE("reduce") {
    RunResult r = run_cli("zwanziger reduce --e1 -1 --e2 1 --m1 1 --m2 1");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["tables"]["reduced"]["mu"] == "0");
    CHECK(j["tables"]["reduced"]["binding"] == true);
    // a non-quantized mu fails the Dirac check (exit 1, an honest failure)
    CHECK(run_cli("zwanziger reduce --e1 1 --g2 1").exit_code == 1);
  }
}

TEST_CASE("stability hash changes when the configuration changes") {
  Json a = Json::parse(run_cli("spectrum --nmax 6 -k 2").out);
  Json b = Json::parse(run_cli("spectrum --nmax 7 -k 2").out);
  CHECK(a["stability_hash"] != b["stability_hash"]);
}
