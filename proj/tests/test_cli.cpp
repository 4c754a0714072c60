#include "doctest.h"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = CLI_WORKDIR;

struct Result {
  int code;
  std::string err;
};

Result run(const std::string& args) {
  const fs::path err = kWork / "stderr.txt";
  const std::string cmd = std::string(BOHRWALK_EXE) + " --out-dir " + (kWork / "out").string() + " " + args +
                          " > " + (kWork / "stdout.txt").string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Workdir {
  Workdir() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    write(kWork / "bohr.json",
          R"({"ambient": "lattice", "d": 2, "frequencies": [["sqrt2", "sqrt3", "sqrt5"]], "window": {"radii": ["1/20"]}})");
    write(kWork / "tiny.json",
          R"({"ambient": "lattice", "d": 2, "frequencies": [["sqrt2", "sqrt3", "sqrt5"]], "window": {"radii": ["1/1000000"]}})");
    write(kWork / "C.json", "[[1, 2], [3, -1]]");
  }
};

}  // namespace

TEST_CASE_FIXTURE(Workdir, "proximal-check writes a report and a run record") {
  REQUIRE(run("proximal-check --d 2").code == 0);
  const json report = json::parse(slurp(kWork / "out" / "proximal-check.json"));
  CHECK(report.at("proximal") == true);
  CHECK(std::abs(report.at("moduli")[0].get<double>() - 6.8541019662) < 1e-9);
  CHECK(report.at("adjoint") == json::parse("[[3,-2,1],[-4,4,-1],[2,-1,1]]"));
  const json record = json::parse(slurp(kWork / "out" / "proximal-check.run.json"));
  CHECK(record.at("exit_code") == 0);
  CHECK(record.at("outputs").size() == 2);
  CHECK(record.at("config").at("d") == "2");
}

TEST_CASE_FIXTURE(Workdir, "walk-equidist reruns give identical bytes") {
  const std::string args = "walk-equidist --k 2,4 --samples 3000 --seed 5 --H 1";
  REQUIRE(run(args).code == 0);
  const std::string first = slurp(kWork / "out" / "walk-equidist.csv");
  const std::string decay = slurp(kWork / "out" / "walk-equidist.decay.csv");
  REQUIRE(run("--threads 3 " + args).code == 0);
  CHECK(slurp(kWork / "out" / "walk-equidist.csv") == first);
  CHECK(slurp(kWork / "out" / "walk-equidist.decay.csv") == decay);
  CHECK(first.rfind("k,h1,h2,h3,re,im,modulus\n", 0) == 0);
  CHECK(decay.rfind("k,max_modulus", 0) == 0);
}

TEST_CASE_FIXTURE(Workdir, "a seed is mandatory for sampling") {
  const Result r = run("walk-equidist --samples 10");
  CHECK(r.code == 1);
  CHECK(r.err.find("--seed") != std::string::npos);
}

TEST_CASE_FIXTURE(Workdir, "config files are read and flags override them") {
  write(kWork / "run.toml", "[walk-equidist]\nsamples = 500\nseed = 3\nk = [1, 2]\nH = 1\n");
  REQUIRE(run("--config " + (kWork / "run.toml").string() + " walk-equidist").code == 0);
  const json rec = json::parse(slurp(kWork / "out" / "walk-equidist.run.json"));
  CHECK(rec.at("summary").at("samples") == 500);
  REQUIRE(run("--config " + (kWork / "run.toml").string() + " walk-equidist --samples 700").code == 0);
  CHECK(json::parse(slurp(kWork / "out" / "walk-equidist.run.json")).at("summary").at("samples") == 700);
}

TEST_CASE_FIXTURE(Workdir, "malformed config names the field") {
  write(kWork / "bad.toml", "[walk-equidist]\nsamples = 500\nseed = 3\nsampels = 4\n");
  const Result r = run("--config " + (kWork / "bad.toml").string() + " walk-equidist");
  CHECK(r.code == 1);
  CHECK(r.err.find("sampels") != std::string::npos);

  write(kWork / "bad_bohr.json", R"({"ambient": "lattice", "d": 2, "frequencies": [["sqrt2", "sqrt3", "sqrt5"]]})");
  const Result b = run("conjugacy-witness --target " + (kWork / "C.json").string() + " --bohr " +
                       (kWork / "bad_bohr.json").string());
  CHECK(b.code == 1);
  CHECK(b.err.find("window") != std::string::npos);
}

TEST_CASE_FIXTURE(Workdir, "conjugacy-witness exit codes") {
  const std::string target = " --target " + (kWork / "C.json").string();
  REQUIRE(run("conjugacy-witness --L 12 --bohr " + (kWork / "bohr.json").string() + target).code == 0);
  const json w = json::parse(slurp(kWork / "out" / "conjugacy-witness.json"));
  CHECK(w.at("found") == true);
  CHECK(w.at("witness").at("C") == json::parse("[[1,2],[3,-1]]"));

  CHECK(run("conjugacy-witness --L 2 --bohr " + (kWork / "tiny.json").string() + target).code == 2);
  CHECK(json::parse(slurp(kWork / "out" / "conjugacy-witness.json")).at("found") == false);
}

TEST_CASE_FIXTURE(Workdir, "charpoly-witness from coefficients") {
  CHECK(run("charpoly-witness --poly -7,0,1 --L 10 --bohr " + (kWork / "bohr.json").string()).code == 0);
  const json w = json::parse(slurp(kWork / "out" / "charpoly-witness.json"));
  const auto a = w.at("witness").at("A");
  const long x = a[0][0], y = a[0][1], z = a[1][0];
  CHECK(x * x + y * z == 7);
}

TEST_CASE_FIXTURE(Workdir, "discriminant-cover table") {
  REQUIRE(run("discriminant-cover --alpha sqrt2 --eps 0.1 --M 20000 --t-min -5 --t-max 5").code == 0);
  const std::string csv = slurp(kWork / "out" / "discriminant-cover.csv");
  CHECK(csv.rfind("t,found,x,y,z,exhausted\n", 0) == 0);
  CHECK(csv.find("\n0,1,0,0,0,0\n") != std::string::npos);
}

TEST_CASE_FIXTURE(Workdir, "spectral-atoms and bohr-enumerate outputs") {
  REQUIRE(run("spectral-atoms --k 100,200 --q 1,2 --atoms 1/2,1/3").code == 0);
  const std::string folner = slurp(kWork / "out" / "spectral-atoms.csv");
  CHECK(std::count(folner.begin(), folner.end(), '\n') == 5);
  const std::string atoms = slurp(kWork / "out" / "spectral-atoms.atoms.csv");
  CHECK(atoms.rfind("k,x0,re,im,modulus\n", 0) == 0);
  CHECK(std::count(atoms.begin(), atoms.end(), '\n') == 5);

  write(kWork / "z.json", R"({"ambient": "integers", "frequencies": ["sqrt2"], "window": {"radii": ["1/10"]}})");
  REQUIRE(run("bohr-enumerate --M 10 --bohr " + (kWork / "z.json").string()).code == 0);
  CHECK(slurp(kWork / "out" / "bohr-enumerate.csv") ==
        "h1,margin\n-5,0.0289321881345245\n0,0.10000000000000001\n5,0.0289321881345245\n");
}

TEST_CASE_FIXTURE(Workdir, "environment sets the output directory") {
  const std::string cmd = "BOHRWALK_OUT_DIR=" + (kWork / "env_out").string() + " " + BOHRWALK_EXE +
                          " proximal-check --d 3 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(kWork / "env_out" / "proximal-check.json"));
}
