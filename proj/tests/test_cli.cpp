#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NCSSA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ncssa_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

nlohmann::json constant(const std::string& file, const std::string& which) {
  const Run r = run("constant " + file + " --constant " + which);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("gen then constant") {
  const std::string mub = tmp("mub.json");
  REQUIRE(run("gen --preset mub --d 3 --out " + mub).code == 0);
  CHECK(std::abs(constant(mub, "flo")["value"].get<double>() - 1.0 / 3) <= 1e-12);
  CHECK(std::abs(constant(mub, "cb")["value"].get<double>() - 1.0 / 3) <= 1e-10);

  const std::string pt = tmp("ptrace.json");
  REQUIRE(run("gen --preset ptrace --dA 2 --dB 2 --out " + pt).code == 0);
  const auto cb = constant(pt, "cb");
  CHECK(std::abs(cb["value"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(cb["log_inv"].get<double>()) <= 1e-12);
  // flo needs POVM channels
  CHECK(run("constant " + pt + " --constant flo").code == 1);

  const std::string dpi = tmp("dpi.json");
  REQUIRE(run("gen --preset dpi --d 2 --dB 2 --out " + dpi).code == 0);
  const auto k = constant(dpi, "kappa");
  CHECK(std::abs(k["value"].get<double>()) <= 1e-10);
  CHECK(k["quad_error"].get<double>() < 1e-10);
}

TEST_CASE("audit output") {
  Run r = run("audit --theorem A --seeds 0");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# ncssa-audit v1\nseed,dims,lhs,rhs,constant,gap,pass,wall_ms\nsummary,0,", 0) == 0);

  r = run("audit --theorem A --seeds 3 --dims 2,2,2,2 --jobs 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1,") != std::string::npos);
  CHECK(r.out.find("\n3,") != std::string::npos);
  CHECK(r.out.find("summary,3,") != std::string::npos);

  CHECK(run("audit --theorem C --seeds 2 --dims 2,2").code == 0);
  CHECK(run("audit --theorem B --seeds 2 --preset cs").code == 0);
}

TEST_CASE("errors and determinism") {
  CHECK(run("audit --theorem A --seeds 1 --dims 3,3,3,3 --cap 64").code == 1);
  CHECK(run("gen --preset nonsense").code == 1);
  CHECK(run("constant /nonexistent.json --constant cb").code == 1);
  CHECK(run("bogus").code == 1);

  const Run a = run("gen --preset random --seed 11"), b = run("gen --preset random --seed 11");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("gen --preset random --seed 12").out != a.out);
}
