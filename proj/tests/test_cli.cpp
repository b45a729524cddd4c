#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#ifndef FFMC_CLI
#error "FFMC_CLI must point at the ffmc executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FFMC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path write(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("ffmc_cli_" + name);
  std::ofstream(path) << text;
  return path;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("solve") {
  const auto ex = write("ex.ff", "field 5\nvars x1 x2\nclause x1^2 - 1 = 0\nclause x1*x2 - x2 - 1 = 0\n");
  auto r = run("solve " + ex.string());
  CHECK(r.code == 10);
  CHECK(r.out == "sat\nx1 = 4\nx2 = 2\n");

  r = run("solve " + ex.string() + " --oracle --check-model --stats");
  CHECK(r.code == 10);
  CHECK(r.out.find("oracle: agree\n") != std::string::npos);
  CHECK(r.out.find("model: ok\n") != std::string::npos);
  CHECK(r.out.find("\"t_propagations\":") != std::string::npos);

  r = run("solve " + ex.string() + " --var-order 2,1");
  CHECK(r.code == 10);
  CHECK(first_line(r.out) == "sat");

  const auto u = write("u.ff", "field 3\nvars x\nclause 1 = 0\n");
  r = run("solve " + u.string() + " --oracle");
  CHECK(r.code == 20);
  CHECK(r.out == "unsat\noracle: agree\n");

  const auto hard = write("h.ff", "field 3\nvars x y\nclause x^2 + 1 = 0 | y^2 + 1 = 0\n");
  r = run("solve " + hard.string() + " --max-steps 1");
  CHECK(r.code == 30);
  CHECK(first_line(r.out) == "unknown");
}

TEST_CASE("errors") {
  const auto bad = write("bad.ff", "field 5\nvars x\nclause = 0\n");
  CHECK(run("solve " + bad.string()).code == 1);
  CHECK(run("solve /nonexistent/file.ff").code == 1);
  const auto ok = write("ok.ff", "field 5\nvars x y\nclause x = 0\n");
  CHECK(run("solve " + ok.string() + " --var-order 1,1").code == 1);
  CHECK(run("gen --q 6 --out " + (fs::temp_directory_path() / "ffmc_cli_q6").string()).code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("gen and bench") {
  const auto dir = fs::temp_directory_path() / "ffmc_cli_gen";
  fs::remove_all(dir);
  auto r = run("gen --family craft --q 3 --n 32 --c 32 --count 25 --seed 7 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 25);
  CHECK(fs::exists(dir / "craft_q3_n32_c32_24.ff"));
  r = run("bench " + dir.string() + " --timeout 300 --jobs 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("25/25") != std::string::npos);
  CHECK(r.out.find("{\"name\":\"craft_q3_n32_c32_0.ff\",\"verdict\":\"sat\"") != std::string::npos);
  fs::remove_all(dir);
}
