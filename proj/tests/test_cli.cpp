#include "hfs/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const char* name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + HFS_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  Scratch s("hfs_cli_usage");
  const fs::path log = s.dir / "log";
  CHECK(run("verify nope", log) == 2);
  CHECK(run("--bogus", log) == 2);
  CHECK(run("verify lemma5 --budget quick", log) == 2);
  CHECK(run("verify lemma5 --no_such_param 1", log) == 2);
  CHECK(run("whitney --extra 1", log) == 2);
}

TEST_CASE("verify passes, writes a summary, and reports failures with exit 1") {
  Scratch s("hfs_cli_verify");
  const fs::path log = s.dir / "log";
  CHECK(run("verify lemma5 --budget smoke --out \"" + (s.dir / "a").string() + "\"", log) == 0);
  const hfs::io::Json summary = hfs::io::read_json_file(s.dir / "a" / "summary.json");
  CHECK(summary.contains("timestamp"));
  CHECK(summary.contains("config"));
  CHECK(fs::exists(s.dir / "a" / "lemma5.json"));
  // A zero tolerance cannot be met by a floating-point slope.
  CHECK(run("verify lemma5 --budget smoke --set tolerance=0 --out \"" + (s.dir / "b").string() + "\"", log) == 1);
  CHECK(slurp(log).find("FAIL") != std::string::npos);
}

TEST_CASE("dry run writes nothing and shows the resolved configuration") {
  Scratch s("hfs_cli_dry");
  const fs::path out = s.dir / "out";
  CHECK(run("--dry-run verify lemma5 --budget smoke --out \"" + out.string() + "\"", s.dir / "log") == 0);
  CHECK_FALSE(fs::exists(out));
  CHECK(slurp(s.dir / "log").find("lemma5") != std::string::npos);
}

TEST_CASE("config file values yield to explicit flags") {
  Scratch s("hfs_cli_config");
  {
    std::ofstream cfg(s.dir / "cfg.json");
    cfg << R"({"seed": 77, "verify": {"budget": "deep"}})";
  }
  const std::string base = "--dry-run --config \"" + (s.dir / "cfg.json").string() + "\" ";
  REQUIRE(run(base + "verify lemma5", s.dir / "a") == 0);
  const std::string a = slurp(s.dir / "a");
  CHECK(a.find("deep") != std::string::npos);
  CHECK(a.find("77") != std::string::npos);
  REQUIRE(run(base + "verify lemma5 --budget smoke", s.dir / "b") == 0);
  const std::string b = slurp(s.dir / "b");
  CHECK(b.find("smoke") != std::string::npos);
  CHECK(b.find("deep") == std::string::npos);
}

TEST_CASE("output directory from the environment") {
  Scratch s("hfs_cli_env");
  const fs::path out = s.dir / "env_out";
  ::setenv("HFS_OUT_DIR", out.string().c_str(), 1);
  const int code = run("norm --space bergman --field zero --n 1 --p 2 --alpha 1", s.dir / "log");
  ::unsetenv("HFS_OUT_DIR");
  CHECK(code == 0);
  REQUIRE(fs::exists(out / "norms.csv"));
  CHECK(slurp(out / "norms.csv").find("bergman") != std::string::npos);
}

TEST_CASE("repeated commands produce identical files") {
  Scratch s("hfs_cli_repeat");
  for (const char* d : {"a", "b"})
    REQUIRE(run("ball functional --identity --which N --n 2 --K 8 --out \"" + (s.dir / d).string() + "\"", s.dir / "log") == 0);
  CHECK(slurp(s.dir / "a" / "functional.csv") == slurp(s.dir / "b" / "functional.csv"));
  CHECK_FALSE(slurp(s.dir / "a" / "functional.csv").empty());
}

}  // TEST_SUITE
