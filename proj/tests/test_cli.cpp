#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef MODSUPER_CLI_PATH
#define MODSUPER_CLI_PATH "modsuper"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / "modsuper_cli_out.txt";
  std::string cmd = std::string(MODSUPER_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("algebra command succeeds and reports dimensions") {
  auto r = run_cli("algebra --family osp12 --p 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"even\": 3") != std::string::npos);
  CHECK(r.output.find("\"odd\": 2") != std::string::npos);
  CHECK(r.output.find("\"restricted_ok\": true") != std::string::npos);
}

TEST_CASE("gl(2|2) restricted dims and sl(3|3) rejection") {
  auto ok = run_cli("algebra --family gl --dims 2 2 --p 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"even\": 8") != std::string::npos);
  CHECK(ok.output.find("\"odd\": 8") != std::string::npos);

  auto bad = run_cli("algebra --family sl --dims 3 3 --p 3");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("grading command emits the degree table for gl(3|2)") {
  auto r = run_cli("grading --family gl --dims 3 2 --p 3 --chi \"partitions:3;2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"x_in_degree_two\": true") != std::string::npos);
  CHECK(r.output.find("\"dim_identity\": true") != std::string::npos);
  CHECK(r.output.find("\"centralizer_dims\"") != std::string::npos);
}

TEST_CASE("kw command passes on the three osp(1|2) characters") {
  for (std::string chi : {"zero", "nilregular"}) {
    auto r = run_cli("kw --family osp12 --p 3 --chi " + chi);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"kw_all_divisible\": true") != std::string::npos);
  }
  auto r = run_cli("kw --family osp12 --p 3 --k 2 --chi ssregular");
  CHECK(r.exit_code == 0);
}

TEST_CASE("morita command for gl(1|1)") {
  auto r = run_cli("morita --family gl --dims 1 1 --p 3 --k 2 --chi ssregular");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("byte-identical output across runs and across cache states") {
  namespace fs = std::filesystem;
  auto a = run_cli("osp12 --p 3");
  auto b = run_cli("osp12 --p 3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  fs::path cache = fs::temp_directory_path() / "modsuper_cli_cache";
  fs::create_directories(cache);
  auto cold = run_cli("osp12 --p 3 --cache " + cache.string());
  auto warm = run_cli("osp12 --p 3 --cache " + cache.string());
  CHECK(cold.output == warm.output);
  CHECK(a.output == cold.output);
  fs::remove_all(cache);
}

TEST_CASE("config file supplies defaults and flags override") {
  namespace fs = std::filesystem;
  fs::path cfg = fs::temp_directory_path() / "modsuper_test.ini";
  {
    std::ofstream out(cfg);
    out << "p=5\nfamily=osp12\n";
  }
  auto r = run_cli("algebra --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"p\": 5") != std::string::npos);
  auto r2 = run_cli("algebra --config " + cfg.string() + " --p 3");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("\"p\": 3") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("csv output mirrors the json content") {
  auto j = run_cli("algebra --family osp12 --p 3 --format json");
  auto c = run_cli("algebra --family osp12 --p 3 --format csv");
  CHECK(c.exit_code == 0);
  CHECK(c.output.find("dims.even,3") != std::string::npos);
  CHECK(c.output.find("restricted_ok,true") != std::string::npos);
  CHECK(j.output.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("algebra --family nosuch --p 3").exit_code == 1);
  CHECK(run_cli("algebra --family gl --p 3").exit_code == 1);       // missing dims
  CHECK(run_cli("grading --family osp12 --p 4").exit_code == 1);    // p not prime
  CHECK(run_cli("").exit_code == 1);                                // subcommand required
}
