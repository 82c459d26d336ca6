#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("MBIE_CLI");
  REQUIRE(env != nullptr);
  return env;
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("cli: symbol subcommand and determinism") {
  fs::path dir = fs::temp_directory_path() / "mbie_cli_symbol";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write(dir / "cfg.json",
        R"({"schema_version":1,"subcommand":"symbol","params":{"kind":"system","p":2.0,"r":-0.5,"per_edge":256}})");

  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + (dir / "a").string()) == 0);
  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + (dir / "b").string()) == 0);
  CHECK(fs::exists(dir / "a" / "det_curve.csv"));
  CHECK(slurp(dir / "a" / "det_curve.csv") == slurp(dir / "b" / "det_curve.csv"));
  CHECK(slurp(dir / "a" / "symbol_report.json") == slurp(dir / "b" / "symbol_report.json"));
  CHECK(slurp(dir / "a" / "symbol_report.json").find("\"winding_number\": 0") != std::string::npos);
}

TEST_CASE("cli: validation and numerical exit codes") {
  fs::path dir = fs::temp_directory_path() / "mbie_cli_err";
  fs::remove_all(dir);
  fs::create_directories(dir);

  write(dir / "bad_schema.json", R"({"schema_version":99,"subcommand":"symbol"})");
  CHECK(run("--config " + (dir / "bad_schema.json").string()) == 2);

  write(dir / "bad_sub.json", R"({"schema_version":1,"subcommand":"frobnicate"})");
  CHECK(run("--config " + (dir / "bad_sub.json").string()) == 2);

  CHECK(run("--config " + (dir / "missing.json").string()) == 4);

  // degenerate curve: winding of the system at (2, 0) is a numerical error
  write(dir / "degenerate.json",
        R"({"schema_version":1,"subcommand":"index","params":{"kind":"system","p":2.0,"r":0.0,"per_edge":256}})");
  CHECK(run("--config " + (dir / "degenerate.json").string() + " --out " + dir.string()) == 3);
}

TEST_CASE("cli: small scan") {
  fs::path dir = fs::temp_directory_path() / "mbie_cli_scan";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write(dir / "cfg.json",
        R"({"schema_version":1,"subcommand":"scan","params":{"p_min":1.9,"p_max":2.1,"p_step":0.1,"r_min":-0.5,"r_max":0.5,"r_step":0.5,"per_edge":128}})");
  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + dir.string()) == 0);
  std::string csv = slurp(dir / "region.csv");
  CHECK(csv.find("2,0,NotFredholm") != std::string::npos);
  CHECK(csv.find("2,-0.5,UniquelySolvable") != std::string::npos);
  CHECK(fs::exists(dir / "region_summary.json"));
}

TEST_CASE("cli: solve with seeded data") {
  fs::path dir = fs::temp_directory_path() / "mbie_cli_solve";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write(dir / "cfg.json",
        R"({"schema_version":1,"subcommand":"solve","params":{"beta":0.25,"n":512,"method":"mellin"}})");
  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + (dir / "a").string() +
            " --seed 7") == 0);
  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + (dir / "b").string() +
            " --seed 7") == 0);
  CHECK(slurp(dir / "a" / "phi_mellin.csv") == slurp(dir / "b" / "phi_mellin.csv"));
  CHECK(fs::exists(dir / "a" / "solve_report.json"));
}
