#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mixmin/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mixmin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Unique scratch directory per test run; tests clean up after themselves.
fs::path scratch_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("mixmin_cli_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_value fixed table") {
  using mixmin::cli::format_value;
  CHECK(format_value(0.0) == "0");
  CHECK(format_value(0.03125) == "0.0312500000000");
  CHECK(format_value(1.0) == "1.00000000000");
  CHECK(format_value(0.5) == "0.500000000000");
  CHECK(format_value(-0.25) == "-0.250000000000");
  // Twelve significant digits on both sides of the notation switch.
  CHECK(format_value(1e-4) == "0.000100000000000");
  CHECK(format_value(1e-5) == "1.00000000000e-05");
  CHECK(format_value(3.0517578125e-05) == "3.05175781250e-05");
  CHECK(format_value(123456789012.0) == "123456789012");
  CHECK(format_value(2e12) == "2.00000000000e+12");
  CHECK(format_value(7.25e-17) == "7.25000000000e-17");
}

TEST_CASE("mi golden outputs") {
  CliRun a = run_cli({"mi", "--alpha", "1,1,2,4,8,16", "--p", "0.5"});
  CHECK(a.code == 0);
  CHECK(a.out == "0.0312500000000\n");
  CliRun b = run_cli({"mi", "--alpha", "1,1,1,2,3,4", "--p", "0.25"});
  CHECK(b.code == 0);
  CHECK(b.out == "0.0942663435378\n");
  CliRun c = run_cli({"mi", "--alpha", "1,1,1,1,1,1", "--p", "0.01"});
  CHECK(c.code == 0);
  CHECK(c.out == "0.0423605362433\n");
}

TEST_CASE("mi argument validation") {
  // p outside the minor-allele range is a usage error.
  CHECK(run_cli({"mi", "--alpha", "1,1", "--p", "0.7"}).code == 2);
  CHECK(run_cli({"mi", "--alpha", "1,0,2", "--p", "0.3"}).code == 2);
  // --K must agree with the alpha length when both are given.
  CHECK(run_cli({"mi", "--alpha", "1,1,2", "--K", "3", "--p", "0.3"}).code == 2);
  CHECK(run_cli({"mi", "--alpha", "1,1,2", "--K", "2", "--p", "0.3"}).code == 0);
  CliRun bad = run_cli({"mi", "--alpha", "1,1", "--p", "0.7"});
  CHECK(bad.out.empty());
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"mi"}).code == 2);
  CHECK(run_cli({"scheme", "--name", "nope", "--K", "3", "--p", "0.2"}).code == 2);
  CHECK(run_cli({"bound", "--kind", "nope", "--K", "3", "--p", "0.2"}).code == 2);
}

TEST_CASE("help is not an error") {
  CliRun top = run_cli({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("sweep") != std::string::npos);
  CHECK(run_cli({"mi", "--help"}).code == 0);
}

TEST_CASE("computation failures exit with 1") {
  // The dense engine refuses a 2^30-wide support; that is not a usage error.
  CliRun r = run_cli({"scheme", "--name", "binary", "--K", "30", "--p", "0.3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  // The recursion handles the same scheme.
  CliRun ok = run_cli({"scheme", "--name", "binary", "--K", "30", "--p", "0.3",
                       "--method", "recursion"});
  CHECK(ok.code == 0);
}

TEST_CASE("scheme and bound values") {
  CliRun closed = run_cli({"scheme", "--name", "binary", "--K", "5", "--p", "0.5",
                           "--method", "closed"});
  CHECK(closed.code == 0);
  CHECK(closed.out == "0.0312500000000\n");
  CliRun geo = run_cli({"bound", "--kind", "geometric", "--K", "4", "--p", "0.3"});
  CHECK(geo.out == "0.0966260799783\n");
  CliRun zero = run_cli({"bound", "--kind", "trivial", "--K", "4", "--p", "0"});
  CHECK(zero.out == "0\n");
}

TEST_CASE("search subcommands report vector, value and work") {
  CliRun greedy = run_cli({"greedy", "--K", "5", "--p", "0.5"});
  CHECK(greedy.code == 0);
  CHECK(greedy.out == "alpha 1,1,2,4,8,16\nmi 0.0312500000000\nnodes 31\n");

  CliRun optimal = run_cli({"optimal", "--K", "5", "--p", "0.25"});
  CHECK(optimal.code == 0);
  CHECK(optimal.out == "alpha 1,1,1,2,3,4\nmi 0.0942663435378\nnodes 192\n");

  CliRun blu = run_cli({"blu", "--K", "5", "--p", "0.25"});
  CHECK(blu.code == 0);
  CHECK(blu.out == "U 0\nL 4\nmi 0.0942663435378\n");

  // The exhaustive search guard maps to a usage error.
  CHECK(run_cli({"optimal", "--K", "9", "--p", "0.25"}).code == 2);
}

TEST_CASE("pmf accepts exactly one source") {
  CliRun atoms = run_cli({"pmf", "--alpha", "1,1", "--p", "0.5"});
  CHECK(atoms.code == 0);
  CHECK(atoms.out == "0 0.500000000000\n1 0.500000000000\n");

  CliRun named = run_cli({"pmf", "--name", "greedy", "--K", "3", "--p", "0.25"});
  CHECK(named.code == 0);
  CHECK(named.out.substr(0, 17) == "0 0.421875000000\n");

  CliRun geo = run_cli({"pmf", "--kind", "geometric", "--K", "2", "--p", "0.4"});
  CHECK(geo.code == 0);
  CHECK(geo.out.substr(0, 17) == "0 0.360000000000\n");

  CHECK(run_cli({"pmf", "--p", "0.3"}).code == 2);
  CHECK(run_cli({"pmf", "--alpha", "1,1", "--name", "binary", "--K", "1",
                 "--p", "0.3"}).code == 2);
}

TEST_CASE("verify-kkt reports the certificate and the sandwich") {
  CliRun r = run_cli({"verify-kkt", "--K", "4", "--p", "0.3", "--n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("max_kkt_residual ") != std::string::npos);
  CHECK(r.out.find("perturbation_bound ") != std::string::npos);
  CHECK(r.out.find("sandwich_ok true\n") != std::string::npos);
  // Both bound routes on one screen must agree at display precision.
  CHECK(r.out.find("bound_limit 0.0966260799783\n") != std::string::npos);
  CHECK(r.out.find("geometric_bound 0.0966260799783\n") != std::string::npos);
}

TEST_CASE("sweep writes one file per curve with exact endpoints") {
  fs::path dir = scratch_dir("dat");
  CliRun r = run_cli({"sweep", "--curves", "uniform,bound_trivial", "--K", "3",
                      "--p-start", "0", "--p-end", "0.5", "--steps", "3",
                      "--out-dir", dir.string(), "--format", "dat"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("uniform_K3.dat") != std::string::npos);
  CHECK(r.out.find("bound_trivial_K3.dat") != std::string::npos);
  std::string table = read_file(dir / "uniform_K3.dat");
  CHECK(table ==
        "0 0\n"
        "0.250000000000 0.220054003619\n"
        "0.500000000000 0.219360937770\n");
  fs::remove_all(dir);
}

TEST_CASE("sweep csv format carries a header and CRLF rows") {
  fs::path dir = scratch_dir("csv");
  CliRun r = run_cli({"sweep", "--curves", "uniform", "--K", "3",
                      "--p-start", "0", "--p-end", "0.5", "--steps", "3",
                      "--out-dir", dir.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(read_file(dir / "uniform_K3.csv") ==
        "p,value\r\n"
        "0,0\r\n"
        "0.250000000000,0.220054003619\r\n"
        "0.500000000000,0.219360937770\r\n");
  fs::remove_all(dir);
}

TEST_CASE("sweep reruns are byte-identical") {
  fs::path dir = scratch_dir("rerun");
  std::vector<std::string> args = {
      "sweep", "--curves", "greedy,bound_geometric", "--K", "4",
      "--p-start", "0.05", "--p-end", "0.5", "--steps", "10",
      "--out-dir", dir.string(), "--format", "dat"};
  REQUIRE(run_cli(args).code == 0);
  std::string greedy_first = read_file(dir / "greedy_K4.dat");
  std::string bound_first = read_file(dir / "bound_geometric_K4.dat");
  REQUIRE(run_cli(args).code == 0);
  CHECK(read_file(dir / "greedy_K4.dat") == greedy_first);
  CHECK(read_file(dir / "bound_geometric_K4.dat") == bound_first);
  fs::remove_all(dir);
}

TEST_CASE("sweep argument validation") {
  fs::path dir = scratch_dir("bad");
  auto sweep = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"sweep", "--K", "3", "--out-dir", dir.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args).code;
  };
  // Duplicate curve, unknown curve, reversed or degenerate grid, bad format.
  CHECK(sweep({"--curves", "uniform,uniform", "--p-start", "0", "--p-end", "0.5",
               "--steps", "3"}) == 2);
  CHECK(sweep({"--curves", "septenary", "--p-start", "0", "--p-end", "0.5",
               "--steps", "3"}) == 2);
  CHECK(sweep({"--curves", "uniform", "--p-start", "0.4", "--p-end", "0.1",
               "--steps", "3"}) == 2);
  CHECK(sweep({"--curves", "uniform", "--p-start", "0", "--p-end", "0.5",
               "--steps", "1"}) == 2);
  CHECK(sweep({"--curves", "uniform", "--p-start", "0", "--p-end", "0.5",
               "--steps", "3", "--format", "tsv"}) == 2);
  // The exhaustive curve respects the brute-force guard.
  CHECK(run_cli({"sweep", "--curves", "optimal", "--K", "9",
                 "--p-start", "0", "--p-end", "0.5", "--steps", "3",
                 "--out-dir", dir.string()}).code == 2);
  fs::remove_all(dir);
}
