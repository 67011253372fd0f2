#include <doctest.h>

#include "neqcft/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

using json = nlohmann::json;
using neqcft::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / (name + "-" + std::to_string(::getpid()));
}

}  // namespace

TEST_CASE("virasoro-check reports c = 1/2 for the fermion") {
  auto r = call({"virasoro-check", "--model", "fermion", "--cutoff", "6"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["models"][0]["central_charge"] == "1/2");
  CHECK(j["passed"] == true);
}

TEST_CASE("current at alpha = 0 is pi/24 and at pi/2 vanishes") {
  auto r = call({"current", "--alpha", "0", "--Tl", "1", "--Tr", "0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["numeric_result"].get<double>() == doctest::Approx(0.13090).epsilon(1e-5));
  r = call({"current", "--alpha", "1.5707963", "--Tl", "1", "--Tr", "0"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(r.out)["numeric_result"].get<double>()) < 1e-12);
}

TEST_CASE("every subcommand is listed in help") {
  auto r = call({"--help"});
  CHECK(r.code == 0);
  for (const auto& s : neqcft::cli::subcommands()) CHECK(r.out.find(s) != std::string::npos);
  CHECK(neqcft::cli::subcommands().size() == 16);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({"current", "--alpha", "x"}).code == 2);
  CHECK(call({"current", "--cos", "1/2"}).code == 2);
  CHECK(call({"intertwiner", "--cos", "1/2", "--sin", "1/2"}).code == 2);
  CHECK(call({"lattice-run", "--N", "39"}).code == 2);
  CHECK(call({"su2k-decompose", "--k", "0", "--rr-bar", "1/2"}).code == 2);
  CHECK(call({"current", "--format", "xml"}).code == 2);
  CHECK(call({"reflection-phases", "--ring", "potts"}).code == 2);
  CHECK(call({"current", "--config", "/nonexistent/config.json"}).code == 2);
}

TEST_CASE("a failed verification exits with 1 and names the invariant") {
  auto r = call({"su2k-current", "--charged-expectation", "1/10", "--k-max", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("closed form") != std::string::npos);
  r = call({"landauer", "--constant", "0.5", "--Tl", "0.1", "--Tr", "0", "--tolerance", "-1"});
  CHECK(r.code == 1);
}

TEST_CASE("json output is one document and csv has a header row") {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"smatrix"}, {"entropy", "--Tl", "1", "--Tr", "0.5"}, {"su2k-fermionize"},
        {"reflection-phases"}, {"continuity"}}) {
    auto r = call(cmd);
    CHECK(r.code == 0);
    CHECK_NOTHROW((void)json::parse(r.out));
    auto c = cmd;
    c.insert(c.end(), {"--format", "csv"});
    auto csv = call(c);
    CHECK(csv.code == 0);
    CHECK(csv.out.find('\n') != std::string::npos);
    CHECK(csv.out.substr(0, csv.out.find('\n')).find(',') != std::string::npos);
  }
}

TEST_CASE("output is deterministic") {
  auto a = call({"ope-preservation", "--cutoff", "2", "--skew", "1/100"});
  auto b = call({"ope-preservation", "--cutoff", "2", "--skew", "1/100"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("--out writes the report to a file") {
  auto path = temp_file("neqcft-report.json");
  auto r = call({"su2k-decompose", "--k", "4", "--rr-bar", "1/2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  auto j = json::parse(std::ifstream(path));
  CHECK(j["point"]["coeff_Tu1"] == "5/8");
  CHECK(j["point"]["coeff_TZk"] == "3/8");
  std::filesystem::remove(path);
}

TEST_CASE("config file supplies defaults and flags override") {
  auto path = temp_file("neqcft-config.json");
  std::ofstream(path) << R"({"current": {"Tl": 2, "Tr": 1, "alpha": [0]}, "format": "json"})";
  auto r = call({"current", "--config", path.string()});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["numeric_result"].get<double>() == doctest::Approx(std::numbers::pi / 24 * 3));
  r = call({"current", "--config", path.string(), "--Tr", "0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["numeric_result"].get<double>() == doctest::Approx(std::numbers::pi / 24 * 4));
  std::ofstream(path) << "{ broken";
  CHECK(call({"current", "--config", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("virasoro-check compares against the on-disk cache") {
  auto dir = temp_file("neqcft-cli-cache");
  std::filesystem::create_directories(dir);
  ::setenv("NEQCFT_CACHE_DIR", dir.c_str(), 1);
  auto first = call({"virasoro-check", "--model", "boson", "--cutoff", "4"});
  auto second = call({"virasoro-check", "--model", "boson", "--cutoff", "4"});
  ::unsetenv("NEQCFT_CACHE_DIR");
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  CHECK(json::parse(second.out)["models"][0]["cache"]["max_deviation"] == "0");
  CHECK_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("reflection phases from a ring file") {
  auto path = temp_file("neqcft-ring.json");
  std::ofstream(path) << R"({"labels": ["1", "e"], "identity": "1", "fusion": [["e", "e", "1"]]})";
  auto r = call({"reflection-phases", "--ring-file", path.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["rings"][0]["count"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("full-suite --quick passes") {
  auto r = call({"full-suite", "--quick"});
  CHECK(r.code == 0);
  for (const auto& c : json::parse(r.out)["commands"]) CHECK(c["exit_code"] == 0);
}

TEST_CASE("the binary runs and reports exit codes") {
  CHECK(std::system((std::string(NEQCFT_CLI_PATH) + " su2k-fermionize > /dev/null").c_str()) == 0);
  CHECK(WEXITSTATUS(std::system((std::string(NEQCFT_CLI_PATH) + " current --alpha x 2> /dev/null").c_str())) == 2);
}
