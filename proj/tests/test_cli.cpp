#include "ellimod/cli.hpp"

#include <doctest.h>

#include <json.hpp>
#include <sstream>

using namespace ellimod;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("describe in json mode") {
  auto r = run_cli({"describe", "--group", "GL(2)", "--degree", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "1");
  CHECK(j["spaces"]["TstarX"]["lattice_rank"] == 1);
  CHECK(j["spaces"]["TstarX"]["w_c_order"] == "1");
  CHECK(j["degree"]["u"][0] == "1/2");

  SUBCASE("byte-stable across runs") {
    auto r2 = run_cli({"describe", "--group", "GL(2)", "--degree", "1", "--format", "json"});
    CHECK(r.out == r2.out);
  }
}

TEST_CASE("describe with a single space in table mode") {
  auto r = run_cli({"describe", "--group", "SL(2)", "--degree", "0", "--space", "higgs"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lattice rank = 1") != std::string::npos);
  CHECK(r.out.find("|W_c| = 2") != std::string::npos);
}

TEST_CASE("stable-exists") {
  auto yes = run_cli({"stable-exists", "--group", "GL(3)", "--degree", "1"});
  CHECK(yes.code == 0);
  CHECK(yes.out.rfind("yes", 0) == 0);
  auto no = run_cli({"stable-exists", "--group", "GL(4)", "--degree", "2"});
  CHECK(no.code == 0);
  CHECK(no.out.rfind("no", 0) == 0);
}

TEST_CASE("hitchin with fibre queries") {
  auto r = run_cli({"hitchin", "--group", "SL(2)", "--degree", "0", "--fibre", "0",
                    "--fibre", "1/2:1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["hitchin"]["fibres"][0]["centralizer_order"] == "2");
  CHECK(j["hitchin"]["fibres"][0]["fixed_points"][0]["count"] == "4");
  CHECK(j["hitchin"]["fibres"][1]["generic"] == true);
}

TEST_CASE("cpair subcommand") {
  auto r = run_cli({"cpair", "--su", "3", "--k", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["commutant_dimension"] == 1);
  CHECK(j["commutator_residual"].get<double>() <= 1e-12);

  auto torus = run_cli({"cpair", "--group", "GL(2)", "--degree", "0"});
  CHECK(torus.code == 0);
  CHECK(torus.out.find("torus case") != std::string::npos);
}

TEST_CASE("error handling and exit codes") {
  auto bad_flag = run_cli({"describe", "--nonsense"});
  CHECK(bad_flag.code == 2);
  auto bad_group = run_cli({"describe", "--group", "Q(5)", "--degree", "0"});
  CHECK(bad_group.code == 2);
  CHECK(bad_group.err.find("error") != std::string::npos);
  auto bad_degree = run_cli({"describe", "--group", "SL(2)", "--degree", "1"});
  CHECK(bad_degree.code == 2);
  auto no_cmd = run_cli({});
  CHECK(no_cmd.code == 2);
  auto bad_rank = run_cli({"describe", "--group-file", "/nonexistent/file", "--degree", "0"});
  CHECK(bad_rank.code == 2);
}

TEST_CASE("help exits cleanly") {
  auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("describe") != std::string::npos);
}

TEST_CASE("describe with a json single-space report") {
  auto r = run_cli({"describe", "--group", "GL(2)", "--degree", "1", "--space", "higgs",
                    "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["moduli"]["lattice_rank"] == 1);
  CHECK(j["moduli"]["w_c_order"] == "1");
}

TEST_CASE("selftest runs green end to end") {
  auto r = run_cli({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all criteria passed") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("describe handles product groups") {
  auto r = run_cli({"describe", "--group", "GL(2)xPGL(3)", "--degree", "1,1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  // gcd(2,1) = gcd(3,1) = 1 on both factors: lattice rank 1 from the torus
  CHECK(j["spaces"]["X"]["lattice_rank"] == 1);
  CHECK(j["spaces"]["X"]["w_c_order"] == "1");
}

TEST_CASE("the Weyl cap environment variable is honored") {
  setenv("ELLIMOD_WEYL_CAP", "2", 1);
  auto r = run_cli({"describe", "--group", "SL(3)", "--degree", "0"});
  unsetenv("ELLIMOD_WEYL_CAP");
  CHECK(r.code == 2);
  CHECK(r.err.find("|W| = 6") != std::string::npos);
}
