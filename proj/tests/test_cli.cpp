#include "json.hpp"

#include "doctest.h"
#include "hyperpoly/poly.hpp"
#include "support/fixtures.hpp"
#include "support/golden.hpp"
#include "support/run.hpp"

using hyperpoly::testing::fixture_path;
using hyperpoly::testing::run_cli;

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("cli: analyze reports the topology line") {
  auto r = run_cli("analyze " + quoted(fixture_path("bubble.json")));
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "n=2 L=2 F=2 g=0 B=1 N=4");
}

TEST_CASE("cli: hu prints the canonical polynomial") {
  for (const auto& row : hyperpoly::testing::golden_hu()) {
    std::string file = row.fixture;
    if (file != "sunshine.json" && file != "bubble.json") continue;
    CAPTURE(file);
    auto r = run_cli("hu " + quoted(fixture_path(file)));
    CHECK(r.status == 0);
    CHECK(first_line(r.out) == hyperpoly::canonical_string(hyperpoly::parse_poly(row.hu)));
  }
}

TEST_CASE("cli: leading shows factored Pfaffians") {
  auto r = run_cli("leading " + quoted(fixture_path("bubble.json")));
  CHECK(r.status == 0);
  CHECK(r.out.find("J0={1} n_I=2*(W-1) closed=2*(W-1)") != std::string::npos);
  CHECK(r.out.find("HV J={1,2} face={-x3,+x4}") != std::string::npos);
}

TEST_CASE("cli: JSON outputs parse and carry the documented fields") {
  auto hu = nlohmann::json::parse(run_cli("hu --json " + quoted(fixture_path("sunshine.json"))).out);
  CHECK(hu.contains("hu"));
  CHECK(hu.contains("monomials"));
  CHECK(hu.contains("terms"));
  auto an = nlohmann::json::parse(run_cli("analyze --json " + quoted(fixture_path("bubble.json"))).out);
  CHECK(an["F"] == 2);
  CHECK(an["B"] == 1);
  CHECK(an["faces"].size() == 2);
  auto hv = nlohmann::json::parse(run_cli("hv --json " + quoted(fixture_path("bubble.json"))).out);
  CHECK(hv.contains("coefficients"));
  auto ver = nlohmann::json::parse(run_cli("verify --json " + quoted(fixture_path("bubble.json"))).out);
  REQUIRE(ver["checks"].is_array());
  for (const auto& c : ver["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("cli: output is deterministic for a fixed seed") {
  for (const char* cmd : {"verify", "leading", "hv"}) {
    CAPTURE(cmd);
    std::string args = std::string(cmd) + " --seed 7 " + quoted(fixture_path("sunshine.json"));
    CHECK(run_cli(args).out == run_cli(args).out);
  }
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("verify " + quoted(fixture_path("sunshine.json"))).status == 0);
  auto corrupted = run_cli("verify " + quoted(fixture_path("corrupted/bubble_sign_flipped.json")));
  CHECK(corrupted.status == 1);
  CHECK(corrupted.out.find("FAIL expected (mismatch: hu) witness:") != std::string::npos);
  for (const auto& file : hyperpoly::testing::invalid_fixture_files()) {
    CAPTURE(file);
    CHECK(run_cli("analyze " + quoted(fixture_path(file))).status == 2);
  }
  CHECK(run_cli("hu " + quoted(fixture_path("no_such_file.json"))).status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("hu").status == 2);
}

TEST_CASE("cli: errors in JSON mode are structured") {
  auto r = run_cli("analyze --json " + quoted(fixture_path("invalid/non_orientable.json")));
  CHECK(r.status == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["kind"] == "validation");
}
