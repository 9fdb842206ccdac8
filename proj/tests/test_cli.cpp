#include "doctest.h"
#include "oracles.hpp"

#include "padic/cli.hpp"

using namespace padic;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

bool mentions(const std::vector<std::string>& messages, const std::string& needle) {
  return std::any_of(messages.begin(), messages.end(), [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("problem files without a window get [0, T]") {
  const ProblemFile pf = parse_problem(fixture("trivial.json"), 9);
  REQUIRE(pf.connection);
  CHECK_FALSE(pf.window_given);
  CHECK(pf.connection->rank == 1);
  CHECK(pf.connection->num_vars == 1);
  CHECK(pf.connection->window == SeriesWindow::power_series(1, 9));
  CHECK(pf.connection->matrices[0].is_zero());
}

TEST_CASE("schema errors carry their JSON path") {
  try {
    parse_problem_text(R"({"version": 1, "prime": 3, "kind": "connection", "rank": 1, "num_vars": 1,
                          "matrices": [[[[{"exps": [0], "coeff": "1/0"}]]]]})");
    FAIL("expected ProblemError");
  } catch (const ProblemError& e) {
    CHECK(mentions(e.messages(), "/matrices/0/0/0/0/coeff"));
  }
  try {
    parse_problem_text(R"({"version": 1, "prime": 6, "kind": "connection", "rank": 1, "num_vars": 1, "matrices": [[[[]]]]})");
    FAIL("expected ProblemError");
  } catch (const ProblemError& e) {
    CHECK(mentions(e.messages(), "/prime"));
    CHECK(mentions(e.messages(), "not prime"));
  }
  try {
    parse_problem_text(R"({"version": 2, "prime": 3, "kind": "teapot", "bogus": 1})");
    FAIL("expected ProblemError");
  } catch (const ProblemError& e) {
    CHECK(e.messages().size() >= 2);
  }
  CHECK_THROWS_AS(parse_problem_text("{not json"), ProblemError);
  CHECK_THROWS_AS(parse_problem(fixture("missing.json")), ProblemError);
}

TEST_CASE("exit codes") {
  const CliOptions none;
  CHECK(run_command("validate", fixture("jordan2.json"), none).exit_code == kExitOk);
  CHECK(run_command("horizontal", fixture("jordan2.json"), none).exit_code == kExitOk);
  CHECK(run_command("reduce", fixture("division.json"), none).exit_code == kExitOk);
  CHECK(run_command("reduce", fixture("jordan2.json"), none).exit_code == kExitUsage);
  CHECK(run_command("frobnicate", fixture("jordan2.json"), none).exit_code == kExitUsage);
  CHECK(run_command("validate", fixture("missing.json"), none).exit_code == kExitUsage);

  CliOptions composite;
  composite.prime = 6;
  CHECK(run_command("validate", fixture("jordan2.json"), composite).exit_code == kExitUsage);

  const CommandResult bad = run_command("gauge", fixture("nonnilpotent.json"), none);
  CHECK(bad.exit_code == kExitMathFailure);
  CHECK(bad.report["certificate"]["type"] == "NotUnipotent");
  CHECK(bad.report["status"] == "failure");
}

TEST_CASE("reports") {
  const CommandResult r = run_command("filtration", fixture("jordan2.json"), CliOptions{});
  REQUIRE(r.exit_code == kExitOk);
  CHECK(r.report["ranks"] == json::array({1, 2}));
  CHECK(r.report["strictly_block_upper_triangular"] == true);
  CHECK(r.report.contains("timing_ms"));
  // Reports survive a round trip through text.
  CHECK(json::parse(r.report.dump()) == r.report);

  CliOptions trunc;
  trunc.trunc = 5;
  const CommandResult t = run_command("gauge", fixture("exp.json"), trunc);
  CHECK(t.report["window"]["upper"] == json::array({5}));

  const std::string text = text_report(run_command("validate", fixture("trivial.json"), CliOptions{}).report);
  CHECK(text.find("STATUS: ok") != std::string::npos);
  CHECK(text.find("INTEGRABLE: true") != std::string::npos);
}

TEST_CASE("every command runs on the Jordan fixture") {
  CliOptions o;
  o.eta_exp = Rational(1);
  for (const auto& cmd : command_names()) {
    if (cmd == "reduce") continue;
    const CommandResult r = run_command(cmd, fixture("jordan2.json"), o);
    CHECK_MESSAGE(r.exit_code == kExitOk, cmd);
  }
}
