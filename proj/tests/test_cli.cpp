#include <catch_amalgamated.hpp>

#include "opstrict/commands.hpp"
#include "opstrict/io.hpp"

using namespace opstrict;

namespace {

const std::string kData = OPSTRICT_TEST_DATA;

std::string data(const char* name) { return kData + "/" + name; }

const ReportItem* item(const Report& r, std::string_view name) {
  for (const auto& i : r.items)
    if (i.name == name) return &i;
  return nullptr;
}

RunConfig small() {
  RunConfig c;
  c.tree_size_cap = 3;
  return c;
}

}  // namespace

TEST_CASE("compile-theory") {
  RunConfig c;
  c.arity_cap = 3;
  c.term_size_cap = 4;
  auto res = cmd_compile_theory(data("monoid.theory"), c);
  CHECK(res.report.exit_code() == ExitCode::Pass);
  REQUIRE(res.artifact.has_value());
  auto P = parse_operad(*res.artifact);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(P.of_arity(n).size() == 1);
  CHECK(item(res.report, "compile_operad")->details["effective_arity_cap"] == 3);

  auto comm = cmd_compile_theory(data("commutative_monoid.theory"), c);
  CHECK(comm.report.exit_code() == ExitCode::Failure);
  CHECK(item(comm.report, "check_strong_regularity")->checks.failures.at(0).actual ==
        "order mismatch");
  CHECK_FALSE(comm.artifact.has_value());
  CHECK(cmd_compile_theory(data("broken.theory"), c).report.exit_code() == ExitCode::ParseError);
}

TEST_CASE("validate") {
  auto ok = cmd_validate(data("cyclic_strict.wpc"), small());
  CHECK(ok.report.exit_code() == ExitCode::Pass);
  CHECK(item(ok.report, "validate_weak_p_category")->checks.failures.empty());
  CHECK(item(ok.report, "validate_weak_p_category")->details["strict"] == true);

  auto bad = cmd_validate(data("cyclic_corrupt.wpc"), small());
  CHECK(bad.report.exit_code() == ExitCode::Failure);
  CHECK(item(bad.report, "validate_weak_p_category")->details["suspects"][0] ==
        "gamma t2 (t1 t1) @ (x x)");

  CHECK(cmd_validate(data("broken.wpc"), small()).report.exit_code() == ExitCode::ParseError);
  RunConfig tight = small();
  tight.arity_cap = 2;
  CHECK(cmd_validate(data("cyclic_strict.wpc"), tight).report.exit_code() ==
        ExitCode::CapExceeded);
  CHECK(cmd_validate(data("missing.wpc"), small()).report.exit_code() == ExitCode::Failure);
}

TEST_CASE("strictify") {
  auto res = cmd_strictify(data("cyclic_twisted.wpc"), small());
  CHECK(res.report.exit_code() == ExitCode::Pass);
  for (auto name : {"validate_weak_p_category", "strictify", "check_strict", "build_F",
                    "check_equivalence"})
    CHECK(item(res.report, name) != nullptr);
  REQUIRE(res.artifact.has_value());
  CHECK(res.artifact->starts_with("begin operad"));
  auto bad = cmd_strictify(data("cyclic_corrupt.wpc"), small());
  CHECK(bad.report.exit_code() == ExitCode::Failure);
  CHECK(item(bad.report, "strictify") == nullptr);
}

TEST_CASE("factorize") {
  auto res = cmd_factorize(data("indiscrete3.wpc"), data("st_indiscrete2.wpc"),
                           data("indiscrete3_to_st2.wfun"), small());
  CHECK(res.report.exit_code() == ExitCode::Pass);
  const auto* f = item(res.report, "factorize");
  REQUIRE(f != nullptr);
  CHECK(f->details["solutions"] == 1);
  CHECK(f->details["uniqueness_checked"] == true);

  RunConfig bounded = small();
  bounded.uniqueness_bound = 5;
  auto b = cmd_factorize(data("indiscrete3.wpc"), data("st_indiscrete2.wpc"),
                         data("indiscrete3_to_st2.wfun"), bounded);
  CHECK(b.report.exit_code() == ExitCode::Pass);
  CHECK(item(b.report, "factorize")->details["bound_exceeded"] == true);

  // A weak target fails the strictness precondition.
  auto weak = cmd_factorize(data("cyclic_twisted.wpc"), data("cyclic_twisted.wpc"),
                            data("untwist.wfun"), small());
  CHECK(weak.report.exit_code() == ExitCode::Failure);
}

TEST_CASE("enumerate") {
  RunConfig c;
  c.tree_size_cap = 3;
  auto res = cmd_enumerate(data("terminal3.operad"), 3, c);
  CHECK(res.report.exit_code() == ExitCode::Pass);
  CHECK(item(res.report, "has_two_cell")->details["classes"] == 1);
  CHECK(cmd_enumerate(data("terminal3.operad"), 4, c).report.exit_code() ==
        ExitCode::CapExceeded);
}

TEST_CASE("reports are deterministic and name their operations") {
  auto a = cmd_strictify(data("idempotent.wpc"), small());
  auto b = cmd_strictify(data("idempotent.wpc"), small());
  CHECK(render_text(a.report) == render_text(b.report));
  CHECK(render_json(a.report) == render_json(b.report));
  CHECK(a.artifact == b.artifact);
  auto j = to_json(a.report);
  CHECK(j["command"] == "strictify");
  CHECK(j["inputs"][0]["fnv1a"] == fnv1a_hex(read_file(data("idempotent.wpc"))));
  CHECK_FALSE(j.contains("wall_seconds"));
  RunConfig timed = small();
  timed.timing = true;
  CHECK(to_json(cmd_validate(data("idempotent.wpc"), timed).report).contains("wall_seconds"));
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("caps must be positive") {
  RunConfig c;
  c.tree_size_cap = 0;
  CHECK(cmd_validate(data("cyclic_strict.wpc"), c).report.exit_code() == ExitCode::Failure);
}
