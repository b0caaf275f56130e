#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "opstrict/theory.hpp"
#include "oracles.hpp"

using namespace opstrict;

namespace {

const char* kMonoid = R"(theory monoid
ops: m/2, e/0
eqs:
m(m(x,y),z) = m(x,m(y,z))
m(e(),x) = x
m(x,e()) = x
)";

}  // namespace

TEST_CASE("presentation parsing") {
  auto p = parse_presentation("ops: m/2, e/0  eqs: m(e(),x)=x");
  CHECK(p.ops.size() == 2);
  CHECK(p.equations.size() == 1);
  CHECK(p.equations[0].rhs == LinearTerm::var("x"));
  CHECK(p.equations[0].lhs ==
        LinearTerm::app("m", {LinearTerm::app("e", {}), LinearTerm::var("x")}));
  CHECK(parse_presentation("ops: m/2, e/0 eqs:").equations.empty());
  CHECK(parse_presentation("theory t ops: e/0 eqs: e = e()").equations.size() == 1);
  CHECK_THROWS_AS(parse_presentation("ops: m/2 eqs: m(x,y,z)=x"), ParseError);
  CHECK_THROWS_AS(parse_presentation("ops: m/2, m/1"), ParseError);
  try {
    parse_presentation("ops: m/2\neqs:\nm(x,y) = m(x,y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("strong regularity verdicts") {
  SECTION("monoids are regular") {
    auto r = check_strong_regularity(parse_presentation(kMonoid));
    CHECK(r.regular);
    CHECK(r.violations.empty());
  }
  SECTION("commutativity is an order mismatch") {
    auto r = check_strong_regularity(parse_presentation("ops: m/2 eqs: m(a,b) = m(b,a)"));
    CHECK_FALSE(r.regular);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].second == RegularityViolation::OrderMismatch);
  }
  SECTION("inverses repeat a variable and lose it on the right") {
    auto r = check_strong_regularity(
        parse_presentation("ops: m/2, e/0, inv/1 eqs: m(g,inv(g)) = e()"));
    CHECK_FALSE(r.regular);
    std::set<RegularityViolation> kinds;
    for (auto& v : r.violations) kinds.insert(v.second);
    CHECK(kinds == std::set<RegularityViolation>{RegularityViolation::RepeatedVariable,
                                                 RegularityViolation::VariableSetMismatch});
  }
  SECTION("the verdict does not depend on equation order") {
    auto p = parse_presentation(
        "ops: m/2, e/0 eqs: m(m(x,y),z) = m(x,m(y,z)) m(a,b) = m(b,a) m(e(),x) = x");
    for (int round = 0; round < 6; ++round) {
      std::next_permutation(p.equations.begin(), p.equations.end(),
                            [](const Equation& a, const Equation& b) { return a.line < b.line; });
      auto r = check_strong_regularity(p);
      CHECK_FALSE(r.regular);
      CHECK(r.violations.size() == 1);
    }
  }
  CHECK_THROWS_AS(compile_operad(parse_presentation("ops: m/2 eqs: m(a,b) = m(b,a)"), 3, 4),
                  NotStronglyRegular);
}

TEST_CASE("monoids compile to the terminal operad") {
  auto c = compile_operad(parse_presentation(kMonoid), 3, 4);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(c.operad.of_arity(n).size() == 1);
  CHECK(c.report.effective_arity_cap == 3);
  CHECK(c.report.laws.passed());
  // Same tables as the terminal operad up to renaming.
  auto T = terminal_operad(3);
  for (const auto& [key, value] : T.table()) {
    std::vector<OpId> args;
    for (std::size_t i = 1; i < key.size(); ++i)
      args.push_back(c.operad.of_arity(T.arity(key[i]))[0]);
    CHECK(c.operad.arity(c.operad.compose(c.operad.of_arity(T.arity(key[0]))[0], args)) ==
          T.arity(value));
  }
  CHECK(oracle::closure_matches(parse_presentation(kMonoid), 3, 4));
}

TEST_CASE("unary theories") {
  SECTION("u(x) = x collapses onto the identity") {
    auto p = parse_presentation("ops: u/1 eqs: u(x) = x");
    auto c = compile_operad(p, 3, 4);
    CHECK(c.operad.of_arity(1).size() == 1);
    for (std::size_t n : {0, 2, 3}) CHECK(c.operad.of_arity(n).empty());
    CHECK(oracle::closure_matches(p, 3, 4));
  }
  SECTION("g(g(x)) = x gives Z/2") {
    auto p = parse_presentation("ops: g/1 eqs: g(g(x)) = x");
    auto c = compile_operad(p, 3, 5);
    CHECK(c.operad.of_arity(1).size() == 2);
    for (std::size_t n : {0, 2, 3}) CHECK(c.operad.of_arity(n).empty());
    CHECK(check_operad_laws(c.operad).passed());
    CHECK(oracle::closure_matches(p, 3, 5));
  }
}

TEST_CASE("closure agrees with the oracle on mixed theories") {
  CHECK(oracle::closure_matches(parse_presentation("ops: m/2, u/1 eqs: m(u(x),y) = m(x,u(y))"), 3, 4));
  CHECK(oracle::closure_matches(parse_presentation("ops: m/2, e/0 eqs: m(m(x,y),z) = m(x,m(y,z))"), 3, 4));
  CHECK(oracle::closure_matches(parse_presentation("ops: f/3, e/0 eqs: f(e(),x,y) = f(x,e(),y)"), 3, 4));
}

TEST_CASE("closure is sound and idempotent") {
  auto p = parse_presentation(kMonoid);
  std::vector<std::size_t> sig{2, 0};
  std::vector<std::pair<Tree, Tree>> eqs;
  for (const auto& e : p.equations) eqs.emplace_back(term_to_tree(p, e.lhs), term_to_tree(p, e.rhs));
  CongruenceClosure cc(sig, eqs, 3, 5);
  CHECK(cc.run() > 0);
  CHECK(cc.run() == 0);
  const auto& U = cc.universe();
  // Every in-universe instance lands in one class.
  for (const auto& [lhs, rhs] : eqs) {
    std::vector<Tree> subs(lhs.arity());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == subs.size()) {
        auto l = cc.index_of(graft(lhs, subs)), r = cc.index_of(graft(rhs, subs));
        if (l && r) CHECK(cc.find(*l) == cc.find(*r));
        return;
      }
      for (const auto& t : U) {
        if (t.size() > 2) continue;
        subs[i] = t;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
}

TEST_CASE("tight size caps are reported") {
  auto c = compile_operad(parse_presentation(kMonoid), 4, 3);
  CHECK(c.report.cap_limited);
  CHECK(c.report.requested_arity_cap == 4);
  CHECK(c.report.effective_arity_cap <= 4);
  CHECK(check_operad_laws(c.operad).passed());
}
