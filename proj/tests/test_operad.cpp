#include <catch_amalgamated.hpp>

#include "opstrict/operad.hpp"

using namespace opstrict;

namespace {

// Substitutes args into the x's of a prefix word over {m, x}.
std::string graft_word(const std::string& w, const std::vector<std::string>& args) {
  std::string out;
  std::size_t next = 0;
  for (char c : w) {
    if (c == 'x')
      out += args.at(next++);
    else
      out += c;
  }
  return out;
}

std::size_t catalan(std::size_t n) {
  std::size_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace

TEST_CASE("terminal operad has one element per arity and passes the laws") {
  auto P = terminal_operad(4);
  CHECK(P.size() == 5);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(P.of_arity(n).size() == 1);
  auto r = check_operad_laws(P);
  CHECK(r.passed());
  CHECK(r.instances > 0);
  for_each_arg_tuple(P, 2, 4, [&](std::span<const OpId> args) {
    auto t2 = P.of_arity(2)[0];
    CHECK(P.arity(P.compose(t2, args)) == total_arity(P, args));
  });
}

TEST_CASE("composition errors") {
  auto P = terminal_operad(3);
  auto t2 = P.of_arity(2)[0], t3 = P.of_arity(3)[0];
  std::vector<OpId> one{t2};
  CHECK_THROWS_AS(P.compose(t2, one), ArityMismatch);
  std::vector<OpId> big{t3, t2};
  CHECK_THROWS_AS(P.compose(t2, big), CapExceeded);
}

TEST_CASE("cyclic unary operad composes by addition") {
  for (std::size_t order : {1, 2, 3, 5}) {
    auto P = cyclic_unary_operad(order);
    CHECK(P.size() == order);
    CHECK(check_operad_laws(P).passed());
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) {
        std::vector<OpId> args{OpId(b)};
        CHECK(P.compose(OpId(a), args) == OpId((a + b) % order));
      }
  }
}

TEST_CASE("free binary operad matches word substitution") {
  auto P = free_binary_operad(4);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(P.of_arity(n).size() == catalan(n - 1));
  CHECK(P.of_arity(0).empty());
  CHECK(P.name(P.identity()) == "x");
  CHECK(check_operad_laws(P).passed());
  for (const auto& e : P.elements()) {
    auto p = *P.find(e.name);
    for_each_arg_tuple(P, e.arity, 4, [&](std::span<const OpId> args) {
      std::vector<std::string> words;
      for (auto a : args) words.push_back(P.name(a));
      CHECK(P.name(P.compose(p, args)) == graft_word(e.name, words));
    });
  }
}

TEST_CASE("arg tuples respect the arity budget") {
  auto P = terminal_operad(4);
  std::size_t count = 0;
  for_each_arg_tuple(P, 3, 4, [&](std::span<const OpId> args) {
    CHECK(total_arity(P, args) <= 4);
    ++count;
  });
  // Compositions of at most 4 into 3 non-negative parts: C(7, 3).
  CHECK(count == 35);
}

TEST_CASE("a broken table fails the laws with a named instance") {
  CompTable comp;
  // Z/3 as a unary operad, with g1 o g1 wrongly set to g0.
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) comp[{OpId(a), OpId(b)}] = OpId((a + b) % 3);
  comp[{OpId(1), OpId(1)}] = OpId(0);
  TabulatedOperad P(1, {{"g0", 1}, {"g1", 1}, {"g2", 1}}, OpId(0), comp);
  auto r = check_operad_laws(P);
  REQUIRE_FALSE(r.passed());
  CHECK(r.failures.front().check == "operad.associativity");
}

TEST_CASE(".operad round trip is exact") {
  for (const auto& P : {terminal_operad(4), cyclic_unary_operad(3), free_binary_operad(4)}) {
    auto text = print_operad(P);
    auto Q = parse_operad(text);
    CHECK(Q == P);
    CHECK(print_operad(Q) == text);
  }
}

TEST_CASE(".operad parsing") {
  auto P = parse_operad(R"(# the terminal operad, truncated
arity_cap 2
elem e : 0
elem u : 1
elem m : 2
identity u
comp m ( e e ) = e
comp m ( e u ) = u
comp m ( u e ) = u
comp m ( u u ) = m
comp m ( m e ) = m
comp m ( e m ) = m
)");
  CHECK(P.size() == 3);
  CHECK(check_operad_laws(P).passed());
  // Same tables as the terminal operad, different names.
  CHECK_FALSE(P == terminal_operad(2));

  SECTION("errors carry positions") {
    try {
      parse_operad("arity_cap 1\nelem u : 1\nidentity v\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 10);
    }
    CHECK_THROWS_AS(parse_operad("elem u : 1\n"), ParseError);
    CHECK_THROWS_AS(parse_operad("arity_cap 1\nelem u : 2\nidentity u\n"), ParseError);
    CHECK_THROWS_AS(parse_operad(""), ParseError);
  }
}
