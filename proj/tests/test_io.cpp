#include <catch_amalgamated.hpp>

#include "opstrict/fixtures.hpp"
#include "opstrict/io.hpp"

using namespace opstrict;

namespace {

const std::string kData = OPSTRICT_TEST_DATA;

// Every generator entry of two weak P-categories over the same tables agrees.
void check_same(const WeakPCategory& V, const WeakPCategory& W) {
  const auto& P = W.operad();
  const auto& A = W.category();
  REQUIRE(V.operad() == P);
  REQUIRE(V.category().object_count() == A.object_count());
  REQUIRE(V.category().morphism_count() == A.morphism_count());
  for (std::size_t p = 0; p < P.size(); ++p) {
    const std::size_t n = P.arity(OpId(p));
    for_each_object_tuple(A, n, [&](std::span<const ObjId> xs) {
      CHECK(V.act(OpId(p), xs) == W.act(OpId(p), xs));
    });
    for_each_morphism_tuple(A, n, [&](std::span<const MorId> fs) {
      CHECK(V.act(OpId(p), fs) == W.act(OpId(p), fs));
    });
    for_each_arg_tuple(P, n, P.arity_cap(), [&](std::span<const OpId> ps) {
      for_each_object_tuple(A, total_arity(P, ps), [&](std::span<const ObjId> xs) {
        CHECK(V.gamma(OpId(p), ps, xs) == W.gamma(OpId(p), ps, xs));
      });
    });
  }
  for (std::size_t a = 0; a < A.object_count(); ++a) CHECK(V.iota(ObjId(a)) == W.iota(ObjId(a)));
}

}  // namespace

TEST_CASE(".wpc round trip") {
  for (const auto& W : {indiscrete_fixture(3), cyclic_twisted_fixture(3, {0, 1, 1, 0}),
                        cyclic_strict_fixture(2), idempotent_fixture(3)}) {
    auto text = print_wpc(*W);
    auto V = parse_wpc(text);
    check_same(*V, *W);
    CHECK(print_wpc(*V) == text);
    auto T = make_weak_p_category(tabulate(*W));
    check_same(*T, *W);
  }
}

TEST_CASE("default entries") {
  auto W = parse_wpc(R"(begin operad
arity_cap 2
elem t0 : 0
elem t1 : 1
elem t2 : 2
identity t1
comp t2 ( t0 t0 ) = t0
comp t2 ( t0 t1 ) = t1
comp t2 ( t1 t0 ) = t1
comp t2 ( t1 t1 ) = t2
comp t2 ( t2 t0 ) = t2
comp t2 ( t0 t2 ) = t2
comp t1 ( t0 ) = t0
comp t1 ( t1 ) = t1
comp t1 ( t2 ) = t2
comp t0 ( ) = t0
end operad
obj x
mor r0 : x -> x
mor r1 : x -> x
id x = r0
comp r1 . r1 = r0
act t0 : obj ( ) = x
act t1 : obj ( x ) = x
act t2 : obj ( x x ) = x
act t1 : mor ( r1 ) = r1
act t2 : mor ( r0 r1 ) = r1
act t2 : mor ( r1 r0 ) = r1
act t2 : mor ( r1 r1 ) = r0
)");
  // Omitted gamma and iota entries between equal objects are identities.
  CHECK(W->iota(ObjId(0)) == MorId(0));
  std::vector<OpId> ps{OpId(1), OpId(1)};
  std::vector<ObjId> xs{ObjId(0), ObjId(0)};
  CHECK(W->gamma(OpId(2), ps, xs) == MorId(0));
  CHECK(validate_weak_p_category(*W, 3).checks.passed());
  CHECK(check_strict_action(*W, true).passed());
}

TEST_CASE("missing entries without a default are undefined") {
  auto W = parse_wpc(R"(begin operad
arity_cap 1
elem t0 : 0
elem t1 : 1
identity t1
comp t1 ( t0 ) = t0
comp t1 ( t1 ) = t1
comp t0 ( ) = t0
end operad
obj x
mor r0 : x -> x
mor r1 : x -> x
id x = r0
comp r1 . r1 = r0
act t0 : obj ( ) = x
act t1 : obj ( x ) = x
)");
  std::vector<MorId> r1{MorId(1)};
  CHECK_THROWS_AS(W->act(OpId(1), std::span<const MorId>(r1)), UndefinedEntry);
  auto r = validate_weak_p_category(*W, 2);
  CHECK_FALSE(r.checks.passed());
}

TEST_CASE("files on disk") {
  auto load = file_operad_loader(kData);
  auto W = parse_wpc(read_file(kData + "/indiscrete3.wpc"), load);
  check_same(*W, *indiscrete_fixture(3));
  auto Z = parse_wpc(read_file(kData + "/cyclic_twisted.wpc"), load);
  check_same(*Z, *cyclic_twisted_fixture(3, {0, 1, 1, 0}));
  auto Zs = parse_wpc(read_file(kData + "/cyclic_strict.wpc"), load);
  auto U = parse_wfun(read_file(kData + "/untwist.wfun"), Z, Zs);
  CHECK(validate_weak_p_functor(U).passed());
  CHECK(parse_wfun(print_wfun(U), Z, Zs).psi(OpId(2), std::vector<ObjId>{ObjId(0), ObjId(0)}) ==
        MorId(1));
  auto C = parse_wpc(read_file(kData + "/cyclic_corrupt.wpc"), load);
  CHECK_FALSE(validate_weak_p_category(*C, 3).checks.passed());
  CHECK_THROWS_AS(read_file(kData + "/missing.wpc"), Error);
}

TEST_CASE("emitted st A re-ingests") {
  auto load = file_operad_loader(kData);
  auto A = parse_wpc(read_file(kData + "/indiscrete2.wpc"), load);
  auto B = parse_wpc(read_file(kData + "/st_indiscrete2.wpc"), load);
  CHECK(check_strict_action(*B).passed());
  CHECK(B->category().object_count() == 15);
  CHECK(validate_weak_p_category(*B, 2).checks.passed());
  (void)A;
}

TEST_CASE("parse errors carry line numbers") {
  auto load = file_operad_loader(kData);
  try {
    parse_wpc(read_file(kData + "/broken.wpc"), load);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_wpc("obj x\n"), ParseError);  // no operad
  CHECK_THROWS_AS(parse_wpc("operad nowhere.operad\nobj x\n", load), Error);
  auto Z = cyclic_strict_fixture(2);
  CHECK_THROWS_AS(parse_wfun("obj x = y\n", Z, Z), ParseError);
  CHECK_THROWS_AS(parse_wfun("psi t2 @ ( x ) = r0\n", Z, Z), ParseError);
}
