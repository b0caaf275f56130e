#include <catch_amalgamated.hpp>

#include <map>
#include <queue>
#include <random>

#include "opstrict/fixtures.hpp"
#include "opstrict/io.hpp"
#include "oracles.hpp"

using namespace opstrict;
using oracle::pasting_conflict;
using oracle::trees_up_to;

namespace {

bool has_failure(const CheckReport& r, std::string_view check) {
  for (const auto& f : r.failures)
    if (f.check == check) return true;
  return false;
}

// The terminal operad acting on the indiscrete category through random
// object tables; every other entry comes from the default rule.
WeakPtr random_indiscrete(std::size_t cap, std::size_t objects, unsigned seed) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < objects; ++i) names.push_back("o" + std::to_string(i));
  WeakTables t(std::make_shared<const TabulatedOperad>(terminal_operad(cap)),
               std::make_shared<const FinCategory>(indiscrete_category(names)));
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, objects - 1);
  for (std::size_t p = 0; p < t.P->size(); ++p)
    for_each_object_tuple(*t.A, t.P->arity(OpId(p)), [&](std::span<const ObjId> xs) {
      t.act_obj[p][std::vector<ObjId>(xs.begin(), xs.end())] = ObjId(pick(rng));
    });
  return make_weak_p_category(std::move(t));
}

// Z/2 acting on three objects through a transposition; strict.
WeakPtr swap_action() {
  WeakTables t(std::make_shared<const TabulatedOperad>(cyclic_unary_operad(2)),
               std::make_shared<const FinCategory>(indiscrete_category({"x", "y", "z"})));
  for (std::size_t x = 0; x < 3; ++x) {
    t.act_obj[0][{ObjId(x)}] = ObjId(x);
    t.act_obj[1][{ObjId(x)}] = ObjId(x == 2 ? 2 : 1 - x);
  }
  return make_weak_p_category(std::move(t));
}

}  // namespace

TEST_CASE("fixtures are weak P-categories") {
  for (const auto& W : {indiscrete_fixture(3), indiscrete_fixture(3, {"u", "v"}),
                        cyclic_strict_fixture(3), cyclic_twisted_fixture(3, {0, 1, 1, 0}),
                        cyclic_twisted_fixture(4, {1, 0, 1, 1, 0}), idempotent_fixture(3),
                        swap_action()}) {
    auto r = validate_weak_p_category(*W, 3);
    CHECK(r.checks.passed());
    CHECK(r.suspects.empty());
    CHECK(r.trees > 0);
  }
}

TEST_CASE("indiscrete categories with arbitrary tables are coherent") {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto W = random_indiscrete(3, 3, seed);
    CHECK(validate_weak_p_category(*W, 3).checks.passed());
  }
}

TEST_CASE("strictness") {
  CHECK(check_strict_action(*cyclic_strict_fixture(3), true).passed());
  CHECK(check_strict_action(*idempotent_fixture(3), true).passed());
  CHECK(check_strict_action(*swap_action(), true).passed());
  auto tw = check_strict_action(*cyclic_twisted_fixture(3, {0, 1, 0, 0}));
  CHECK(has_failure(tw, "check_strict.iota_identity"));
  CHECK_FALSE(check_strict_action(*indiscrete_fixture(3)).passed());
}

TEST_CASE("delta of a strict category is the identity on every tree") {
  for (const auto& W : {cyclic_strict_fixture(3), idempotent_fixture(3), swap_action()}) {
    const auto& A = W->category();
    for (const auto& s : trees_up_to(W->operad(), 3)) {
      auto d = delta(*W, s);
      for_each_object_tuple(A, s.arity(), [&](std::span<const ObjId> xs) {
        CHECK(A.is_identity(d(xs)));
      });
    }
  }
}

TEST_CASE("delta on the twisted fixture is the sum of its cells") {
  // With gamma and iota the coboundary of c, the recursion gives
  // delta_s = c(eps s) + sum of c over the labels of s, mod 2.
  std::vector<int> c{0, 1, 1, 0};
  auto W = cyclic_twisted_fixture(3, c);
  const auto& P = W->operad();
  for (const auto& s : trees_up_to(P, 3)) {
    int expected = c[P.arity(eval_tree(P, s))];
    auto labels = [&](auto&& self, const Tree& t) -> void {
      if (t.is_leaf()) return;
      expected += c[P.arity(t.label())];
      for (const auto& k : t.children()) self(self, k);
    };
    labels(labels, s);
    std::vector<ObjId> xs(s.arity(), ObjId(0));
    CHECK(delta_at(*W, s, xs).value == static_cast<std::size_t>(expected % 2));
  }
}

TEST_CASE("delta2 forms a groupoid on each two-cell class") {
  for (const auto& W : {indiscrete_fixture(3), cyclic_twisted_fixture(3, {1, 1, 0, 1})}) {
    const auto& P = W->operad();
    const auto& A = W->category();
    for (std::size_t n = 0; n <= 2; ++n) {
      auto trees = enumerate_trees(P, n, 2);
      for (const auto& s : trees) {
        CHECK_FALSE(first_difference(delta2(*W, s, s),
                                     NatTransformation::identity(eval_functor(*W, s))));
        for (const auto& t : trees) {
          auto st = delta2(*W, s, t), ts = delta2(*W, t, s);
          CHECK_FALSE(first_difference(vcomp(ts, st),
                                       NatTransformation::identity(eval_functor(*W, s))));
          for (const auto& u : trees)
            CHECK_FALSE(first_difference(vcomp(delta2(*W, t, u), st), delta2(*W, s, u)));
        }
      }
      (void)A;
    }
  }
}

TEST_CASE("delta2 needs equal values") {
  auto W = swap_action();
  const auto& P = W->operad();
  CHECK_THROWS_AS(delta2(*W, corolla(P, OpId(0)), corolla(P, OpId(1))), NoTwoCell);
  auto s = make_node(P, OpId(1), {corolla(P, OpId(1))});
  auto d = delta2(*W, s, corolla(P, OpId(0)));
  CHECK(W->category().is_identity(d(ObjId(0))));
}

TEST_CASE("a corrupted gamma component is found and localized") {
  auto Z = cyclic_twisted_fixture(3, {0, 1, 1, 0});
  OpId t1(1), t2(2);
  std::vector<OpId> ps{t1, t1};
  std::vector<ObjId> objs{ObjId(0), ObjId(0)};
  auto bad = with_gamma(Z, t2, ps, objs, MorId(1 - Z->gamma(t2, ps, objs).value));

  // The oracle sees no conflict on the original and a conflict on the copy.
  CHECK_FALSE(pasting_conflict(*Z, 3).has_value());
  auto conflict = pasting_conflict(*bad, 3);
  REQUIRE(conflict.has_value());
  INFO(*conflict);

  auto r = validate_weak_p_category(*bad, 3);
  CHECK_FALSE(r.checks.passed());
  CHECK(has_failure(r.checks, "validate_weak_p_category.path_independence"));
  CHECK(has_failure(r.checks, "validate_weak_p_category.associativity"));
  CHECK(r.suspects == std::vector<std::string>{"gamma t2 (t1 t1) @ (x x)"});
}

TEST_CASE("an ill-typed gamma component is reported, not thrown") {
  auto A = indiscrete_fixture(3);
  OpId t1(1), t2(2);
  std::vector<OpId> ps{t1, t1};
  std::vector<ObjId> objs{ObjId(0), ObjId(1)};
  const auto& C = A->category();
  auto real = A->gamma(t2, ps, objs);
  auto wrong = C.hom(C.src(real), ObjId((C.dst(real).value + 1) % 3)).front();
  auto r = validate_weak_p_category(*with_gamma(A, t2, ps, objs, wrong), 3);
  CHECK(has_failure(r.checks, "validate_weak_p_category.gamma.component_endpoints"));
  CHECK(has_failure(r.checks, "validate_weak_p_category.path_independence"));
  CHECK(r.suspects == std::vector<std::string>{"gamma t2 (t1 t1) @ (x y)"});
}

TEST_CASE("weak functors") {
  std::vector<int> c{0, 1, 1, 0}, d{1, 0, 1, 1};
  auto Zc = cyclic_twisted_fixture(3, c), Zd = cyclic_twisted_fixture(3, d);
  auto Zs = cyclic_strict_fixture(3);
  auto sum = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back((a[i] + b[i]) % 2);
    return out;
  };

  SECTION("identity") {
    for (const auto& W : {Zc, indiscrete_fixture(3), idempotent_fixture(3)})
      CHECK(validate_weak_p_functor(identity_weak_p_functor(W)).passed());
  }
  SECTION("composites validate and paste their cells") {
    auto F = untwisting_functor(Zc, Zd, sum(c, d));
    auto G = untwisting_functor(Zd, Zs, d);
    CHECK(validate_weak_p_functor(F).passed());
    CHECK(validate_weak_p_functor(G).passed());
    auto GF = compose_weak_p_functors(G, F);
    CHECK(validate_weak_p_functor(GF).passed());
    for (std::size_t p = 0; p < Zc->operad().size(); ++p) {
      std::size_t n = Zc->operad().arity(OpId(p));
      std::vector<ObjId> xs(n, ObjId(0));
      CHECK(GF.psi(OpId(p), xs) == MorId(static_cast<std::size_t>(c[n])));
    }
  }
  SECTION("composition is associative") {
    auto F = untwisting_functor(Zc, Zd, sum(c, d));
    auto G = untwisting_functor(Zd, Zs, d);
    auto H = identity_weak_p_functor(Zs);
    auto left = compose_weak_p_functors(compose_weak_p_functors(H, G), F);
    auto right = compose_weak_p_functors(H, compose_weak_p_functors(G, F));
    for (std::size_t p = 0; p < Zc->operad().size(); ++p) {
      std::vector<ObjId> xs(Zc->operad().arity(OpId(p)), ObjId(0));
      CHECK(left.psi(OpId(p), xs) == right.psi(OpId(p), xs));
    }
    for (std::size_t f = 0; f < 2; ++f) CHECK(left.G(MorId(f)) == right.G(MorId(f)));
    auto I = identity_weak_p_functor(Zc);
    auto FI = compose_weak_p_functors(F, I);
    for (std::size_t p = 0; p < Zc->operad().size(); ++p) {
      std::vector<ObjId> xs(Zc->operad().arity(OpId(p)), ObjId(0));
      CHECK(FI.psi(OpId(p), xs) == F.psi(OpId(p), xs));
    }
  }
  SECTION("strict composites are strict") {
    auto S = compose_weak_p_functors(identity_weak_p_functor(Zs), identity_weak_p_functor(Zs));
    for (std::size_t p = 0; p < Zs->operad().size(); ++p) {
      std::vector<ObjId> xs(Zs->operad().arity(OpId(p)), ObjId(0));
      CHECK(Zs->category().is_identity(S.psi(OpId(p), xs)));
    }
  }
  SECTION("a corrupted psi component is named") {
    auto F = untwisting_functor(Zc, Zs, c);
    auto bad = F;
    bad.psi = [F](OpId p, std::span<const ObjId> xs) {
      auto m = F.psi(p, xs);
      return p == OpId(2) ? MorId(1 - m.value) : m;
    };
    auto r = validate_weak_p_functor(bad);
    CHECK(has_failure(r, "validate_weak_p_functor.diagram_1"));
    auto bad_unit = F;
    bad_unit.psi = [F](OpId p, std::span<const ObjId> xs) {
      auto m = F.psi(p, xs);
      return p == OpId(1) ? MorId(1 - m.value) : m;
    };
    CHECK(has_failure(validate_weak_p_functor(bad_unit), "validate_weak_p_functor.diagram_2"));
  }
  SECTION("composing functors that do not meet is an error") {
    auto F = untwisting_functor(Zc, Zs, c);
    CHECK_THROWS_AS(compose_weak_p_functors(F, F), ShapeMismatch);
  }
}

TEST_CASE("P-transformations") {
  auto A = indiscrete_fixture(3);
  const auto& C = A->category();
  auto id = identity_weak_p_functor(A);

  SECTION("identity") {
    PTransformation s{id, id, NatTransformation::identity(id.G)};
    CHECK(validate_p_transformation(s).passed());
    auto inv = invert_p_transformation(s);
    CHECK(validate_p_transformation(inv).passed());
    CHECK_FALSE(first_difference(inv.sigma, s.sigma));
  }
  SECTION("random isomorphisms on the indiscrete fixture invert") {
    std::mt19937 rng(7);
    for (int round = 0; round < 5; ++round) {
      std::vector<ObjId> image;
      for (int i = 0; i < 3; ++i) image.push_back(ObjId(rng() % 3));
      auto G = unique_weak_functor(A, A, [image](ObjId a) { return image[a.value]; });
      REQUIRE(validate_weak_p_functor(G).passed());
      PTransformation s{id, G, NatTransformation(id.G, G.G, [&C, image](std::span<const ObjId> xs) {
                          return C.hom(xs[0], image[xs[0].value])[0];
                        })};
      CHECK(validate_p_transformation(s).passed());
      auto inv = invert_p_transformation(s);
      CHECK(validate_p_transformation(inv).passed());
      auto back = invert_p_transformation(inv);
      CHECK_FALSE(first_difference(back.sigma, s.sigma));
    }
  }
  SECTION("whiskering keeps the equation") {
    auto G = unique_weak_functor(A, A, [](ObjId a) { return ObjId((a.value + 1) % 3); });
    auto K = unique_weak_functor(A, A, [](ObjId) { return ObjId(0); });
    PTransformation s{id, G, NatTransformation(id.G, G.G, [&C](std::span<const ObjId> xs) {
                        return C.hom(xs[0], ObjId((xs[0].value + 1) % 3))[0];
                      })};
    auto Kid = compose_weak_p_functors(K, id), KG = compose_weak_p_functors(K, G);
    PTransformation w{Kid, KG, whisker(K.G, s.sigma, Functor::identity(A->category_ptr()))};
    CHECK(validate_p_transformation(w).passed());
    for (std::size_t x = 0; x < 3; ++x) CHECK(w.sigma(ObjId(x)) == K.G(s.sigma(ObjId(x))));
  }
  SECTION("a bad component is named") {
    auto Z = cyclic_twisted_fixture(3, {0, 1, 1, 0});
    auto I = identity_weak_p_functor(Z);
    PTransformation s{I, I, NatTransformation(I.G, I.G, [](std::span<const ObjId>) {
                        return MorId(1);
                      })};
    auto r = validate_p_transformation(s);
    CHECK(has_failure(r, "validate_p_transformation.equation"));
    CHECK_FALSE(has_failure(r, "validate_p_transformation.naturality"));
  }
  SECTION("non-invertible components") {
    WeakTables t(std::make_shared<const TabulatedOperad>(terminal_operad(1)),
                 std::make_shared<const FinCategory>(chain_category(2)));
    t.act_obj[0][{}] = ObjId(0);
    for (std::size_t x = 0; x < 2; ++x) t.act_obj[1][{ObjId(x)}] = ObjId(x);
    auto W = make_weak_p_category(std::move(t));
    REQUIRE(validate_weak_p_category(*W, 2).checks.passed());
    auto I = identity_weak_p_functor(W);
    auto K = unique_weak_functor(W, W, [](ObjId) { return ObjId(1); });
    PTransformation s{I, K, NatTransformation(I.G, K.G, [W](std::span<const ObjId> xs) {
                        return W->category().hom(xs[0], ObjId(1))[0];
                      })};
    CHECK_THROWS_AS(invert_p_transformation(s), NotInvertible);
  }
}

TEST_CASE("transport along the identity equivalence") {
  for (const auto& W : {indiscrete_fixture(3), cyclic_twisted_fixture(3, {1, 0, 0, 1})}) {
    auto I = identity_weak_p_functor(W);
    AdjointEquivalence E{I.G, I.G, NatTransformation::identity(I.G),
                         NatTransformation::identity(I.G)};
    CHECK(check_adjoint_equivalence(E).passed());
    auto T = transport_along_equivalence(I, E);
    CHECK(T.report.passed());
    const auto& A = W->category();
    for (std::size_t p = 0; p < W->operad().size(); ++p)
      for_each_object_tuple(A, W->operad().arity(OpId(p)), [&](std::span<const ObjId> xs) {
        CHECK(A.is_identity(T.G.psi(OpId(p), xs)));
      });
  }
}
