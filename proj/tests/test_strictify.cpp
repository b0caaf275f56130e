#include <catch_amalgamated.hpp>

#include "opstrict/fixtures.hpp"
#include "opstrict/strictify.hpp"

using namespace opstrict;

namespace {

bool has_failure(const CheckReport& r, std::string_view check) {
  for (const auto& f : r.failures)
    if (f.check == check) return true;
  return false;
}

bool has_failure_under(const CheckReport& r, std::string_view prefix) {
  for (const auto& f : r.failures)
    if (f.check.starts_with(prefix)) return true;
  return false;
}

std::vector<WeakPtr> all_fixtures() {
  return {indiscrete_fixture(3), cyclic_strict_fixture(3), cyclic_twisted_fixture(3, {0, 1, 1, 0}),
          idempotent_fixture(3)};
}

// Brute force over every object map st A -> B: strict on objects and
// sending (1, a) to G a. Only meaningful when B's hom-sets are singletons,
// so that the morphism part is forced.
std::size_t count_object_factorizations(const StrictifiedCategory& S, const WeakPCategory& B,
                                        const WeakPFunctor& G) {
  const auto& C = S.category();
  const auto& strict = *S.strict();
  const auto& P = strict.operad();
  const std::size_t n = C.object_count(), m = B.category().object_count();
  std::vector<std::size_t> H(n, 0);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      const auto& pr = S.pair(ObjId(x));
      if (pr.p == P.identity()) ok = H[x] == G.G(pr.objs[0]).value;
    }
    for (std::size_t p = 0; p < P.size() && ok; ++p)
      for_each_object_tuple(C, P.arity(OpId(p)), [&](std::span<const ObjId> xs) {
        if (!ok) return;
        std::vector<ObjId> hx;
        for (auto x : xs) hx.push_back(ObjId(H[x.value]));
        ok = H[strict.act(OpId(p), xs).value] == B.act(OpId(p), std::span<const ObjId>(hx)).value;
      });
    if (ok) ++count;
    std::size_t i = 0;
    while (i < n && ++H[i] == m) H[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("st A has the expected size") {
  auto S = strictify(indiscrete_fixture(3));
  // Pairs (t_n, a) with n <= 3 over three objects: 1 + 3 + 9 + 27.
  CHECK(S->category().object_count() == 40);
  CHECK(S->category().morphism_count() == 1600);
  CHECK(check_category(S->category()).passed());
  auto x = S->object(OpId(2), std::vector<ObjId>{ObjId(0), ObjId(1)});
  CHECK(S->category().name(x) == "t2{x,y}");
  CHECK(S->pair(x).p == OpId(2));
  CHECK_THROWS(S->object(OpId(2), std::vector<ObjId>{ObjId(0)}));
}

TEST_CASE("hom-sets of st A biject with hom-sets of A") {
  for (const auto& W : all_fixtures()) {
    auto S = strictify(W);
    const auto& C = S->category();
    const auto& A = W->category();
    for (std::size_t x = 0; x < C.object_count(); ++x)
      for (std::size_t y = 0; y < C.object_count(); ++y) {
        auto hom = C.hom(ObjId(x), ObjId(y));
        auto base = A.hom(S->underlying(ObjId(x)), S->underlying(ObjId(y)));
        REQUIRE(hom.size() == base.size());
        std::vector<MorId> images;
        for (auto f : hom) images.push_back(S->under(f));
        std::sort(images.begin(), images.end());
        CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
        for (auto g : base) CHECK(S->under(S->lift(ObjId(x), ObjId(y), g)) == g);
      }
  }
}

TEST_CASE("st A is strict") {
  for (const auto& W : all_fixtures()) {
    auto r = check_strict(*strictify(W));
    CHECK(r.passed());
    CHECK(r.instances > 0);
  }
  // With the full functoriality sweep on the small ones.
  CHECK(check_strict(*strictify(cyclic_twisted_fixture(3, {0, 1, 1, 0})), true).passed());
  CHECK(check_strict(*strictify(idempotent_fixture(3)), true).passed());
}

TEST_CASE("the morphism action reduces to h when W is strict") {
  auto W = cyclic_strict_fixture(3);
  auto S = strictify(W);
  const auto& strict = *S->strict();
  for (std::size_t p = 0; p < strict.operad().size(); ++p)
    for_each_morphism_tuple(S->category(), strict.operad().arity(OpId(p)),
                            [&](std::span<const MorId> fs) {
                              std::vector<MorId> under;
                              for (auto f : fs) under.push_back(S->under(f));
                              CHECK(S->under(strict.act(OpId(p), fs)) ==
                                    W->act(OpId(p), std::span<const MorId>(under)));
                            });
}

TEST_CASE("identities are preserved by the action") {
  auto S = strictify(cyclic_twisted_fixture(3, {1, 1, 0, 1}));
  const auto& C = S->category();
  const auto& strict = *S->strict();
  for (std::size_t p = 0; p < strict.operad().size(); ++p)
    for_each_object_tuple(C, strict.operad().arity(OpId(p)), [&](std::span<const ObjId> xs) {
      std::vector<MorId> ids;
      for (auto x : xs) ids.push_back(C.identity(x));
      CHECK(C.is_identity(strict.act(OpId(p), std::span<const MorId>(ids))));
    });
}

TEST_CASE("a corrupted action table is caught") {
  auto S = strictify(cyclic_twisted_fixture(3, {0, 1, 1, 0}));
  auto good = S->strict();
  const auto& C = S->category();
  std::vector<Functor> action;
  for (std::size_t p = 0; p < good->operad().size(); ++p) action.push_back(good->h(OpId(p)));
  auto base = action[2];
  auto target = S->object(OpId(1), std::vector<ObjId>{ObjId(0)});
  auto victim = C.hom(target, target)[1];
  auto cat = S->category_ptr();
  action[2] = Functor(
      cat, 2, cat, [base](std::span<const ObjId> xs) { return base(xs); },
      [base, cat, victim](std::span<const MorId> fs) {
        auto m = base(fs);
        if (fs[0] == victim && cat->is_identity(fs[1])) {
          auto hom = cat->hom(cat->src(m), cat->dst(m));
          return hom[0] == m ? hom[1] : hom[0];
        }
        return m;
      });
  WeakPCategory bad(good->operad_ptr(), cat, std::move(action),
                    [good](OpId p, std::span<const OpId> ps, std::span<const ObjId> xs) {
                      return good->gamma(p, ps, xs);
                    },
                    [good](ObjId x) { return good->iota(x); });
  auto r = check_strict_action(bad, true);
  REQUIRE_FALSE(r.passed());
  bool named = has_failure(r, "check_strict.strict_morphisms") ||
               has_failure(r, "check_strict.functor") ||
               has_failure(r, "check_strict.unit_morphisms");
  CHECK(named);
}

TEST_CASE("build_F is a weak functor and an equivalence") {
  for (const auto& W : all_fixtures()) {
    auto S = strictify(W);
    auto F = build_F(S);
    CHECK(validate_weak_p_functor(F).passed());
    for (std::size_t a = 0; a < W->category().object_count(); ++a) {
      auto x = S->object(W->operad().identity(), std::vector<ObjId>{ObjId(a)});
      CHECK(F.G(x) == W->act(W->operad().identity(), std::vector<ObjId>{ObjId(a)}));
    }
    auto eq = check_equivalence(S, F);
    CHECK(eq.report.passed());
    REQUIRE(eq.equivalence.has_value());
    REQUIRE(eq.transport.has_value());
    CHECK(eq.transport->report.passed());
    // The pseudo-inverse is the unit a |-> (1, a).
    auto unit = build_unit(S);
    for (std::size_t a = 0; a < W->category().object_count(); ++a)
      CHECK(eq.equivalence->G(ObjId(a)) == unit.G(ObjId(a)));
  }
}

TEST_CASE("a one-morphism category gives singleton hom-sets") {
  auto W = cyclic_strict_fixture(3);
  auto A = std::make_shared<const FinCategory>(discrete_category({"*"}));
  std::vector<Functor> action;
  for (const auto& e : W->operad().elements())
    action.emplace_back(
        A, e.arity, A, [](std::span<const ObjId>) { return ObjId(0); },
        [](std::span<const MorId>) { return MorId(0); });
  WeakPtr point = std::make_shared<WeakPCategory>(
      W->operad_ptr(), A, std::move(action),
      [](OpId, std::span<const OpId>, std::span<const ObjId>) { return MorId(0); },
      [](ObjId) { return MorId(0); });
  auto S = strictify(point);
  const auto& C = S->category();
  for (std::size_t x = 0; x < C.object_count(); ++x)
    for (std::size_t y = 0; y < C.object_count(); ++y) CHECK(C.hom(ObjId(x), ObjId(y)).size() == 1);
  CHECK(check_equivalence(S, build_F(S)).report.passed());
}

TEST_CASE("the unit") {
  for (const auto& W : all_fixtures()) {
    auto S = strictify(W);
    auto U = build_unit(S);
    CHECK(validate_weak_p_functor(U).passed());
    auto F = build_F(S);
    const auto& A = W->category();
    const auto& P = W->operad();
    for (std::size_t a = 0; a < A.object_count(); ++a) {
      // F F'(a) = h_1(a), iso to a through iota.
      auto x = F.G(U.G(ObjId(a)));
      CHECK(x == W->act(P.identity(), std::vector<ObjId>{ObjId(a)}));
      CHECK(A.src(W->iota(ObjId(a))) == ObjId(a));
      CHECK(A.dst(W->iota(ObjId(a))) == x);
    }
    // h'(p, F'(a).) = (p, a) on the nose.
    for (std::size_t p = 0; p < P.size(); ++p)
      for_each_object_tuple(A, P.arity(OpId(p)), [&](std::span<const ObjId> xs) {
        std::vector<ObjId> units;
        for (auto x : xs) units.push_back(U.G(x));
        CHECK(S->strict()->act(OpId(p), std::span<const ObjId>(units)) == S->object(OpId(p), xs));
      });
  }
}

TEST_CASE("strict input gives identity cells everywhere") {
  for (const auto& W : {cyclic_strict_fixture(3), idempotent_fixture(3)}) {
    const auto& A = W->category();
    const auto& P = W->operad();
    auto S = strictify(W);
    auto F = build_F(S);
    auto U = build_unit(S);
    auto eq = check_equivalence(S, F);
    REQUIRE(eq.transport.has_value());
    for (std::size_t p = 0; p < P.size(); ++p) {
      const std::size_t n = P.arity(OpId(p));
      for_each_object_tuple(S->category(), n, [&](std::span<const ObjId> xs) {
        CHECK(A.is_identity(F.psi(OpId(p), xs)));
      });
      for_each_object_tuple(A, n, [&](std::span<const ObjId> xs) {
        CHECK(A.is_identity(S->under(U.psi(OpId(p), xs))));
        CHECK(A.is_identity(S->under(eq.transport->G.psi(OpId(p), xs))));
      });
    }
  }
}

TEST_CASE("factorization through st A") {
  SECTION("the unit factors through the identity") {
    auto S = strictify(indiscrete_fixture(3));
    auto r = factorize(S, S->strict(), build_unit(S));
    CHECK(r.report.passed());
    const auto& C = S->category();
    for (std::size_t x = 0; x < C.object_count(); ++x) CHECK(r.H(ObjId(x)) == ObjId(x));
    for (std::size_t f = 0; f < C.morphism_count(); ++f) CHECK(r.H(MorId(f)) == MorId(f));
    CHECK(r.uniqueness_checked);
    CHECK(r.solutions == 1);
  }
  SECTION("strict into strict") {
    auto W = cyclic_strict_fixture(3);
    auto S = strictify(W);
    auto G = identity_weak_p_functor(W);
    auto r = factorize(S, W, G);
    CHECK(r.report.passed());
    for (std::size_t x = 0; x < S->category().object_count(); ++x) {
      const auto& pr = S->pair(ObjId(x));
      std::vector<ObjId> gx;
      for (auto a : pr.objs) gx.push_back(G.G(a));
      CHECK(r.H(ObjId(x)) == W->act(pr.p, std::span<const ObjId>(gx)));
    }
    CHECK(r.solutions == 1);
  }
  SECTION("twisted into strict") {
    std::vector<int> c{0, 1, 1, 0};
    auto Z = cyclic_twisted_fixture(3, c);
    auto r = factorize(strictify(Z), cyclic_strict_fixture(3),
                       untwisting_functor(Z, cyclic_strict_fixture(3), c));
    CHECK(r.report.passed());
    CHECK(r.solutions == 1);
  }
  SECTION("uniqueness agrees with brute force") {
    auto A = indiscrete_fixture(2, {"x", "y"});
    auto A2 = indiscrete_fixture(2, {"u", "v"});
    auto S = strictify(A);
    auto S2 = strictify(A2);
    for (std::size_t shift : {0, 1}) {
      auto G = unique_weak_functor(A, S2->strict(), [&, shift](ObjId a) {
        return S2->object(OpId(1), std::vector<ObjId>{ObjId((a.value + shift) % 2)});
      });
      REQUIRE(validate_weak_p_functor(G).passed());
      auto r = factorize(S, S2->strict(), G);
      CHECK(r.report.passed());
      CHECK(r.uniqueness_checked);
      CHECK(r.solutions == 1);
      CHECK(count_object_factorizations(*S, *S2->strict(), G) == 1);
    }
  }
  SECTION("the search bound is honoured") {
    auto S = strictify(indiscrete_fixture(3));
    auto r = factorize(S, S->strict(), build_unit(S), 10);
    CHECK(r.report.passed());
    CHECK(r.bound_exceeded);
    CHECK_FALSE(r.uniqueness_checked);
    CHECK_THROWS_AS(enumerate_factorizations(S, S->strict(), build_unit(S), 10),
                    SearchBoundExceeded);
  }
  SECTION("a weak target is rejected") {
    auto W = indiscrete_fixture(3);
    auto S = strictify(W);
    auto r = factorize(S, W, identity_weak_p_functor(W));
    CHECK(has_failure_under(r.report, "factorize.target_strict."));
  }
}

TEST_CASE("the counit of the idempotent fixture has no strict pseudo-inverse") {
  auto B = idempotent_fixture(3);
  auto S = strictify(B);
  auto cs = counit_search(S);
  // Brute force over all object maps K : B -> st B.
  const auto& C = S->category();
  const auto& strict = *S->strict();
  std::size_t strict_maps = 0, with_iso = 0;
  for (std::size_t k0 = 0; k0 < C.object_count(); ++k0)
    for (std::size_t k1 = 0; k1 < C.object_count(); ++k1) {
      std::vector<ObjId> K{ObjId(k0), ObjId(k1)};
      bool ok = true;
      for (std::size_t p = 0; p < B->operad().size() && ok; ++p)
        for_each_object_tuple(B->category(), B->operad().arity(OpId(p)),
                              [&](std::span<const ObjId> bs) {
                                std::vector<ObjId> kb;
                                for (auto b : bs) kb.push_back(K[b.value]);
                                if (!ok) return;
                                // Out of cap, h'_p(K b) is heavier than any
                                // object K can hit.
                                try {
                                  ok = K[B->act(OpId(p), bs).value] ==
                                       strict.act(OpId(p), std::span<const ObjId>(kb));
                                } catch (const CapExceeded&) {
                                  ok = false;
                                }
                              });
      if (!ok) continue;
      ++strict_maps;
      if (S->underlying(K[0]) == ObjId(0) && S->underlying(K[1]) == ObjId(1)) ++with_iso;
    }
  CHECK(cs.strict_object_maps == strict_maps);
  CHECK(cs.with_iso == with_iso);
  CHECK(strict_maps == 1);
  CHECK(with_iso == 0);
}

TEST_CASE("strictify rejects a partial action") {
  auto S = strictify(cyclic_strict_fixture(3));
  CHECK_THROWS_AS(strictify(S->strict()), Error);
}
