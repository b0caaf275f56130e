#include "opstrict/fixtures.hpp"

#include <array>

namespace opstrict {

namespace {

MorId unique_morphism(const FinCategory& A, ObjId x, ObjId y) {
  auto hom = A.hom(x, y);
  if (hom.size() != 1)
    throw Error("hom(" + A.name(x) + ", " + A.name(y) + ") is not a singleton");
  return hom[0];
}

// Objects map to the single object, morphisms add up mod 2.
std::vector<Functor> cyclic_action(const OperadPtr& P, const CategoryPtr& A) {
  std::vector<Functor> action;
  for (const auto& e : P->elements())
    action.emplace_back(
        A, e.arity, A, [](std::span<const ObjId>) { return ObjId(0); },
        [](std::span<const MorId> fs) {
          std::uint32_t sum = 0;
          for (auto f : fs) sum += f.value;
          return MorId(sum % 2);
        });
  return action;
}

}  // namespace

WeakPtr indiscrete_fixture(std::size_t arity_cap, const std::vector<std::string>& objects) {
  auto P = std::make_shared<const TabulatedOperad>(terminal_operad(arity_cap));
  auto A = std::make_shared<const FinCategory>(indiscrete_category(objects));
  const std::size_t k = objects.size();
  std::vector<Functor> action;
  for (const auto& e : P->elements()) {
    const std::size_t n = e.arity;
    auto on_obj = [n, k](std::span<const ObjId> xs) {
      std::size_t v = n + 1;
      for (std::size_t i = 0; i < xs.size(); ++i) v += (i + 1) * xs[i].value;
      return ObjId(v % k);
    };
    action.emplace_back(A, n, A, on_obj, [A, on_obj](std::span<const MorId> fs) {
      std::vector<ObjId> xs, ys;
      for (auto f : fs) {
        xs.push_back(A->src(f));
        ys.push_back(A->dst(f));
      }
      return unique_morphism(*A, on_obj(xs), on_obj(ys));
    });
  }
  auto objects_of = std::make_shared<std::vector<Functor>>(action);
  return std::make_shared<WeakPCategory>(
      P, A, std::move(action),
      [P, A, objects_of](OpId p, std::span<const OpId> ps, std::span<const ObjId> xs) {
        const auto& h = *objects_of;
        std::vector<ObjId> inner;
        std::size_t at = 0;
        for (auto q : ps) {
          inner.push_back(h[q.value](xs.subspan(at, P->arity(q))));
          at += P->arity(q);
        }
        return unique_morphism(*A, h[p.value](std::span<const ObjId>(inner)),
                               h[P->compose(p, ps).value](xs));
      },
      [P, A, objects_of](ObjId a) {
        return unique_morphism(*A, a, (*objects_of)[P->identity().value](a));
      });
}

WeakPtr cyclic_strict_fixture(std::size_t arity_cap) {
  return cyclic_twisted_fixture(arity_cap, std::vector<int>(arity_cap + 1, 0));
}

WeakPtr cyclic_twisted_fixture(std::size_t arity_cap, const std::vector<int>& cochain) {
  auto P = std::make_shared<const TabulatedOperad>(terminal_operad(arity_cap));
  auto A = std::make_shared<const FinCategory>(cyclic_group_category(2));
  auto c = cochain;
  c.resize(arity_cap + 1, 0);
  return std::make_shared<WeakPCategory>(
      P, A, cyclic_action(P, A),
      [P, c](OpId p, std::span<const OpId> ps, std::span<const ObjId>) {
        int e = c[P->arity(P->compose(p, ps))] + c[P->arity(p)];
        for (auto q : ps) e += c[P->arity(q)];
        return MorId(static_cast<std::size_t>(e % 2));
      },
      [c](ObjId) { return MorId(static_cast<std::size_t>(c[1] % 2)); });
}

WeakPFunctor untwisting_functor(WeakPtr twisted, WeakPtr strict,
                                const std::vector<int>& cochain) {
  auto c = cochain;
  auto P = twisted->operad_ptr();
  Functor G(
      twisted->category_ptr(), 1, strict->category_ptr(),
      [](std::span<const ObjId> xs) { return xs[0]; },
      [](std::span<const MorId> fs) { return fs[0]; });
  return WeakPFunctor{twisted, strict, G, [c, P](OpId p, std::span<const ObjId>) {
                        std::size_t n = P->arity(p);
                        return MorId(static_cast<std::size_t>(n < c.size() ? c[n] % 2 : 0));
                      }};
}

WeakPtr idempotent_fixture(std::size_t arity_cap) {
  auto P = std::make_shared<const TabulatedOperad>(terminal_operad(arity_cap));
  auto A = std::make_shared<const FinCategory>(discrete_category({"1", "z"}));
  std::vector<Functor> action;
  for (const auto& e : P->elements())
    action.emplace_back(
        A, e.arity, A,
        [](std::span<const ObjId> xs) {
          for (auto x : xs)
            if (x.value == 1) return ObjId(1);
          return ObjId(0);
        },
        [A](std::span<const MorId> fs) {
          for (auto f : fs)
            if (A->src(f).value == 1) return A->identity(ObjId(1));
          return A->identity(ObjId(0));
        });
  return std::make_shared<WeakPCategory>(
      P, A, std::move(action),
      [A, P](OpId p, std::span<const OpId> ps, std::span<const ObjId> xs) {
        (void)p;
        (void)ps;
        for (auto x : xs)
          if (x.value == 1) return A->identity(ObjId(1));
        return A->identity(ObjId(0));
      },
      [A](ObjId a) { return A->identity(a); });
}

WeakPtr with_gamma(WeakPtr W, OpId p, std::vector<OpId> ps, std::vector<ObjId> objs,
                   MorId value) {
  std::vector<Functor> action;
  for (std::size_t i = 0; i < W->operad().size(); ++i) action.push_back(W->h(OpId(i)));
  auto base = W;
  return std::make_shared<WeakPCategory>(
      W->operad_ptr(), W->category_ptr(), std::move(action),
      [base, p, ps, objs, value](OpId q, std::span<const OpId> qs, std::span<const ObjId> xs) {
        if (q == p && std::equal(qs.begin(), qs.end(), ps.begin(), ps.end()) &&
            std::equal(xs.begin(), xs.end(), objs.begin(), objs.end()))
          return value;
        return base->gamma(q, qs, xs);
      },
      [base](ObjId a) { return base->iota(a); });
}

WeakPFunctor unique_weak_functor(WeakPtr source, WeakPtr target,
                                 std::function<ObjId(ObjId)> objects) {
  auto B = target->category_ptr();
  auto A = source->category_ptr();
  Functor G(
      A, 1, B, [objects](std::span<const ObjId> xs) { return objects(xs[0]); },
      [A, B, objects](std::span<const MorId> fs) {
        return unique_morphism(*B, objects(A->src(fs[0])), objects(A->dst(fs[0])));
      });
  return WeakPFunctor{source, target, G, [source, target, G](OpId p, std::span<const ObjId> xs) {
                        std::vector<ObjId> gx;
                        for (auto x : xs) gx.push_back(G(x));
                        return unique_morphism(target->category(),
                                               target->act(p, std::span<const ObjId>(gx)),
                                               G(source->act(p, xs)));
                      }};
}

}  // namespace opstrict
