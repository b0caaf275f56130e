#include "opstrict/strictify.hpp"

#include <algorithm>
#include <functional>

namespace opstrict {

struct StrictifiedCategory::Data {
  WeakPtr source;
  std::vector<StPair> pairs;
  std::vector<ObjId> underlying;
  std::vector<MorId> under;
  std::vector<std::size_t> hom_base;  // x * n + y -> first morphism id
  std::vector<std::size_t> hom_pos;   // A-morphism -> index in its hom-set
  std::vector<TupleMap<ObjTag, ObjId>> index;  // per p
  CategoryPtr category;
  std::vector<TupleMap<MorTag, MorId>> act_mor;  // per p

  ObjId object(OpId p, std::span<const ObjId> objs) const {
    const auto& P = source->operad();
    if (P.arity(p) != objs.size())
      throw ArityMismatch("pair needs " + std::to_string(P.arity(p)) + " objects");
    auto it = index.at(p.value).find(objs);
    if (it == index[p.value].end()) throw UndefinedEntry("no such pair in st A");
    return it->second;
  }

  MorId lift(ObjId x, ObjId y, MorId f) const {
    const auto& A = source->category();
    if (A.src(f) != underlying.at(x.value) || A.dst(f) != underlying.at(y.value))
      throw ShapeMismatch("cannot lift " + A.name(f) + ": endpoints differ");
    return MorId(hom_base[x.value * pairs.size() + y.value] + hom_pos[f.value]);
  }

  ObjId act_obj(OpId s, std::span<const ObjId> xs) const {
    const auto& P = source->operad();
    std::vector<OpId> ps;
    std::vector<ObjId> objs;
    for (auto x : xs) {
      ps.push_back(pairs.at(x.value).p);
      objs.insert(objs.end(), pairs[x.value].objs.begin(), pairs[x.value].objs.end());
    }
    return object(P.compose(s, ps), objs);
  }

  MorId act_on_morphisms(OpId s, std::span<const MorId> fs) const {
    const auto& table = act_mor.at(s.value);
    auto it = table.find(fs);
    if (it == table.end())
      throw CapExceeded("morphism tuple outside the truncation of st A");
    return it->second;
  }
};

namespace {

std::string pair_name(const TabulatedOperad& P, const FinCategory& A, OpId p,
                      std::span<const ObjId> a) {
  std::string s = P.name(p) + "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + A.name(a[i]);
  return s + "}";
}

Tree grafted_corollas(const TabulatedOperad& P, OpId s, std::span<const OpId> ps) {
  std::vector<Tree> children;
  for (auto p : ps) children.push_back(corolla(P, p));
  return Tree::node(s, std::move(children));
}

}  // namespace

StrictifiedCategory::StrictifiedCategory(WeakPtr source) {
  auto d = std::make_shared<Data>();
  d->source = source;
  const auto& W = *source;
  const auto& P = W.operad();
  const auto& A = W.category();
  const std::size_t N = P.arity_cap();

  std::vector<std::string> names;
  std::vector<std::size_t> weights;
  d->index.resize(P.size());
  for (std::size_t n = 0; n <= N; ++n)
    for (OpId p : P.of_arity(n))
      for_each_object_tuple(A, n, [&](std::span<const ObjId> a) {
        ObjId x(d->pairs.size());
        d->pairs.push_back({p, std::vector<ObjId>(a.begin(), a.end())});
        d->underlying.push_back(W.act(p, a));
        d->index[p.value].emplace(std::vector<ObjId>(a.begin(), a.end()), x);
        names.push_back(pair_name(P, A, p, a));
        weights.push_back(n);
      });

  d->hom_pos.resize(A.morphism_count());
  for (std::size_t i = 0; i < A.object_count(); ++i)
    for (std::size_t j = 0; j < A.object_count(); ++j) {
      auto hom = A.hom(ObjId(i), ObjId(j));
      for (std::size_t k = 0; k < hom.size(); ++k) d->hom_pos[hom[k].value] = k;
    }

  const std::size_t n = d->pairs.size();
  std::vector<Morphism> morphisms;
  d->hom_base.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      d->hom_base[x * n + y] = morphisms.size();
      for (MorId f : A.hom(d->underlying[x], d->underlying[y])) {
        morphisms.push_back({names[x] + "~" + names[y] + "~" + A.name(f), ObjId(x), ObjId(y)});
        d->under.push_back(f);
      }
    }
  std::vector<MorId> identities;
  for (std::size_t x = 0; x < n; ++x)
    identities.push_back(d->lift(ObjId(x), ObjId(x), A.identity(d->underlying[x])));
  std::vector<FinCategory::Composite> composites;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t fb = d->hom_base[x * n + y];
      std::size_t fc = A.hom(d->underlying[x], d->underlying[y]).size();
      for (std::size_t z = 0; z < n; ++z) {
        std::size_t gb = d->hom_base[y * n + z];
        std::size_t gc = A.hom(d->underlying[y], d->underlying[z]).size();
        for (std::size_t f = fb; f < fb + fc; ++f)
          for (std::size_t g = gb; g < gb + gc; ++g) {
            MorId u = A.compose(d->under[g], d->under[f]);
            composites.push_back({MorId(g), MorId(f), d->lift(ObjId(x), ObjId(z), u)});
          }
      }
    }
  d->category = std::make_shared<FinCategory>(std::move(names), std::move(morphisms),
                                              std::move(identities), std::move(composites),
                                              std::move(weights), N);

  // h'_s(f.) = delta_{s<p'.>} . h_s(under f.) . delta_{s<p.>}^-1
  const auto& C = *d->category;
  d->act_mor.resize(P.size());
  for (std::size_t si = 0; si < P.size(); ++si) {
    OpId s(si);
    TupleMap<ObjTag, MorId> delta_cache;
    auto delta_of = [&](std::span<const ObjId> xs) {
      auto it = delta_cache.find(xs);
      if (it != delta_cache.end()) return it->second;
      std::vector<OpId> ps;
      std::vector<ObjId> objs;
      for (auto x : xs) {
        ps.push_back(d->pairs[x.value].p);
        objs.insert(objs.end(), d->pairs[x.value].objs.begin(), d->pairs[x.value].objs.end());
      }
      MorId m = delta_at(W, grafted_corollas(P, s, ps), objs);
      delta_cache.emplace(std::vector<ObjId>(xs.begin(), xs.end()), m);
      return m;
    };
    for_each_morphism_tuple(C, P.arity(s), [&](std::span<const MorId> fs) {
      std::vector<ObjId> xs, ys;
      std::vector<MorId> us;
      for (auto f : fs) {
        xs.push_back(C.src(f));
        ys.push_back(C.dst(f));
        us.push_back(d->under[f.value]);
      }
      MorId mid = W.act(s, std::span<const MorId>(us));
      MorId u = A.compose_path({delta_of(ys), mid, A.invert(delta_of(xs))});
      MorId lifted = d->lift(d->act_obj(s, xs), d->act_obj(s, ys), u);
      d->act_mor[si].emplace(std::vector<MorId>(fs.begin(), fs.end()), lifted);
    });
  }
  d_ = d;

  std::vector<Functor> action;
  for (std::size_t si = 0; si < P.size(); ++si) {
    OpId s(si);
    action.emplace_back(
        d->category, P.arity(s), d->category,
        [d, s](std::span<const ObjId> xs) { return d->act_obj(s, xs); },
        [d, s](std::span<const MorId> fs) { return d->act_on_morphisms(s, fs); });
  }
  strict_ = std::make_shared<WeakPCategory>(
      source->operad_ptr(), d->category, std::move(action),
      [d](OpId p, std::span<const OpId> ps, std::span<const ObjId> xs) {
        // Source h'_p(h'_ps(x)) and target h'_{p o ps}(x) coincide in st A.
        const auto& P = d->source->operad();
        return d->category->identity(d->act_obj(P.compose(p, ps), xs));
      },
      [d](ObjId x) { return d->category->identity(x); });
}

const WeakPtr& StrictifiedCategory::source() const noexcept { return d_->source; }
const CategoryPtr& StrictifiedCategory::category_ptr() const noexcept { return d_->category; }
const StPair& StrictifiedCategory::pair(ObjId x) const { return d_->pairs.at(x.value); }
ObjId StrictifiedCategory::underlying(ObjId x) const { return d_->underlying.at(x.value); }
MorId StrictifiedCategory::under(MorId f) const { return d_->under.at(f.value); }
ObjId StrictifiedCategory::object(OpId p, std::span<const ObjId> objs) const {
  return d_->object(p, objs);
}
MorId StrictifiedCategory::lift(ObjId x, ObjId y, MorId f) const { return d_->lift(x, y, f); }

StPtr strictify(WeakPtr W) {
  if (W->category().weight_cap())
    throw Error("strictify needs a total action, but the category is weighted");
  return std::make_shared<StrictifiedCategory>(std::move(W));
}

CheckReport check_strict(const StrictifiedCategory& S, bool functoriality) {
  CheckReport r = check_category(S.category());
  r.merge(check_strict_action(*S.strict(), functoriality, "check_strict"));
  return r;
}

// ---------------------------------------------------------------------------

WeakPFunctor build_F(const StPtr& S) {
  const auto& A = S->source()->category_ptr();
  Functor F(
      S->category_ptr(), 1, A, [S](std::span<const ObjId> xs) { return S->underlying(xs[0]); },
      [S](std::span<const MorId> fs) { return S->under(fs[0]); });
  return WeakPFunctor{S->strict(), S->source(), F, [S](OpId s, std::span<const ObjId> xs) {
                        const auto& P = S->source()->operad();
                        std::vector<OpId> ps;
                        std::vector<ObjId> objs;
                        for (auto x : xs) {
                          const auto& pr = S->pair(x);
                          ps.push_back(pr.p);
                          objs.insert(objs.end(), pr.objs.begin(), pr.objs.end());
                        }
                        return delta_at(*S->source(), grafted_corollas(P, s, ps), objs);
                      }};
}

EquivalenceResult check_equivalence(const StPtr& S, const WeakPFunctor& F) {
  EquivalenceResult out;
  auto& r = out.report;
  const auto& C = S->category();
  const auto& W = *S->source();
  const auto& A = W.category();
  const OpId one = W.operad().identity();

  // Full and faithful: F restricted to each hom-set is a bijection.
  for (std::size_t x = 0; x < C.object_count(); ++x)
    for (std::size_t y = 0; y < C.object_count(); ++y) {
      ObjId X(x), Y(y);
      ++r.instances;
      auto hom = C.hom(X, Y);
      ObjId fx = F.G(X), fy = F.G(Y);
      auto target = A.hom(fx, fy);
      std::string inst = C.name(X) + " -> " + C.name(Y);
      if (hom.size() != target.size()) {
        r.fail("check_equivalence.hom_cardinality", inst, std::to_string(target.size()),
               std::to_string(hom.size()));
        continue;
      }
      std::vector<bool> hit(A.morphism_count(), false);
      for (MorId f : hom) {
        MorId g = F.G(f);
        if (A.src(g) != fx || A.dst(g) != fy) {
          r.fail("check_equivalence.full", inst + " " + C.name(f), "in hom", A.name(g));
        } else if (hit[g.value]) {
          r.fail("check_equivalence.faithful", inst + " " + C.name(f), "injective",
                 A.name(g) + " hit twice");
        }
        hit[g.value] = true;
      }
    }
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    ++r.instances;
    ObjId x(a);
    MorId i = W.iota(x);
    if (!A.is_iso(i) || A.dst(i) != F.G(S->object(one, std::array<ObjId, 1>{x})))
      r.fail("check_equivalence.essentially_surjective", A.name(x), "iota inverse iso",
             A.name(i));
  }
  if (!r.passed()) return out;

  // Pseudo-inverse a |-> (1, a) with the unit and counit built from iota.
  Functor G(
      W.category_ptr(), 1, S->category_ptr(),
      [S, one](std::span<const ObjId> xs) { return S->object(one, xs); },
      [S, one](std::span<const MorId> fs) {
        const auto& W = *S->source();
        const auto& A = W.category();
        ObjId x = S->object(one, std::array<ObjId, 1>{A.src(fs[0])});
        ObjId y = S->object(one, std::array<ObjId, 1>{A.dst(fs[0])});
        return S->lift(x, y, W.act(one, fs));
      });
  Functor GF = compose(G, F.G);
  Functor FG = compose(F.G, G);
  NatTransformation eta(Functor::identity(S->category_ptr()), GF,
                        [S, one](std::span<const ObjId> xs) {
                          ObjId hx = S->underlying(xs[0]);
                          ObjId y = S->object(one, std::array<ObjId, 1>{hx});
                          return S->lift(xs[0], y, S->source()->iota(hx));
                        });
  NatTransformation eps(FG, Functor::identity(W.category_ptr()),
                        [S](std::span<const ObjId> xs) {
                          const auto& W = *S->source();
                          return W.category().invert(W.iota(xs[0]));
                        });
  AdjointEquivalence E{F.G, G, eta, eps};
  r.merge(check_adjoint_equivalence(E));
  out.equivalence = E;
  auto transported = transport_along_equivalence(F, E);
  r.merge(transported.report);
  out.transport = std::move(transported);
  return out;
}

WeakPFunctor build_unit(const StPtr& S) {
  const auto& W = *S->source();
  const OpId one = W.operad().identity();
  Functor Fp(
      W.category_ptr(), 1, S->category_ptr(),
      [S, one](std::span<const ObjId> xs) { return S->object(one, xs); },
      [S, one](std::span<const MorId> fs) {
        const auto& W = *S->source();
        const auto& A = W.category();
        ObjId x = S->object(one, std::array<ObjId, 1>{A.src(fs[0])});
        ObjId y = S->object(one, std::array<ObjId, 1>{A.dst(fs[0])});
        return S->lift(x, y, W.act(one, fs));
      });
  return WeakPFunctor{S->source(), S->strict(), Fp, [S, one](OpId p, std::span<const ObjId> a) {
                        const auto& W = *S->source();
                        ObjId hp = W.act(p, a);
                        return S->lift(S->object(p, a),
                                       S->object(one, std::array<ObjId, 1>{hp}), W.iota(hp));
                      }};
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// Calls fn(s, xs, h'_s(xs)) for every in-cap object tuple of st A.
void for_each_strict_object_instance(
    const StrictifiedCategory& S,
    const std::function<void(OpId, std::span<const ObjId>, ObjId)>& fn) {
  const auto& P = S.source()->operad();
  const auto& C = S.category();
  const auto& V = *S.strict();
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId s(i);
    for_each_object_tuple(C, P.arity(s),
                          [&](std::span<const ObjId> xs) { fn(s, xs, V.act(s, xs)); });
  }
}

void for_each_strict_morphism_instance(
    const StrictifiedCategory& S,
    const std::function<void(OpId, std::span<const MorId>, MorId)>& fn) {
  const auto& P = S.source()->operad();
  const auto& C = S.category();
  const auto& V = *S.strict();
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId s(i);
    for_each_morphism_tuple(C, P.arity(s),
                            [&](std::span<const MorId> fs) { fn(s, fs, V.act(s, fs)); });
  }
}

}  // namespace

FactorizeResult factorize(const StPtr& S, const WeakPtr& B, const WeakPFunctor& G,
                          std::size_t bound) {
  const auto& W = *S->source();
  const auto& Bc = B->category();
  const auto& C = S->category();
  const auto& P = W.operad();

  WeakPFunctor g = G;
  WeakPtr b = B;
  Functor H(
      S->category_ptr(), 1, B->category_ptr(),
      [S, g, b](std::span<const ObjId> xs) {
        const auto& pr = S->pair(xs[0]);
        std::vector<ObjId> ga;
        for (auto a : pr.objs) ga.push_back(g.G(a));
        return b->act(pr.p, std::span<const ObjId>(ga));
      },
      [S, g, b](std::span<const MorId> fs) {
        const auto& C = S->category();
        const auto& x = S->pair(C.src(fs[0]));
        const auto& y = S->pair(C.dst(fs[0]));
        const auto& Bc = b->category();
        return Bc.compose_path({Bc.invert(g.psi(y.p, y.objs)), g.G(S->under(fs[0])),
                                g.psi(x.p, x.objs)});
      });

  FactorizeResult out{H, {}, false, false, 0, 0};
  auto& r = out.report;
  r.merge(check_strict_action(*B, false, "factorize.target_strict"));
  {
    auto v = validate_weak_p_functor(G);
    for (auto& f : v.failures) f.instance = "G " + f.instance;
    r.merge(v);
  }
  if (!r.passed()) return out;

  try {
    r.merge(check_functor(H, "factorize.functor"));
    for_each_strict_object_instance(*S, [&](OpId s, std::span<const ObjId> xs, ObjId y) {
      ++r.instances;
      std::vector<ObjId> hx;
      for (auto x : xs) hx.push_back(H(x));
      ObjId lhs = H(y);
      ObjId rhs = B->act(s, std::span<const ObjId>(hx));
      if (lhs != rhs)
        r.fail("factorize.strict_objects", P.name(s) + " " + tuple_string(C, xs), Bc.name(rhs),
               Bc.name(lhs));
    });
    for_each_strict_morphism_instance(*S, [&](OpId s, std::span<const MorId> fs, MorId y) {
      ++r.instances;
      std::vector<MorId> hf;
      for (auto f : fs) hf.push_back(H(f));
      MorId lhs = H(y);
      MorId rhs = B->act(s, std::span<const MorId>(hf));
      if (lhs != rhs)
        r.fail("factorize.strict_morphisms", P.name(s) + " " + tuple_string(C, fs),
               Bc.name(rhs), Bc.name(lhs));
    });

    auto unit = build_unit(S);
    const auto& A = W.category();
    for (std::size_t a = 0; a < A.object_count(); ++a) {
      ++r.instances;
      ObjId x(a);
      if (H(unit.G(x)) != G.G(x))
        r.fail("factorize.triangle_objects", A.name(x), Bc.name(G.G(x)), Bc.name(H(unit.G(x))));
    }
    for (std::size_t f = 0; f < A.morphism_count(); ++f) {
      ++r.instances;
      MorId m(f);
      if (H(unit.G(m)) != G.G(m))
        r.fail("factorize.triangle_morphisms", A.name(m), Bc.name(G.G(m)),
               Bc.name(H(unit.G(m))));
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
      OpId p(i);
      for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> a) {
        ++r.instances;
        MorId lhs = H(unit.psi(p, a));
        MorId rhs = G.psi(p, a);
        if (lhs != rhs)
          r.fail("factorize.triangle_cells", P.name(p) + " " + tuple_string(A, a), Bc.name(rhs),
                 Bc.name(lhs));
      });
    }
  } catch (const Error& e) {
    r.fail("factorize.defined", "", "total", e.what());
    return out;
  }

  try {
    auto u = enumerate_factorizations(S, B, G, bound);
    out.uniqueness_checked = true;
    out.solutions = u.solutions;
    out.evaluations = u.evaluations;
    ++r.instances;
    if (u.solutions != 1)
      r.fail("factorize.uniqueness", "strict functors st A -> B over G", "1",
             u.solutions >= 2 ? ">= 2" : "0");
  } catch (const SearchBoundExceeded&) {
    out.bound_exceeded = true;
    out.evaluations = bound;
  }
  return out;
}

namespace {

// Constraint-pruned backtracking over object and morphism assignments.
class FactorizationSearch {
 public:
  FactorizationSearch(const StPtr& S, const WeakPtr& B, const WeakPFunctor& G, std::size_t bound)
      : S_(*S), B_(*B), Bc_(B->category()), C_(S->category()), bound_(bound) {
    const auto& W = *S->source();
    const auto& A = W.category();
    const auto& P = W.operad();
    const OpId one = P.identity();
    const std::size_t n = C_.object_count(), m = C_.morphism_count();
    obj_fixed_.resize(n);
    mor_fixed_.resize(m);
    obj_cons_at_.resize(n);
    mor_cons_at_.resize(m);
    obj_value_.resize(n);
    mor_value_.resize(m);

    for (std::size_t x = 0; x < n; ++x) {
      const auto& pr = S->pair(ObjId(x));
      if (pr.p == one) obj_fixed_[x].push_back(G.G(pr.objs[0]));
    }
    for_each_strict_object_instance(S_, [&](OpId s, std::span<const ObjId> xs, ObjId y) {
      std::size_t last = y.value;
      for (auto x : xs) last = std::max<std::size_t>(last, x.value);
      obj_cons_at_[last].push_back(obj_cons_.size());
      obj_cons_.push_back({s, std::vector<ObjId>(xs.begin(), xs.end()), y});
    });

    auto unit = build_unit(S);
    for (std::size_t f = 0; f < A.morphism_count(); ++f)
      mor_fixed_[unit.G(MorId(f)).value].push_back(G.G(MorId(f)));
    for (std::size_t i = 0; i < P.size(); ++i) {
      OpId p(i);
      for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> a) {
        mor_fixed_[unit.psi(p, a).value].push_back(G.psi(p, a));
      });
    }
    for (std::size_t f = 0; f < m; ++f) {
      MorId fm(f);
      for (MorId g : out_of(C_.dst(fm))) {
        MorId gf = C_.compose(g, fm);
        std::size_t last = std::max({fm.value, g.value, gf.value});
        comp_at_[last].push_back({g, fm, gf});
      }
    }
    for_each_strict_morphism_instance(S_, [&](OpId s, std::span<const MorId> fs, MorId y) {
      std::size_t last = y.value;
      for (auto f : fs) last = std::max<std::size_t>(last, f.value);
      mor_cons_at_[last].push_back(mor_cons_.size());
      mor_cons_.push_back({s, std::vector<MorId>(fs.begin(), fs.end()), y});
    });
  }

  UniquenessSearch run() {
    assign_object(0);
    return {solutions_, evaluations_};
  }

 private:
  struct ObjCon {
    OpId s;
    std::vector<ObjId> xs;
    ObjId y;
  };
  struct MorCon {
    OpId s;
    std::vector<MorId> fs;
    MorId y;
  };
  struct CompCon {
    MorId g, f, gf;
  };

  std::span<const MorId> out_of(ObjId x) {
    if (out_.empty()) {
      out_.resize(C_.object_count());
      for (std::size_t f = 0; f < C_.morphism_count(); ++f)
        out_[C_.src(MorId(f)).value].push_back(MorId(f));
    }
    return out_[x.value];
  }

  void tick() {
    if (++evaluations_ > bound_)
      throw SearchBoundExceeded("uniqueness search exceeded " + std::to_string(bound_) +
                                " candidate evaluations");
  }

  bool objects_ok(std::size_t x) const {
    for (auto want : obj_fixed_[x])
      if (obj_value_[x] != want) return false;
    for (auto ci : obj_cons_at_[x]) {
      const auto& c = obj_cons_[ci];
      std::vector<ObjId> hx;
      for (auto v : c.xs) hx.push_back(obj_value_[v.value]);
      try {
        if (B_.act(c.s, std::span<const ObjId>(hx)) != obj_value_[c.y.value]) return false;
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  }

  bool morphisms_ok(std::size_t f) const {
    MorId fm(f);
    for (auto want : mor_fixed_[f])
      if (mor_value_[f] != want) return false;
    if (C_.is_identity(fm) && mor_value_[f] != Bc_.identity(obj_value_[C_.src(fm).value]))
      return false;
    if (auto it = comp_at_.find(f); it != comp_at_.end())
      for (const auto& c : it->second) {
        auto v = Bc_.try_compose(mor_value_[c.g.value], mor_value_[c.f.value]);
        if (!v || *v != mor_value_[c.gf.value]) return false;
      }
    for (auto ci : mor_cons_at_[f]) {
      const auto& c = mor_cons_[ci];
      std::vector<MorId> hf;
      for (auto v : c.fs) hf.push_back(mor_value_[v.value]);
      try {
        if (B_.act(c.s, std::span<const MorId>(hf)) != mor_value_[c.y.value]) return false;
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  }

  void assign_object(std::size_t x) {
    if (solutions_ >= 2) return;
    if (x == C_.object_count()) {
      assign_morphism(0);
      return;
    }
    for (std::size_t v = 0; v < Bc_.object_count() && solutions_ < 2; ++v) {
      tick();
      obj_value_[x] = ObjId(v);
      if (objects_ok(x)) assign_object(x + 1);
    }
  }

  void assign_morphism(std::size_t f) {
    if (solutions_ >= 2) return;
    if (f == C_.morphism_count()) {
      ++solutions_;
      return;
    }
    MorId fm(f);
    for (MorId v : Bc_.hom(obj_value_[C_.src(fm).value], obj_value_[C_.dst(fm).value])) {
      if (solutions_ >= 2) return;
      tick();
      mor_value_[f] = v;
      if (morphisms_ok(f)) assign_morphism(f + 1);
    }
  }

  const StrictifiedCategory& S_;
  const WeakPCategory& B_;
  const FinCategory& Bc_;
  const FinCategory& C_;
  std::size_t bound_;
  std::size_t evaluations_ = 0;
  std::size_t solutions_ = 0;

  std::vector<std::vector<ObjId>> obj_fixed_;
  std::vector<std::vector<MorId>> mor_fixed_;
  std::vector<ObjCon> obj_cons_;
  std::vector<std::vector<std::size_t>> obj_cons_at_;
  std::vector<MorCon> mor_cons_;
  std::vector<std::vector<std::size_t>> mor_cons_at_;
  std::unordered_map<std::size_t, std::vector<CompCon>> comp_at_;
  std::vector<std::vector<MorId>> out_;
  std::vector<ObjId> obj_value_;
  std::vector<MorId> mor_value_;
};

}  // namespace

UniquenessSearch enumerate_factorizations(const StPtr& S, const WeakPtr& B,
                                          const WeakPFunctor& G, std::size_t bound) {
  FactorizationSearch search(S, B, G, bound);
  return search.run();
}

CounitSearch counit_search(const StPtr& S, std::size_t bound) {
  CounitSearch out;
  const auto& W = *S->source();
  const auto& Bc = W.category();
  const auto& P = W.operad();
  const auto& V = *S->strict();
  const auto& C = S->category();

  struct Con {
    OpId s;
    std::vector<ObjId> bs;
    ObjId y;
  };
  std::vector<std::vector<Con>> at(Bc.object_count());
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId s(i);
    for_each_object_tuple(Bc, P.arity(s), [&](std::span<const ObjId> bs) {
      ObjId y = W.act(s, bs);
      std::size_t last = y.value;
      for (auto b : bs) last = std::max<std::size_t>(last, b.value);
      at[last].push_back({s, std::vector<ObjId>(bs.begin(), bs.end()), y});
    });
  }
  std::vector<ObjId> K(Bc.object_count());
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == Bc.object_count()) {
      ++out.strict_object_maps;
      bool iso = true;
      for (std::size_t x = 0; x < Bc.object_count() && iso; ++x) {
        auto hom = Bc.hom(S->underlying(K[x]), ObjId(x));
        iso = std::any_of(hom.begin(), hom.end(), [&](MorId f) { return Bc.is_iso(f); });
      }
      if (iso) ++out.with_iso;
      return;
    }
    for (std::size_t c = 0; c < C.object_count(); ++c) {
      if (++out.evaluations > bound)
        throw SearchBoundExceeded("counit search exceeded its bound");
      K[b] = ObjId(c);
      bool ok = true;
      for (const auto& con : at[b]) {
        std::vector<ObjId> kb;
        for (auto v : con.bs) kb.push_back(K[v.value]);
        try {
          ok = V.act(con.s, std::span<const ObjId>(kb)) == K[con.y.value];
        } catch (const Error&) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) self(self, b + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace opstrict
