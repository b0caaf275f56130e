#include "opstrict/fincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lexer.hpp"

namespace opstrict {

namespace {

std::uint64_t pair_key(MorId g, MorId f) {
  return (static_cast<std::uint64_t>(g.value) << 32) | f.value;
}

}  // namespace

FinCategory::FinCategory(std::vector<std::string> objects,
                         std::vector<Morphism> morphisms,
                         std::vector<MorId> identities,
                         std::vector<Composite> composites,
                         std::vector<std::size_t> weights,
                         std::optional<std::size_t> weight_cap)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      composites_(std::move(composites)),
      weights_(std::move(weights)),
      weight_cap_(weight_cap) {
  const std::size_t n = objects_.size();
  if (identities_.size() != n)
    throw Error("every object needs exactly one identity morphism");
  if (!weights_.empty() && weights_.size() != n)
    throw Error("weights must be given for every object or none");
  for (std::size_t i = 0; i < n; ++i)
    if (!object_names_.emplace(objects_[i], ObjId(i)).second)
      throw Error("duplicate object '" + objects_[i] + "'");
  homs_.resize(n * n);
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const auto& m = morphisms_[i];
    if (m.src.value >= n || m.dst.value >= n)
      throw Error("morphism '" + m.name + "' has an unknown endpoint");
    if (!morphism_names_.emplace(m.name, MorId(i)).second)
      throw Error("duplicate morphism '" + m.name + "'");
    homs_[m.src.value * n + m.dst.value].push_back(MorId(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    MorId id = identities_[i];
    if (id.value >= morphisms_.size() || src(id) != ObjId(i) || dst(id) != ObjId(i))
      throw Error("identity of '" + objects_[i] + "' is not an endomorphism of it");
  }
  for (const auto& c : composites_) {
    for (auto m : {c.after, c.before, c.result})
      if (m.value >= morphisms_.size()) throw Error("composite mentions an unknown morphism");
    if (src(c.after) != dst(c.before))
      throw Error("composite " + name(c.after) + " . " + name(c.before) +
                  " is not composable");
    auto [it, inserted] = comp_.emplace(pair_key(c.after, c.before), c.result);
    if (!inserted && it->second != c.result)
      throw Error("conflicting composites for " + name(c.after) + " . " + name(c.before));
  }
  inverses_.resize(morphisms_.size());
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    MorId f(i);
    for (MorId g : hom(dst(f), src(f))) {
      auto gf = try_compose(g, f);
      auto fg = try_compose(f, g);
      if (gf && fg && *gf == identity(src(f)) && *fg == identity(dst(f))) {
        inverses_[i] = g;
        break;
      }
    }
  }
}

std::span<const MorId> FinCategory::hom(ObjId x, ObjId y) const {
  return homs_.at(x.value * objects_.size() + y.value);
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = object_names_.find(std::string(name));
  if (it == object_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_names_.find(std::string(name));
  if (it == morphism_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::try_compose(MorId g, MorId f) const {
  auto it = comp_.find(pair_key(g, f));
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (src(g) != dst(f))
    throw Error("cannot compose " + name(g) + " after " + name(f) +
                ": endpoints do not match");
  auto r = try_compose(g, f);
  if (!r) throw UndefinedEntry("composite " + name(g) + " . " + name(f) + " is undefined");
  return *r;
}

MorId FinCategory::compose_path(std::initializer_list<MorId> fs) const {
  if (fs.size() == 0) throw Error("empty composite");
  auto it = std::rbegin(fs);
  MorId acc = *it++;
  for (; it != std::rend(fs); ++it) acc = compose(*it, acc);
  return acc;
}

MorId FinCategory::invert(MorId f) const {
  if (!inverses_.at(f.value))
    throw NotInvertible("morphism " + name(f) + " is not invertible");
  return *inverses_[f.value];
}

// ---------------------------------------------------------------------------

ObjId CategoryBuilder::object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.emplace_back();
  weights_.push_back(0);
  return ObjId(objects_.size() - 1);
}

MorId CategoryBuilder::morphism(std::string name, ObjId src, ObjId dst) {
  morphisms_.push_back({std::move(name), src, dst});
  return MorId(morphisms_.size() - 1);
}

void CategoryBuilder::set_identity(ObjId x, MorId f) { identities_.at(x.value) = f; }

void CategoryBuilder::compose(MorId g, MorId f, MorId result) {
  composites_.push_back({g, f, result});
}

void CategoryBuilder::set_weight(ObjId x, std::size_t w) { weights_.at(x.value) = w; }

std::optional<ObjId> CategoryBuilder::find_object(std::string_view name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return ObjId(i);
  return std::nullopt;
}

std::optional<MorId> CategoryBuilder::find_morphism(std::string_view name) const {
  for (std::size_t i = 0; i < morphisms_.size(); ++i)
    if (morphisms_[i].name == name) return MorId(i);
  return std::nullopt;
}

FinCategory CategoryBuilder::build() const {
  auto morphisms = morphisms_;
  std::vector<MorId> ids;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (identities_[i]) {
      ids.push_back(*identities_[i]);
    } else {
      morphisms.push_back({"id_" + objects_[i], ObjId(i), ObjId(i)});
      ids.push_back(MorId(morphisms.size() - 1));
    }
  }
  auto composites = composites_;
  std::unordered_map<std::uint64_t, bool> have;
  for (const auto& c : composites) have[pair_key(c.after, c.before)] = true;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    MorId f(i);
    MorId left = ids[morphisms[i].dst.value], right = ids[morphisms[i].src.value];
    if (!have[pair_key(left, f)]) {
      composites.push_back({left, f, f});
      have[pair_key(left, f)] = true;
    }
    if (!have[pair_key(f, right)]) {
      composites.push_back({f, right, f});
      have[pair_key(f, right)] = true;
    }
  }
  // Composites landing in a singleton hom-set are forced.
  std::vector<std::vector<MorId>> out(objects_.size());
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<MorId>> homs;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    out[morphisms[i].src.value].push_back(MorId(i));
    homs[{morphisms[i].src.value, morphisms[i].dst.value}].push_back(MorId(i));
  }
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    MorId f(i);
    for (MorId g : out[morphisms[i].dst.value]) {
      if (have[pair_key(g, f)]) continue;
      auto it = homs.find({morphisms[i].src.value, morphisms[g.value].dst.value});
      if (it != homs.end() && it->second.size() == 1) {
        composites.push_back({g, f, it->second[0]});
        have[pair_key(g, f)] = true;
      }
    }
  }
  bool weighted = std::any_of(weights_.begin(), weights_.end(),
                              [](std::size_t w) { return w != 0; }) ||
                  weight_cap_.has_value();
  return FinCategory(objects_, std::move(morphisms), std::move(ids),
                     std::move(composites),
                     weighted ? weights_ : std::vector<std::size_t>{}, weight_cap_);
}

FinCategory indiscrete_category(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& o : objects) b.object(o);
  const std::size_t n = objects.size();
  std::vector<MorId> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string name = i == j ? "id_" + objects[i] : objects[i] + "_" + objects[j];
      m[i * n + j] = b.morphism(name, ObjId(i), ObjId(j));
      if (i == j) b.set_identity(ObjId(i), m[i * n + j]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        b.compose(m[j * n + k], m[i * n + j], m[i * n + k]);
  return b.build();
}

FinCategory discrete_category(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& o : objects) b.object(o);
  return b.build();
}

FinCategory cyclic_group_category(std::size_t order) {
  CategoryBuilder b;
  ObjId x = b.object("x");
  std::vector<MorId> r;
  for (std::size_t k = 0; k < order; ++k) r.push_back(b.morphism("r" + std::to_string(k), x, x));
  b.set_identity(x, r[0]);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) b.compose(r[i], r[j], r[(i + j) % order]);
  return b.build();
}

FinCategory chain_category(std::size_t n) {
  CategoryBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.object(std::to_string(i));
  std::vector<MorId> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto name = i == j ? "id_" + std::to_string(i) : std::to_string(i) + "_" + std::to_string(j);
      m[i * n + j] = b.morphism(name, ObjId(i), ObjId(j));
      if (i == j) b.set_identity(ObjId(i), m[i * n + j]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) b.compose(m[j * n + k], m[i * n + j], m[i * n + k]);
  return b.build();
}

// ---------------------------------------------------------------------------
// .cat format

FinCategory parse_category(std::string_view text) {
  using detail::LineCursor;
  CategoryBuilder b;
  auto object = [&](const detail::Token& t) {
    auto x = b.find_object(t.text);
    if (!x) throw ParseError("unknown object '" + t.text + "'", t.line, t.column);
    return *x;
  };
  auto morphism = [&](const detail::Token& t) {
    auto f = b.find_morphism(t.text);
    if (!f) throw ParseError("unknown morphism '" + t.text + "'", t.line, t.column);
    return *f;
  };
  for (const auto& line : detail::split_lines(detail::tokenize(text, ":="))) {
    LineCursor cur(line);
    const auto& kw = cur.next();
    if (kw.text == "obj") {
      while (!cur.done()) {
        const auto& t = cur.next();
        if (b.find_object(t.text))
          throw ParseError("duplicate object '" + t.text + "'", t.line, t.column);
        b.object(t.text);
      }
    } else if (kw.text == "mor") {
      const auto& name = cur.next();
      if (b.find_morphism(name.text))
        throw ParseError("duplicate morphism '" + name.text + "'", name.line, name.column);
      cur.expect(":");
      ObjId src = object(cur.next());
      cur.expect("->");
      ObjId dst = object(cur.next());
      b.morphism(name.text, src, dst);
    } else if (kw.text == "id") {
      ObjId x = object(cur.next());
      cur.expect("=");
      const auto& name = cur.next();
      auto f = b.find_morphism(name.text);
      if (!f) f = b.morphism(name.text, x, x);
      if (b.src(*f) != x || b.dst(*f) != x)
        throw ParseError("identity must be an endomorphism", name.line, name.column);
      b.set_identity(x, *f);
    } else if (kw.text == "comp") {
      MorId g = morphism(cur.next());
      cur.expect(".");
      MorId f = morphism(cur.next());
      cur.expect("=");
      MorId h = morphism(cur.next());
      b.compose(g, f, h);
    } else if (kw.text == "weight") {
      ObjId x = object(cur.next());
      cur.expect("=");
      b.set_weight(x, cur.number());
    } else if (kw.text == "weight_cap") {
      b.set_weight_cap(cur.number());
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line, kw.column);
    }
    cur.expect_end();
  }
  try {
    return b.build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

std::string print_category(const FinCategory& A) {
  std::ostringstream out;
  out << "obj";
  for (std::size_t i = 0; i < A.object_count(); ++i) out << " " << A.name(ObjId(i));
  out << "\n";
  if (A.weight_cap()) {
    out << "weight_cap " << *A.weight_cap() << "\n";
    for (std::size_t i = 0; i < A.object_count(); ++i)
      if (A.weight(ObjId(i)) != 0)
        out << "weight " << A.name(ObjId(i)) << " = " << A.weight(ObjId(i)) << "\n";
  }
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    MorId f(i);
    out << "mor " << A.name(f) << " : " << A.name(A.src(f)) << " -> "
        << A.name(A.dst(f)) << "\n";
  }
  for (std::size_t i = 0; i < A.object_count(); ++i)
    out << "id " << A.name(ObjId(i)) << " = " << A.name(A.identity(ObjId(i))) << "\n";
  std::vector<FinCategory::Composite> cs(A.composites().begin(), A.composites().end());
  std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.after, a.before) < std::tie(b.after, b.before);
  });
  for (const auto& c : cs) {
    if ((A.is_identity(c.after) && c.result == c.before) ||
        (A.is_identity(c.before) && c.result == c.after) ||
        A.hom(A.src(c.before), A.dst(c.after)).size() == 1)
      continue;
    out << "comp " << A.name(c.after) << " . " << A.name(c.before) << " = "
        << A.name(c.result) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Tuple enumeration

namespace {

constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1) / 4;

std::size_t budget_of(const FinCategory& A) { return A.weight_cap().value_or(kUnbounded); }

}  // namespace

void for_each_object_tuple(const FinCategory& A, std::size_t n,
                           const std::function<void(std::span<const ObjId>)>& fn) {
  std::vector<ObjId> tuple(n);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i == n) {
      fn(tuple);
      return;
    }
    for (std::size_t x = 0; x < A.object_count(); ++x) {
      std::size_t w = A.weight(ObjId(x));
      if (w > left) continue;
      tuple[i] = ObjId(x);
      self(self, i + 1, left - w);
    }
  };
  rec(rec, 0, budget_of(A));
}

void for_each_morphism_tuple(const FinCategory& A, std::size_t n,
                             const std::function<void(std::span<const MorId>)>& fn) {
  // Bucket morphisms by (source weight, target weight) to prune quickly.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<MorId>> buckets;
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    MorId f(i);
    buckets[{A.weight(A.src(f)), A.weight(A.dst(f))}].push_back(f);
  }
  std::vector<MorId> tuple(n);
  auto rec = [&](auto&& self, std::size_t i, std::size_t src_left,
                 std::size_t dst_left) -> void {
    if (i == n) {
      fn(tuple);
      return;
    }
    for (const auto& [w, fs] : buckets) {
      if (w.first > src_left || w.second > dst_left) continue;
      for (auto f : fs) {
        tuple[i] = f;
        self(self, i + 1, src_left - w.first, dst_left - w.second);
      }
    }
  };
  rec(rec, 0, budget_of(A), budget_of(A));
}

void for_each_composable_tuple(
    const FinCategory& A, std::size_t n,
    const std::function<void(std::span<const MorId>, std::span<const MorId>)>& fn) {
  std::vector<std::vector<MorId>> out(A.object_count());
  for (std::size_t i = 0; i < A.morphism_count(); ++i) out[A.src(MorId(i)).value].push_back(MorId(i));
  std::vector<MorId> g(n);
  for_each_morphism_tuple(A, n, [&](std::span<const MorId> f) {
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
      if (i == n) {
        fn(g, f);
        return;
      }
      for (auto m : out[A.dst(f[i]).value]) {
        std::size_t w = A.weight(A.dst(m));
        if (w > left) continue;
        g[i] = m;
        self(self, i + 1, left - w);
      }
    };
    rec(rec, 0, budget_of(A));
  });
}

std::string tuple_string(const FinCategory& A, std::span<const ObjId> xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + A.name(xs[i]);
  return s + ")";
}

std::string tuple_string(const FinCategory& A, std::span<const MorId> fs) {
  std::string s = "(";
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? " " : "") + A.name(fs[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// Functors and transformations

Functor::Functor(CategoryPtr domain, std::size_t arity, CategoryPtr codomain,
                 ObjectMap on_objects, MorphismMap on_morphisms)
    : domain_(std::move(domain)),
      arity_(arity),
      codomain_(std::move(codomain)),
      on_objects_(std::move(on_objects)),
      on_morphisms_(std::move(on_morphisms)) {}

Functor Functor::identity(CategoryPtr A) {
  return Functor(
      A, 1, A, [](std::span<const ObjId> xs) { return xs[0]; },
      [](std::span<const MorId> fs) { return fs[0]; });
}

namespace {

template <class T>
std::vector<std::span<const T>> chunks(std::span<const T> xs,
                                       const std::vector<std::size_t>& sizes) {
  std::vector<std::span<const T>> out;
  std::size_t at = 0;
  for (auto k : sizes) {
    out.push_back(xs.subspan(at, k));
    at += k;
  }
  return out;
}

}  // namespace

Functor compose(const Functor& outer, std::span<const Functor> inners) {
  if (inners.size() != outer.arity())
    throw ShapeMismatch("operadic composite needs one inner functor per argument");
  std::vector<Functor> in(inners.begin(), inners.end());
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& f : in) {
    if (f.codomain() != outer.domain())
      throw ShapeMismatch("inner functor codomain differs from outer domain");
    sizes.push_back(f.arity());
    total += f.arity();
  }
  CategoryPtr domain = in.empty() ? outer.domain() : in.front().domain();
  for (const auto& f : in)
    if (f.domain() != domain) throw ShapeMismatch("inner functors have different domains");
  return Functor(
      domain, total, outer.codomain(),
      [outer, in, sizes](std::span<const ObjId> xs) {
        std::vector<ObjId> mid;
        mid.reserve(in.size());
        auto parts = chunks(xs, sizes);
        for (std::size_t i = 0; i < in.size(); ++i) mid.push_back(in[i](parts[i]));
        return outer(std::span<const ObjId>(mid));
      },
      [outer, in, sizes](std::span<const MorId> fs) {
        std::vector<MorId> mid;
        mid.reserve(in.size());
        auto parts = chunks(fs, sizes);
        for (std::size_t i = 0; i < in.size(); ++i) mid.push_back(in[i](parts[i]));
        return outer(std::span<const MorId>(mid));
      });
}

Functor compose(const Functor& after, const Functor& before) {
  std::array<Functor, 1> one{before};
  return compose(after, one);
}

Functor compose_power(const Functor& outer, const Functor& before) {
  if (before.arity() != 1) throw ShapeMismatch("compose_power needs a unary functor");
  std::vector<Functor> in(outer.arity(), before);
  if (in.empty()) {
    // Nothing to apply before; reinterpret the constant over before's domain.
    return Functor(
        before.domain(), 0, outer.codomain(),
        [outer](std::span<const ObjId> xs) { return outer(xs); },
        [outer](std::span<const MorId> fs) { return outer(fs); });
  }
  return compose(outer, in);
}

NatTransformation::NatTransformation(Functor source, Functor target, Components components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (source_.domain() != target_.domain() || source_.codomain() != target_.codomain() ||
      source_.arity() != target_.arity())
    throw ShapeMismatch("transformation between functors of different shape");
}

NatTransformation NatTransformation::identity(const Functor& F) {
  return NatTransformation(F, F, [F](std::span<const ObjId> xs) {
    return F.codomain()->identity(F(xs));
  });
}

NatTransformation vcomp(const NatTransformation& tau, const NatTransformation& sigma) {
  if (sigma.target().domain() != tau.source().domain() ||
      sigma.target().codomain() != tau.source().codomain() ||
      sigma.target().arity() != tau.source().arity())
    throw ShapeMismatch("vertical composite of transformations of different shape");
  return NatTransformation(sigma.source(), tau.target(),
                           [tau, sigma](std::span<const ObjId> xs) {
                             return tau.source().codomain()->compose(tau(xs), sigma(xs));
                           });
}

NatTransformation whisker(const Functor& post, const NatTransformation& tau,
                          const Functor& pre) {
  if (post.arity() != 1 || pre.arity() != 1)
    throw ShapeMismatch("whiskering functors must be unary");
  if (post.domain() != tau.source().codomain() || pre.codomain() != tau.source().domain())
    throw ShapeMismatch("whiskering functors do not match the transformation");
  Functor src = compose(post, compose_power(tau.source(), pre));
  Functor dst = compose(post, compose_power(tau.target(), pre));
  return NatTransformation(src, dst, [post, tau, pre](std::span<const ObjId> xs) {
    std::vector<ObjId> mapped;
    mapped.reserve(xs.size());
    for (auto x : xs) mapped.push_back(pre(x));
    return post(tau(mapped));
  });
}

NatTransformation operadic_whisker(const Functor& outer,
                                   std::span<const NatTransformation> inners) {
  std::vector<NatTransformation> in(inners.begin(), inners.end());
  std::vector<Functor> srcs, dsts;
  std::vector<std::size_t> sizes;
  for (const auto& t : in) {
    srcs.push_back(t.source());
    dsts.push_back(t.target());
    sizes.push_back(t.source().arity());
  }
  Functor src = compose(outer, srcs);
  Functor dst = compose(outer, dsts);
  return NatTransformation(src, dst, [outer, in, sizes](std::span<const ObjId> xs) {
    std::vector<MorId> parts;
    auto pieces = chunks(xs, sizes);
    for (std::size_t i = 0; i < in.size(); ++i) parts.push_back(in[i](pieces[i]));
    return outer(std::span<const MorId>(parts));
  });
}

NatTransformation invert(const NatTransformation& tau) {
  const auto& B = *tau.source().codomain();
  for_each_object_tuple(*tau.source().domain(), tau.source().arity(),
                        [&](std::span<const ObjId> xs) {
                          MorId m = tau(xs);
                          if (!B.is_iso(m))
                            throw NotInvertible("component at " +
                                                tuple_string(*tau.source().domain(), xs) +
                                                " is not invertible");
                        });
  return NatTransformation(tau.target(), tau.source(), [tau](std::span<const ObjId> xs) {
    return tau.source().codomain()->invert(tau(xs));
  });
}

// ---------------------------------------------------------------------------
// Checkers

CheckReport check_category(const FinCategory& A) {
  CheckReport r;
  std::vector<std::vector<MorId>> out(A.object_count());
  for (std::size_t i = 0; i < A.morphism_count(); ++i) out[A.src(MorId(i)).value].push_back(MorId(i));

  for (std::size_t i = 0; i < A.object_count(); ++i) {
    ObjId x(i);
    MorId id = A.identity(x);
    ++r.instances;
    if (A.src(id) != x || A.dst(id) != x)
      r.fail("check_category.identity", A.name(x), "endomorphism", A.name(id));
  }
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    MorId f(i);
    for (auto g : out[A.dst(f).value]) {
      ++r.instances;
      auto gf = A.try_compose(g, f);
      if (!gf) {
        r.fail("check_category.composition_total", A.name(g) + " . " + A.name(f),
               "defined", "undefined");
      } else if (A.src(*gf) != A.src(f) || A.dst(*gf) != A.dst(g)) {
        r.fail("check_category.composition_endpoints", A.name(g) + " . " + A.name(f),
               A.name(A.src(f)) + " -> " + A.name(A.dst(g)),
               A.name(A.src(*gf)) + " -> " + A.name(A.dst(*gf)));
      }
    }
    ++r.instances;
    auto left = A.try_compose(A.identity(A.dst(f)), f);
    if (left != f)
      r.fail("check_category.left_identity", A.name(f), A.name(f),
             left ? A.name(*left) : "undefined");
    auto right = A.try_compose(f, A.identity(A.src(f)));
    if (right != f)
      r.fail("check_category.right_identity", A.name(f), A.name(f),
             right ? A.name(*right) : "undefined");
  }
  if (!r.passed()) return r;  // associativity needs a total composition
  for (std::size_t i = 0; i < A.morphism_count(); ++i) {
    MorId f(i);
    for (auto g : out[A.dst(f).value]) {
      MorId gf = A.compose(g, f);
      for (auto h : out[A.dst(g).value]) {
        ++r.instances;
        MorId lhs = A.compose(A.compose(h, g), f);
        MorId rhs = A.compose(h, gf);
        if (lhs != rhs)
          r.fail("check_category.associativity",
                 "(" + A.name(h) + ", " + A.name(g) + ", " + A.name(f) + ")", A.name(rhs),
                 A.name(lhs));
      }
    }
  }
  return r;
}

CheckReport check_functor(const Functor& F, std::string_view name) {
  CheckReport r;
  const auto& A = *F.domain();
  const auto& B = *F.codomain();
  const std::string n(name);
  const std::size_t k = F.arity();
  try {
    for_each_object_tuple(A, k, [&](std::span<const ObjId> xs) {
      ++r.instances;
      std::vector<MorId> ids;
      for (auto x : xs) ids.push_back(A.identity(x));
      MorId got = F(std::span<const MorId>(ids));
      MorId want = B.identity(F(xs));
      if (got != want)
        r.fail(n + ".preserves_identity", tuple_string(A, xs), B.name(want), B.name(got));
    });
    for_each_morphism_tuple(A, k, [&](std::span<const MorId> fs) {
      ++r.instances;
      std::vector<ObjId> s, d;
      for (auto f : fs) {
        s.push_back(A.src(f));
        d.push_back(A.dst(f));
      }
      MorId img = F(fs);
      if (B.src(img) != F(std::span<const ObjId>(s)) || B.dst(img) != F(std::span<const ObjId>(d)))
        r.fail(n + ".endpoints", tuple_string(A, fs),
               B.name(F(std::span<const ObjId>(s))) + " -> " + B.name(F(std::span<const ObjId>(d))),
               B.name(B.src(img)) + " -> " + B.name(B.dst(img)));
    });
    if (!r.passed()) return r;
    for_each_composable_tuple(A, k, [&](std::span<const MorId> g, std::span<const MorId> f) {
      ++r.instances;
      std::vector<MorId> gf;
      for (std::size_t i = 0; i < k; ++i) gf.push_back(A.compose(g[i], f[i]));
      MorId lhs = F(std::span<const MorId>(gf));
      MorId rhs = B.compose(F(g), F(f));
      if (lhs != rhs)
        r.fail(n + ".preserves_composition", tuple_string(A, g) + " . " + tuple_string(A, f),
               B.name(rhs), B.name(lhs));
    });
  } catch (const Error& e) {
    r.fail(n + ".defined", "", "total", e.what());
  }
  return r;
}

CheckReport check_naturality(const NatTransformation& tau, std::string_view name) {
  CheckReport r;
  const auto& F = tau.source();
  const auto& G = tau.target();
  const auto& A = *F.domain();
  const auto& B = *F.codomain();
  const std::string n(name);
  try {
    for_each_object_tuple(A, F.arity(), [&](std::span<const ObjId> xs) {
      ++r.instances;
      MorId c = tau(xs);
      if (B.src(c) != F(xs) || B.dst(c) != G(xs))
        r.fail(n + ".component_endpoints", tuple_string(A, xs),
               B.name(F(xs)) + " -> " + B.name(G(xs)),
               B.name(B.src(c)) + " -> " + B.name(B.dst(c)));
    });
    if (!r.passed()) return r;
    for_each_morphism_tuple(A, F.arity(), [&](std::span<const MorId> fs) {
      ++r.instances;
      std::vector<ObjId> s, d;
      for (auto f : fs) {
        s.push_back(A.src(f));
        d.push_back(A.dst(f));
      }
      MorId lhs = B.compose(G(fs), tau(s));
      MorId rhs = B.compose(tau(d), F(fs));
      if (lhs != rhs)
        r.fail(n + ".naturality", tuple_string(A, fs), B.name(rhs), B.name(lhs));
    });
  } catch (const Error& e) {
    r.fail(n + ".defined", "", "total", e.what());
  }
  return r;
}

std::optional<std::vector<ObjId>> first_difference(const NatTransformation& a,
                                                   const NatTransformation& b) {
  std::optional<std::vector<ObjId>> diff;
  for_each_object_tuple(*a.source().domain(), a.source().arity(),
                        [&](std::span<const ObjId> xs) {
                          if (!diff && a(xs) != b(xs)) diff.emplace(xs.begin(), xs.end());
                        });
  return diff;
}

}  // namespace opstrict
