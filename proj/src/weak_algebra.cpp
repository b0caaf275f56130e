#include "opstrict/weak_algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace opstrict {

WeakPCategory::WeakPCategory(OperadPtr P, CategoryPtr A, std::vector<Functor> action,
                             GammaFn gamma, IotaFn iota)
    : P_(std::move(P)),
      A_(std::move(A)),
      action_(std::move(action)),
      gamma_(std::move(gamma)),
      iota_(std::move(iota)) {
  if (action_.size() != P_->size())
    throw ShapeMismatch("need one action functor per operad element");
  for (std::size_t i = 0; i < action_.size(); ++i) {
    const auto& h = action_[i];
    if (h.domain() != A_ || h.codomain() != A_ || h.arity() != P_->arity(OpId(i)))
      throw ShapeMismatch("action functor for " + P_->name(OpId(i)) + " has the wrong shape");
  }
}

MorId WeakPCategory::gamma(OpId p, std::span<const OpId> ps,
                           std::span<const ObjId> objs) const {
  if (ps.size() != P_->arity(p))
    throw ArityMismatch("gamma at " + P_->name(p) + " needs " +
                        std::to_string(P_->arity(p)) + " arguments");
  std::size_t n = total_arity(*P_, ps);
  if (n > P_->arity_cap())
    throw CapExceeded("gamma of total arity " + std::to_string(n) + " above the cap");
  if (objs.size() != n) throw ArityMismatch("gamma evaluated at a tuple of the wrong length");
  return gamma_(p, ps, objs);
}

NatTransformation WeakPCategory::gamma_transformation(OpId p, std::span<const OpId> ps) const {
  std::vector<Functor> inner;
  for (auto q : ps) inner.push_back(h(q));
  Functor src = compose(h(p), inner);
  Functor dst = h(P_->compose(p, ps));
  std::vector<OpId> args(ps.begin(), ps.end());
  auto g = gamma_;
  return NatTransformation(src, dst, [g, p, args](std::span<const ObjId> xs) {
    return g(p, args, xs);
  });
}

NatTransformation WeakPCategory::iota_transformation() const {
  auto i = iota_;
  return NatTransformation(Functor::identity(A_), h(P_->identity()),
                           [i](std::span<const ObjId> xs) { return i(xs[0]); });
}

// ---------------------------------------------------------------------------
// Tree-level data

namespace {

ObjId eval_object(const WeakPCategory& W, const Tree& s, std::span<const ObjId> objs) {
  if (s.is_leaf()) return objs[0];
  std::vector<ObjId> parts;
  parts.reserve(s.children().size());
  std::size_t at = 0;
  for (const auto& c : s.children()) {
    parts.push_back(eval_object(W, c, objs.subspan(at, c.arity())));
    at += c.arity();
  }
  return W.act(s.label(), std::span<const ObjId>(parts));
}

std::string objs_string(const FinCategory& A, std::span<const ObjId> xs) {
  return tuple_string(A, xs);
}

std::string ops_string(const TabulatedOperad& P, std::span<const OpId> ps) {
  std::string s = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? " " : "") + P.name(ps[i]);
  return s + ")";
}

}  // namespace

std::string gamma_label(const WeakPCategory& W, OpId p, std::span<const OpId> ps,
                        std::span<const ObjId> objs) {
  return "gamma " + W.operad().name(p) + " " + ops_string(W.operad(), ps) + " @ " +
         objs_string(W.category(), objs);
}

namespace {

std::string iota_label(const WeakPCategory& W, ObjId a) {
  return "iota @ " + W.category().name(a);
}

}  // namespace

Functor eval_functor(const WeakPCategory& W, const Tree& s) {
  if (s.arity() > W.operad().arity_cap())
    throw CapExceeded("tree arity above the operad cap");
  if (s.is_leaf()) return Functor::identity(W.category_ptr());
  std::vector<Functor> inner;
  for (const auto& c : s.children()) inner.push_back(eval_functor(W, c));
  return compose(W.h(s.label()), inner);
}

MorId delta_at(const WeakPCategory& W, const Tree& s, std::span<const ObjId> objs) {
  if (s.is_leaf()) return W.iota(objs[0]);
  std::vector<MorId> parts;
  std::vector<OpId> values;
  std::size_t at = 0;
  for (const auto& c : s.children()) {
    parts.push_back(delta_at(W, c, objs.subspan(at, c.arity())));
    values.push_back(eval_tree(W.operad(), c));
    at += c.arity();
  }
  MorId inner = W.act(s.label(), std::span<const MorId>(parts));
  return W.category().compose(W.gamma(s.label(), values, objs), inner);
}

NatTransformation delta(const WeakPCategory& W, const Tree& s) {
  OpId e = eval_tree(W.operad(), s);
  auto copy = std::make_shared<WeakPCategory>(W);
  return NatTransformation(eval_functor(W, s), W.h(e),
                           [copy, s](std::span<const ObjId> xs) { return delta_at(*copy, s, xs); });
}

NatTransformation delta2(const WeakPCategory& W, const Tree& s, const Tree& t) {
  if (!has_two_cell(W.operad(), s, t))
    throw NoTwoCell(to_string(W.operad(), s) + " and " + to_string(W.operad(), t) +
                    " evaluate differently");
  auto copy = std::make_shared<WeakPCategory>(W);
  return NatTransformation(eval_functor(W, s), eval_functor(W, t),
                           [copy, s, t](std::span<const ObjId> xs) {
                             const auto& A = copy->category();
                             return A.compose(A.invert(delta_at(*copy, t, xs)),
                                              delta_at(*copy, s, xs));
                           });
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void tag(CheckReport& r, const std::string& prefix, std::size_t from) {
  for (std::size_t i = from; i < r.failures.size(); ++i)
    r.failures[i].instance = prefix + (r.failures[i].instance.empty() ? "" : " ") +
                             r.failures[i].instance;
}

// Calls fn(p, ps) for every in-cap composite shape.
void for_each_composite(const TabulatedOperad& P,
                        const std::function<void(OpId, std::span<const OpId>)>& fn) {
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_arg_tuple(P, P.arity(p), P.arity_cap(),
                       [&](std::span<const OpId> ps) { fn(p, ps); });
  }
}

// A move in the coherence-cell graph: contract the node at `path` (gamma) or
// wrap the subtree at `path` in a unit node (iota).
struct Move {
  enum class Kind { Gamma, Iota } kind;
  std::vector<std::size_t> path;
};

const Tree& subtree_at(const Tree& s, std::span<const std::size_t> path) {
  const Tree* t = &s;
  for (auto i : path) t = &t->children()[i];
  return *t;
}

Tree replace_at(const Tree& s, std::span<const std::size_t> path, const Tree& u) {
  if (path.empty()) return u;
  std::vector<Tree> children(s.children().begin(), s.children().end());
  children[path[0]] = replace_at(children[path[0]], path.subspan(1), u);
  return Tree::node(s.label(), std::move(children));
}

std::optional<Tree> apply_move(const TabulatedOperad& P, const Tree& s, const Move& m) {
  const Tree& u = subtree_at(s, m.path);
  if (m.kind == Move::Kind::Iota) return replace_at(s, m.path, Tree::node(P.identity(), {u}));
  if (u.is_leaf()) return std::nullopt;
  std::vector<OpId> qs;
  std::vector<Tree> grand;
  for (const auto& c : u.children()) {
    if (c.is_leaf()) return std::nullopt;
    qs.push_back(c.label());
    grand.insert(grand.end(), c.children().begin(), c.children().end());
  }
  if (total_arity(P, qs) > P.arity_cap()) return std::nullopt;
  return replace_at(s, m.path, Tree::node(P.compose(u.label(), qs), std::move(grand)));
}

void collect_paths(const Tree& s, std::vector<std::size_t>& path,
                   std::vector<std::vector<std::size_t>>& out) {
  out.push_back(path);
  if (s.is_leaf()) return;
  for (std::size_t i = 0; i < s.children().size(); ++i) {
    path.push_back(i);
    collect_paths(s.children()[i], path, out);
    path.pop_back();
  }
}

MorId base_cell(const WeakPCategory& W, const Tree& u, Move::Kind kind,
                std::span<const ObjId> objs) {
  if (kind == Move::Kind::Iota) return W.iota(eval_object(W, u, objs));
  std::vector<OpId> qs;
  std::vector<ObjId> inner;
  std::size_t at = 0;
  for (const auto& c : u.children()) {
    qs.push_back(c.label());
    for (const auto& d : c.children()) {
      inner.push_back(eval_object(W, d, objs.subspan(at, d.arity())));
      at += d.arity();
    }
  }
  return W.gamma(u.label(), qs, inner);
}

MorId move_cell(const WeakPCategory& W, const Tree& s, const Move& m, std::size_t depth,
                std::span<const ObjId> objs) {
  if (depth == m.path.size()) return base_cell(W, s, m.kind, objs);
  std::vector<MorId> parts;
  std::size_t at = 0;
  for (std::size_t i = 0; i < s.children().size(); ++i) {
    const auto& c = s.children()[i];
    auto chunk = objs.subspan(at, c.arity());
    parts.push_back(i == m.path[depth]
                        ? move_cell(W, c, m, depth + 1, chunk)
                        : W.category().identity(eval_object(W, c, chunk)));
    at += c.arity();
  }
  return W.act(s.label(), std::span<const MorId>(parts));
}

std::string move_string(const Move& m) {
  std::string s = m.kind == Move::Kind::Gamma ? "gamma-move at [" : "iota-move at [";
  for (std::size_t i = 0; i < m.path.size(); ++i) s += (i ? "," : "") + std::to_string(m.path[i]);
  return s + "]";
}

class AxiomSweep {
 public:
  explicit AxiomSweep(const WeakPCategory& W) : W_(W), A_(W.category()), P_(W.operad()) {}

  void run(CheckReport& r) {
    unit_laws(r);
    associativity(r);
  }

  std::vector<std::string> suspects() const {
    std::size_t best = 0;
    for (const auto& [k, v] : blame_) best = std::max(best, v);
    std::vector<std::string> out;
    if (best == 0) return out;
    for (const auto& [k, v] : blame_)
      if (v == best) out.push_back(k);
    return out;
  }

  void blame(const std::vector<std::string>& cells) {
    for (const auto& c : cells) ++blame_[c];
  }

 private:
  // Compares two composites, treating malformed composites as failures.
  void compare(CheckReport& r, const std::string& check, const std::string& instance,
               const std::function<MorId()>& lhs, const std::function<MorId()>& rhs,
               const std::vector<std::string>& cells) {
    ++r.instances;
    std::string l, rr;
    bool ok = false;
    try {
      MorId a = lhs();
      MorId b = rhs();
      ok = a == b;
      l = A_.name(a);
      rr = A_.name(b);
    } catch (const Error& e) {
      l = e.what();
    }
    if (!ok) {
      r.fail(check, instance, rr, l);
      blame(cells);
    }
  }

  void unit_laws(CheckReport& r) {
    const OpId one = P_.identity();
    for (std::size_t i = 0; i < P_.size(); ++i) {
      OpId p(i);
      const std::size_t n = P_.arity(p);
      std::vector<OpId> ones(n, one);
      for_each_object_tuple(A_, n, [&](std::span<const ObjId> a) {
        std::vector<std::string> cells{gamma_label(W_, p, ones, a)};
        for (auto x : a) cells.push_back(iota_label(W_, x));
        compare(
            r, "validate_weak_p_category.unit_left",
            gamma_label(W_, p, ones, a),
            [&] {
              std::vector<MorId> iotas;
              for (auto x : a) iotas.push_back(W_.iota(x));
              return A_.compose(W_.gamma(p, ones, a), W_.act(p, std::span<const MorId>(iotas)));
            },
            [&] { return A_.identity(W_.act(p, a)); }, cells);
        std::array<OpId, 1> single{p};
        ObjId hp = W_.act(p, a);
        compare(
            r, "validate_weak_p_category.unit_right", gamma_label(W_, one, single, a),
            [&] { return A_.compose(W_.gamma(one, single, a), W_.iota(hp)); },
            [&] { return A_.identity(hp); },
            {gamma_label(W_, one, single, a), iota_label(W_, hp)});
      });
    }
  }

  void associativity(CheckReport& r) {
    const std::size_t N = P_.arity_cap();
    for_each_composite(P_, [&](OpId p, std::span<const OpId> qs_span) {
      std::vector<OpId> qs(qs_span.begin(), qs_span.end());
      const std::size_t m = total_arity(P_, qs);
      OpId pq = P_.compose(p, qs);
      for_each_arg_tuple(P_, m, N, [&](std::span<const OpId> rs_span) {
        std::vector<OpId> rs(rs_span.begin(), rs_span.end());
        const std::size_t k = total_arity(P_, rs);
        // r split per q_i
        std::vector<std::vector<OpId>> r_of(qs.size());
        std::vector<OpId> qr;
        std::size_t at = 0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
          r_of[i].assign(rs.begin() + at, rs.begin() + at + P_.arity(qs[i]));
          at += P_.arity(qs[i]);
          qr.push_back(P_.compose(qs[i], r_of[i]));
        }
        for_each_object_tuple(A_, k, [&](std::span<const ObjId> a) {
          // per-q chunks of objects
          std::vector<std::span<const ObjId>> a_of;
          std::size_t pos = 0;
          for (std::size_t i = 0; i < qs.size(); ++i) {
            std::size_t len = total_arity(P_, r_of[i]);
            a_of.push_back(a.subspan(pos, len));
            pos += len;
          }
          std::vector<ObjId> b;  // h_r(a) for every r
          pos = 0;
          for (auto rj : rs) {
            b.push_back(W_.act(rj, a.subspan(pos, P_.arity(rj))));
            pos += P_.arity(rj);
          }
          std::vector<std::string> cells{gamma_label(W_, p, qr, a),
                                         gamma_label(W_, pq, rs, a),
                                         gamma_label(W_, p, qs, b)};
          for (std::size_t i = 0; i < qs.size(); ++i)
            cells.push_back(gamma_label(W_, qs[i], r_of[i], a_of[i]));
          compare(
              r, "validate_weak_p_category.associativity",
              gamma_label(W_, p, qs, b) + " ; " + ops_string(P_, rs),
              [&] {
                std::vector<MorId> inner;
                for (std::size_t i = 0; i < qs.size(); ++i)
                  inner.push_back(W_.gamma(qs[i], r_of[i], a_of[i]));
                return A_.compose(W_.gamma(p, qr, a), W_.act(p, std::span<const MorId>(inner)));
              },
              [&] { return A_.compose(W_.gamma(pq, rs, a), W_.gamma(p, qs, b)); }, cells);
        });
      });
    });
  }

  const WeakPCategory& W_;
  const FinCategory& A_;
  const TabulatedOperad& P_;
  std::map<std::string, std::size_t> blame_;
};

void check_isos(const WeakPCategory& W, const NatTransformation& tau,
                const std::string& check, const std::string& label, CheckReport& r,
                AxiomSweep* sweep, const std::function<std::string(std::span<const ObjId>)>& cell) {
  const auto& A = W.category();
  for_each_object_tuple(*tau.source().domain(), tau.source().arity(),
                        [&](std::span<const ObjId> xs) {
                          ++r.instances;
                          MorId m = tau(xs);
                          // Ill-typed: blamed here, reported by check_naturality.
                          if (A.src(m) != tau.source()(xs) || A.dst(m) != tau.target()(xs)) {
                            if (sweep) sweep->blame({cell(xs)});
                          } else if (!A.is_iso(m)) {
                            r.fail(check, label + " @ " + tuple_string(A, xs), "isomorphism",
                                   A.name(m));
                            if (sweep) sweep->blame({cell(xs)});
                          }
                        });
}

}  // namespace

CoherenceReport validate_weak_p_category(const WeakPCategory& W, std::size_t size_cap) {
  CoherenceReport out;
  CheckReport& r = out.checks;
  const auto& P = W.operad();
  const auto& A = W.category();
  AxiomSweep sweep(W);

  try {
    for (std::size_t i = 0; i < P.size(); ++i) {
      std::size_t from = r.failures.size();
      r.merge(check_functor(W.h(OpId(i)), "validate_weak_p_category.action"));
      tag(r, "h " + P.name(OpId(i)), from);
    }
    for_each_composite(P, [&](OpId p, std::span<const OpId> ps) {
      std::vector<OpId> args(ps.begin(), ps.end());
      auto g = W.gamma_transformation(p, ps);
      std::string label = "gamma " + P.name(p) + " " + ops_string(P, ps);
      auto nat = check_naturality(g, "validate_weak_p_category.gamma");
      tag(nat, label, 0);
      r.merge(nat);
      check_isos(W, g, "validate_weak_p_category.gamma.iso", label, r, &sweep,
                 [&](std::span<const ObjId> xs) { return gamma_label(W, p, args, xs); });
    });
    auto iota = W.iota_transformation();
    r.merge(check_naturality(iota, "validate_weak_p_category.iota"));
    check_isos(W, iota, "validate_weak_p_category.iota.iso", "iota", r, &sweep,
               [&](std::span<const ObjId> xs) { return iota_label(W, xs[0]); });
    sweep.run(r);
  } catch (const Error& e) {
    r.fail("validate_weak_p_category.defined", "", "total", e.what());
    return out;
  }
  out.suspects = sweep.suspects();

  // Path independence over the graph of gamma/iota moves.
  for (std::size_t n = 0; n <= P.arity_cap(); ++n) {
    std::vector<Tree> trees = enumerate_trees(P, n, size_cap);
    std::unordered_map<Tree, std::size_t, TreeHash> index;
    for (std::size_t i = 0; i < trees.size(); ++i) index.emplace(trees[i], i);
    struct Edge {
      std::size_t from, to;
      Move move;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> scratch;
      collect_paths(trees[i], scratch, paths);
      for (const auto& path : paths)
        for (auto kind : {Move::Kind::Gamma, Move::Kind::Iota}) {
          Move m{kind, path};
          auto t = apply_move(P, trees[i], m);
          if (!t) continue;
          auto it = index.find(*t);
          if (it != index.end()) edges.push_back({i, it->second, m});
        }
    }
    out.trees += trees.size();
    out.edges += edges.size();
    std::vector<std::vector<std::size_t>> adj(trees.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].from].push_back(e);
      adj[edges[e].to].push_back(e);
    }

    for_each_object_tuple(A, n, [&](std::span<const ObjId> a) {
      std::vector<MorId> cells(edges.size());
      std::vector<bool> cell_ok(edges.size(), true);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        try {
          cells[e] = move_cell(W, trees[edges[e].from], edges[e].move, 0, a);
          ObjId from = eval_object(W, trees[edges[e].from], a);
          ObjId to = eval_object(W, trees[edges[e].to], a);
          if (A.src(cells[e]) != from || A.dst(cells[e]) != to) {
            cell_ok[e] = false;
            r.fail("validate_weak_p_category.path_independence",
                   to_string(P, trees[edges[e].from]) + " " + move_string(edges[e].move) +
                       " @ " + tuple_string(A, a),
                   A.name(from) + " -> " + A.name(to),
                   A.name(A.src(cells[e])) + " -> " + A.name(A.dst(cells[e])));
          }
        } catch (const Error& ex) {
          cell_ok[e] = false;
          r.fail("validate_weak_p_category.path_independence",
                 to_string(P, trees[edges[e].from]) + " " + move_string(edges[e].move),
                 "defined", ex.what());
        }
      }
      // Breadth-first composites from the least tree of each component.
      std::vector<std::optional<MorId>> comp(trees.size());
      for (std::size_t root = 0; root < trees.size(); ++root) {
        if (comp[root]) continue;
        comp[root] = A.identity(eval_object(W, trees[root], a));
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
          std::size_t s = queue.front();
          queue.pop_front();
          for (auto e : adj[s]) {
            if (!cell_ok[e]) continue;
            const auto& edge = edges[e];
            std::size_t t = edge.from == s ? edge.to : edge.from;
            if (comp[t]) continue;
            if (edge.from == s) {
              comp[t] = A.compose(cells[e], *comp[s]);
            } else {
              if (!A.is_iso(cells[e])) continue;
              comp[t] = A.compose(A.invert(cells[e]), *comp[s]);
            }
            queue.push_back(t);
          }
        }
      }
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!cell_ok[e]) continue;
        const auto& edge = edges[e];
        const Tree& s = trees[edge.from];
        const Tree& t = trees[edge.to];
        std::string inst = to_string(P, s) + " => " + to_string(P, t) + " @ " +
                           tuple_string(A, a);
        ++r.instances;
        auto pasted = A.try_compose(cells[e], *comp[edge.from]);
        if (!pasted || *pasted != *comp[edge.to])
          r.fail("validate_weak_p_category.path_independence", inst,
                 A.name(*comp[edge.to]), pasted ? A.name(*pasted) : "undefined");
        ++r.instances;
        try {
          MorId d = A.compose(A.invert(delta_at(W, t, a)), delta_at(W, s, a));
          if (d != cells[e])
            r.fail("validate_weak_p_category.delta_consistency", inst, A.name(d),
                   A.name(cells[e]));
        } catch (const Error& ex) {
          r.fail("validate_weak_p_category.delta_consistency", inst, "defined", ex.what());
        }
      }
    });
  }
  return out;
}

CheckReport check_strict_action(const WeakPCategory& W, bool functoriality,
                                std::string_view name) {
  CheckReport r;
  const std::string n(name);
  const auto& P = W.operad();
  const auto& A = W.category();
  const OpId one = P.identity();
  try {
    for_each_object_tuple(A, 1, [&](std::span<const ObjId> a) {
      ++r.instances;
      if (W.act(one, a) != a[0])
        r.fail(n + ".unit_objects", tuple_string(A, a), A.name(a[0]), A.name(W.act(one, a)));
      else if (W.iota(a[0]) != A.identity(a[0]))
        r.fail(n + ".iota_identity", tuple_string(A, a), A.name(A.identity(a[0])),
               A.name(W.iota(a[0])));
    });
    for_each_morphism_tuple(A, 1, [&](std::span<const MorId> f) {
      ++r.instances;
      if (W.act(one, f) != f[0])
        r.fail(n + ".unit_morphisms", tuple_string(A, f), A.name(f[0]), A.name(W.act(one, f)));
    });
    for (std::size_t i = 0; i < P.size(); ++i) {
      OpId p(i);
      for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> a) {
        ++r.instances;
        std::vector<MorId> ids;
        for (auto x : a) ids.push_back(A.identity(x));
        MorId got = W.act(p, std::span<const MorId>(ids));
        if (got != A.identity(W.act(p, a)))
          r.fail(n + ".preserves_identity", P.name(p) + " " + tuple_string(A, a),
                 A.name(A.identity(W.act(p, a))), A.name(got));
      });
      if (functoriality) r.merge(check_functor(W.h(p), n + ".functor"));
    }
    for_each_composite(P, [&](OpId p, std::span<const OpId> ps) {
      OpId pq = P.compose(p, ps);
      const std::size_t m = total_arity(P, ps);
      std::string label = P.name(p) + " " + ops_string(P, ps);
      for_each_object_tuple(A, m, [&](std::span<const ObjId> a) {
        ++r.instances;
        std::vector<ObjId> inner;
        std::size_t at = 0;
        for (auto q : ps) {
          inner.push_back(W.act(q, a.subspan(at, P.arity(q))));
          at += P.arity(q);
        }
        ObjId lhs = W.act(p, std::span<const ObjId>(inner));
        ObjId rhs = W.act(pq, a);
        if (lhs != rhs)
          r.fail(n + ".strict_objects", label + " @ " + tuple_string(A, a), A.name(rhs),
                 A.name(lhs));
        else if (W.gamma(p, ps, a) != A.identity(rhs))
          r.fail(n + ".gamma_identity", label + " @ " + tuple_string(A, a),
                 A.name(A.identity(rhs)), A.name(W.gamma(p, ps, a)));
      });
      for_each_morphism_tuple(A, m, [&](std::span<const MorId> f) {
        ++r.instances;
        std::vector<MorId> inner;
        std::size_t at = 0;
        for (auto q : ps) {
          inner.push_back(W.act(q, f.subspan(at, P.arity(q))));
          at += P.arity(q);
        }
        MorId lhs = W.act(p, std::span<const MorId>(inner));
        MorId rhs = W.act(pq, f);
        if (lhs != rhs)
          r.fail(n + ".strict_morphisms", label + " @ " + tuple_string(A, f), A.name(rhs),
                 A.name(lhs));
      });
    });
  } catch (const Error& e) {
    r.fail(n + ".defined", "", "total", e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Weak functors

NatTransformation WeakPFunctor::psi_transformation(OpId p) const {
  Functor src = compose_power(target->h(p), G);
  Functor dst = compose(G, source->h(p));
  auto f = psi;
  return NatTransformation(src, dst, [f, p](std::span<const ObjId> xs) { return f(p, xs); });
}

WeakPFunctor identity_weak_p_functor(WeakPtr W) {
  auto w = W;
  return WeakPFunctor{W, W, Functor::identity(W->category_ptr()),
                      [w](OpId p, std::span<const ObjId> xs) {
                        return w->category().identity(w->act(p, xs));
                      }};
}

WeakPFunctor compose_weak_p_functors(const WeakPFunctor& after, const WeakPFunctor& before) {
  if (after.source->category_ptr() != before.target->category_ptr() ||
      after.source->operad_ptr() != before.target->operad_ptr())
    throw ShapeMismatch("weak functors are not composable");
  WeakPFunctor a = after, b = before;
  return WeakPFunctor{before.source, after.target, compose(after.G, before.G),
                      [a, b](OpId p, std::span<const ObjId> xs) {
                        std::vector<ObjId> fx;
                        for (auto x : xs) fx.push_back(b.G(x));
                        return a.target->category().compose(a.G(b.psi(p, xs)),
                                                            a.psi(p, fx));
                      }};
}

CheckReport validate_weak_p_functor(const WeakPFunctor& Phi) {
  CheckReport r;
  const auto& W = *Phi.source;
  const auto& V = *Phi.target;
  const auto& P = W.operad();
  const auto& A = W.category();
  const auto& B = V.category();
  const auto& G = Phi.G;
  if (Phi.source->operad_ptr() != Phi.target->operad_ptr() && !(P == V.operad()))
    r.fail("validate_weak_p_functor.operad", "", "same operad", "different operads");
  try {
    r.merge(check_functor(G, "validate_weak_p_functor.functor"));
    for (std::size_t i = 0; i < P.size(); ++i) {
      OpId p(i);
      auto psi = Phi.psi_transformation(p);
      std::size_t from = r.failures.size();
      r.merge(check_naturality(psi, "validate_weak_p_functor.psi"));
      for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> a) {
        ++r.instances;
        if (!B.is_iso(psi(a)))
          r.fail("validate_weak_p_functor.psi.iso", tuple_string(A, a), "isomorphism",
                 B.name(psi(a)));
      });
      tag(r, "psi " + P.name(p), from);
    }
    if (!r.passed()) return r;

    for_each_composite(P, [&](OpId p, std::span<const OpId> ps) {
      OpId pq = P.compose(p, ps);
      std::string label = P.name(p) + " " + ops_string(P, ps);
      for_each_object_tuple(A, total_arity(P, ps), [&](std::span<const ObjId> a) {
        ++r.instances;
        std::vector<ObjId> b, ga;
        std::vector<MorId> inner;
        std::size_t at = 0;
        for (auto q : ps) {
          auto chunk = a.subspan(at, P.arity(q));
          b.push_back(W.act(q, chunk));
          inner.push_back(Phi.psi(q, chunk));
          at += P.arity(q);
        }
        for (auto x : a) ga.push_back(G(x));
        MorId lhs = B.compose_path({G(W.gamma(p, ps, a)), Phi.psi(p, b),
                                    V.act(p, std::span<const MorId>(inner))});
        MorId rhs = B.compose(Phi.psi(pq, a), V.gamma(p, ps, ga));
        if (lhs != rhs)
          r.fail("validate_weak_p_functor.diagram_1", label + " @ " + tuple_string(A, a),
                 B.name(rhs), B.name(lhs));
      });
    });
    const OpId one = P.identity();
    for_each_object_tuple(A, 1, [&](std::span<const ObjId> a) {
      ++r.instances;
      MorId lhs = B.compose(Phi.psi(one, a), V.iota(G(a[0])));
      MorId rhs = G(W.iota(a[0]));
      if (lhs != rhs)
        r.fail("validate_weak_p_functor.diagram_2", tuple_string(A, a), B.name(rhs),
               B.name(lhs));
    });
  } catch (const Error& e) {
    r.fail("validate_weak_p_functor.defined", "", "total", e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// P-transformations

CheckReport validate_p_transformation(const PTransformation& s) {
  CheckReport r;
  const auto& W = *s.source.source;
  const auto& V = *s.source.target;
  const auto& P = W.operad();
  const auto& A = W.category();
  const auto& B = V.category();
  if (s.source.source->category_ptr() != s.target.source->category_ptr() ||
      s.source.target->category_ptr() != s.target.target->category_ptr()) {
    r.fail("validate_p_transformation.shape", "", "parallel weak functors", "mismatch");
    return r;
  }
  try {
    r.merge(check_naturality(s.sigma, "validate_p_transformation.naturality"));
    for_each_object_tuple(A, 1, [&](std::span<const ObjId> a) {
      ++r.instances;
      MorId c = s.sigma(a);
      if (B.src(c) != s.source.G(a[0]) || B.dst(c) != s.target.G(a[0]))
        r.fail("validate_p_transformation.endpoints", tuple_string(A, a),
               B.name(s.source.G(a[0])) + " -> " + B.name(s.target.G(a[0])),
               B.name(B.src(c)) + " -> " + B.name(B.dst(c)));
    });
    if (!r.passed()) return r;
    for (std::size_t i = 0; i < P.size(); ++i) {
      OpId p(i);
      for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> a) {
        ++r.instances;
        std::vector<MorId> sig;
        for (auto x : a) sig.push_back(s.sigma(x));
        MorId lhs = B.compose(s.target.psi(p, a), V.act(p, std::span<const MorId>(sig)));
        MorId rhs = B.compose(s.sigma(W.act(p, a)), s.source.psi(p, a));
        if (lhs != rhs)
          r.fail("validate_p_transformation.equation", P.name(p) + " @ " + tuple_string(A, a),
                 B.name(rhs), B.name(lhs));
      });
    }
  } catch (const Error& e) {
    r.fail("validate_p_transformation.defined", "", "total", e.what());
  }
  return r;
}

PTransformation invert_p_transformation(const PTransformation& s) {
  return PTransformation{s.target, s.source, invert(s.sigma)};
}

CheckReport check_adjoint_equivalence(const AdjointEquivalence& E) {
  CheckReport r;
  const auto& A = *E.F.domain();
  const auto& B = *E.F.codomain();
  try {
    r.merge(check_naturality(E.eta, "check_equivalence.eta"));
    r.merge(check_naturality(E.eps, "check_equivalence.eps"));
    for_each_object_tuple(A, 1, [&](std::span<const ObjId> a) {
      ++r.instances;
      MorId eta = E.eta(a);
      if (!A.is_iso(eta)) r.fail("check_equivalence.eta.iso", tuple_string(A, a), "isomorphism", A.name(eta));
      ObjId fa = E.F(a[0]);
      MorId tri = B.compose(E.eps(fa), E.F(eta));
      if (tri != B.identity(fa))
        r.fail("check_equivalence.triangle_F", tuple_string(A, a), B.name(B.identity(fa)),
               B.name(tri));
    });
    for_each_object_tuple(B, 1, [&](std::span<const ObjId> b) {
      ++r.instances;
      MorId eps = E.eps(b);
      if (!B.is_iso(eps)) r.fail("check_equivalence.eps.iso", tuple_string(B, b), "isomorphism", B.name(eps));
      ObjId gb = E.G(b[0]);
      MorId tri = A.compose(E.G(eps), E.eta(gb));
      if (tri != A.identity(gb))
        r.fail("check_equivalence.triangle_G", tuple_string(B, b), A.name(A.identity(gb)),
               A.name(tri));
    });
  } catch (const Error& e) {
    r.fail("check_equivalence.defined", "", "total", e.what());
  }
  return r;
}

TransportResult transport_along_equivalence(const WeakPFunctor& Phi, const AdjointEquivalence& E) {
  const WeakPFunctor phi = Phi;
  const AdjointEquivalence e = E;
  WeakPFunctor G{Phi.target, Phi.source, E.G,
                 [phi, e](OpId p, std::span<const ObjId> b) {
                   const auto& A = phi.source->category();
                   std::vector<ObjId> gb;
                   std::vector<MorId> eps;
                   for (auto x : b) {
                     gb.push_back(e.G(x));
                     eps.push_back(e.eps(x));
                   }
                   ObjId hgb = phi.source->act(p, std::span<const ObjId>(gb));
                   MorId pi_inv = phi.target->category().invert(phi.psi(p, gb));
                   return A.compose_path({e.G(phi.target->act(p, std::span<const MorId>(eps))),
                                          e.G(pi_inv), e.eta(hgb)});
                 }};
  auto id_A = identity_weak_p_functor(Phi.source);
  auto id_B = identity_weak_p_functor(Phi.target);
  PTransformation eta{id_A, compose_weak_p_functors(G, Phi), E.eta};
  PTransformation eps{compose_weak_p_functors(Phi, G), id_B, E.eps};
  TransportResult out{G, eta, eps, eta, eps, {}};
  auto& r = out.report;
  auto add = [&](CheckReport part, const std::string& role) {
    tag(part, role, 0);
    r.merge(part);
  };
  add(validate_weak_p_functor(G), "G");
  add(validate_p_transformation(eta), "eta");
  add(validate_p_transformation(eps), "eps");
  try {
    out.eta_inv = invert_p_transformation(eta);
    out.eps_inv = invert_p_transformation(eps);
    add(validate_p_transformation(out.eta_inv), "eta^-1");
    add(validate_p_transformation(out.eps_inv), "eps^-1");
  } catch (const NotInvertible& ex) {
    r.fail("transport_along_equivalence.invert_p_transformation", "", "invertible", ex.what());
  }
  return out;
}

}  // namespace opstrict
