#include "opstrict/io.hpp"

#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace opstrict {

namespace {

// Identity when the endpoints agree, else the unique morphism of a singleton
// hom-set.
MorId default_cell(const FinCategory& A, ObjId x, ObjId y, const std::string& what) {
  if (x == y) return A.identity(x);
  auto hom = A.hom(x, y);
  if (hom.size() == 1) return hom[0];
  throw UndefinedEntry(what + " is undefined and has no default");
}

MorId default_action(const FinCategory& A, const Functor::ObjectMap& h,
                     std::span<const MorId> fs, const std::string& what) {
  std::vector<ObjId> xs, ys;
  bool identities = true;
  for (auto f : fs) {
    xs.push_back(A.src(f));
    ys.push_back(A.dst(f));
    identities = identities && A.is_identity(f);
  }
  ObjId x = h(std::span<const ObjId>(xs));
  if (identities) return A.identity(x);
  auto hom = A.hom(x, h(std::span<const ObjId>(ys)));
  if (hom.size() == 1) return hom[0];
  throw UndefinedEntry(what + " is undefined and has no default");
}

std::string names(const FinCategory& A, std::span<const ObjId> xs) {
  std::string s = "(";
  for (auto x : xs) s += " " + A.name(x);
  return s + " )";
}

std::string names(const FinCategory& A, std::span<const MorId> fs) {
  std::string s = "(";
  for (auto f : fs) s += " " + A.name(f);
  return s + " )";
}

std::string names(const TabulatedOperad& P, std::span<const OpId> ps) {
  std::string s = "(";
  for (auto p : ps) s += " " + P.name(p);
  return s + " )";
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

}  // namespace

WeakTables::WeakTables(OperadPtr P_, CategoryPtr A_)
    : P(std::move(P_)), A(std::move(A_)), act_obj(P->size()), act_mor(P->size()) {}

WeakPtr make_weak_p_category(WeakTables tables) {
  auto T = std::make_shared<const WeakTables>(std::move(tables));
  const auto& P = *T->P;
  std::vector<Functor> action;
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    auto on_obj = [T, p](std::span<const ObjId> xs) {
      auto it = T->act_obj[p.value].find(xs);
      if (it == T->act_obj[p.value].end())
        throw UndefinedEntry("act " + T->P->name(p) + " : obj " + names(*T->A, xs) +
                             " is undefined");
      return it->second;
    };
    auto on_mor = [T, p, on_obj](std::span<const MorId> fs) {
      auto it = T->act_mor[p.value].find(fs);
      if (it != T->act_mor[p.value].end()) return it->second;
      return default_action(*T->A, on_obj, fs,
                            "act " + T->P->name(p) + " : mor " + names(*T->A, fs));
    };
    action.emplace_back(T->A, P.arity(p), T->A, on_obj, on_mor);
  }
  auto objects = std::make_shared<std::vector<Functor>>(action);
  auto gamma = [T, objects](OpId p, std::span<const OpId> ps, std::span<const ObjId> xs) {
    std::vector<OpId> key{p};
    key.insert(key.end(), ps.begin(), ps.end());
    auto it = T->gamma.find(key);
    if (it != T->gamma.end()) {
      auto jt = it->second.find(xs);
      if (jt != it->second.end()) return jt->second;
    }
    const auto& h = *objects;
    std::vector<ObjId> inner;
    std::size_t at = 0;
    for (auto q : ps) {
      inner.push_back(h[q.value](xs.subspan(at, T->P->arity(q))));
      at += T->P->arity(q);
    }
    ObjId src = h[p.value](std::span<const ObjId>(inner));
    ObjId dst = h[T->P->compose(p, ps).value](xs);
    return default_cell(*T->A, src, dst,
                        "gamma " + T->P->name(p) + " " + names(*T->P, ps) + " @ " +
                            names(*T->A, xs));
  };
  auto iota = [T, objects](ObjId a) {
    auto it = T->iota.find(a);
    if (it != T->iota.end()) return it->second;
    ObjId h1 = (*objects)[T->P->identity().value](a);
    return default_cell(*T->A, a, h1, "iota @ " + T->A->name(a));
  };
  return std::make_shared<WeakPCategory>(T->P, T->A, std::move(action), gamma, iota);
}

WeakTables tabulate(const WeakPCategory& W) {
  WeakTables T(W.operad_ptr(), W.category_ptr());
  const auto& P = W.operad();
  const auto& A = W.category();
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> xs) {
      T.act_obj[i].emplace(std::vector<ObjId>(xs.begin(), xs.end()), W.act(p, xs));
    });
    for_each_morphism_tuple(A, P.arity(p), [&](std::span<const MorId> fs) {
      T.act_mor[i].emplace(std::vector<MorId>(fs.begin(), fs.end()), W.act(p, fs));
    });
  }
  for_each_composite(P, [&](OpId p, std::span<const OpId> ps) {
    std::vector<OpId> key{p};
    key.insert(key.end(), ps.begin(), ps.end());
    auto& table = T.gamma[key];
    for_each_object_tuple(A, total_arity(P, ps), [&](std::span<const ObjId> xs) {
      table.emplace(std::vector<ObjId>(xs.begin(), xs.end()), W.gamma(p, ps, xs));
    });
  });
  for (std::size_t a = 0; a < A.object_count(); ++a) T.iota.emplace(ObjId(a), W.iota(ObjId(a)));
  return T;
}

// ---------------------------------------------------------------------------
// Weak functors

WeakPFunctor make_weak_p_functor(FunctorTables tables) {
  auto T = std::make_shared<const FunctorTables>(std::move(tables));
  auto on_obj = [T](std::span<const ObjId> xs) {
    auto it = T->obj.find(xs[0]);
    if (it == T->obj.end())
      throw UndefinedEntry("obj " + T->source->category().name(xs[0]) + " is undefined");
    return it->second;
  };
  auto on_mor = [T, on_obj](std::span<const MorId> fs) {
    auto it = T->mor.find(fs[0]);
    if (it != T->mor.end()) return it->second;
    const auto& A = T->source->category();
    const auto& B = T->target->category();
    ObjId x = on_obj(std::array<ObjId, 1>{A.src(fs[0])});
    if (A.is_identity(fs[0])) return B.identity(x);
    ObjId y = on_obj(std::array<ObjId, 1>{A.dst(fs[0])});
    auto hom = B.hom(x, y);
    if (hom.size() == 1) return hom[0];
    throw UndefinedEntry("mor " + A.name(fs[0]) + " is undefined and has no default");
  };
  Functor G(T->source->category_ptr(), 1, T->target->category_ptr(), on_obj, on_mor);
  auto psi = [T, G](OpId p, std::span<const ObjId> xs) {
    auto it = T->psi.find({p, std::vector<ObjId>(xs.begin(), xs.end())});
    if (it != T->psi.end()) return it->second;
    std::vector<ObjId> gx;
    for (auto x : xs) gx.push_back(G(x));
    ObjId src = T->target->act(p, std::span<const ObjId>(gx));
    ObjId dst = G(T->source->act(p, xs));
    return default_cell(T->target->category(), src, dst,
                        "psi " + T->source->operad().name(p) + " @ " +
                            names(T->source->category(), xs));
  };
  return WeakPFunctor{T->source, T->target, G, psi};
}

// ---------------------------------------------------------------------------
// Text formats

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OperadLoader file_operad_loader(std::filesystem::path base) {
  return [base](const std::string& path) {
    std::filesystem::path p(path);
    return parse_operad(read_file(p.is_absolute() ? p : base / p));
  };
}

namespace {

std::vector<std::string> raw_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string first_word(const std::string& line) {
  auto cut = line.substr(0, line.find('#'));
  std::istringstream ss(cut);
  std::string w;
  ss >> w;
  return w;
}

}  // namespace

WeakPtr parse_wpc(std::string_view text, const OperadLoader& load) {
  using detail::LineCursor;
  auto lines = raw_lines(text);
  std::string operad_text, cat_text, act_text;
  std::optional<std::size_t> operad_line;
  std::optional<std::string> operad_path;
  bool in_operad = false, inline_operad = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    std::string w = first_word(line);
    std::string* dest = nullptr;
    if (in_operad) {
      if (w == "end") {
        in_operad = false;
      } else {
        dest = &operad_text;
      }
    } else if (w.empty()) {
    } else if (w == "begin" || w == "operad") {
      if (operad_line) throw ParseError("operad given twice", i + 1, 1);
      operad_line = i + 1;
      std::istringstream ss(line.substr(0, line.find('#')));
      std::string kw, arg, extra;
      ss >> kw >> arg;
      if (kw == "begin") {
        if (arg != "operad") throw ParseError("expected 'begin operad'", i + 1, 1);
        in_operad = inline_operad = true;
      } else {
        if (arg.empty()) throw ParseError("expected an operad path", i + 1, 1);
        operad_path = arg;
      }
      if (ss >> extra) throw ParseError("unexpected token '" + extra + "'", i + 1, 1);
    } else if (w == "obj" || w == "mor" || w == "id" || w == "comp" || w == "weight" ||
               w == "weight_cap") {
      dest = &cat_text;
    } else if (w == "act" || w == "gamma" || w == "iota") {
      dest = &act_text;
    } else {
      throw ParseError("unknown directive '" + w + "'", i + 1, line.find(w) + 1);
    }
    for (auto* t : {&operad_text, &cat_text, &act_text}) {
      if (t == dest) *t += line;
      *t += "\n";
    }
  }
  if (in_operad) throw ParseError("missing 'end operad'", lines.size(), 1);
  if (!operad_line) throw ParseError("missing operad reference", 1, 1);

  OperadPtr P;
  try {
    if (inline_operad) {
      P = std::make_shared<TabulatedOperad>(parse_operad(operad_text));
    } else {
      if (!load) throw ParseError("no loader for operad files", *operad_line, 1);
      P = std::make_shared<TabulatedOperad>(load(*operad_path));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), *operad_line, 1);
  }
  auto A = std::make_shared<FinCategory>(parse_category(cat_text));
  WeakTables T(P, A);

  auto op = [&](const detail::Token& t) {
    auto p = P->find(t.text);
    if (!p) throw ParseError("unknown operad element '" + t.text + "'", t.line, t.column);
    return *p;
  };
  auto obj = [&](const detail::Token& t) {
    auto x = A->find_object(t.text);
    if (!x) throw ParseError("unknown object '" + t.text + "'", t.line, t.column);
    return *x;
  };
  auto mor = [&](const detail::Token& t) {
    auto f = A->find_morphism(t.text);
    if (!f) throw ParseError("unknown morphism '" + t.text + "'", t.line, t.column);
    return *f;
  };
  for (const auto& line : detail::split_lines(detail::tokenize(act_text, "():=@"))) {
    LineCursor cur(line);
    const auto& kw = cur.next();
    if (kw.text == "act") {
      OpId p = op(cur.next());
      cur.expect(":");
      const auto& kind = cur.next();
      auto args = cur.parenthesized();
      if (args.size() != P->arity(p))
        throw ParseError("act " + P->name(p) + " needs " + std::to_string(P->arity(p)) +
                             " arguments",
                         kind.line, kind.column);
      cur.expect("=");
      const auto& rhs = cur.next();
      bool fresh = true;
      if (kind.text == "obj") {
        std::vector<ObjId> xs;
        for (const auto& t : args) xs.push_back(obj(t));
        fresh = T.act_obj[p.value].emplace(xs, obj(rhs)).second;
      } else if (kind.text == "mor") {
        std::vector<MorId> fs;
        for (const auto& t : args) fs.push_back(mor(t));
        fresh = T.act_mor[p.value].emplace(fs, mor(rhs)).second;
      } else {
        throw ParseError("expected 'obj' or 'mor'", kind.line, kind.column);
      }
      if (!fresh) throw ParseError("duplicate act entry", kw.line, kw.column);
    } else if (kw.text == "gamma") {
      std::vector<OpId> key{op(cur.next())};
      for (const auto& t : cur.parenthesized()) key.push_back(op(t));
      if (key.size() - 1 != P->arity(key[0]))
        throw ParseError("gamma needs one element per argument", kw.line, kw.column);
      cur.expect("@");
      std::vector<ObjId> xs;
      for (const auto& t : cur.parenthesized()) xs.push_back(obj(t));
      cur.expect("=");
      MorId m = mor(cur.next());
      if (!T.gamma[key].emplace(xs, m).second)
        throw ParseError("duplicate gamma entry", kw.line, kw.column);
    } else {
      cur.expect("@");
      ObjId a = obj(cur.next());
      cur.expect("=");
      if (!T.iota.emplace(a, mor(cur.next())).second)
        throw ParseError("duplicate iota entry", kw.line, kw.column);
    }
    cur.expect_end();
  }
  return make_weak_p_category(std::move(T));
}

std::string print_wpc(const WeakPCategory& W) {
  const auto& P = W.operad();
  const auto& A = W.category();
  std::ostringstream out;
  out << "begin operad\n" << print_operad(P) << "end operad\n";
  out << print_category(A);
  // Default values are computed from the object part alone.
  WeakTables bare(W.operad_ptr(), W.category_ptr());
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> xs) {
      ObjId y = W.act(p, xs);
      bare.act_obj[i].emplace(std::vector<ObjId>(xs.begin(), xs.end()), y);
      out << "act " << P.name(p) << " : obj " << names(A, xs) << " = " << A.name(y) << "\n";
    });
  }
  auto defaults = make_weak_p_category(std::move(bare));
  auto same = [](const std::function<MorId()>& dflt, MorId actual) {
    try {
      return dflt() == actual;
    } catch (const Error&) {
      return false;
    }
  };
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_morphism_tuple(A, P.arity(p), [&](std::span<const MorId> fs) {
      MorId m = W.act(p, fs);
      if (!same([&] { return defaults->act(p, fs); }, m))
        out << "act " << P.name(p) << " : mor " << names(A, fs) << " = " << A.name(m) << "\n";
    });
  }
  for_each_composite(P, [&](OpId p, std::span<const OpId> ps) {
    for_each_object_tuple(A, total_arity(P, ps), [&](std::span<const ObjId> xs) {
      MorId m = W.gamma(p, ps, xs);
      if (!same([&] { return defaults->gamma(p, ps, xs); }, m))
        out << "gamma " << P.name(p) << " " << names(P, ps) << " @ " << names(A, xs) << " = "
            << A.name(m) << "\n";
    });
  });
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    MorId m = W.iota(ObjId(a));
    if (!same([&] { return defaults->iota(ObjId(a)); }, m))
      out << "iota @ " << A.name(ObjId(a)) << " = " << A.name(m) << "\n";
  }
  return out.str();
}

WeakPFunctor parse_wfun(std::string_view text, WeakPtr source, WeakPtr target) {
  using detail::LineCursor;
  const auto& P = source->operad();
  const auto& A = source->category();
  const auto& B = target->category();
  FunctorTables T{source, target, {}, {}, {}};
  auto lookup_obj = [](const FinCategory& C, const detail::Token& t) {
    auto x = C.find_object(t.text);
    if (!x) throw ParseError("unknown object '" + t.text + "'", t.line, t.column);
    return *x;
  };
  auto lookup_mor = [](const FinCategory& C, const detail::Token& t) {
    auto f = C.find_morphism(t.text);
    if (!f) throw ParseError("unknown morphism '" + t.text + "'", t.line, t.column);
    return *f;
  };
  for (const auto& line : detail::split_lines(detail::tokenize(text, "():=@"))) {
    LineCursor cur(line);
    const auto& kw = cur.next();
    bool fresh = true;
    if (kw.text == "obj") {
      ObjId a = lookup_obj(A, cur.next());
      cur.expect("=");
      fresh = T.obj.emplace(a, lookup_obj(B, cur.next())).second;
    } else if (kw.text == "mor") {
      MorId f = lookup_mor(A, cur.next());
      cur.expect("=");
      fresh = T.mor.emplace(f, lookup_mor(B, cur.next())).second;
    } else if (kw.text == "psi") {
      const auto& name = cur.next();
      auto p = P.find(name.text);
      if (!p) throw ParseError("unknown operad element '" + name.text + "'", name.line, name.column);
      cur.expect("@");
      std::vector<ObjId> xs;
      for (const auto& t : cur.parenthesized()) xs.push_back(lookup_obj(A, t));
      if (xs.size() != P.arity(*p))
        throw ParseError("psi needs " + std::to_string(P.arity(*p)) + " objects", name.line,
                         name.column);
      cur.expect("=");
      fresh = T.psi.emplace(std::make_pair(*p, xs), lookup_mor(B, cur.next())).second;
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line, kw.column);
    }
    if (!fresh) throw ParseError("duplicate entry", kw.line, kw.column);
    cur.expect_end();
  }
  return make_weak_p_functor(std::move(T));
}

std::string print_wfun(const WeakPFunctor& Phi) {
  const auto& W = *Phi.source;
  const auto& P = W.operad();
  const auto& A = W.category();
  const auto& B = Phi.target->category();
  std::ostringstream out;
  FunctorTables bare{Phi.source, Phi.target, {}, {}, {}};
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    ObjId x(a);
    bare.obj.emplace(x, Phi.G(x));
    out << "obj " << A.name(x) << " = " << B.name(Phi.G(x)) << "\n";
  }
  auto defaults = make_weak_p_functor(std::move(bare));
  auto same = [](const std::function<MorId()>& dflt, MorId actual) {
    try {
      return dflt() == actual;
    } catch (const Error&) {
      return false;
    }
  };
  for (std::size_t f = 0; f < A.morphism_count(); ++f) {
    MorId m(f);
    if (!same([&] { return defaults.G(m); }, Phi.G(m)))
      out << "mor " << A.name(m) << " = " << B.name(Phi.G(m)) << "\n";
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_object_tuple(A, P.arity(p), [&](std::span<const ObjId> xs) {
      MorId m = Phi.psi(p, xs);
      if (!same([&] { return defaults.psi(p, xs); }, m))
        out << "psi " << P.name(p) << " @ " << names(A, xs) << " = " << B.name(m) << "\n";
    });
  }
  return out.str();
}

}  // namespace opstrict
