#include "opstrict/theory.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include "lexer.hpp"

namespace opstrict {

namespace {

using detail::Token;

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

class TheoryParser {
 public:
  explicit TheoryParser(std::string_view text)
      : tokens_(detail::tokenize(text, "(),=/:;")) {}

  Presentation parse() {
    Presentation p;
    p.name = "unnamed";
    if (accept("theory")) p.name = identifier("theory name").text;
    expect("ops");
    expect(":");
    parse_ops(p);
    if (accept("eqs")) {
      expect(":");
      while (!done()) {
        Equation eq;
        eq.line = peek().line;
        eq.lhs = term(p);
        expect("=");
        eq.rhs = term(p);
        p.equations.push_back(std::move(eq));
        while (accept(";") || accept(",")) {
        }
      }
    }
    if (!done()) fail("unexpected token '" + peek().text + "'");
    return p;
  }

 private:
  void parse_ops(Presentation& p) {
    if (done() || peek().text == "eqs") return;
    while (true) {
      const Token& name = identifier("operation name");
      if (is_keyword(name.text))
        throw ParseError("'" + name.text + "' is reserved", name.line, name.column);
      expect("/");
      const Token& n = next();
      std::size_t arity = 0;
      if (n.text.empty() || !std::all_of(n.text.begin(), n.text.end(), ::isdigit))
        throw ParseError("expected an arity, found '" + n.text + "'", n.line,
                         n.column);
      arity = std::stoul(n.text);
      for (const auto& d : p.ops)
        if (d.name == name.text)
          throw ParseError("duplicate operation '" + name.text + "'", name.line,
                           name.column);
      p.ops.push_back({name.text, arity});
      if (!accept(",")) break;
    }
  }

  LinearTerm term(const Presentation& p) {
    const Token& head = identifier("term");
    auto decl = std::find_if(p.ops.begin(), p.ops.end(),
                             [&](const OpDecl& d) { return d.name == head.text; });
    if (decl == p.ops.end()) {
      if (!std::islower(static_cast<unsigned char>(head.text[0])) ||
          is_keyword(head.text))
        throw ParseError("'" + head.text + "' is neither a declared operation "
                         "nor a lowercase variable",
                         head.line, head.column);
      if (!done() && peek().text == "(")
        throw ParseError("undeclared operation '" + head.text + "'", head.line,
                         head.column);
      return LinearTerm::var(head.text);
    }
    std::vector<LinearTerm> args;
    if (accept("(")) {
      if (!accept(")")) {
        while (true) {
          args.push_back(term(p));
          if (accept(")")) break;
          expect(",");
        }
      }
    }
    if (args.size() != decl->arity)
      throw ParseError("operation '" + head.text + "' declared with arity " +
                           std::to_string(decl->arity) + " applied to " +
                           std::to_string(args.size()) + " arguments",
                       head.line, head.column);
    return LinearTerm::app(head.text, std::move(args));
  }

  static bool is_keyword(const std::string& s) {
    return s == "theory" || s == "ops" || s == "eqs";
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) fail("unexpected end of input");
    return tokens_[pos_];
  }
  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  bool accept(std::string_view s) {
    if (!done() && tokens_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    const Token& t = peek();
    if (t.text != s)
      throw ParseError("expected '" + std::string(s) + "', found '" + t.text + "'",
                       t.line, t.column);
    ++pos_;
  }
  const Token& identifier(const char* what) {
    const Token& t = next();
    if (!is_identifier(t.text))
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'",
                       t.line, t.column);
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    if (tokens_.empty()) throw ParseError(msg, 1, 1);
    const Token& t = done() ? tokens_.back() : tokens_[pos_];
    throw ParseError(msg, t.line, t.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void collect_vars(const LinearTerm& t, std::vector<std::string>& out) {
  if (t.kind == LinearTerm::Kind::Var) {
    out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  return TheoryParser(text).parse();
}

std::string to_string(RegularityViolation v) {
  switch (v) {
    case RegularityViolation::VariableSetMismatch:
      return "variable-set mismatch";
    case RegularityViolation::OrderMismatch:
      return "order mismatch";
    case RegularityViolation::RepeatedVariable:
      return "repeated variable";
  }
  return "?";
}

std::vector<std::string> variables_of(const LinearTerm& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

std::string to_string(const LinearTerm& t) {
  if (t.kind == LinearTerm::Kind::Var) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

RegularityReport check_strong_regularity(const Presentation& p) {
  RegularityReport report;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    auto lv = variables_of(p.equations[i].lhs);
    auto rv = variables_of(p.equations[i].rhs);
    std::set<std::string> ls(lv.begin(), lv.end()), rs(rv.begin(), rv.end());
    bool repeated = ls.size() != lv.size() || rs.size() != rv.size();
    if (repeated)
      report.violations.emplace_back(i, RegularityViolation::RepeatedVariable);
    if (ls != rs)
      report.violations.emplace_back(i, RegularityViolation::VariableSetMismatch);
    else if (!repeated && lv != rv)
      report.violations.emplace_back(i, RegularityViolation::OrderMismatch);
  }
  report.regular = report.violations.empty();
  return report;
}

Tree term_to_tree(const Presentation& p, const LinearTerm& t) {
  if (t.kind == LinearTerm::Kind::Var) return Tree::leaf();
  auto it = std::find_if(p.ops.begin(), p.ops.end(),
                         [&](const OpDecl& d) { return d.name == t.name; });
  if (it == p.ops.end()) throw Error("undeclared operation '" + t.name + "'");
  std::vector<Tree> children;
  for (const auto& a : t.args) children.push_back(term_to_tree(p, a));
  return Tree::node(OpId(static_cast<std::size_t>(it - p.ops.begin())),
                    std::move(children));
}

// ---------------------------------------------------------------------------

CongruenceClosure::CongruenceClosure(std::vector<std::size_t> signature,
                                     std::vector<std::pair<Tree, Tree>> equations,
                                     std::size_t arity_cap,
                                     std::size_t term_size_cap)
    : signature_(std::move(signature)),
      equations_(std::move(equations)),
      arity_cap_(arity_cap),
      size_cap_(term_size_cap) {
  for (std::size_t n = 0; n <= arity_cap_; ++n) {
    auto trees = enumerate_trees(signature_, n, size_cap_);
    universe_.insert(universe_.end(), trees.begin(), trees.end());
  }
  for (std::size_t i = 0; i < universe_.size(); ++i) index_.emplace(universe_[i], i);
  child_index_.resize(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i)
    for (const auto& c : universe_[i].children())
      child_index_[i].push_back(index_.at(c));
  parent_.resize(universe_.size());
  for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
}

std::optional<std::size_t> CongruenceClosure::index_of(const Tree& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CongruenceClosure::find(std::size_t i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool CongruenceClosure::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  // Keep the canonically smaller term as root; universe order is canonical
  // within each arity and both terms share an arity.
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  return true;
}

std::size_t CongruenceClosure::seed_instances() {
  std::size_t merges = 0;
  for (const auto& [lhs, rhs] : equations_) {
    const std::size_t k = lhs.arity();
    const std::size_t base = std::min(lhs.size(), rhs.size());
    if (base > size_cap_) {
      continue;
    }
    std::vector<Tree> subs(k);
    auto rec = [&](auto&& self, std::size_t i, std::size_t arity_left,
                   std::size_t size_left) -> void {
      if (i == k) {
        Tree l = graft(lhs, subs), r = graft(rhs, subs);
        bool l_in = l.size() <= size_cap_, r_in = r.size() <= size_cap_;
        if (l_in && r_in) {
          if (unite(index_.at(l), index_.at(r))) ++merges;
        } else if (l_in != r_in) {
          ++blocked_instances_;
        }
        return;
      }
      for (const auto& t : universe_) {
        if (t.arity() > arity_left || t.size() > size_left) continue;
        subs[i] = t;
        self(self, i + 1, arity_left - t.arity(), size_left - t.size());
      }
    };
    rec(rec, 0, arity_cap_, size_cap_ - base);
  }
  return merges;
}

std::size_t CongruenceClosure::close_contexts() {
  std::size_t merges = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_map<std::vector<ObjId>, std::size_t, TupleHash, TupleEq> seen;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      const Tree& t = universe_[i];
      if (t.is_leaf()) continue;
      // Signature: label followed by the class of each child.
      std::vector<ObjId> key{ObjId(t.label().value)};
      for (auto c : child_index_[i]) key.push_back(ObjId(find(c)));
      auto [it, inserted] = seen.emplace(std::move(key), i);
      if (!inserted && unite(it->second, i)) {
        ++merges;
        changed = true;
      }
    }
  }
  return merges;
}

std::size_t CongruenceClosure::run() {
  std::size_t merges = 0;
  if (!seeded_) {
    merges += seed_instances();
    seeded_ = true;
  }
  merges += close_contexts();
  return merges;
}

std::size_t CongruenceClosure::blocked_contexts() const {
  std::vector<std::size_t> largest(universe_.size(), 0);
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    auto r = find(i);
    largest[r] = std::max(largest[r], universe_[i].size());
  }
  std::size_t blocked = 0;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    const Tree& t = universe_[i];
    for (std::size_t j = 0; j < child_index_[i].size(); ++j) {
      auto c = child_index_[i][j];
      if (t.size() - universe_[c].size() + largest[find(c)] > size_cap_) ++blocked;
    }
  }
  return blocked;
}

// ---------------------------------------------------------------------------

namespace {

std::string render_term(const Presentation& p, const Tree& t, std::size_t& var) {
  if (t.is_leaf()) return "x" + std::to_string(++var);
  std::string out = p.ops[t.label().value].name + "(";
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += ",";
    first = false;
    out += render_term(p, c, var);
  }
  return out + ")";
}

}  // namespace

CompiledTheory compile_operad(const Presentation& p, std::size_t arity_cap,
                              std::size_t term_size_cap) {
  if (arity_cap < 1) throw CapExceeded("arity cap must be at least 1");
  auto regularity = check_strong_regularity(p);
  if (!regularity.regular) {
    std::string why;
    for (const auto& [eq, v] : regularity.violations)
      why += " [equation " + std::to_string(eq) + ": " + to_string(v) + "]";
    throw NotStronglyRegular("theory '" + p.name + "' is not strongly regular:" + why);
  }

  std::vector<std::size_t> signature;
  for (const auto& d : p.ops) signature.push_back(d.arity);
  std::vector<std::pair<Tree, Tree>> eqs;
  for (const auto& e : p.equations)
    eqs.emplace_back(term_to_tree(p, e.lhs), term_to_tree(p, e.rhs));

  CongruenceClosure closure(signature, eqs, arity_cap, term_size_cap);
  ClosureReport report;
  report.requested_arity_cap = arity_cap;
  report.universe_size = closure.universe().size();
  report.merges = closure.run();
  report.blocked_instances = closure.blocked_instances();
  report.blocked_contexts = closure.blocked_contexts();

  const auto& U = closure.universe();
  // Classes, ordered by arity then by least representative.
  std::unordered_map<std::size_t, std::size_t> class_of_root;  // root -> element
  std::vector<std::size_t> rep_index;                          // element -> universe index
  std::vector<std::size_t> elem_arity;
  for (std::size_t i = 0; i < U.size(); ++i) {
    auto r = closure.find(i);
    if (class_of_root.contains(r)) continue;
    class_of_root.emplace(r, rep_index.size());
    rep_index.push_back(i);
    elem_arity.push_back(U[i].arity());
  }
  auto element_of = [&](std::size_t universe_idx) {
    return class_of_root.at(closure.find(universe_idx));
  };

  // Generator action on classes: label applied to representatives.
  // nullopt marks a hole (the term falls outside the universe).
  std::size_t effective_cap = arity_cap;
  std::map<std::vector<std::size_t>, std::optional<std::size_t>> action;
  for (std::size_t f = 0; f < signature.size(); ++f) {
    const std::size_t k = signature[f];
    std::vector<std::size_t> args(k);
    auto rec = [&](auto&& self, std::size_t i, std::size_t total) -> void {
      if (i == k) {
        std::vector<Tree> children;
        for (auto a : args) children.push_back(U[rep_index[a]]);
        Tree t = Tree::node(OpId(f), std::move(children));
        std::vector<std::size_t> key{f};
        key.insert(key.end(), args.begin(), args.end());
        auto idx = closure.index_of(t);
        if (idx) {
          action[key] = element_of(*idx);
        } else {
          action[key] = std::nullopt;
          if (total == 0) {
            effective_cap = 0;
          } else {
            effective_cap = std::min(effective_cap, total - 1);
          }
        }
        return;
      }
      for (std::size_t a = 0; a < rep_index.size(); ++a) {
        if (total + elem_arity[a] > arity_cap) continue;
        args[i] = a;
        self(self, i + 1, total + elem_arity[a]);
      }
    };
    rec(rec, 0, 0);
  }
  if (effective_cap < 1)
    throw CapExceeded("no operad fits: a generator image of arity <= 1 exceeds "
                      "the term size cap");
  report.effective_arity_cap = effective_cap;
  report.cap_limited = report.blocked_instances > 0 || report.blocked_contexts > 0 ||
                       effective_cap < arity_cap;

  // Elements within the effective cap, renumbered per arity.
  std::vector<OpSymbol> elements;
  std::vector<std::size_t> element_to_op(rep_index.size(), SIZE_MAX);
  std::vector<std::size_t> per_arity(arity_cap + 1, 0);
  for (std::size_t e = 0; e < rep_index.size(); ++e) {
    if (elem_arity[e] > effective_cap) continue;
    std::size_t n = elem_arity[e];
    std::string name = "c" + std::to_string(n) + "_" + std::to_string(per_arity[n]++);
    element_to_op[e] = elements.size();
    elements.push_back({name, n});
    std::size_t var = 0;
    report.representatives[name] = render_term(p, U[rep_index[e]], var);
  }

  // Evaluate a representative with its leaves replaced by classes.
  auto evaluate = [&](const Tree& rep, std::span<const std::size_t> leaves) {
    std::size_t next = 0;
    auto rec = [&](auto&& self, const Tree& t) -> std::size_t {
      if (t.is_leaf()) return leaves[next++];
      std::vector<std::size_t> key{t.label().value};
      for (const auto& c : t.children()) key.push_back(self(self, c));
      auto v = action.at(key);
      if (!v) throw CapExceeded("composite outside the term universe");
      return *v;
    };
    return rec(rec, rep);
  };

  CompTable table;
  std::vector<std::size_t> live;
  for (std::size_t e = 0; e < rep_index.size(); ++e)
    if (element_to_op[e] != SIZE_MAX) live.push_back(e);
  for (auto e : live) {
    const std::size_t k = elem_arity[e];
    std::vector<std::size_t> args(k);
    auto rec = [&](auto&& self, std::size_t i, std::size_t total) -> void {
      if (i == k) {
        std::size_t result = evaluate(U[rep_index[e]], args);
        std::vector<OpId> key{OpId(element_to_op[e])};
        for (auto a : args) key.push_back(OpId(element_to_op[a]));
        table[key] = OpId(element_to_op[result]);
        return;
      }
      for (auto a : live) {
        if (total + elem_arity[a] > effective_cap) continue;
        args[i] = a;
        self(self, i + 1, total + elem_arity[a]);
      }
    };
    rec(rec, 0, 0);
  }

  OpId identity(element_to_op[element_of(*closure.index_of(Tree::leaf()))]);
  TabulatedOperad operad(effective_cap, std::move(elements), identity,
                         std::move(table));
  report.laws = check_operad_laws(operad);
  return {std::move(operad), std::move(report)};
}

}  // namespace opstrict
