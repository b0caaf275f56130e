#include "opstrict/tree.hpp"

#include <algorithm>
#include <map>

namespace opstrict {

Tree Tree::node(OpId label, std::vector<Tree> children) {
  Tree t;
  t.label_ = label;
  t.arity_ = 0;
  t.size_ = 1;
  for (const auto& c : children) {
    t.arity_ += c.arity_;
    t.size_ += c.size_;
  }
  t.children_ = std::move(children);
  return t;
}

bool Tree::operator==(const Tree& other) const {
  return size_ == other.size_ && arity_ == other.arity_ &&
         label_ == other.label_ && children_ == other.children_;
}

std::strong_ordering Tree::operator<=>(const Tree& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  if (is_leaf() || other.is_leaf()) return !is_leaf() <=> !other.is_leaf();
  if (auto c = *label_ <=> *other.label_; c != 0) return c;
  for (std::size_t i = 0; i < children_.size() && i < other.children_.size();
       ++i)
    if (auto c = children_[i] <=> other.children_[i]; c != 0) return c;
  return children_.size() <=> other.children_.size();
}

std::size_t TreeHash::operator()(const Tree& t) const noexcept {
  if (t.is_leaf()) return 0x51ed27u;
  std::size_t h = 0xcbf29ce484222325ull ^ t.label().value;
  for (const auto& c : t.children())
    h = (h ^ (*this)(c)) * 1099511628211ull + 0x9e3779b97f4a7c15ull;
  return h;
}

Tree make_node(const TabulatedOperad& P, OpId p, std::vector<Tree> children) {
  if (children.size() != P.arity(p))
    throw ArityMismatch("node " + P.name(p) + " of arity " +
                        std::to_string(P.arity(p)) + " given " +
                        std::to_string(children.size()) + " children");
  return Tree::node(p, std::move(children));
}

Tree corolla(const TabulatedOperad& P, OpId p) {
  return Tree::node(p, std::vector<Tree>(P.arity(p)));
}

namespace {

Tree graft_impl(const Tree& s, std::span<const Tree> subs, std::size_t& next) {
  if (s.is_leaf()) return subs[next++];
  std::vector<Tree> children;
  children.reserve(s.children().size());
  for (const auto& c : s.children())
    children.push_back(graft_impl(c, subs, next));
  return Tree::node(s.label(), std::move(children));
}

}  // namespace

Tree graft(const Tree& s, std::span<const Tree> subs) {
  if (subs.size() != s.arity())
    throw ArityMismatch("graft into a tree of arity " +
                        std::to_string(s.arity()) + " given " +
                        std::to_string(subs.size()) + " subtrees");
  std::size_t next = 0;
  return graft_impl(s, subs, next);
}

OpId eval_tree(const TabulatedOperad& P, const Tree& s) {
  if (s.is_leaf()) return P.identity();
  if (s.children().size() != P.arity(s.label()))
    throw ArityMismatch("node " + P.name(s.label()) +
                        " has the wrong number of children");
  std::vector<OpId> args;
  args.reserve(s.children().size());
  for (const auto& c : s.children()) args.push_back(eval_tree(P, c));
  return P.compose(s.label(), args);
}

std::vector<Tree> enumerate_trees(std::span<const std::size_t> label_arities,
                                  std::size_t arity, std::size_t size_cap) {
  // by_shape[s][a]: all trees with exactly s nodes and arity a. A subtree
  // never has larger arity than the whole tree, so a <= arity suffices.
  std::vector<std::vector<std::vector<Tree>>> by_shape(
      size_cap + 1, std::vector<std::vector<Tree>>(arity + 1));
  if (arity >= 1) by_shape[0][1].push_back(Tree::leaf());

  for (std::size_t s = 1; s <= size_cap; ++s) {
    for (std::size_t label = 0; label < label_arities.size(); ++label) {
      const std::size_t k = label_arities[label];
      std::vector<Tree> children(k);
      // Distribute s - 1 nodes and at most `arity` leaves over k children.
      auto rec = [&](auto&& self, std::size_t i, std::size_t nodes_left,
                     std::size_t arity_used) -> void {
        if (i == k) {
          if (nodes_left == 0)
            by_shape[s][arity_used].push_back(
                Tree::node(OpId(label), children));
          return;
        }
        for (std::size_t cs = 0; cs <= nodes_left; ++cs)
          for (std::size_t ca = 0; ca + arity_used <= arity; ++ca)
            for (const auto& c : by_shape[cs][ca]) {
              children[i] = c;
              self(self, i + 1, nodes_left - cs, arity_used + ca);
            }
      };
      rec(rec, 0, s - 1, 0);
    }
  }

  std::vector<Tree> out;
  for (std::size_t s = 0; s <= size_cap; ++s)
    out.insert(out.end(), by_shape[s][arity].begin(), by_shape[s][arity].end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tree> enumerate_trees(const TabulatedOperad& P, std::size_t arity,
                                  std::size_t size_cap) {
  if (arity > P.arity_cap())
    throw CapExceeded("tree arity " + std::to_string(arity) +
                      " above operad cap " + std::to_string(P.arity_cap()));
  std::vector<std::size_t> arities;
  for (const auto& e : P.elements()) arities.push_back(e.arity);
  return enumerate_trees(arities, arity, size_cap);
}

bool has_two_cell(const TabulatedOperad& P, const Tree& s, const Tree& t) {
  if (s.arity() != t.arity()) return false;
  return eval_tree(P, s) == eval_tree(P, t);
}

std::string to_string(const TabulatedOperad& P, const Tree& s) {
  if (s.is_leaf()) return "_";
  std::string out = P.name(s.label()) + "(";
  bool first = true;
  for (const auto& c : s.children()) {
    if (!first) out += ",";
    first = false;
    out += to_string(P, c);
  }
  return out + ")";
}

namespace {

Tree parse_tree_at(const TabulatedOperad& P, std::string_view text,
                   std::size_t& pos) {
  auto fail = [&](const std::string& msg) -> Tree {
    throw ParseError(msg, 1, pos + 1);
  };
  if (pos < text.size() && text[pos] == '_') {
    ++pos;
    return Tree::leaf();
  }
  std::size_t start = pos;
  while (pos < text.size() && text[pos] != '(' && text[pos] != ',' &&
         text[pos] != ')')
    ++pos;
  auto name = text.substr(start, pos - start);
  auto op = P.find(name);
  if (!op) return fail("unknown operad element '" + std::string(name) + "'");
  if (pos >= text.size() || text[pos] != '(') return fail("expected '('");
  ++pos;
  std::vector<Tree> children;
  if (pos < text.size() && text[pos] == ')') {
    ++pos;
  } else {
    while (true) {
      children.push_back(parse_tree_at(P, text, pos));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      return fail("expected ',' or ')'");
    }
  }
  if (children.size() != P.arity(*op))
    return fail("wrong number of children for '" + std::string(name) + "'");
  return Tree::node(*op, std::move(children));
}

}  // namespace

Tree parse_tree(const TabulatedOperad& P, std::string_view text) {
  std::size_t pos = 0;
  Tree t = parse_tree_at(P, text, pos);
  if (pos != text.size()) throw ParseError("trailing characters", 1, pos + 1);
  return t;
}

}  // namespace opstrict
