#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opstrict/operad.hpp"

namespace opstrict {

/// A planar labelled tree: an element of the free operad on the underlying
/// collection of an operad. The bare leaf is the identity.
class Tree {
 public:
  Tree() = default;  // leaf

  static Tree leaf() { return Tree{}; }
  /// Unchecked: the caller guarantees children.size() == arity(label).
  static Tree node(OpId label, std::vector<Tree> children);

  bool is_leaf() const noexcept { return !label_.has_value(); }
  OpId label() const { return *label_; }
  std::span<const Tree> children() const noexcept { return children_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return size_; }

  bool operator==(const Tree& other) const;
  // Canonical order: by size, then leaf before node, then label, then
  // children left to right.
  std::strong_ordering operator<=>(const Tree& other) const;

 private:
  std::optional<OpId> label_;
  std::vector<Tree> children_;
  std::size_t arity_ = 1;
  std::size_t size_ = 0;
};

struct TreeHash {
  std::size_t operator()(const Tree& t) const noexcept;
};

/// Node(p, children) after checking the child count against arity(p).
Tree make_node(const TabulatedOperad& P, OpId p, std::vector<Tree> children);
Tree corolla(const TabulatedOperad& P, OpId p);

/// Substitutes subs into the leaves of s, left to right.
Tree graft(const Tree& s, std::span<const Tree> subs);

/// The counit: evaluates a tree to an element of P.
OpId eval_tree(const TabulatedOperad& P, const Tree& s);

/// All trees of the given arity with at most size_cap nodes, in canonical
/// order. Labels range over every element of P.
std::vector<Tree> enumerate_trees(const TabulatedOperad& P, std::size_t arity,
                                  std::size_t size_cap);
/// Same over a bare signature: label i has arity label_arities[i].
std::vector<Tree> enumerate_trees(std::span<const std::size_t> label_arities,
                                  std::size_t arity, std::size_t size_cap);

/// True iff Wk(P) has a 2-cell s -> t, i.e. the counit agrees.
bool has_two_cell(const TabulatedOperad& P, const Tree& s, const Tree& t);

/// Prefix rendering, "_" for a leaf: t2(t2(_,_),_).
std::string to_string(const TabulatedOperad& P, const Tree& s);
/// Parses the prefix rendering back.
Tree parse_tree(const TabulatedOperad& P, std::string_view text);

}  // namespace opstrict
