#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "opstrict/tree.hpp"
#include "oracles.hpp"

using namespace opstrict;

namespace {

std::vector<std::size_t> signature_of(const TabulatedOperad& P) {
  std::vector<std::size_t> sig;
  for (const auto& e : P.elements()) sig.push_back(e.arity);
  return sig;
}

std::vector<Tree> all_trees(const TabulatedOperad& P, std::size_t size_cap) {
  std::vector<Tree> out;
  for (std::size_t n = 0; n <= P.arity_cap(); ++n) {
    auto ts = enumerate_trees(P, n, size_cap);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

}  // namespace

TEST_CASE("one binary symbol gives Catalan many shapes") {
  std::vector<std::size_t> sig{2};
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (std::size_t n = 1; n <= 7; ++n) {
    auto trees = enumerate_trees(sig, n, 10);
    CHECK(trees.size() == catalan[n - 1]);
    for (const auto& t : trees) CHECK(t.size() == n - 1);
  }
}

TEST_CASE("tree counts agree with the counting recursion") {
  for (const auto& P : {terminal_operad(3), free_binary_operad(3), cyclic_unary_operad(2)}) {
    auto sig = signature_of(P);
    for (std::size_t n = 0; n <= P.arity_cap(); ++n)
      for (std::size_t s = 0; s <= 3; ++s)
        CHECK(enumerate_trees(P, n, s).size() == oracle::count_trees(sig, n, s));
  }
}

TEST_CASE("enumeration is canonical, duplicate free and well formed") {
  auto P = terminal_operad(3);
  auto trees = enumerate_trees(P, 2, 3);
  CHECK(std::is_sorted(trees.begin(), trees.end()));
  CHECK(std::adjacent_find(trees.begin(), trees.end()) == trees.end());
  for (const auto& t : trees) {
    CHECK(t.arity() == 2);
    CHECK(t.size() <= 3);
  }
}

TEST_CASE("eval of a corolla and of a leaf") {
  auto P = free_binary_operad(3);
  CHECK(eval_tree(P, Tree::leaf()) == P.identity());
  for (std::size_t i = 0; i < P.size(); ++i)
    CHECK(eval_tree(P, corolla(P, OpId(i))) == OpId(i));
}

TEST_CASE("eval is a homomorphism for grafting") {
  for (const auto& P : {terminal_operad(3), free_binary_operad(3), cyclic_unary_operad(2)}) {
    auto trees = all_trees(P, 2);
    for (const auto& s : trees) {
      std::vector<Tree> subs(s.arity());
      auto rec = [&](auto&& self, std::size_t i, std::size_t budget) -> void {
        if (i == subs.size()) {
          std::vector<OpId> values;
          for (const auto& t : subs) values.push_back(eval_tree(P, t));
          auto g = graft(s, subs);
          CHECK(g.size() == s.size() + [&] {
            std::size_t n = 0;
            for (const auto& t : subs) n += t.size();
            return n;
          }());
          CHECK(eval_tree(P, g) == P.compose(eval_tree(P, s), values));
          return;
        }
        for (const auto& t : trees) {
          if (t.arity() > budget) continue;
          subs[i] = t;
          self(self, i + 1, budget - t.arity());
        }
      };
      rec(rec, 0, P.arity_cap());
    }
  }
}

TEST_CASE("grafting leaves is the identity") {
  auto P = terminal_operad(3);
  for (const auto& s : all_trees(P, 3)) {
    std::vector<Tree> leaves(s.arity());
    CHECK(graft(s, leaves) == s);
    std::vector<Tree> one{s};
    CHECK(graft(Tree::leaf(), one) == s);
  }
}

TEST_CASE("two-cells exist exactly between trees with equal value") {
  auto P = free_binary_operad(3);
  auto trees = enumerate_trees(P, 3, 2);
  std::set<std::string> values;
  for (const auto& s : trees)
    for (const auto& t : trees)
      CHECK(has_two_cell(P, s, t) == (eval_tree(P, s) == eval_tree(P, t)));
  for (const auto& s : trees) values.insert(P.name(eval_tree(P, s)));
  CHECK(values == std::set<std::string>{"mmxxx", "mxmxx"});
}

TEST_CASE("the terminal operad has a single two-cell class per arity") {
  auto P = terminal_operad(3);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto trees = enumerate_trees(P, n, 3);
    for (const auto& s : trees) CHECK(has_two_cell(P, trees.front(), s));
  }
}

TEST_CASE("rendering round trips") {
  auto P = terminal_operad(3);
  for (const auto& s : all_trees(P, 3)) CHECK(parse_tree(P, to_string(P, s)) == s);
  auto t2 = *P.find("t2");
  auto s = make_node(P, t2, {make_node(P, t2, {Tree{}, Tree{}}), Tree{}});
  CHECK(to_string(P, s) == "t2(t2(_,_),_)");
  CHECK_THROWS_AS(make_node(P, t2, {Tree{}}), ArityMismatch);
  CHECK_THROWS(parse_tree(P, "t2(_)"));
  CHECK_THROWS(parse_tree(P, "q(_)"));
}
