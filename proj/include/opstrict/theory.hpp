#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "opstrict/operad.hpp"
#include "opstrict/tree.hpp"

namespace opstrict {

/// A term whose variables are meant to occur at most once. Repeats are
/// representable so that non-linear equations can be parsed and then
/// reported by check_strong_regularity.
struct LinearTerm {
  enum class Kind { Var, App };

  Kind kind = Kind::Var;
  std::string name;  // variable or operation name
  std::vector<LinearTerm> args;

  static LinearTerm var(std::string name) { return {Kind::Var, std::move(name), {}}; }
  static LinearTerm app(std::string op, std::vector<LinearTerm> args) {
    return {Kind::App, std::move(op), std::move(args)};
  }

  bool operator==(const LinearTerm&) const = default;
};

struct OpDecl {
  std::string name;
  std::size_t arity = 0;
};

struct Equation {
  LinearTerm lhs;
  LinearTerm rhs;
  std::size_t line = 0;
};

struct Presentation {
  std::string name;
  std::vector<OpDecl> ops;
  std::vector<Equation> equations;
};

/// Grammar (token based, newlines insignificant, `#` comments):
///   [theory <name>] ops: id/arity, ... [eqs: term = term ...]
/// Variables are lowercase identifiers that are not declared operations;
/// a 0-ary operation may be written `e` or `e()`.
Presentation parse_presentation(std::string_view text);

enum class RegularityViolation { VariableSetMismatch, OrderMismatch, RepeatedVariable };

std::string to_string(RegularityViolation v);

struct RegularityReport {
  bool regular = true;
  std::vector<std::pair<std::size_t, RegularityViolation>> violations;
};

RegularityReport check_strong_regularity(const Presentation& p);

std::vector<std::string> variables_of(const LinearTerm& t);
std::string to_string(const LinearTerm& t);

struct ClosureReport {
  bool cap_limited = false;
  std::size_t universe_size = 0;
  std::size_t merges = 0;
  // Equation instances with exactly one side inside the universe.
  std::size_t blocked_instances = 0;
  // Contexts that could not receive a congruent replacement because the
  // result would exceed the term size cap.
  std::size_t blocked_contexts = 0;
  std::size_t requested_arity_cap = 0;
  // Largest arity for which every composite could be computed; equals the
  // requested cap unless a generator image fell outside the universe.
  std::size_t effective_arity_cap = 0;
  // Element name -> least representative term, in x1..xn variables.
  std::map<std::string, std::string> representatives;
  CheckReport laws;
};

struct CompiledTheory {
  TabulatedOperad operad;
  ClosureReport report;
};

/// Capped congruence closure over the universe of linear terms with arity
/// <= arity_cap and at most term_size_cap operation nodes.
CompiledTheory compile_operad(const Presentation& p, std::size_t arity_cap,
                              std::size_t term_size_cap);

/// Union-find over a fixed term universe, closed under the equation
/// instances and under operation contexts. Exposed so that the closure's
/// idempotence can be checked directly.
class CongruenceClosure {
 public:
  CongruenceClosure(std::vector<std::size_t> signature,
                    std::vector<std::pair<Tree, Tree>> equations,
                    std::size_t arity_cap, std::size_t term_size_cap);

  /// Runs to the fixed point; returns the number of merges performed.
  std::size_t run();

  std::size_t find(std::size_t i) const;
  const std::vector<Tree>& universe() const noexcept { return universe_; }
  std::optional<std::size_t> index_of(const Tree& t) const;
  std::size_t blocked_instances() const noexcept { return blocked_instances_; }
  std::size_t blocked_contexts() const;

 private:
  bool unite(std::size_t a, std::size_t b);
  std::size_t seed_instances();
  std::size_t close_contexts();

  std::vector<std::size_t> signature_;
  std::vector<std::pair<Tree, Tree>> equations_;
  std::size_t arity_cap_;
  std::size_t size_cap_;
  std::vector<Tree> universe_;
  std::unordered_map<Tree, std::size_t, TreeHash> index_;
  std::vector<std::vector<std::size_t>> child_index_;
  mutable std::vector<std::size_t> parent_;
  bool seeded_ = false;
  std::size_t blocked_instances_ = 0;
};

/// Converts a regular equation side to a tree over the signature; leaves
/// are the variables in order of appearance.
Tree term_to_tree(const Presentation& p, const LinearTerm& t);

}  // namespace opstrict
