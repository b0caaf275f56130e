#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opstrict/core.hpp"

namespace opstrict {

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const OpSymbol&) const = default;
};

// Composition table keyed by [p, p1, ..., pn].
using CompTable = std::map<std::vector<OpId>, OpId>;

/// A plain operad truncated at an arity cap, given by explicit tables.
///
/// P(n) is stored for 0 <= n <= arity_cap. Composition p o (p1..pn) is
/// defined exactly when the arities of the pi sum to at most the cap.
/// The constructor fills in entries forced by the unit laws and rejects
/// tables that are ill-typed or have holes; it does not check the laws
/// themselves (see check_operad_laws).
class TabulatedOperad {
 public:
  TabulatedOperad(std::size_t arity_cap, std::vector<OpSymbol> elements,
                  OpId identity, CompTable comp);

  std::size_t arity_cap() const noexcept { return arity_cap_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const OpSymbol> elements() const noexcept { return elements_; }
  const OpSymbol& symbol(OpId p) const { return elements_.at(p.value); }
  const std::string& name(OpId p) const { return symbol(p).name; }
  std::size_t arity(OpId p) const { return symbol(p).arity; }
  std::span<const OpId> of_arity(std::size_t n) const;
  OpId identity() const noexcept { return identity_; }
  std::optional<OpId> find(std::string_view name) const;
  const CompTable& table() const noexcept { return comp_; }

  /// p o (args). Throws ArityMismatch when args.size() != arity(p) and
  /// CapExceeded when the result arity is above the cap.
  OpId compose(OpId p, std::span<const OpId> args) const;

  bool operator==(const TabulatedOperad& other) const;

 private:
  std::size_t arity_cap_;
  std::vector<OpSymbol> elements_;
  std::vector<std::vector<OpId>> by_arity_;
  OpId identity_;
  CompTable comp_;
};

using OperadPtr = std::shared_ptr<const TabulatedOperad>;

/// Calls fn for every n-tuple of elements whose arities sum to at most
/// budget. Tuples are produced in lexicographic OpId order.
void for_each_arg_tuple(const TabulatedOperad& P, std::size_t n,
                        std::size_t budget,
                        const std::function<void(std::span<const OpId>)>& fn);

std::size_t total_arity(const TabulatedOperad& P, std::span<const OpId> ops);

/// Exhaustive unit and associativity sweep over every in-cap instance.
CheckReport check_operad_laws(const TabulatedOperad& P);

// Standard operads.

/// One element t_n in every arity n <= cap.
TabulatedOperad terminal_operad(std::size_t arity_cap);
/// Z/n as an operad concentrated in arity 1 (elements g0..g{n-1}).
TabulatedOperad cyclic_unary_operad(std::size_t order);
/// Free operad on one binary symbol, truncated at the cap. Elements are
/// planar binary trees written in prefix form over {m, x}: "x" is the
/// identity, "mxx" the generator, "mmxxx" and "mxmxx" the two ternary ones.
TabulatedOperad free_binary_operad(std::size_t arity_cap);

// `.operad` text format.
TabulatedOperad parse_operad(std::string_view text);
std::string print_operad(const TabulatedOperad& P);

}  // namespace opstrict
