#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "opstrict/fincat.hpp"
#include "opstrict/weak_algebra.hpp"

namespace opstrict {

/// An object (p, a_1..a_n) of st A.
struct StPair {
  OpId p;
  std::vector<ObjId> objs;
};

/// st A: objects are pairs (p, a) with arity(p) <= cap, and a morphism
/// (p, a) -> (p', a') is a morphism h_p(a) -> h_p'(a') of A tagged with both
/// endpoints. The category is weighted by arity with the operad's cap as
/// weight cap, so tuple sweeps only visit in-cap tuples.
class StrictifiedCategory {
 public:
  explicit StrictifiedCategory(WeakPtr source);

  const WeakPtr& source() const noexcept;
  const CategoryPtr& category_ptr() const noexcept;
  const FinCategory& category() const noexcept { return *category_ptr(); }
  /// The strict action on st A, with identity gamma and iota.
  const WeakPtr& strict() const noexcept { return strict_; }

  const StPair& pair(ObjId x) const;
  /// h_p(a) in A.
  ObjId underlying(ObjId x) const;
  MorId under(MorId f) const;
  /// Throws CapExceeded or Error when (p, a) is not an object.
  ObjId object(OpId p, std::span<const ObjId> objs) const;
  /// The morphism x -> y over f : h(x) -> h(y).
  MorId lift(ObjId x, ObjId y, MorId f) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
  WeakPtr strict_;
};

using StPtr = std::shared_ptr<const StrictifiedCategory>;

/// Throws Error when W acts on a weighted category (such as st B), whose
/// action is only partial.
StPtr strictify(WeakPtr W);

/// Category axioms of st A and strictness of its action. The functoriality
/// sweep of every h'_p is exhaustive and slow; it is off by default.
CheckReport check_strict(const StrictifiedCategory& S, bool functoriality = false);

/// (F, phi) : st A -> A with F(p, a) = h_p(a) and phi the delta cell of the
/// grafted tree.
WeakPFunctor build_F(const StPtr& S);

struct EquivalenceResult {
  CheckReport report;
  std::optional<AdjointEquivalence> equivalence;
  std::optional<TransportResult> transport;
};

/// Full, faithful and essentially surjective, then the canonical adjoint
/// equivalence with pseudo-inverse a |-> (1, a), transported to weak
/// functor data.
EquivalenceResult check_equivalence(const StPtr& S, const WeakPFunctor& F);

/// (F', psi) : A -> st A with F'(a) = (1, a).
WeakPFunctor build_unit(const StPtr& S);

struct FactorizeResult {
  Functor H;
  CheckReport report;
  bool uniqueness_checked = false;
  bool bound_exceeded = false;
  std::size_t solutions = 0;
  std::size_t evaluations = 0;
};

/// The strict functor H : st A -> B with H o F' = G, built by
///   H(p, a) = h''_p(G a),   Hf = psi_{p',a'}^-1 . G(f) . psi_{p,a},
/// checked for strictness and the triangle, and its uniqueness confirmed by
/// exhaustive search when that stays within `bound` candidate evaluations.
FactorizeResult factorize(const StPtr& S, const WeakPtr& B, const WeakPFunctor& G,
                          std::size_t bound = 1000000);

struct UniquenessSearch {
  std::size_t solutions = 0;  // stops counting at 2
  std::size_t evaluations = 0;
};

/// Backtracking enumeration of strict functors st A -> B commuting with the
/// unit strictly. Throws SearchBoundExceeded past `bound` evaluations.
UniquenessSearch enumerate_factorizations(const StPtr& S, const WeakPtr& B,
                                          const WeakPFunctor& G, std::size_t bound);

struct CounitSearch {
  std::size_t strict_object_maps = 0;
  std::size_t with_iso = 0;  // maps K with F(K b) isomorphic to b for all b
  std::size_t evaluations = 0;
};

/// Searches for object maps K : B -> st B strict for the actions. Any strict
/// pseudo-inverse of the counit F : st B -> B must have F K b iso to b; when
/// none exists the counit is not pseudo-invertible.
CounitSearch counit_search(const StPtr& S, std::size_t bound = 1000000);

}  // namespace opstrict
