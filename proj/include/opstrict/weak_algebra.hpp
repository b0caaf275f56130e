#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opstrict/fincat.hpp"
#include "opstrict/operad.hpp"
#include "opstrict/tree.hpp"

namespace opstrict {

/// A weak P-category presented by generators: one functor h_p : A^n -> A per
/// operation, composition comparisons
///   gamma_{p,(p1..pn)} @ a : h_p(h_p1(a_1), ..., h_pn(a_n)) -> h_{p o (p.)}(a)
/// and the unit comparison iota_a : a -> h_1(a). All other coherence cells are
/// derived from these on trees (see delta).
class WeakPCategory {
 public:
  using GammaFn = std::function<MorId(OpId p, std::span<const OpId> ps,
                                      std::span<const ObjId> objs)>;
  using IotaFn = std::function<MorId(ObjId)>;

  WeakPCategory(OperadPtr P, CategoryPtr A, std::vector<Functor> action,
                GammaFn gamma, IotaFn iota);

  const TabulatedOperad& operad() const noexcept { return *P_; }
  const OperadPtr& operad_ptr() const noexcept { return P_; }
  const FinCategory& category() const noexcept { return *A_; }
  const CategoryPtr& category_ptr() const noexcept { return A_; }

  const Functor& h(OpId p) const { return action_.at(p.value); }
  ObjId act(OpId p, std::span<const ObjId> xs) const { return h(p)(xs); }
  MorId act(OpId p, std::span<const MorId> fs) const { return h(p)(fs); }

  MorId gamma(OpId p, std::span<const OpId> ps, std::span<const ObjId> objs) const;
  MorId iota(ObjId a) const { return iota_(a); }

  /// gamma_{p,ps} as a transformation h_p o (h_pi) => h_{p o ps}.
  NatTransformation gamma_transformation(OpId p, std::span<const OpId> ps) const;
  /// iota as a transformation id_A => h_1.
  NatTransformation iota_transformation() const;

 private:
  OperadPtr P_;
  CategoryPtr A_;
  std::vector<Functor> action_;
  GammaFn gamma_;
  IotaFn iota_;
};

using WeakPtr = std::shared_ptr<const WeakPCategory>;

/// H_s : A^{arity s} -> A, the action of a tree.
Functor eval_functor(const WeakPCategory& W, const Tree& s);

/// The cell delta_s : H_s => h_{eps(s)} at one object tuple.
MorId delta_at(const WeakPCategory& W, const Tree& s, std::span<const ObjId> objs);
NatTransformation delta(const WeakPCategory& W, const Tree& s);
/// delta_t^-1 . delta_s : H_s => H_t; throws NoTwoCell unless eps(s) = eps(t).
NatTransformation delta2(const WeakPCategory& W, const Tree& s, const Tree& t);

struct CoherenceReport {
  CheckReport checks;
  // Generator cells taking part in the largest number of failing axiom
  // instances.
  std::vector<std::string> suspects;
  std::size_t trees = 0;
  std::size_t edges = 0;
};

/// Checks that gamma and iota are natural isomorphisms, the generator axioms
/// (both unit laws and associativity of gamma), and path independence of
/// every pasting of gamma/iota cells between trees of size <= size_cap.
CoherenceReport validate_weak_p_category(const WeakPCategory& W, std::size_t size_cap);

/// Checks that every gamma and iota component is an identity, which forces
/// h_{p o ps} = h_p o (h_ps) and h_1 = id on the nose. With `functoriality`
/// each h_p is also checked to be a functor.
CheckReport check_strict_action(const WeakPCategory& W, bool functoriality = false,
                                std::string_view name = "check_strict");

/// Delta cells, whiskered by a weak functor's data, are labelled by these.
std::string gamma_label(const WeakPCategory& W, OpId p, std::span<const OpId> ps,
                        std::span<const ObjId> objs);

// ---------------------------------------------------------------------------

/// (G, psi) with psi_p @ a : h'_p(G a_1, ..., G a_n) -> G h_p(a).
struct WeakPFunctor {
  using PsiFn = std::function<MorId(OpId p, std::span<const ObjId> objs)>;

  WeakPtr source;
  WeakPtr target;
  Functor G;
  PsiFn psi;

  NatTransformation psi_transformation(OpId p) const;
};

WeakPFunctor identity_weak_p_functor(WeakPtr W);
/// (G, psi) o (F, phi) with chi_p @ a = G(phi_p @ a) . psi_p @ (F a).
WeakPFunctor compose_weak_p_functors(const WeakPFunctor& after, const WeakPFunctor& before);

/// Diagram (1) for every in-cap (p, ps, a) and diagram (2) at every object,
/// along with functoriality of G and naturality/invertibility of psi.
CheckReport validate_weak_p_functor(const WeakPFunctor& Phi);

/// A natural transformation sigma : F => G between weak functors with the
/// same endpoints.
struct PTransformation {
  WeakPFunctor source;
  WeakPFunctor target;
  NatTransformation sigma;
};

CheckReport validate_p_transformation(const PTransformation& s);
/// Throws NotInvertible if some component is not an isomorphism.
PTransformation invert_p_transformation(const PTransformation& s);

struct AdjointEquivalence {
  Functor F;                 // A -> B
  Functor G;                 // B -> A
  NatTransformation eta;     // id_A => G F
  NatTransformation eps;     // F G => id_B
};

/// Naturality, invertibility and both triangle identities.
CheckReport check_adjoint_equivalence(const AdjointEquivalence& E);

struct TransportResult {
  WeakPFunctor G;
  PTransformation eta;      // id => (G, psi) o (F, phi)
  PTransformation eps;      // (F, phi) o (G, psi) => id
  PTransformation eta_inv;
  PTransformation eps_inv;
  CheckReport report;
};

/// Equips the pseudo-inverse G of a weak functor (F, phi) with
///   psi_p @ b = G h'_p(eps_b.) . G(phi_p @ Gb)^-1 . eta_{h_p(Gb)}
/// and validates it together with eta, eps and their inverses.
TransportResult transport_along_equivalence(const WeakPFunctor& Phi,
                                            const AdjointEquivalence& E);

}  // namespace opstrict
