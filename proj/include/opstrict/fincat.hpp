#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "opstrict/core.hpp"

namespace opstrict {

struct Morphism {
  std::string name;
  ObjId src;
  ObjId dst;
};

/// A finite category given by tables.
///
/// Objects may carry a weight together with a cap on the total weight of a
/// tuple. Power categories A^n are never materialized; tuple enumeration
/// only visits tuples whose weights sum to at most the cap. Ordinary
/// categories have all weights zero and no cap.
class FinCategory {
 public:
  struct Composite {
    MorId after;
    MorId before;
    MorId result;
  };

  FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
              std::vector<MorId> identities, std::vector<Composite> composites,
              std::vector<std::size_t> weights = {},
              std::optional<std::size_t> weight_cap = std::nullopt);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const std::string& name(ObjId x) const { return objects_.at(x.value); }
  const std::string& name(MorId f) const { return morphisms_.at(f.value).name; }
  ObjId src(MorId f) const { return morphisms_.at(f.value).src; }
  ObjId dst(MorId f) const { return morphisms_.at(f.value).dst; }
  MorId identity(ObjId x) const { return identities_.at(x.value); }
  bool is_identity(MorId f) const { return identity(src(f)) == f; }
  std::span<const MorId> hom(ObjId x, ObjId y) const;

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  /// g . f when the table has an entry.
  std::optional<MorId> try_compose(MorId g, MorId f) const;
  /// g . f; throws when not composable or missing.
  MorId compose(MorId g, MorId f) const;
  /// Composes right to left: compose_path({h, g, f}) == h . g . f.
  MorId compose_path(std::initializer_list<MorId> fs) const;

  bool is_iso(MorId f) const { return inverses_[f.value].has_value(); }
  MorId invert(MorId f) const;

  std::size_t weight(ObjId x) const {
    return weights_.empty() ? 0 : weights_[x.value];
  }
  std::optional<std::size_t> weight_cap() const noexcept { return weight_cap_; }

  std::span<const Composite> composites() const noexcept { return composites_; }

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<Composite> composites_;
  std::unordered_map<std::uint64_t, MorId> comp_;
  std::vector<std::vector<MorId>> homs_;  // x * n + y
  std::vector<std::optional<MorId>> inverses_;
  std::vector<std::size_t> weights_;
  std::optional<std::size_t> weight_cap_;
  std::unordered_map<std::string, ObjId> object_names_;
  std::unordered_map<std::string, MorId> morphism_names_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

/// Incremental construction by name.
class CategoryBuilder {
 public:
  ObjId object(std::string name);
  /// Adds a morphism; "id" morphisms are added automatically per object.
  MorId morphism(std::string name, ObjId src, ObjId dst);
  void set_identity(ObjId x, MorId f);
  void compose(MorId g, MorId f, MorId result);
  void set_weight(ObjId x, std::size_t w);
  void set_weight_cap(std::size_t cap) { weight_cap_ = cap; }

  std::size_t object_count() const { return objects_.size(); }
  ObjId src(MorId f) const { return morphisms_[f.value].src; }
  ObjId dst(MorId f) const { return morphisms_[f.value].dst; }
  const std::optional<MorId>& identity(ObjId x) const { return identities_[x.value]; }
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  /// Fills unset identities with fresh "id_<x>" morphisms, every missing
  /// composite involving an identity and every missing composite whose
  /// hom-set is a singleton, then freezes.
  FinCategory build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::optional<MorId>> identities_;
  std::vector<FinCategory::Composite> composites_;
  std::vector<std::size_t> weights_;
  std::optional<std::size_t> weight_cap_;
};

// Standard categories.
FinCategory indiscrete_category(const std::vector<std::string>& objects);
FinCategory discrete_category(const std::vector<std::string>& objects);
/// Z/n as a one-object category; morphism k is "r<k>".
FinCategory cyclic_group_category(std::size_t order);
/// The poset 0 < 1 < ... < n-1, with morphisms "i_j" and identities "id_i".
FinCategory chain_category(std::size_t n);

// `.cat` text block: obj / mor / id / comp lines, plus optional
// `weight x = n` and `weight_cap N`. Printing omits composites the builder
// fills in by itself.
FinCategory parse_category(std::string_view text);
std::string print_category(const FinCategory& A);

// ---------------------------------------------------------------------------
// Tuples in powers of a category.

/// Visits every n-tuple of objects whose weights respect the cap.
void for_each_object_tuple(const FinCategory& A, std::size_t n,
                           const std::function<void(std::span<const ObjId>)>& fn);
/// Visits every n-tuple of morphisms whose source tuple and target tuple both
/// respect the weight cap.
void for_each_morphism_tuple(const FinCategory& A, std::size_t n,
                             const std::function<void(std::span<const MorId>)>& fn);
/// Visits every composable pair of n-tuples (g after f).
void for_each_composable_tuple(
    const FinCategory& A, std::size_t n,
    const std::function<void(std::span<const MorId>, std::span<const MorId>)>& fn);

std::string tuple_string(const FinCategory& A, std::span<const ObjId> xs);
std::string tuple_string(const FinCategory& A, std::span<const MorId> fs);

// ---------------------------------------------------------------------------

/// A functor A^n -> B, realized lazily through object and morphism maps.
/// Arity 1 gives an ordinary functor; arity 0 picks out an object of B.
class Functor {
 public:
  using ObjectMap = std::function<ObjId(std::span<const ObjId>)>;
  using MorphismMap = std::function<MorId(std::span<const MorId>)>;

  Functor(CategoryPtr domain, std::size_t arity, CategoryPtr codomain,
          ObjectMap on_objects, MorphismMap on_morphisms);

  static Functor identity(CategoryPtr A);

  const CategoryPtr& domain() const noexcept { return domain_; }
  const CategoryPtr& codomain() const noexcept { return codomain_; }
  std::size_t arity() const noexcept { return arity_; }

  ObjId operator()(std::span<const ObjId> xs) const { return on_objects_(xs); }
  MorId operator()(std::span<const MorId> fs) const { return on_morphisms_(fs); }
  ObjId operator()(ObjId x) const { return on_objects_(std::span<const ObjId>(&x, 1)); }
  MorId operator()(MorId f) const { return on_morphisms_(std::span<const MorId>(&f, 1)); }

 private:
  CategoryPtr domain_;
  std::size_t arity_;
  CategoryPtr codomain_;
  ObjectMap on_objects_;
  MorphismMap on_morphisms_;
};

/// Operadic composite outer o (inners...): A^{sum k_i} -> C.
Functor compose(const Functor& outer, std::span<const Functor> inners);
/// after o before, with `after` unary.
Functor compose(const Functor& after, const Functor& before);
/// before applied componentwise, then outer: outer o (before, ..., before).
Functor compose_power(const Functor& outer, const Functor& before);

/// A natural transformation between parallel functors, given by a lazily
/// evaluated component function.
class NatTransformation {
 public:
  using Components = std::function<MorId(std::span<const ObjId>)>;

  NatTransformation(Functor source, Functor target, Components components);

  static NatTransformation identity(const Functor& F);

  const Functor& source() const noexcept { return source_; }
  const Functor& target() const noexcept { return target_; }
  MorId operator()(std::span<const ObjId> xs) const { return components_(xs); }
  MorId operator()(ObjId x) const { return components_(std::span<const ObjId>(&x, 1)); }

 private:
  Functor source_;
  Functor target_;
  Components components_;
};

/// Vertical composite tau . sigma.
NatTransformation vcomp(const NatTransformation& tau, const NatTransformation& sigma);
/// post tau (pre, ..., pre): whiskers tau on the left by the unary functor
/// `post` and on the right by applying the unary functor `pre` to every
/// coordinate. Either side may be an identity functor.
NatTransformation whisker(const Functor& post, const NatTransformation& tau,
                          const Functor& pre);
/// outer (tau_1, ..., tau_n): horizontal composite of id_outer with the
/// tuple of transformations.
NatTransformation operadic_whisker(const Functor& outer,
                                   std::span<const NatTransformation> inners);
/// Componentwise inverse; throws NotInvertible.
NatTransformation invert(const NatTransformation& tau);

// Exhaustive checkers.
CheckReport check_category(const FinCategory& A);
CheckReport check_functor(const Functor& F, std::string_view name = "functor");
CheckReport check_naturality(const NatTransformation& tau,
                             std::string_view name = "transformation");
/// First object tuple where the components differ, if any.
std::optional<std::vector<ObjId>> first_difference(const NatTransformation& a,
                                                   const NatTransformation& b);

}  // namespace opstrict
