#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opstrict/strictify.hpp"
#include "opstrict/weak_algebra.hpp"

namespace opstrict {

/// Explicit tables for a weak P-category. Entries that are absent fall back
/// to the default rule:
///   - act on morphisms: identity on an identity tuple, otherwise the unique
///     morphism of a singleton hom-set;
///   - gamma, iota: identity when source and target agree, otherwise the
///     unique morphism of a singleton hom-set;
/// and are undefined (UndefinedEntry on use) otherwise.
struct WeakTables {
  OperadPtr P;
  CategoryPtr A;
  std::vector<TupleMap<ObjTag, ObjId>> act_obj;  // per element
  std::vector<TupleMap<MorTag, MorId>> act_mor;  // per element
  std::map<std::vector<OpId>, TupleMap<ObjTag, MorId>> gamma;  // [p, ps...]
  std::map<ObjId, MorId> iota;

  WeakTables(OperadPtr P, CategoryPtr A);
};

WeakPtr make_weak_p_category(WeakTables tables);

/// Tabulates every in-cap entry of W.
WeakTables tabulate(const WeakPCategory& W);

/// Explicit tables for a weak functor; same default rule for morphisms and
/// psi components.
struct FunctorTables {
  WeakPtr source;
  WeakPtr target;
  std::map<ObjId, ObjId> obj;
  std::map<MorId, MorId> mor;
  std::map<std::pair<OpId, std::vector<ObjId>>, MorId> psi;
};

WeakPFunctor make_weak_p_functor(FunctorTables tables);

/// Resolves `operad <path>` references in `.wpc` files.
using OperadLoader = std::function<TabulatedOperad(const std::string& path)>;

/// Loader reading paths relative to `base`.
OperadLoader file_operad_loader(std::filesystem::path base);

/// `.wpc`: an operad reference (`operad <path>` or an inline block between
/// `begin operad` and `end operad`), a `.cat` block, then
///   act p : obj ( a b ) = c
///   act p : mor ( f g ) = h
///   gamma p ( p1 ... pn ) @ ( a ... ) = m
///   iota @ a = m
WeakPtr parse_wpc(std::string_view text, const OperadLoader& load = {});

/// Prints W with an inline operad block, omitting entries that equal their
/// default. Output is deterministic.
std::string print_wpc(const WeakPCategory& W);

/// `.wfun`: obj a = x / mor f = g / psi p @ ( a ... ) = m.
WeakPFunctor parse_wfun(std::string_view text, WeakPtr source, WeakPtr target);
std::string print_wfun(const WeakPFunctor& Phi);

std::string read_file(const std::filesystem::path& path);

}  // namespace opstrict
