#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opstrict/weak_algebra.hpp"

namespace opstrict {

/// Terminal operad acting on the indiscrete category on `objects` with
/// h_n(a_1..a_n) = objects[(n + 1 + sum (i+1) idx(a_i)) mod k]; every
/// coherence cell is the unique morphism between its endpoints. For three
/// objects h_1 is a rotation, so the action is far from strict.
WeakPtr indiscrete_fixture(std::size_t arity_cap,
                           const std::vector<std::string>& objects = {"x", "y", "z"});

/// Z/2 as a one-object category (morphisms r0, r1) with the terminal operad
/// acting by addition mod 2. Strict.
WeakPtr cyclic_strict_fixture(std::size_t arity_cap);

/// The same action with coherence cells twisted by a Z/2-valued cochain c on
/// arities: iota = r^c(1), gamma_{p,ps} = r^(c(p o ps) + c(p) + sum c(ps)).
/// Coherent, and not strict unless c vanishes.
WeakPtr cyclic_twisted_fixture(std::size_t arity_cap, const std::vector<int>& cochain);

/// Identity functor from the twisted fixture to the strict one with
/// psi_p = r^c(p).
WeakPFunctor untwisting_functor(WeakPtr twisted, WeakPtr strict,
                                const std::vector<int>& cochain);

/// Discrete category {1, z} with h_n = product in the monoid where z z = z.
/// Strict.
WeakPtr idempotent_fixture(std::size_t arity_cap);

/// W with a single gamma component replaced.
WeakPtr with_gamma(WeakPtr W, OpId p, std::vector<OpId> ps, std::vector<ObjId> objs,
                   MorId value);

/// A weak functor into a target whose relevant hom-sets are singletons: the
/// morphism part and every psi component are the unique candidates.
WeakPFunctor unique_weak_functor(WeakPtr source, WeakPtr target,
                                 std::function<ObjId(ObjId)> objects);

}  // namespace opstrict
