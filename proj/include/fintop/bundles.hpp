#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fintop/grothendieck.hpp"

namespace fintop {

// A continuous map p: E -> B with a designated fiber F and, once verified,
// one trivialization witness per base point: witnesses[b][e] is the F-point
// the over-U_b homeomorphism p^{-1}(U_b) -> U_b x F sends e to, or -1 when
// p(e) is outside U_b.
struct FiberBundle {
  ContinuousMap map;
  FinSpace fiber;
  std::optional<std::vector<std::vector<int>>> witnesses;

  const FinSpace& total() const { return map.dom(); }
  const FinSpace& base() const { return map.cod(); }
  bool verified() const { return witnesses.has_value(); }

  // Points of p^{-1}(b), ascending.
  std::vector<int> fiber_points(int b) const;
};

// Local-triviality search. Triviality over the minimal opens U_b is both
// sufficient and necessary (a trivialization over any open U restricts to one
// over U_b), so each base point is searched independently by backtracking
// over fiberwise bijections, upper fibers first.
std::optional<FiberBundle> verify_bundle(const ContinuousMap& p, const FinSpace& f,
                                         SearchBudget* budget = nullptr);

// The three-part test deciding whether the Grothendieck projection of D is a
// fiber bundle with fiber F: (a) K∘D is morphism-inverting, (b) every D(b) is
// homeomorphic to F, (c) matching indistinguishability-class sizes along all
// arrows.
bool characterization_check(const TopFunctor& d, const FinSpace& f);

// The morphism-inverting functor with objects p^{-1}(b) whose Grothendieck
// construction is over-B isomorphic to the bundle. For a T0 fiber the arrows
// are the transports delta_{b,b'} read off the stored witness for U_{b'};
// in general they follow the class-level functor through fixed index-order
// choice bijections, which reduces to the same transports when F is T0.
struct CanonicalRep {
  FiberBundle bundle;
  TopFunctor functor;
};

CanonicalRep canonical_representation(const FiberBundle& bundle);

// Over-B homeomorphism between two verified bundles with the same base and
// fiber, or nullopt. T0 fibers go through natural isomorphism of the
// canonical representations; non-T0 fibers fall back to direct backtracking
// over fiberwise bijections.
std::optional<ContinuousMap> bundle_iso(const FiberBundle& p, const FiberBundle& q,
                                        SearchBudget* budget = nullptr);

// One row of a classification: a representative functor into Aut(F), its
// bundle, and how many enumerated functors landed in the class.
struct ClassEntry {
  TopFunctor representative;
  FiberBundle bundle;
  std::uint64_t size = 0;
};

struct ClassTable {
  FinSpace base;
  FinSpace fiber;
  std::vector<ClassEntry> classes;
  std::uint64_t functor_count = 0;
  bool inconclusive = false;  // set when the search budget ran out
};

// Enumerates functors B -> Aut(F) and partitions them by natural isomorphism;
// for a non-T0 fiber, classes whose bundles are over-B isomorphic are merged,
// since the functor-level bijection only holds for T0 fibers. Representatives
// are ordered by first enumerated member.
ClassTable classify(const FinSpace& base, const FinSpace& fiber, SearchBudget* budget = nullptr);

// groth(Dp ∘ f) with its projection; verified by construction.
FiberBundle pullback_bundle(const FiberBundle& p, const ContinuousMap& f);

// Product projection with identity witnesses.
FiberBundle trivial_bundle(const FinSpace& base, const FinSpace& fiber);

// The fiber bundle with a constructed (search-free) witness family for the
// projection of groth(D), for morphism-inverting D with fibers homeomorphic
// to F.
FiberBundle bundle_from_functor(const TopFunctor& d, const FinSpace& f);

// One over-B automorphism of the trivial bundle over the two-point chain,
// with its two fiber slices; product_form marks phi = Id x alpha.
struct TrivialAut {
  ContinuousMap map;
  std::vector<int> alpha0, alpha1;
  bool product_form = false;
};

// Enumerates every over-B self-homeomorphism of B x F for the 2-chain B,
// checking that the fiber slices agree after Kolmogorov quotients and that
// the K-level square commutes; when F is T0 every automorphism must be of
// the form Id x alpha. Throws if B is not a two-point chain.
std::vector<TrivialAut> trivial_automorphisms(const FinSpace& base, const FinSpace& fiber);

}  // namespace fintop
