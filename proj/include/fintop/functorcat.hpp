#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/finspace.hpp"
#include "fintop/search.hpp"

namespace fintop {

// A functor D from a base space into finite spaces: one space per point, one
// continuous map per comparable pair. Arrows are stored for all comparable
// pairs (closure), including the forced reflexive identities, so downstream
// formulas can index arbitrary pairs.
class TopFunctor {
 public:
  // Validates identity and composition laws on all chains; throws
  // std::invalid_argument on violation.
  TopFunctor(FinSpace base, std::vector<FinSpace> objects,
             std::map<std::pair<int, int>, std::vector<int>> arrows);

  // Derives missing composites from the given arrows (covering edges suffice
  // for T0 bases; mutually comparable pairs must be given in both directions)
  // and cross-checks the result. Throws if underdetermined or inconsistent.
  static TopFunctor from_cover(FinSpace base, std::vector<FinSpace> objects,
                               std::map<std::pair<int, int>, std::vector<int>> arrows);

  // No validation; for building deliberately broken functors to feed
  // validate_functor.
  static TopFunctor unchecked(FinSpace base, std::vector<FinSpace> objects,
                              std::map<std::pair<int, int>, std::vector<int>> arrows);

  static TopFunctor constant(const FinSpace& base, const FinSpace& fiber);

  const FinSpace& base() const { return base_; }
  const FinSpace& object_at(std::size_t b) const { return objects_.at(b); }
  const std::vector<FinSpace>& objects() const { return objects_; }

  // All comparable pairs (i, j) with i <= j, lexicographic.
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool has_pair(int b1, int b2) const { return pair_index(b1, b2) >= 0; }
  int pair_index(int b1, int b2) const;

  const std::vector<int>& arrow_image(int b1, int b2) const;
  ContinuousMap arrow_at(int b1, int b2) const;

  friend bool operator==(const TopFunctor& a, const TopFunctor& b);

 private:
  struct unchecked_tag {};
  TopFunctor(unchecked_tag, FinSpace base, std::vector<FinSpace> objects,
             std::map<std::pair<int, int>, std::vector<int>> arrows);

  FinSpace base_;
  std::vector<FinSpace> objects_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> pair_idx_;          // n*n lookup, -1 when not comparable
  std::vector<std::vector<int>> arrows_;  // parallel to pairs_
};

// Completes a partial arrow assignment by composing along least split points
// until a fixpoint; throws std::invalid_argument when some comparable pair
// stays underivable.
std::map<std::pair<int, int>, std::vector<int>> derive_arrow_closure(
    const FinSpace& base, const std::vector<FinSpace>& objects,
    std::map<std::pair<int, int>, std::vector<int>> arrows);

// True iff identity and composition laws hold on all chains.
bool validate_functor(const TopFunctor& d);

// Point-level diagnostics for the same laws, for validation reports.
std::vector<std::string> functor_violations(const TopFunctor& d);

// True iff every arrow is a homeomorphism.
bool is_morphism_inverting(const TopFunctor& d);

// The preorder on continuous maps: f ⪯ g iff g^{-1}(V) ⊆ f^{-1}(V) for every
// open V of the codomain. Throws on dom/cod mismatch.
bool map_preceq(const ContinuousMap& f, const ContinuousMap& g);

// Automorphism group of a finite space: all self-homeomorphisms in
// lexicographic order, with composition and inverse tables.
struct AutGroup {
  FinSpace space;
  std::vector<std::vector<int>> elems;   // permutations, lexicographically sorted
  std::vector<std::vector<int>> table;   // table[i][j] = index of elems[i] ∘ elems[j]
  std::vector<int> inverse;
  int identity = 0;

  std::size_t size() const { return elems.size(); }
  int mul(int i, int j) const { return table[i][j]; }  // apply j first
  int find(const std::vector<int>& perm) const;
};

AutGroup aut_group(const FinSpace& f);

// Functors B -> Aut(F), i.e. functors with every object F and every arrow a
// group element, enumerated by backtracking over generator edges: gauge edges
// inside each indistinguishability class plus covering edges between class
// representatives, in lexicographic endpoint order with values in element
// order. Composites are derived along lexicographically least chains;
// assignments where two chains between the same pair disagree are rejected.
//
// The callback receives one group-element index per comparable pair of the
// base, aligned with TopFunctor::pairs() order; returning false stops the
// enumeration.
void for_each_functor_to_aut(const FinSpace& base, const AutGroup& g,
                             const std::function<bool(const std::vector<int>&)>& fn);

std::vector<TopFunctor> enumerate_functors_to_aut(const FinSpace& base, const AutGroup& g);

// Materializes the functor with the given element per comparable pair.
TopFunctor functor_from_aut(const FinSpace& base, const AutGroup& g,
                            const std::vector<int>& elem_per_pair);

// Natural isomorphism search: homeomorphisms g_b with
// g_{b'} ∘ C(b<=b') = D(b<=b') ∘ g_b for all b <= b'. Each base component is
// rooted at its least point; when both functors are morphism-inverting the
// components are propagated along a spanning zigzag tree, otherwise the
// search falls back to full backtracking. Returns the first family found.
std::optional<std::vector<ContinuousMap>> natural_iso(const TopFunctor& c, const TopFunctor& d,
                                                      SearchBudget* budget = nullptr);

// Strict naturality of a candidate family (components indexed by base point).
bool is_natural_transformation(const std::vector<std::vector<int>>& comps, const TopFunctor& c,
                               const TopFunctor& d);

// Weak naturality: D(b1<=b2) ∘ θ_{b1} ⪯ θ_{b2} ∘ C(b1<=b2) on all comparable
// pairs. Throws std::invalid_argument if component shapes do not match.
bool is_weak_nat_trans(const std::vector<std::vector<int>>& comps, const TopFunctor& c,
                       const TopFunctor& d);

// A validated weak natural transformation between functors over one base.
struct WeakNatTrans {
  TopFunctor source;
  TopFunctor target;
  std::vector<std::vector<int>> components;

  static WeakNatTrans make(TopFunctor source, TopFunctor target,
                           std::vector<std::vector<int>> components);
  ContinuousMap component_at(std::size_t b) const;
};

WeakNatTrans identity_weak(const TopFunctor& d);

// Vertical composition: theta after psi.
WeakNatTrans compose_weak(const WeakNatTrans& theta, const WeakNatTrans& psi);

}  // namespace fintop
