#pragma once

#include <utility>
#include <vector>

#include "fintop/functorcat.hpp"

namespace fintop {

// The topological Grothendieck construction of a functor D over B: the space
// on pairs (b, x) with x in D(b), ordered by
//   (b', y) <= (b, x)  iff  b' <= b and D(b'<=b)(y) <= x,
// whose down-sets are exactly the topology generated by the basis sets
// J(b, V). Point labels are "b|x"; the projection sends (b, x) to b.
struct GrothSpace {
  TopFunctor functor;
  FinSpace space;
  ContinuousMap projection;
  std::vector<std::pair<int, int>> tags;   // point -> (base point, fiber point)
  std::vector<std::vector<int>> point_of;  // [b][x] -> point index

  int point(int b, int x) const { return point_of.at(b).at(x); }
};

GrothSpace groth(const TopFunctor& d);

// J(b, V) = union over v in U_b of {v} x D(v<=b)^{-1}(V), as a literal union.
// Kept as the reference oracle for the topology; throws if V is not open.
PointSet j_basis(const GrothSpace& g, int b, const PointSet& v);

// The over-B map (b, x) -> (b, θ_b(x)) induced by a weak natural
// transformation; continuous by construction.
ContinuousMap induced_map(const WeakNatTrans& theta);
ContinuousMap induced_map(const WeakNatTrans& theta, const GrothSpace& gsource,
                          const GrothSpace& gtarget);

// The composite functor Df over f's domain, together with the over map
// g(x, y) = (f(x), y) closing the pullback square over f.
struct Pullback {
  TopFunctor functor;       // Df
  GrothSpace source_groth;  // ∫Df
  GrothSpace target_groth;  // ∫D
  ContinuousMap over_map;   // g
};

Pullback pullback_functor(const TopFunctor& d, const ContinuousMap& f);

// The two directions of the bijection between weak natural transformations
// C => D and over-B maps ∫C -> ∫D. `back` extracts the components through
// the fiber embeddings and certifies weak naturality; it throws if alpha does
// not commute with the projections.
ContinuousMap hom_bijection_forward(const WeakNatTrans& theta);
WeakNatTrans hom_bijection_back(const ContinuousMap& alpha, const TopFunctor& c,
                                const TopFunctor& d);

}  // namespace fintop
