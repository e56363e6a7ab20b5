#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "fintop/bundles.hpp"
#include "fintop/examples.hpp"

namespace fintop::testutil {

using Rng = std::mt19937_64;

// Random preorder on 1..max_points points, labels p0, p1, ...
FinSpace random_space(Rng& rng, int max_points);

// Random partial order (edges only from lower to higher index).
FinSpace random_t0_space(Rng& rng, int max_points);

// Random continuous map, built along a linear extension; never fails for a
// non-empty codomain.
ContinuousMap random_continuous_map(Rng& rng, const FinSpace& x, const FinSpace& y);

// Random functor with arbitrary arrows: a mix of random posets with arrows on
// covering edges, disjoint-chain bases (no composition constraints), and
// morphism-inverting functors into an automorphism group.
TopFunctor random_functor(Rng& rng, int max_base, int max_fiber);

// Random functor into Aut(F) over the given base.
TopFunctor random_aut_functor(Rng& rng, const FinSpace& base, const AutGroup& g);

// Random functor over the given base, mixing arbitrary covering-edge arrows
// with morphism-inverting ones.
TopFunctor random_functor_over(Rng& rng, const FinSpace& base, int max_fiber);

// All continuous maps x -> y by backtracking; stops early when fn returns
// false.
void for_each_continuous_map(const FinSpace& x, const FinSpace& y,
                             const std::function<bool(const std::vector<int>&)>& fn);
std::vector<std::vector<int>> all_continuous_maps(const FinSpace& x, const FinSpace& y);

// All preorders (or partial orders) on exactly n points, up to isomorphism.
const std::vector<FinSpace>& all_preorders(int n);
const std::vector<FinSpace>& all_posets(int n);

// Oracle: the down-sets of the categorical order on the Grothendieck space
// coincide with the topology generated by the J-basis.
bool topology_matches_basis(const GrothSpace& g);

// All families of continuous fiberwise maps C(b) -> D(b), as an odometer over
// per-point map lists. Callers must keep the product small.
std::vector<std::vector<std::vector<int>>> all_fiberwise_families(const TopFunctor& c,
                                                                  const TopFunctor& d);

// Number of such families without materializing them.
std::uint64_t count_fiberwise_families(const TopFunctor& c, const TopFunctor& d);

}  // namespace fintop::testutil
