#pragma once

#include <string>
#include <vector>

#include "fintop/document.hpp"

namespace fintop::examples {

// Sierpinski space: points 0 < 1, the unique non-trivial open set is {0}.
FinSpace sierpinski();

// Non-Hausdorff suspension of the 0-sphere: minimal points a, b under
// maximal points c, d.
FinSpace ss0();

// Three points a, b, c with opens {}, {b,c} and the whole space; b and c are
// indistinguishable and sit below a.
FinSpace example3_space();

// The indiscrete two-point space on labels 1, 2.
FinSpace indiscrete2();

// F_j over Sierpinski with both objects example3_space() and
// F_j(0<=1) = f_j: the identity, the map collapsing c to b, or the constant
// map at b, for j = 1, 2, 3.
TopFunctor f_functor(int j);

// The three-point space over Sierpinski whose projection is not over-B
// isomorphic to any Grothendieck projection: p(a) = 0, p(b) = p(c) = 1.
ContinuousMap nonsurjective_map();

// Functor over ss0 with the given fiber, three identity covering arrows and
// the b<=d arrow as given.
TopFunctor functor_over_ss0(const FinSpace& fiber, const std::vector<int>& bd_arrow);

// D_j over ss0 into Aut(indiscrete2): the b<=d arrow is the identity (j = 1)
// or the swap (j = 2).
TopFunctor d_functor(int j);

const std::vector<std::string>& registry_names();
json registry_document(const std::string& name);

}  // namespace fintop::examples
