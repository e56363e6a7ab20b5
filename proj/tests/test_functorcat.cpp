#include <doctest.h>

#include <set>

#include "fintop/examples.hpp"
#include "testutil.hpp"

using namespace fintop;
namespace tu = fintop::testutil;

namespace {

// Brute-force functor enumeration: every assignment of group elements to all
// strict comparable pairs, filtered by functoriality.
std::vector<std::vector<int>> brute_force_aut_functors(const FinSpace& base, const AutGroup& g) {
  std::vector<std::pair<int, int>> all_pairs, strict;
  const int n = static_cast<int>(base.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (base.leq(i, j)) {
        all_pairs.emplace_back(i, j);
        if (i != j) strict.emplace_back(i, j);
      }
  std::vector<int> pidx(n * n, -1);
  for (std::size_t k = 0; k < all_pairs.size(); ++k)
    pidx[all_pairs[k].first * n + all_pairs[k].second] = static_cast<int>(k);

  std::vector<std::vector<int>> out;
  std::vector<int> full(all_pairs.size(), g.identity);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == strict.size()) {
      for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) {
          if (!base.leq(i, m)) continue;
          for (int j = 0; j < n; ++j) {
            if (!base.leq(m, j)) continue;
            if (g.mul(full[pidx[m * n + j]], full[pidx[i * n + m]]) != full[pidx[i * n + j]])
              return;
          }
        }
      out.push_back(full);
      return;
    }
    auto [i, j] = strict[k];
    for (std::size_t v = 0; v < g.size(); ++v) {
      full[pidx[i * n + j]] = static_cast<int>(v);
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("map_preceq basics") {
  FinSpace s = examples::sierpinski();
  FinSpace x = examples::ss0();

  ContinuousMap f = ContinuousMap::identity(x);
  CHECK(map_preceq(f, f));

  // constants into an Alexandroff space follow the point order
  for (std::size_t y1 = 0; y1 < x.size(); ++y1)
    for (std::size_t y2 = 0; y2 < x.size(); ++y2) {
      ContinuousMap c1 = ContinuousMap::constant(s, x, static_cast<int>(y1));
      ContinuousMap c2 = ContinuousMap::constant(s, x, static_cast<int>(y2));
      CHECK(map_preceq(c1, c2) == x.leq(y1, y2));
    }

  ContinuousMap one = ContinuousMap::constant(x, s, 1);
  ContinuousMap zero = ContinuousMap::constant(x, s, 0);
  CHECK_FALSE(map_preceq(one, zero));
  CHECK(map_preceq(zero, one));

  CHECK_THROWS_AS(map_preceq(one, ContinuousMap::identity(s)), std::invalid_argument);
}

TEST_CASE("map_preceq agrees with the pointwise criterion") {
  tu::Rng rng(404);
  int checked = 0;
  while (checked < 10) {
    FinSpace x = tu::random_space(rng, 4);
    FinSpace y = tu::random_space(rng, 4);
    auto maps = tu::all_continuous_maps(x, y);
    if (maps.size() > 60) continue;
    ++checked;
    for (const auto& fi : maps)
      for (const auto& gi : maps) {
        ContinuousMap f(x, y, fi), g(x, y, gi);
        bool pointwise = true;
        for (std::size_t p = 0; p < x.size(); ++p)
          if (!y.leq(fi[p], gi[p])) pointwise = false;
        CHECK(map_preceq(f, g) == pointwise);
      }
  }
}

TEST_CASE("map_preceq is a preorder and K identifies equivalent maps") {
  tu::Rng rng(405);
  for (int trial = 0; trial < 30; ++trial) {
    FinSpace x = tu::random_space(rng, 4);
    FinSpace y = tu::random_space(rng, 4);
    ContinuousMap f = tu::random_continuous_map(rng, x, y);
    ContinuousMap g = tu::random_continuous_map(rng, x, y);
    ContinuousMap h = tu::random_continuous_map(rng, x, y);
    CHECK(map_preceq(f, f));
    if (map_preceq(f, g) && map_preceq(g, h)) CHECK(map_preceq(f, h));
    if (map_preceq(f, g) && map_preceq(g, f)) CHECK(kolmogorov_map(f) == kolmogorov_map(g));
  }
}

TEST_CASE("validate_functor") {
  CHECK(validate_functor(TopFunctor::constant(examples::ss0(), examples::sierpinski())));
  CHECK(validate_functor(examples::f_functor(3)));

  // a 3-chain whose long arrow disagrees with the composite
  FinSpace chain = FinSpace::from_relations({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  FinSpace s = examples::sierpinski();
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  arrows[{0, 1}] = {0, 1};
  arrows[{1, 2}] = {0, 1};
  arrows[{0, 2}] = {1, 1};  // should be the identity
  TopFunctor broken = TopFunctor::unchecked(chain, {s, s, s}, arrows);
  CHECK_FALSE(validate_functor(broken));
  auto issues = functor_violations(broken);
  REQUIRE(!issues.empty());
  CHECK(issues.front().find("composition mismatch") != std::string::npos);
}

TEST_CASE("is_morphism_inverting") {
  CHECK(is_morphism_inverting(TopFunctor::constant(examples::ss0(), examples::ss0())));
  CHECK_FALSE(is_morphism_inverting(examples::f_functor(3)));

  FinSpace pt = FinSpace::from_relations({"*"}, {});
  CHECK(is_morphism_inverting(TopFunctor::constant(examples::sierpinski(), pt)));
}

TEST_CASE("aut groups of the named spaces") {
  AutGroup g = aut_group(examples::ss0());
  REQUIRE(g.size() == 4);
  // lexicographic order: id, tau_cd, tau_ab, tau_ab tau_cd
  CHECK(g.elems[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(g.elems[1] == std::vector<int>{0, 1, 3, 2});
  CHECK(g.elems[2] == std::vector<int>{1, 0, 2, 3});
  CHECK(g.elems[3] == std::vector<int>{1, 0, 3, 2});
  CHECK(g.identity == 0);
  CHECK(g.mul(1, 2) == 3);

  CHECK(aut_group(examples::sierpinski()).size() == 1);
  CHECK(aut_group(examples::indiscrete2()).size() == 2);
}

TEST_CASE("aut group is closed and discrete spaces give n!") {
  tu::Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    AutGroup g = aut_group(tu::random_space(rng, 4));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.mul(g.inverse[i], static_cast<int>(i)) == g.identity);
      for (std::size_t j = 0; j < g.size(); ++j) {
        int k = g.mul(static_cast<int>(i), static_cast<int>(j));
        CHECK(k >= 0);
        CHECK(static_cast<std::size_t>(k) < g.size());
      }
    }
  }
  std::size_t fact = 1;
  for (int n = 1; n <= 4; ++n) {
    fact *= n;
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    CHECK(aut_group(FinSpace::from_relations(labels, {})).size() == fact);
  }
}

TEST_CASE("enumerate_functors_to_aut counts") {
  AutGroup g = aut_group(examples::ss0());
  CHECK(enumerate_functors_to_aut(examples::sierpinski(), g).size() == 4);
  CHECK(enumerate_functors_to_aut(examples::ss0(), g).size() == 256);

  FinSpace pt = FinSpace::from_relations({"*"}, {});
  auto single = enumerate_functors_to_aut(pt, g);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == TopFunctor::constant(pt, examples::ss0()));
}

TEST_CASE("enumerate_functors_to_aut matches the all-pairs oracle") {
  std::vector<FinSpace> bases = {
      examples::sierpinski(),
      examples::ss0(),
      examples::indiscrete2(),
      FinSpace::from_relations({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}}),
      FinSpace::from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}),
      FinSpace::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}}),
      FinSpace::from_relations({"x", "y", "z"}, {}),
  };
  std::vector<FinSpace> fibers = {examples::sierpinski(), examples::indiscrete2(),
                                  FinSpace::from_relations({"a", "b"}, {}), examples::ss0()};
  for (const auto& base : bases)
    for (const auto& fiber : fibers) {
      AutGroup g = aut_group(fiber);
      if (std::pow(static_cast<double>(g.size()), 12.0) > 1e7 && base.size() > 3) continue;
      auto oracle = brute_force_aut_functors(base, g);
      std::set<std::vector<int>> expected(oracle.begin(), oracle.end());
      std::set<std::vector<int>> got;
      std::size_t emitted = 0;
      for_each_functor_to_aut(base, g, [&](const std::vector<int>& elems) {
        got.insert(elems);
        ++emitted;
        return true;
      });
      CHECK(emitted == got.size());  // no duplicates
      CHECK(got == expected);
    }
}

TEST_CASE("natural_iso finds the identity on equal functors") {
  TopFunctor c = examples::f_functor(2);
  auto iso = natural_iso(c, c);
  REQUIRE(iso);
  for (std::size_t b = 0; b < c.base().size(); ++b)
    CHECK((*iso)[b] == ContinuousMap::identity(c.object_at(b)));
}

TEST_CASE("natural_iso separates the edge functors over ss0") {
  AutGroup g = aut_group(examples::ss0());
  TopFunctor tau_ab = examples::functor_over_ss0(examples::ss0(), {1, 0, 2, 3});
  TopFunctor tau_cd = examples::functor_over_ss0(examples::ss0(), {0, 1, 3, 2});
  CHECK_FALSE(natural_iso(tau_ab, tau_cd));
  CHECK(natural_iso(tau_ab, tau_ab));
}

TEST_CASE("natural_iso separates D1 from D2 over the indiscrete fiber") {
  CHECK_FALSE(natural_iso(examples::d_functor(1), examples::d_functor(2)));
}

TEST_CASE("natural_iso is an equivalence relation with explicit witnesses") {
  AutGroup g = aut_group(FinSpace::from_relations({"a", "b"}, {}));
  auto functors = enumerate_functors_to_aut(examples::ss0(), g);
  REQUIRE(functors.size() == 16);
  for (std::size_t i = 0; i < functors.size(); i += 3) {
    auto self = natural_iso(functors[i], functors[i]);
    REQUIRE(self.has_value());
    for (std::size_t j = 0; j < functors.size(); j += 3) {
      auto ij = natural_iso(functors[i], functors[j]);
      auto ji = natural_iso(functors[j], functors[i]);
      CHECK(ij.has_value() == ji.has_value());
      if (ij) {
        // invert and compose the witnesses pointwise
        for (std::size_t b = 0; b < 4; ++b) {
          CHECK((*ij)[b].is_homeomorphism());
          CHECK(compose((*ij)[b].inverse(), (*ij)[b]) ==
                ContinuousMap::identity(functors[i].object_at(b)));
        }
        for (std::size_t k = 0; k < functors.size(); k += 3) {
          auto jk = natural_iso(functors[j], functors[k]);
          if (jk) CHECK(natural_iso(functors[i], functors[k]).has_value());
        }
      }
    }
  }
}

TEST_CASE("natural_iso witnesses satisfy the naturality squares") {
  tu::Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    FinSpace fiber = tu::random_space(rng, 3);
    AutGroup g = aut_group(fiber);
    FinSpace base = tu::random_space(rng, 4);
    TopFunctor c = tu::random_aut_functor(rng, base, g);
    TopFunctor d = tu::random_aut_functor(rng, base, g);
    auto iso = natural_iso(c, d);
    if (!iso) continue;
    std::vector<std::vector<int>> comps;
    for (const auto& m : *iso) comps.push_back(m.image());
    CHECK(is_natural_transformation(comps, c, d));
    for (const auto& m : *iso) CHECK(m.is_homeomorphism());
  }
}

TEST_CASE("weak naturality accepts strict transformations and the max family") {
  // Strict natural transformations are weakly natural.
  TopFunctor c = examples::f_functor(1);
  std::vector<std::vector<int>> ident = {{0, 1, 2}, {0, 1, 2}};
  CHECK(is_natural_transformation(ident, c, c));
  CHECK(is_weak_nat_trans(ident, c, c));

  // The fiberwise max family on the trivial Sierpinski bundle is weakly
  // natural but not natural.
  FinSpace s = examples::sierpinski();
  TopFunctor dp = TopFunctor::constant(s, s);
  std::vector<std::vector<int>> alpha_bar = {{0, 1}, {1, 1}};
  CHECK_FALSE(is_natural_transformation(alpha_bar, dp, dp));
  CHECK(is_weak_nat_trans(alpha_bar, dp, dp));

  CHECK_THROWS_AS(is_weak_nat_trans({{0}}, dp, dp), std::invalid_argument);
}

TEST_CASE("a family violating the preorder condition is rejected") {
  // Exhaustive search over 2-point fibers for a continuous family that fails
  // weak naturality.
  FinSpace s = examples::sierpinski();
  FinSpace d2 = FinSpace::from_relations({"a", "b"}, {});
  TopFunctor c = TopFunctor::constant(s, d2);
  bool found_violation = false;
  for (const auto& family : tu::all_fiberwise_families(c, c))
    if (!is_weak_nat_trans(family, c, c)) found_violation = true;
  CHECK(found_violation);
}

TEST_CASE("weak transformations with equalities are exactly the strict ones") {
  tu::Rng rng(55);
  int checked = 0;
  while (checked < 8) {
    TopFunctor c = tu::random_functor(rng, 3, 3);
    TopFunctor d = tu::random_functor(rng, 3, 3);
    if (!(c.base() == d.base())) continue;
    if (tu::count_fiberwise_families(c, d) > 3000) continue;
    ++checked;
    for (const auto& family : tu::all_fiberwise_families(c, d)) {
      if (!is_weak_nat_trans(family, c, d)) continue;
      // equality in every preorder condition <=> strict naturality
      bool all_equal = true;
      for (auto [b1, b2] : c.pairs()) {
        const auto& carr = c.arrow_image(b1, b2);
        const auto& darr = d.arrow_image(b1, b2);
        for (std::size_t x = 0; x < carr.size(); ++x)
          if (darr[family[b1][x]] != family[b2][carr[x]]) all_equal = false;
      }
      CHECK(all_equal == is_natural_transformation(family, c, d));
    }
  }
}

TEST_CASE("compose_weak respects identities and strict composites") {
  TopFunctor c = examples::f_functor(2);
  WeakNatTrans id = identity_weak(c);
  WeakNatTrans theta = WeakNatTrans::make(c, c, {{1, 1, 1}, {1, 1, 1}});  // constant at b
  CHECK(compose_weak(theta, id).components == theta.components);
  CHECK(compose_weak(id, theta).components == theta.components);

  // two strict transformations compose strictly
  WeakNatTrans f2 = WeakNatTrans::make(examples::f_functor(1), examples::f_functor(1),
                                       {{0, 1, 1}, {0, 1, 1}});
  WeakNatTrans sq = compose_weak(f2, f2);
  CHECK(is_natural_transformation(sq.components, sq.source, sq.target));
  CHECK(sq.components == std::vector<std::vector<int>>{{0, 1, 1}, {0, 1, 1}});

  CHECK_THROWS_AS(compose_weak(theta, f2), std::invalid_argument);
}
