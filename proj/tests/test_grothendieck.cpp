#include <doctest.h>

#include <algorithm>
#include <set>

#include "fintop/examples.hpp"
#include "testutil.hpp"

using namespace fintop;
namespace tu = fintop::testutil;

namespace {

// Relabels a Grothendieck space through a point bijection and checks it is
// exactly the expected space, point for point.
void check_point_for_point(const GrothSpace& g, const FinSpace& expected,
                           const std::vector<int>& to_expected) {
  REQUIRE(g.space.size() == expected.size());
  for (std::size_t i = 0; i < g.space.size(); ++i)
    for (std::size_t j = 0; j < g.space.size(); ++j)
      CHECK(g.space.leq(i, j) == expected.leq(to_expected[i], to_expected[j]));
}

}  // namespace

TEST_CASE("groth of a constant functor is the product with first projection") {
  FinSpace b = examples::ss0();
  FinSpace f = examples::sierpinski();
  GrothSpace g = groth(TopFunctor::constant(b, f));
  CHECK(g.space == product(b, f));
  for (std::size_t e = 0; e < g.space.size(); ++e) CHECK(g.projection(e) == g.tags[e].first);
}

TEST_CASE("groth of F1 and F2 is the product, F3 is not") {
  FinSpace s = examples::sierpinski();
  FinSpace x = examples::example3_space();
  FinSpace sx = product(s, x);

  CHECK(groth(examples::f_functor(1)).space == sx);
  CHECK(groth(examples::f_functor(2)).space == sx);

  GrothSpace g3 = groth(examples::f_functor(3));
  CHECK_FALSE(find_homeomorphism(g3.space, sx).has_value());

  auto opens = g3.space.open_sets();
  REQUIRE(opens.size() == 5);
  auto labels_of = [&](const PointSet& ps) {
    std::vector<std::string> out;
    ps.for_each([&](std::size_t i) { out.push_back(g3.space.label(i)); });
    std::sort(out.begin(), out.end());
    return out;
  };
  std::set<std::vector<std::string>> got;
  for (const auto& o : opens) got.insert(labels_of(o));
  std::set<std::vector<std::string>> expected = {
      {},
      {"0|b", "0|c"},
      {"0|a", "0|b", "0|c"},
      {"0|a", "0|b", "0|c", "1|b", "1|c"},
      {"0|a", "0|b", "0|c", "1|a", "1|b", "1|c"}};
  CHECK(got == expected);
}

TEST_CASE("groth over Sierpinski with a point on top is the cone") {
  FinSpace s = examples::sierpinski();
  FinSpace x = examples::ss0();
  FinSpace pt = FinSpace::from_relations({"*"}, {});
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  arrows[{0, 1}] = std::vector<int>(x.size(), 0);
  GrothSpace g = groth(TopFunctor(s, {x, pt}, std::move(arrows)));

  FinSpace cx = cone(x);
  std::vector<int> to_cone(g.space.size());
  for (std::size_t e = 0; e < g.space.size(); ++e) {
    auto [b, y] = g.tags[e];
    to_cone[e] = b == 0 ? static_cast<int>(*cx.index_of(x.label(y)))
                        : static_cast<int>(*cx.index_of("+"));
  }
  check_point_for_point(g, cx, to_cone);
}

TEST_CASE("groth over the V base with points on top is the suspension") {
  FinSpace v = FinSpace::from_relations({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  FinSpace x = examples::sierpinski();
  FinSpace pt = FinSpace::from_relations({"*"}, {});
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  arrows[{0, 1}] = std::vector<int>(x.size(), 0);
  arrows[{0, 2}] = std::vector<int>(x.size(), 0);
  GrothSpace g = groth(TopFunctor(v, {x, pt, pt}, std::move(arrows)));

  FinSpace sx = suspension(x);
  std::vector<int> to_susp(g.space.size());
  for (std::size_t e = 0; e < g.space.size(); ++e) {
    auto [b, y] = g.tags[e];
    if (b == 0)
      to_susp[e] = static_cast<int>(*sx.index_of(x.label(y)));
    else
      to_susp[e] = static_cast<int>(*sx.index_of(b == 1 ? "+" : "-"));
  }
  check_point_for_point(g, sx, to_susp);
}

TEST_CASE("groth of the empty base is empty") {
  GrothSpace g = groth(TopFunctor::constant(FinSpace(), examples::ss0()));
  CHECK(g.space.size() == 0);
  CHECK(g.projection.image().empty());
}

TEST_CASE("groth rejects invalid functors") {
  FinSpace chain = FinSpace::from_relations({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  FinSpace s = examples::sierpinski();
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  arrows[{0, 1}] = {0, 1};
  arrows[{1, 2}] = {0, 1};
  arrows[{0, 2}] = {1, 1};
  TopFunctor broken = TopFunctor::unchecked(chain, {s, s, s}, arrows);
  CHECK_THROWS_AS(groth(broken), std::invalid_argument);
}

TEST_CASE("j_basis reference identities") {
  GrothSpace g = groth(examples::f_functor(3));
  const FinSpace& s = g.functor.base();
  const FinSpace& x = g.functor.object_at(0);

  for (std::size_t b = 0; b < s.size(); ++b) {
    PointSet full = PointSet::full(x.size());
    CHECK(j_basis(g, static_cast<int>(b), full) == g.projection.preimage(s.minimal_open(b)));
    CHECK(j_basis(g, static_cast<int>(b), PointSet(x.size())).empty());
  }

  // J(1, {b,c}) on F3
  PointSet bc(x.size());
  bc.add(*x.index_of("b"));
  bc.add(*x.index_of("c"));
  PointSet expected(g.space.size());
  for (const char* l : {"0|a", "0|b", "0|c", "1|b", "1|c"})
    expected.add(*g.space.index_of(l));
  CHECK(j_basis(g, 1, bc) == expected);

  PointSet not_open(x.size());
  not_open.add(*x.index_of("a"));
  CHECK_THROWS_AS(j_basis(g, 1, not_open), std::invalid_argument);
}

TEST_CASE("categorical order topology matches the J-basis topology") {
  tu::Rng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    TopFunctor d = tu::random_functor(rng, 5, 4);
    CHECK(tu::topology_matches_basis(groth(d)));
  }
}

TEST_CASE("fibers embed with their own order") {
  tu::Rng rng(314);
  for (int trial = 0; trial < 30; ++trial) {
    TopFunctor d = tu::random_functor(rng, 4, 4);
    GrothSpace g = groth(d);
    for (std::size_t b = 0; b < d.base().size(); ++b) {
      const FinSpace& fib = d.object_at(b);
      for (std::size_t x = 0; x < fib.size(); ++x)
        for (std::size_t y = 0; y < fib.size(); ++y)
          CHECK(g.space.leq(g.point(b, static_cast<int>(x)), g.point(b, static_cast<int>(y))) ==
                fib.leq(x, y));
    }
  }
}

TEST_CASE("the Grothendieck space only depends on the Kolmogorov level") {
  tu::Rng rng(161);
  int built = 0;
  while (built < 25) {
    // chain bases ensure functoriality after perturbing covering arrows
    TopFunctor f = tu::random_functor(rng, 4, 4);
    bool has_classes = false;
    for (std::size_t b = 0; b < f.base().size(); ++b)
      if (!f.object_at(b).is_t0()) has_classes = true;
    if (!has_classes) continue;

    // perturb arrows inside indistinguishability classes on covering edges
    auto cover = f.base().covering_pairs();
    std::map<std::pair<int, int>, std::vector<int>> arrows;
    bool changed = false;
    for (auto [i, j] : cover) {
      std::vector<int> img = f.arrow_image(i, j);
      const FinSpace& to = f.object_at(j);
      for (auto& v : img) {
        std::vector<int> cls;
        for (std::size_t z = 0; z < to.size(); ++z)
          if (to.same_class(v, z)) cls.push_back(static_cast<int>(z));
        int pick = cls[std::uniform_int_distribution<int>(0, static_cast<int>(cls.size()) - 1)(rng)];
        if (pick != v) changed = true;
        v = pick;
      }
      arrows[{i, j}] = std::move(img);
    }
    TopFunctor g = [&]() -> TopFunctor {
      try {
        return TopFunctor::from_cover(f.base(), f.objects(), std::move(arrows));
      } catch (const std::invalid_argument&) {
        return f;
      }
    }();
    ++built;
    (void)changed;

    // K-level equality of all arrows implies equality of the spaces
    bool k_equal = true;
    for (auto [i, j] : f.pairs())
      if (!(kolmogorov_map(f.arrow_at(i, j)) == kolmogorov_map(g.arrow_at(i, j)))) k_equal = false;
    if (k_equal) {
      CHECK(groth(f).space == groth(g).space);
    }
  }
}

TEST_CASE("induced maps compose functorially") {
  tu::Rng rng(271);
  int checked = 0;
  while (checked < 10) {
    TopFunctor c = tu::random_functor(rng, 3, 3);
    TopFunctor d = tu::random_functor(rng, 3, 3);
    if (!(c.base() == d.base())) continue;
    if (tu::count_fiberwise_families(c, d) > 2000) continue;

    GrothSpace gc = groth(c);
    GrothSpace gd = groth(d);
    WeakNatTrans id_c = identity_weak(c);
    CHECK(induced_map(id_c, gc, gc) == ContinuousMap::identity(gc.space));

    bool any = false;
    for (const auto& fam : tu::all_fiberwise_families(c, d)) {
      if (!is_weak_nat_trans(fam, c, d)) continue;
      WeakNatTrans theta = WeakNatTrans::make(c, d, fam);
      // theta after identity
      CHECK(induced_map(compose_weak(theta, id_c), gc, gd) == induced_map(theta, gc, gd));
      // composing with a D -> D family
      for (const auto& fam2 : tu::all_fiberwise_families(d, d)) {
        if (!is_weak_nat_trans(fam2, d, d)) continue;
        WeakNatTrans psi = WeakNatTrans::make(d, d, fam2);
        CHECK(induced_map(compose_weak(psi, theta), gc, gd) ==
              compose(induced_map(psi, gd, gd), induced_map(theta, gc, gd)));
        any = true;
        break;
      }
      break;
    }
    if (any) ++checked;
  }
}

TEST_CASE("a natural isomorphism induces an over-B homeomorphism") {
  tu::Rng rng(999);
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
    GrothSpace gc = groth(c);
    GrothSpace gd = groth(d);
    ContinuousMap ind = induced_map(WeakNatTrans::make(c, d, comps), gc, gd);
    CHECK(ind.is_homeomorphism());
    CHECK(compose(gd.projection, ind) == gc.projection);
  }
}

TEST_CASE("the max family induces the max map on the trivial Sierpinski bundle") {
  FinSpace s = examples::sierpinski();
  FiberBundle triv = trivial_bundle(s, s);
  CanonicalRep rep = canonical_representation(triv);

  // alpha_bar: identity over 0, constant top over 1
  std::vector<std::vector<int>> comps = {{0, 1}, {1, 1}};
  CHECK_FALSE(is_natural_transformation(comps, rep.functor, rep.functor));
  WeakNatTrans alpha_bar = WeakNatTrans::make(rep.functor, rep.functor, comps);

  GrothSpace g = groth(rep.functor);
  ContinuousMap ind = induced_map(alpha_bar, g, g);

  // phi: E -> groth(Dp), x -> (p(x), x); the induced map corresponds to
  // alpha(b, x) = (b, max(b, x)) on S x S.
  const FinSpace& e = triv.total();
  std::vector<int> phi_img(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    int b = triv.map(x);
    auto pts = triv.fiber_points(b);
    int sub = static_cast<int>(std::find(pts.begin(), pts.end(), static_cast<int>(x)) - pts.begin());
    phi_img[x] = g.point(b, sub);
  }
  ContinuousMap phi(e, g.space, phi_img);

  std::vector<int> max_img(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    int b = triv.map(x);
    int fv = x % 2;  // product points are b-major over the 2-point fiber
    int m = std::max(b, fv);
    max_img[x] = b * 2 + m;
  }
  ContinuousMap alpha(e, e, max_img);
  CHECK(compose(ind, phi) == compose(phi, alpha));
}

TEST_CASE("pullback along the identity changes nothing") {
  TopFunctor d = examples::f_functor(2);
  Pullback pb = pullback_functor(d, ContinuousMap::identity(d.base()));
  CHECK(pb.functor == d);
  CHECK(pb.over_map == ContinuousMap::identity(pb.target_groth.space));
}

TEST_CASE("pullback along a constant map is a product") {
  tu::Rng rng(444);
  for (int trial = 0; trial < 10; ++trial) {
    TopFunctor d = tu::random_functor(rng, 3, 3);
    if (d.base().size() == 0) continue;
    FinSpace x = tu::random_space(rng, 3);
    int b0 = std::uniform_int_distribution<int>(0, static_cast<int>(d.base().size()) - 1)(rng);
    ContinuousMap f = ContinuousMap::constant(x, d.base(), b0);
    Pullback pb = pullback_functor(d, f);
    CHECK(find_homeomorphism(pb.source_groth.space, product(x, d.object_at(b0))).has_value());
  }
}

TEST_CASE("pullback square commutes and satisfies the universal property") {
  tu::Rng rng(555);
  int checked = 0;
  while (checked < 6) {
    TopFunctor d = tu::random_functor(rng, 3, 3);
    if (d.base().size() == 0) continue;
    FinSpace x = tu::random_space(rng, 3);
    ContinuousMap f = tu::random_continuous_map(rng, x, d.base());
    Pullback pb = pullback_functor(d, f);
    CHECK(compose(pb.target_groth.projection, pb.over_map) ==
          compose(f, pb.source_groth.projection));
    ++checked;

    for (const FinSpace& z : tu::all_preorders(2)) {
      // maps gamma: Z -> ∫Df correspond bijectively to commuting pairs
      std::vector<std::pair<std::vector<int>, std::vector<int>>> from_gamma;
      tu::for_each_continuous_map(z, pb.source_groth.space, [&](const std::vector<int>& gi) {
        ContinuousMap gamma(z, pb.source_groth.space, gi);
        from_gamma.emplace_back(compose(pb.source_groth.projection, gamma).image(),
                                compose(pb.over_map, gamma).image());
        return true;
      });
      std::sort(from_gamma.begin(), from_gamma.end());
      CHECK(std::adjacent_find(from_gamma.begin(), from_gamma.end()) == from_gamma.end());

      std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
      tu::for_each_continuous_map(z, x, [&](const std::vector<int>& ai) {
        ContinuousMap alpha(z, x, ai);
        tu::for_each_continuous_map(z, pb.target_groth.space, [&](const std::vector<int>& bi) {
          ContinuousMap beta(z, pb.target_groth.space, bi);
          if (compose(f, alpha) == compose(pb.target_groth.projection, beta))
            pairs.emplace_back(ai, bi);
          return true;
        });
        return true;
      });
      std::sort(pairs.begin(), pairs.end());
      CHECK(from_gamma == pairs);
    }
  }
}

TEST_CASE("hom bijection: forward and back are mutually inverse") {
  tu::Rng rng(666);
  int checked = 0;
  while (checked < 8) {
    TopFunctor c = tu::random_functor(rng, 3, 3);
    TopFunctor d = tu::random_functor(rng, 3, 3);
    if (!(c.base() == d.base())) continue;
    if (tu::count_fiberwise_families(c, d) > 2000) continue;
    ++checked;

    GrothSpace gc = groth(c);
    GrothSpace gd = groth(d);

    std::uint64_t weak_count = 0, over_count = 0;
    for (const auto& fam : tu::all_fiberwise_families(c, d)) {
      bool weak = is_weak_nat_trans(fam, c, d);
      // the same family assembled as a total map, tested for continuity
      std::vector<int> img(gc.space.size());
      for (std::size_t e = 0; e < gc.space.size(); ++e) {
        auto [b, xpt] = gc.tags[e];
        img[e] = gd.point(b, fam[b][xpt]);
      }
      bool over_b = true;
      for (std::size_t e1 = 0; e1 < gc.space.size(); ++e1)
        for (std::size_t e2 = 0; e2 < gc.space.size(); ++e2)
          if (gc.space.leq(e1, e2) && !gd.space.leq(img[e1], img[e2])) over_b = false;
      CHECK(weak == over_b);
      if (weak) ++weak_count;
      if (over_b) {
        ++over_count;
        ContinuousMap alpha(gc.space, gd.space, img);
        WeakNatTrans back = hom_bijection_back(alpha, c, d);
        CHECK(back.components == fam);
        CHECK(hom_bijection_forward(back) == alpha);
      }
    }
    CHECK(weak_count == over_count);
  }
}

TEST_CASE("hom bijection sends identity to identity") {
  TopFunctor c = examples::f_functor(2);
  GrothSpace g = groth(c);
  WeakNatTrans id = identity_weak(c);
  CHECK(hom_bijection_forward(id) == ContinuousMap::identity(g.space));
  WeakNatTrans back = hom_bijection_back(ContinuousMap::identity(g.space), c, c);
  CHECK(back.components == id.components);
}

TEST_CASE("no functor over Sierpinski reproduces the three-point map") {
  ContinuousMap p = examples::nonsurjective_map();
  const FinSpace& e = p.dom();
  FinSpace s = p.cod();

  FinSpace pt = FinSpace::from_relations({"x"}, {});
  int over_b_isos = 0;
  for (const FinSpace& d1 : tu::all_preorders(2)) {
    for (int arrow = 0; arrow < 2; ++arrow) {
      std::map<std::pair<int, int>, std::vector<int>> arrows;
      arrows[{0, 1}] = {arrow};
      GrothSpace g = groth(TopFunctor(s, {pt, d1}, std::move(arrows)));
      // all over-B bijections E -> groth space
      std::vector<int> fiber0 = {0};
      tu::for_each_continuous_map(e, g.space, [&](const std::vector<int>& img) {
        std::vector<char> hit(g.space.size(), 0);
        bool bij = true;
        for (int v : img) {
          if (hit[v]) bij = false;
          hit[v] = 1;
        }
        if (!bij) return true;
        ContinuousMap h(e, g.space, img);
        if (!(compose(g.projection, h) == p)) return true;
        if (h.is_homeomorphism()) ++over_b_isos;
        return true;
      });
    }
  }
  CHECK(over_b_isos == 0);
}
