#include "fintop/grothendieck.hpp"

#include <stdexcept>

namespace fintop {

GrothSpace groth(const TopFunctor& d) {
  auto issues = functor_violations(d);
  if (!issues.empty()) throw std::invalid_argument("groth: invalid functor: " + issues.front());

  const FinSpace& base = d.base();
  const int n = static_cast<int>(base.size());

  std::vector<std::pair<int, int>> tags;
  std::vector<std::vector<int>> point_of(n);
  std::vector<std::string> labels;
  for (int b = 0; b < n; ++b) {
    const FinSpace& fib = d.object_at(b);
    point_of[b].resize(fib.size());
    for (std::size_t x = 0; x < fib.size(); ++x) {
      point_of[b][x] = static_cast<int>(tags.size());
      tags.emplace_back(b, static_cast<int>(x));
      labels.push_back(base.label(b) + "|" + fib.label(x));
    }
  }

  const std::size_t m = tags.size();
  std::vector<PointSet> below(m, PointSet(m));
  for (std::size_t e = 0; e < m; ++e) {
    auto [b, x] = tags[e];
    for (std::size_t e2 = 0; e2 < m; ++e2) {
      auto [b2, y] = tags[e2];
      // (b2, y) <= (b, x) iff b2 <= b and D(b2<=b)(y) <= x
      if (base.leq(b2, b) && d.object_at(b).leq(d.arrow_image(b2, b)[y], x)) below[e].add(e2);
    }
  }

  FinSpace space = FinSpace::from_closure(std::move(labels), std::move(below));
  std::vector<int> proj(m);
  for (std::size_t e = 0; e < m; ++e) proj[e] = tags[e].first;
  ContinuousMap projection(space, base, std::move(proj));
  return GrothSpace{d, std::move(space), std::move(projection), std::move(tags),
                    std::move(point_of)};
}

PointSet j_basis(const GrothSpace& g, int b, const PointSet& v) {
  const FinSpace& base = g.functor.base();
  if (b < 0 || static_cast<std::size_t>(b) >= base.size())
    throw std::invalid_argument("unknown base point");
  const FinSpace& fib = g.functor.object_at(b);
  if (!fib.is_open(v)) throw std::invalid_argument("V is not open in D(b)");

  PointSet out(g.space.size());
  base.minimal_open(b).for_each([&](std::size_t w) {
    const auto& arr = g.functor.arrow_image(static_cast<int>(w), b);
    for (std::size_t y = 0; y < arr.size(); ++y)
      if (v.contains(arr[y])) out.add(g.point(static_cast<int>(w), static_cast<int>(y)));
  });
  return out;
}

ContinuousMap induced_map(const WeakNatTrans& theta, const GrothSpace& gsource,
                          const GrothSpace& gtarget) {
  std::vector<int> img(gsource.space.size());
  for (std::size_t e = 0; e < img.size(); ++e) {
    auto [b, x] = gsource.tags[e];
    img[e] = gtarget.point(b, theta.components[b][x]);
  }
  return ContinuousMap(gsource.space, gtarget.space, std::move(img));
}

ContinuousMap induced_map(const WeakNatTrans& theta) {
  return induced_map(theta, groth(theta.source), groth(theta.target));
}

Pullback pullback_functor(const TopFunctor& d, const ContinuousMap& f) {
  if (!(f.cod() == d.base())) throw std::invalid_argument("pullback: map does not land in base");
  const FinSpace& x = f.dom();
  const int n = static_cast<int>(x.size());

  std::vector<FinSpace> objects;
  objects.reserve(n);
  for (int i = 0; i < n; ++i) objects.push_back(d.object_at(f(i)));

  std::map<std::pair<int, int>, std::vector<int>> arrows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x.leq(i, j)) arrows[{i, j}] = d.arrow_image(f(i), f(j));

  TopFunctor df(x, std::move(objects), std::move(arrows));
  GrothSpace gdf = groth(df);
  GrothSpace gd = groth(d);

  std::vector<int> img(gdf.space.size());
  for (std::size_t e = 0; e < img.size(); ++e) {
    auto [i, y] = gdf.tags[e];
    img[e] = gd.point(f(i), y);
  }
  ContinuousMap over(gdf.space, gd.space, std::move(img));
  return Pullback{std::move(df), std::move(gdf), std::move(gd), std::move(over)};
}

ContinuousMap hom_bijection_forward(const WeakNatTrans& theta) { return induced_map(theta); }

WeakNatTrans hom_bijection_back(const ContinuousMap& alpha, const TopFunctor& c,
                                const TopFunctor& d) {
  GrothSpace gc = groth(c);
  GrothSpace gd = groth(d);
  if (!(alpha.dom() == gc.space) || !(alpha.cod() == gd.space))
    throw std::invalid_argument("hom_bijection_back: alpha is not a map ∫C -> ∫D");
  std::vector<std::vector<int>> comps(c.base().size());
  for (std::size_t b = 0; b < c.base().size(); ++b)
    comps[b].assign(c.object_at(b).size(), -1);
  for (std::size_t e = 0; e < gc.space.size(); ++e) {
    auto [b, x] = gc.tags[e];
    auto [b2, y] = gd.tags[alpha(e)];
    if (b2 != b) throw std::invalid_argument("hom_bijection_back: alpha is not a map over B");
    comps[b][x] = y;
  }
  return WeakNatTrans::make(c, d, std::move(comps));
}

}  // namespace fintop
