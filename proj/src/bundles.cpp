#include "fintop/bundles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fintop {

std::vector<int> FiberBundle::fiber_points(int b) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < total().size(); ++e)
    if (map(e) == b) out.push_back(static_cast<int>(e));
  return out;
}

// ---------------------------------------------------------------------------

std::optional<FiberBundle> verify_bundle(const ContinuousMap& p, const FinSpace& f,
                                         SearchBudget* budget) {
  SearchBudget local;
  if (!budget) budget = &local;
  const FinSpace& e = p.dom();
  const FinSpace& b = p.cod();
  const std::size_t nb = b.size(), ne = e.size(), nf = f.size();

  std::vector<std::vector<int>> fibers(nb);
  for (std::size_t x = 0; x < ne; ++x) fibers[p(x)].push_back(static_cast<int>(x));
  for (const auto& fb : fibers)
    if (fb.size() != nf) return std::nullopt;

  for (std::size_t bt = 0; bt < nb; ++bt) {
    PointSet s(ne);
    for (int x : fibers[bt]) s.add(x);
    if (!find_homeomorphism(subspace(e, s).space, f)) return std::nullopt;
  }

  std::vector<std::vector<int>> wit(nb);
  for (std::size_t bt = 0; bt < nb; ++bt) {
    const PointSet& ub = b.minimal_open(bt);
    std::vector<int> vs = ub.to_vector();
    // Upper fibers constrain lower ones, so assign them first.
    std::sort(vs.begin(), vs.end(), [&](int v, int w) {
      auto dv = b.minimal_open(v).count(), dw = b.minimal_open(w).count();
      if (dv != dw) return dv > dw;
      if ((v == static_cast<int>(bt)) != (w == static_cast<int>(bt)))
        return v == static_cast<int>(bt);
      return v < w;
    });
    std::vector<int> elems;
    for (int v : vs)
      for (int x : fibers[v]) elems.push_back(x);

    PointSet region(ne);
    for (int x : elems) region.add(x);
    std::vector<std::size_t> upcnt(ne, 0);
    for (int x : elems) {
      PointSet u = e.up_set(x);
      u &= region;
      upcnt[x] = u.count();
    }
    std::vector<std::size_t> upb(nb, 0);
    for (int v : vs) {
      PointSet u = b.up_set(v);
      u &= ub;
      upb[v] = u.count();
    }

    // Degree signatures of (v, z) in U_b x F must match the element's.
    std::vector<std::vector<int>> cand(ne);
    bool feasible = true;
    for (int x : elems) {
      int v = p(x);
      for (std::size_t z = 0; z < nf; ++z) {
        if (b.minimal_open(v).count() * f.minimal_open(z).count() != e.minimal_open(x).count())
          continue;
        if (upb[v] * f.up_set(z).count() != upcnt[x]) continue;
        cand[x].push_back(static_cast<int>(z));
      }
      if (cand[x].empty()) feasible = false;
    }
    if (!feasible) return std::nullopt;

    std::vector<int> w(ne, -1);
    std::vector<std::vector<char>> used(nb, std::vector<char>(nf, 0));
    auto rec = [&](auto&& self, std::size_t k) -> bool {
      if (k == elems.size()) return true;
      int x = elems[k];
      int v = p(x);
      for (int z : cand[x]) {
        if (used[v][z]) continue;
        budget->charge();
        bool ok = true;
        for (std::size_t k2 = 0; k2 < k && ok; ++k2) {
          int x2 = elems[k2];
          int v2 = p(x2), z2 = w[x2];
          if (e.leq(x, x2) != (b.leq(v, v2) && f.leq(z, z2))) ok = false;
          if (ok && e.leq(x2, x) != (b.leq(v2, v) && f.leq(z2, z))) ok = false;
        }
        if (!ok) continue;
        w[x] = z;
        used[v][z] = 1;
        if (self(self, k + 1)) return true;
        w[x] = -1;
        used[v][z] = 0;
      }
      return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    wit[bt] = std::move(w);
  }
  return FiberBundle{p, f, std::move(wit)};
}

// ---------------------------------------------------------------------------

bool characterization_check(const TopFunctor& d, const FinSpace& f) {
  auto issues = functor_violations(d);
  if (!issues.empty())
    throw std::invalid_argument("characterization_check: invalid functor: " + issues.front());

  const std::size_t nb = d.base().size();
  for (std::size_t b = 0; b < nb; ++b)
    if (!find_homeomorphism(d.object_at(b), f)) return false;

  std::vector<KolmogorovQuotient> kq;
  kq.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) kq.push_back(kolmogorov(d.object_at(b)));

  for (auto [b1, b2] : d.pairs()) {
    const auto& arr = d.arrow_image(b1, b2);
    std::vector<int> kimg(kq[b1].quotient.size(), -1);
    for (std::size_t x = 0; x < arr.size(); ++x) kimg[kq[b1].sigma(x)] = kq[b2].sigma(arr[x]);
    ContinuousMap karr(kq[b1].quotient, kq[b2].quotient, std::move(kimg));
    if (!karr.is_homeomorphism()) return false;

    ContinuousMap kinv = karr.inverse();
    auto class_size = [&](const KolmogorovQuotient& q, int cls) {
      std::size_t c = 0;
      for (std::size_t x = 0; x < q.source.size(); ++x)
        if (q.sigma(x) == cls) ++c;
      return c;
    };
    for (std::size_t y = 0; y < kq[b2].quotient.size(); ++y)
      if (class_size(kq[b1], kinv(y)) != class_size(kq[b2], static_cast<int>(y))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

CanonicalRep canonical_representation(const FiberBundle& p) {
  if (!p.verified()) throw std::invalid_argument("unverified bundle");
  const FinSpace& e = p.total();
  const FinSpace& b = p.base();
  const std::size_t nb = b.size(), ne = e.size(), nf = p.fiber.size();

  std::vector<Subspace> fib(nb);
  std::vector<int> sub_idx(ne, -1);
  for (std::size_t bt = 0; bt < nb; ++bt) {
    PointSet s(ne);
    for (std::size_t x = 0; x < ne; ++x)
      if (p.map(x) == static_cast<int>(bt)) s.add(x);
    fib[bt] = subspace(e, s);
    for (std::size_t k = 0; k < fib[bt].points.size(); ++k) sub_idx[fib[bt].points[k]] = k;
  }

  std::vector<std::vector<int>> winv(nb, std::vector<int>(nf, -1));
  for (std::size_t bt = 0; bt < nb; ++bt)
    for (int x : fib[bt].points) winv[bt][(*p.witnesses)[bt][x]] = x;

  // Indistinguishability classes of each fiber, members in label order; the
  // choice bijections f_{b,y} send the k-th member to k.
  std::vector<KolmogorovQuotient> kq;
  kq.reserve(nb);
  std::vector<std::vector<std::vector<int>>> cls_members(nb);
  std::vector<std::vector<int>> rank(nb);
  for (std::size_t bt = 0; bt < nb; ++bt) {
    kq.push_back(kolmogorov(fib[bt].space));
    cls_members[bt].assign(kq[bt].quotient.size(), {});
    for (std::size_t x = 0; x < fib[bt].space.size(); ++x)
      cls_members[bt][kq[bt].sigma(x)].push_back(static_cast<int>(x));
    for (auto& m : cls_members[bt])
      std::sort(m.begin(), m.end(), [&](int u, int v) {
        return fib[bt].space.label(u) < fib[bt].space.label(v);
      });
    rank[bt].assign(fib[bt].space.size(), -1);
    for (const auto& m : cls_members[bt])
      for (std::size_t k = 0; k < m.size(); ++k) rank[bt][m[k]] = static_cast<int>(k);
  }

  std::map<std::pair<int, int>, std::vector<int>> arrows;
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t b2 = 0; b2 < nb; ++b2) {
      if (!b.leq(b1, b2)) continue;
      std::vector<int> img(fib[b1].space.size());
      for (std::size_t x = 0; x < img.size(); ++x) {
        int eidx = fib[b1].points[x];
        int z = (*p.witnesses)[b2][eidx];  // witness over U_{b2} covers p^{-1}(b1)
        int dsub = sub_idx[winv[b2][z]];   // delta_{b1,b2}(x)
        int y2 = kq[b2].sigma(dsub);
        const auto& members = cls_members[b2][y2];
        if (static_cast<std::size_t>(rank[b1][x]) >= members.size())
          throw std::logic_error("canonical representation: class sizes disagree");
        img[x] = members[rank[b1][x]];
      }
      arrows[{static_cast<int>(b1), static_cast<int>(b2)}] = std::move(img);
    }

  std::vector<FinSpace> objects;
  objects.reserve(nb);
  for (const auto& s : fib) objects.push_back(s.space);
  TopFunctor functor(b, std::move(objects), std::move(arrows));
  return CanonicalRep{p, std::move(functor)};
}

// ---------------------------------------------------------------------------

std::optional<ContinuousMap> bundle_iso(const FiberBundle& p, const FiberBundle& q,
                                        SearchBudget* budget) {
  if (!(p.base() == q.base())) throw std::invalid_argument("bundle_iso: base mismatch");
  if (!(p.fiber == q.fiber)) throw std::invalid_argument("bundle_iso: fiber mismatch");
  if (!p.verified() || !q.verified())
    throw std::invalid_argument("bundle_iso: bundles must be verified");
  SearchBudget local;
  if (!budget) budget = &local;
  const FinSpace& base = p.base();
  const std::size_t nb = base.size(), ne = p.total().size();
  if (q.total().size() != ne) return std::nullopt;

  if (p.fiber.is_t0()) {
    CanonicalRep cp = canonical_representation(p);
    CanonicalRep cq = canonical_representation(q);
    auto iso = natural_iso(cp.functor, cq.functor, budget);
    if (!iso) return std::nullopt;

    std::vector<std::vector<int>> pfib(nb), qfib(nb);
    std::vector<int> psub(ne, -1);
    for (std::size_t bt = 0; bt < nb; ++bt) {
      pfib[bt] = p.fiber_points(static_cast<int>(bt));
      qfib[bt] = q.fiber_points(static_cast<int>(bt));
      for (std::size_t k = 0; k < pfib[bt].size(); ++k) psub[pfib[bt][k]] = static_cast<int>(k);
    }
    std::vector<int> img(ne);
    for (std::size_t x = 0; x < ne; ++x) {
      int bt = p.map(x);
      img[x] = qfib[bt][(*iso)[bt](psub[x])];
    }
    ContinuousMap h(p.total(), q.total(), std::move(img));
    if (!h.is_homeomorphism())
      throw std::logic_error("bundle_iso: assembled map is not a homeomorphism");
    return h;
  }

  // Direct backtracking over fiberwise bijections, checked for bicontinuity.
  std::vector<std::vector<int>> qfib(nb);
  for (std::size_t bt = 0; bt < nb; ++bt) qfib[bt] = q.fiber_points(static_cast<int>(bt));
  std::vector<int> img(ne, -1);
  std::vector<std::vector<char>> used(nb);
  for (std::size_t bt = 0; bt < nb; ++bt) used[bt].assign(qfib[bt].size(), 0);

  const FinSpace& ep = p.total();
  const FinSpace& eq = q.total();
  auto rec = [&](auto&& self, std::size_t x) -> bool {
    if (x == ne) return true;
    int bt = p.map(x);
    for (std::size_t zi = 0; zi < qfib[bt].size(); ++zi) {
      if (used[bt][zi]) continue;
      budget->charge();
      int y = qfib[bt][zi];
      bool ok = true;
      for (std::size_t x2 = 0; x2 < x && ok; ++x2) {
        if (ep.leq(x, x2) != eq.leq(y, img[x2])) ok = false;
        if (ok && ep.leq(x2, x) != eq.leq(img[x2], y)) ok = false;
      }
      if (!ok) continue;
      img[x] = y;
      used[bt][zi] = 1;
      if (self(self, x + 1)) return true;
      img[x] = -1;
      used[bt][zi] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return ContinuousMap(ep, eq, std::move(img));
}

// ---------------------------------------------------------------------------

FiberBundle bundle_from_functor(const TopFunctor& d, const FinSpace& f) {
  if (!is_morphism_inverting(d))
    throw std::invalid_argument("bundle_from_functor: functor must be morphism-inverting");
  GrothSpace g = groth(d);
  const FinSpace& base = d.base();
  const std::size_t nb = base.size(), ne = g.space.size();

  // phi(v, y) = (v, h_b(D(v<=b)(y))) over U_b is a trivialization whenever the
  // arrows invert, so the witnesses need no search.
  std::vector<std::vector<int>> wit(nb, std::vector<int>(ne, -1));
  for (std::size_t bt = 0; bt < nb; ++bt) {
    auto h = find_homeomorphism(d.object_at(bt), f);
    if (!h) throw std::invalid_argument("bundle_from_functor: fiber not homeomorphic to F");
    for (std::size_t e = 0; e < ne; ++e) {
      auto [v, y] = g.tags[e];
      if (!base.leq(v, bt)) continue;
      wit[bt][e] = (*h)(d.arrow_image(v, static_cast<int>(bt))[y]);
    }
  }
  return FiberBundle{g.projection, f, std::move(wit)};
}

FiberBundle trivial_bundle(const FinSpace& base, const FinSpace& fiber) {
  FinSpace e = product(base, fiber);
  const std::size_t nb = base.size(), nf = fiber.size();
  std::vector<int> proj(nb * nf);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nf; ++j) proj[i * nf + j] = static_cast<int>(i);
  ContinuousMap p(std::move(e), base, std::move(proj));

  std::vector<std::vector<int>> wit(nb, std::vector<int>(nb * nf, -1));
  for (std::size_t bt = 0; bt < nb; ++bt)
    base.minimal_open(bt).for_each([&](std::size_t v) {
      for (std::size_t j = 0; j < nf; ++j) wit[bt][v * nf + j] = static_cast<int>(j);
    });
  return FiberBundle{std::move(p), fiber, std::move(wit)};
}

FiberBundle pullback_bundle(const FiberBundle& p, const ContinuousMap& f) {
  if (!p.verified()) throw std::invalid_argument("pullback_bundle: unverified bundle");
  if (!(f.cod() == p.base()))
    throw std::invalid_argument("pullback_bundle: map does not land in the base");
  CanonicalRep rep = canonical_representation(p);
  Pullback pb = pullback_functor(rep.functor, f);
  return bundle_from_functor(pb.functor, p.fiber);
}

// ---------------------------------------------------------------------------

ClassTable classify(const FinSpace& base, const FinSpace& fiber, SearchBudget* budget) {
  SearchBudget local;
  if (!budget) budget = &local;
  AutGroup g = aut_group(fiber);
  ClassTable table;
  table.base = base;
  table.fiber = fiber;

  const int n = static_cast<int>(base.size());
  std::vector<int> pidx(static_cast<std::size_t>(n) * n, -1);
  {
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (base.leq(i, j)) pidx[static_cast<std::size_t>(i) * n + j] = k++;
  }
  auto comps = connected_components(base);
  struct Edge {
    int child, parent;
    bool up;
  };
  std::vector<std::vector<Edge>> trees(comps.size());
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{comps[ci][0]};
    seen[comps[ci][0]] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : comps[ci]) {
        if (seen[w] || (!base.leq(v, w) && !base.leq(w, v))) continue;
        seen[w] = 1;
        trees[ci].push_back({w, v, base.leq(v, w)});
        queue.push_back(w);
      }
    }
  }

  // Natural-isomorphism test between two functors into Aut(F): components are
  // group elements, propagated from each component root, mirroring
  // natural_iso on the materialized functors.
  std::vector<int> gass(n, 0);
  auto iso_assign = [&](const std::vector<int>& a, const std::vector<int>& b2) -> bool {
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      bool found = false;
      int rt = comps[ci][0];
      for (int g0 = 0; g0 < static_cast<int>(g.size()) && !found; ++g0) {
        budget->charge();
        gass[rt] = g0;
        for (const auto& ed : trees[ci]) {
          if (ed.up) {
            int k = pidx[static_cast<std::size_t>(ed.parent) * n + ed.child];
            gass[ed.child] = g.mul(b2[k], g.mul(gass[ed.parent], g.inverse[a[k]]));
          } else {
            int k = pidx[static_cast<std::size_t>(ed.child) * n + ed.parent];
            gass[ed.child] = g.mul(g.inverse[b2[k]], g.mul(gass[ed.parent], a[k]));
          }
        }
        bool ok = true;
        for (int i : comps[ci]) {
          for (int j : comps[ci]) {
            if (!base.leq(i, j)) continue;
            int k = pidx[static_cast<std::size_t>(i) * n + j];
            if (g.mul(gass[j], a[k]) != g.mul(b2[k], gass[i])) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        found = ok;
      }
      if (!found) return false;
    }
    return true;
  };

  struct Rep {
    std::vector<int> assign;
    std::uint64_t count;
  };
  std::vector<Rep> reps;
  std::uint64_t total_seen = 0;
  try {
    for_each_functor_to_aut(base, g, [&](const std::vector<int>& assign) {
      budget->charge();
      bool matched = false;
      for (auto& r : reps)
        if (iso_assign(assign, r.assign)) {
          ++r.count;
          matched = true;
          break;
        }
      if (!matched) reps.push_back({assign, 1});
      ++total_seen;
      return true;
    });
  } catch (const budget_exhausted&) {
    table.inconclusive = true;
  }
  table.functor_count = total_seen;

  std::vector<TopFunctor> functors;
  std::vector<FiberBundle> bundles;
  functors.reserve(reps.size());
  for (const auto& r : reps) {
    functors.push_back(functor_from_aut(base, g, r.assign));
    bundles.push_back(bundle_from_functor(functors.back(), fiber));
  }

  // The functor-level bijection fails for non-T0 fibers; bundle-level
  // isomorphism is the ground truth there, so merge with a union-find.
  std::vector<std::size_t> parent(reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  if (!fiber.is_t0() && !table.inconclusive) {
    try {
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
          std::size_t ri = find(i), rj = find(j);
          if (ri == rj) continue;
          if (bundle_iso(bundles[i], bundles[j], budget))
            parent[std::max(ri, rj)] = std::min(ri, rj);
        }
    } catch (const budget_exhausted&) {
      table.inconclusive = true;
    }
  }

  std::vector<std::uint64_t> total(reps.size(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) total[find(i)] += reps[i].count;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (find(i) == i) table.classes.push_back({functors[i], bundles[i], total[i]});
  return table;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> all_permutations(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::vector<TrivialAut> trivial_automorphisms(const FinSpace& base, const FinSpace& fiber) {
  if (base.size() != 2 || base.same_class(0, 1) || (!base.leq(0, 1) && !base.leq(1, 0)))
    throw std::invalid_argument("trivial_automorphisms: base must be the two-point chain");
  const int b0 = base.leq(0, 1) ? 0 : 1;
  const int b1 = 1 - b0;
  const std::size_t nf = fiber.size();

  FiberBundle triv = trivial_bundle(base, fiber);
  const FinSpace& e = triv.total();
  auto pt = [&](int b, int x) { return b * static_cast<int>(nf) + x; };

  Subspace s0 = subspace(e, [&] {
    PointSet s(e.size());
    for (std::size_t x = 0; x < nf; ++x) s.add(pt(b0, static_cast<int>(x)));
    return s;
  }());
  Subspace s1 = subspace(e, [&] {
    PointSet s(e.size());
    for (std::size_t x = 0; x < nf; ++x) s.add(pt(b1, static_cast<int>(x)));
    return s;
  }());
  std::vector<int> idv(nf);
  std::iota(idv.begin(), idv.end(), 0);
  ContinuousMap c_id(s0.space, s1.space, idv);

  std::vector<TrivialAut> out;
  auto perms = all_permutations(nf);
  for (const auto& a0 : perms)
    for (const auto& a1 : perms) {
      std::vector<int> img(e.size());
      for (std::size_t x = 0; x < nf; ++x) {
        img[pt(b0, static_cast<int>(x))] = pt(b0, a0[x]);
        img[pt(b1, static_cast<int>(x))] = pt(b1, a1[x]);
      }
      bool iso = true;
      for (std::size_t u = 0; u < e.size() && iso; ++u)
        for (std::size_t v = 0; v < e.size(); ++v)
          if (e.leq(u, v) != e.leq(img[u], img[v])) {
            iso = false;
            break;
          }
      if (!iso) continue;

      // Restrictions of an automorphism to the fibers are homeomorphisms.
      ContinuousMap alpha0(fiber, fiber, a0);
      ContinuousMap alpha1(fiber, fiber, a1);
      if (!(kolmogorov_map(alpha0) == kolmogorov_map(alpha1)))
        throw std::logic_error("trivial_automorphisms: fiber slices differ after K");

      ContinuousMap phi0(s0.space, s0.space, a0);
      ContinuousMap phi1(s1.space, s1.space, a1);
      if (!(kolmogorov_map(compose(c_id, phi0)) == kolmogorov_map(compose(phi1, c_id))))
        throw std::logic_error("trivial_automorphisms: K-level square does not commute");

      bool product_form = a0 == a1;
      if (fiber.is_t0() && !product_form)
        throw std::logic_error("trivial_automorphisms: T0 fiber admits a non-product automorphism");
      out.push_back({ContinuousMap(e, e, std::move(img)), a0, a1, product_form});
    }
  return out;
}

}  // namespace fintop
