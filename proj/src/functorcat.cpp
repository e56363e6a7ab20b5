#include "fintop/functorcat.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace fintop {

namespace {

std::vector<std::pair<int, int>> comparable_pairs(const FinSpace& base) {
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(base.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (base.leq(i, j)) pairs.emplace_back(i, j);
  return pairs;
}

std::vector<int> identity_vector(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
  return v;
}

}  // namespace

TopFunctor::TopFunctor(unchecked_tag, FinSpace base, std::vector<FinSpace> objects,
                       std::map<std::pair<int, int>, std::vector<int>> arrows)
    : base_(std::move(base)), objects_(std::move(objects)) {
  const int n = static_cast<int>(base_.size());
  if (objects_.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("one object per base point required");
  pairs_ = comparable_pairs(base_);
  pair_idx_.assign(static_cast<std::size_t>(n) * n, -1);
  arrows_.resize(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    auto [i, j] = pairs_[k];
    pair_idx_[static_cast<std::size_t>(i) * n + j] = static_cast<int>(k);
    auto it = arrows.find({i, j});
    if (it != arrows.end())
      arrows_[k] = std::move(it->second);
    else if (i == j)
      arrows_[k] = identity_vector(objects_[i].size());
    else
      throw std::invalid_argument("missing arrow for comparable pair " + base_.label(i) + " <= " +
                                  base_.label(j));
  }
  for (const auto& [key, img] : arrows)
    if (!base_.leq(key.first, key.second))
      throw std::invalid_argument("arrow given for non-comparable pair");
  (void)arrows;
}

TopFunctor::TopFunctor(FinSpace base, std::vector<FinSpace> objects,
                       std::map<std::pair<int, int>, std::vector<int>> arrows)
    : TopFunctor(unchecked_tag{}, std::move(base), std::move(objects), std::move(arrows)) {
  auto issues = functor_violations(*this);
  if (!issues.empty()) throw std::invalid_argument("invalid functor: " + issues.front());
}

TopFunctor TopFunctor::unchecked(FinSpace base, std::vector<FinSpace> objects,
                                 std::map<std::pair<int, int>, std::vector<int>> arrows) {
  return TopFunctor(unchecked_tag{}, std::move(base), std::move(objects), std::move(arrows));
}

std::map<std::pair<int, int>, std::vector<int>> derive_arrow_closure(
    const FinSpace& base, const std::vector<FinSpace>& objects,
    std::map<std::pair<int, int>, std::vector<int>> arrows) {
  const int n = static_cast<int>(base.size());
  for (int i = 0; i < n; ++i)
    if (!arrows.count({i, i})) arrows[{i, i}] = identity_vector(objects.at(i).size());

  // Fixpoint derivation: fill an unknown composite as soon as some split
  // point makes both halves known, taking the least split each round.
  auto pairs = comparable_pairs(base);
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto [i, j] : pairs) {
      if (arrows.count({i, j})) continue;
      for (int m = 0; m < n; ++m) {
        if (m == i || m == j || !base.leq(i, m) || !base.leq(m, j)) continue;
        auto first = arrows.find({i, m});
        auto second = arrows.find({m, j});
        if (first == arrows.end() || second == arrows.end()) continue;
        const auto& f = first->second;
        const auto& s = second->second;
        std::vector<int> comp(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) {
          if (f[x] < 0 || static_cast<std::size_t>(f[x]) >= s.size())
            throw std::invalid_argument("arrow image out of range while deriving composites");
          comp[x] = s[f[x]];
        }
        arrows[{i, j}] = std::move(comp);
        progress = true;
        break;
      }
    }
  }
  for (auto [i, j] : pairs)
    if (!arrows.count({i, j}))
      throw std::invalid_argument("underdetermined functor: no arrow derivable for " +
                                  base.label(i) + " <= " + base.label(j));
  return arrows;
}

TopFunctor TopFunctor::from_cover(FinSpace base, std::vector<FinSpace> objects,
                                  std::map<std::pair<int, int>, std::vector<int>> arrows) {
  auto closed = derive_arrow_closure(base, objects, std::move(arrows));
  return TopFunctor(std::move(base), std::move(objects), std::move(closed));
}

TopFunctor TopFunctor::constant(const FinSpace& base, const FinSpace& fiber) {
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  const int n = static_cast<int>(base.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (base.leq(i, j)) arrows[{i, j}] = identity_vector(fiber.size());
  return TopFunctor(base, std::vector<FinSpace>(base.size(), fiber), std::move(arrows));
}

int TopFunctor::pair_index(int b1, int b2) const {
  const int n = static_cast<int>(base_.size());
  if (b1 < 0 || b2 < 0 || b1 >= n || b2 >= n) throw std::invalid_argument("unknown base point");
  return pair_idx_[static_cast<std::size_t>(b1) * n + b2];
}

const std::vector<int>& TopFunctor::arrow_image(int b1, int b2) const {
  int k = pair_index(b1, b2);
  if (k < 0) throw std::invalid_argument("pair not comparable");
  return arrows_[k];
}

ContinuousMap TopFunctor::arrow_at(int b1, int b2) const {
  return ContinuousMap(objects_.at(b1), objects_.at(b2), arrow_image(b1, b2));
}

bool operator==(const TopFunctor& a, const TopFunctor& b) {
  return a.base_ == b.base_ && a.objects_ == b.objects_ && a.arrows_ == b.arrows_;
}

std::vector<std::string> functor_violations(const TopFunctor& d) {
  std::vector<std::string> issues;
  const FinSpace& base = d.base();
  const int n = static_cast<int>(base.size());

  std::vector<char> arrow_ok(d.pairs().size(), 1);
  for (std::size_t k = 0; k < d.pairs().size(); ++k) {
    auto [i, j] = d.pairs()[k];
    const auto& img = d.arrow_image(i, j);
    const FinSpace& from = d.object_at(i);
    const FinSpace& to = d.object_at(j);
    if (img.size() != from.size()) {
      issues.push_back("arrow " + base.label(i) + "->" + base.label(j) + " is not total");
      arrow_ok[k] = 0;
      continue;
    }
    bool range_ok = true;
    for (int v : img)
      if (v < 0 || static_cast<std::size_t>(v) >= to.size()) range_ok = false;
    if (!range_ok) {
      issues.push_back("arrow " + base.label(i) + "->" + base.label(j) + " maps outside codomain");
      arrow_ok[k] = 0;
      continue;
    }
    for (std::size_t x = 0; x < from.size() && arrow_ok[k]; ++x)
      for (std::size_t y = 0; y < from.size(); ++y)
        if (from.leq(x, y) && !to.leq(img[x], img[y])) {
          issues.push_back("arrow " + base.label(i) + "->" + base.label(j) +
                           " not order-preserving at " + from.label(x) + " <= " + from.label(y));
          arrow_ok[k] = 0;
          break;
        }
    if (i == j && arrow_ok[k] && img != identity_vector(from.size()))
      issues.push_back("arrow " + base.label(i) + "->" + base.label(i) + " is not the identity");
  }

  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) {
      if (!base.leq(i, m)) continue;
      for (int j = 0; j < n; ++j) {
        if (!base.leq(m, j)) continue;
        int kim = d.pair_index(i, m), kmj = d.pair_index(m, j), kij = d.pair_index(i, j);
        if (!arrow_ok[kim] || !arrow_ok[kmj] || !arrow_ok[kij]) continue;
        const auto& f = d.arrow_image(i, m);
        const auto& s = d.arrow_image(m, j);
        const auto& t = d.arrow_image(i, j);
        bool same = true;
        for (std::size_t x = 0; x < f.size() && same; ++x)
          if (s[f[x]] != t[x]) same = false;
        if (!same)
          issues.push_back("composition mismatch along " + base.label(i) + " <= " + base.label(m) +
                           " <= " + base.label(j));
      }
    }
  return issues;
}

bool validate_functor(const TopFunctor& d) { return functor_violations(d).empty(); }

bool is_morphism_inverting(const TopFunctor& d) {
  for (auto [i, j] : d.pairs())
    if (!d.arrow_at(i, j).is_homeomorphism()) return false;
  return true;
}

bool map_preceq(const ContinuousMap& f, const ContinuousMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw std::invalid_argument("map_preceq: mismatched dom/cod");
  // Every open set is a union of minimal opens, so quantifying over the U_y
  // decides the condition for all opens.
  const FinSpace& cod = f.cod();
  for (std::size_t y = 0; y < cod.size(); ++y)
    for (std::size_t x = 0; x < f.dom().size(); ++x)
      if (cod.leq(g(x), y) && !cod.leq(f(x), y)) return false;
  return true;
}

// ---------------------------------------------------------------------------

int AutGroup::find(const std::vector<int>& perm) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), perm);
  if (it == elems.end() || *it != perm) throw std::invalid_argument("not a group element");
  return static_cast<int>(it - elems.begin());
}

AutGroup aut_group(const FinSpace& f) {
  AutGroup g;
  g.space = f;
  for_each_homeomorphism(f, f, [&](const std::vector<int>& img) {
    g.elems.push_back(img);
    return true;
  });
  // The search emits candidates in ascending image order, so elems is sorted
  // and the identity permutation sits at index 0.
  const int m = static_cast<int>(g.elems.size());
  g.table.assign(m, std::vector<int>(m));
  g.inverse.assign(m, -1);
  std::vector<int> buf(f.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (std::size_t x = 0; x < f.size(); ++x) buf[x] = g.elems[i][g.elems[j][x]];
      g.table[i][j] = g.find(buf);
    }
  for (int i = 0; i < m; ++i) {
    std::vector<int> inv(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) inv[g.elems[i][x]] = static_cast<int>(x);
    g.inverse[i] = g.find(inv);
  }
  g.identity = g.find(identity_vector(f.size()));
  return g;
}

// ---------------------------------------------------------------------------
// Enumeration of functors into Aut(F).

namespace {

struct AutScheme {
  const FinSpace* base;
  const AutGroup* g;
  int n = 0, nc = 0;
  std::vector<int> class_of;
  std::vector<std::vector<int>> members;
  std::vector<int> root;
  std::vector<std::vector<char>> cleq;

  struct Gen {
    int from, to;
    bool intra;
    int p, q;
  };
  std::vector<Gen> gens;
  std::vector<int> intra_gen;               // point -> gen index, -1 at class roots
  std::vector<std::vector<int>> hasse_gen;  // [p][q] -> gen index or -1
  std::vector<std::vector<std::vector<int>>> chain;  // gen indices along least chain
  std::vector<std::vector<int>> det_at;              // max gen index in chain, -1 if empty
  std::vector<std::vector<std::array<int, 3>>> triples_at;
  std::vector<std::pair<int, int>> pairs;

  AutScheme(const FinSpace& b, const AutGroup& gg) : base(&b), g(&gg) {
    n = static_cast<int>(b.size());
    class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (class_of[i] >= 0) continue;
      int c = static_cast<int>(members.size());
      members.push_back({});
      for (int j = i; j < n; ++j)
        if (class_of[j] < 0 && b.same_class(i, j)) {
          class_of[j] = c;
          members[c].push_back(j);
        }
    }
    nc = static_cast<int>(members.size());
    root.resize(nc);
    for (int c = 0; c < nc; ++c) root[c] = members[c][0];

    cleq.assign(nc, std::vector<char>(nc, 0));
    for (int p = 0; p < nc; ++p)
      for (int q = 0; q < nc; ++q) cleq[p][q] = b.leq(root[p], root[q]);

    std::vector<std::vector<char>> hasse(nc, std::vector<char>(nc, 0));
    for (int p = 0; p < nc; ++p)
      for (int q = 0; q < nc; ++q) {
        if (p == q || !cleq[p][q]) continue;
        bool cover = true;
        for (int r = 0; r < nc && cover; ++r)
          if (r != p && r != q && cleq[p][r] && cleq[r][q]) cover = false;
        hasse[p][q] = cover;
      }

    for (int c = 0; c < nc; ++c)
      for (std::size_t k = 1; k < members[c].size(); ++k)
        gens.push_back({root[c], members[c][k], true, c, c});
    for (int p = 0; p < nc; ++p)
      for (int q = 0; q < nc; ++q)
        if (hasse[p][q]) gens.push_back({root[p], root[q], false, p, q});
    std::sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b2) {
      return std::pair(a.from, a.to) < std::pair(b2.from, b2.to);
    });

    intra_gen.assign(n, -1);
    hasse_gen.assign(nc, std::vector<int>(nc, -1));
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].intra)
        intra_gen[gens[k].to] = static_cast<int>(k);
      else
        hasse_gen[gens[k].p][gens[k].q] = static_cast<int>(k);
    }

    chain.assign(nc, std::vector<std::vector<int>>(nc));
    det_at.assign(nc, std::vector<int>(nc, -1));
    for (int p = 0; p < nc; ++p)
      for (int q = 0; q < nc; ++q) {
        if (!cleq[p][q] || p == q) continue;
        int cur = p;
        while (cur != q) {
          int next = -1;
          for (int r = 0; r < nc; ++r)
            if (hasse[cur][r] && cleq[r][q]) {
              next = r;
              break;
            }
          chain[p][q].push_back(hasse_gen[cur][next]);
          cur = next;
        }
        for (int e : chain[p][q]) det_at[p][q] = std::max(det_at[p][q], e);
      }

    triples_at.assign(gens.size(), {});
    for (int p = 0; p < nc; ++p)
      for (int q = 0; q < nc; ++q) {
        if (p == q || !cleq[p][q]) continue;
        for (int r = 0; r < nc; ++r) {
          if (q == r || !cleq[q][r]) continue;
          int depth = std::max({det_at[p][q], det_at[q][r], det_at[p][r]});
          triples_at[depth].push_back({p, q, r});
        }
      }

    pairs = comparable_pairs(b);
  }

  int chain_value(const std::vector<int>& vals, int p, int q) const {
    int v = g->identity;
    for (int e : chain[p][q]) v = g->mul(vals[e], v);
    return v;
  }

  bool triples_ok(const std::vector<int>& vals, int depth) const {
    for (const auto& [p, q, r] : triples_at[depth])
      if (chain_value(vals, p, r) != g->mul(chain_value(vals, q, r), chain_value(vals, p, q)))
        return false;
    return true;
  }

  void derive(const std::vector<int>& vals, std::vector<int>& out) const {
    out.resize(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      int p = class_of[i], q = class_of[j];
      int hi = intra_gen[i] < 0 ? g->identity : vals[intra_gen[i]];
      int hj = intra_gen[j] < 0 ? g->identity : vals[intra_gen[j]];
      out[k] = g->mul(hj, g->mul(chain_value(vals, p, q), g->inverse[hi]));
    }
  }
};

}  // namespace

void for_each_functor_to_aut(const FinSpace& base, const AutGroup& g,
                             const std::function<bool(const std::vector<int>&)>& fn) {
  AutScheme scheme(base, g);
  const int gsize = static_cast<int>(g.size());
  std::vector<int> vals(scheme.gens.size(), 0), out;
  bool stop = false;

  auto rec = [&](auto&& self, std::size_t d) -> void {
    if (stop) return;
    if (d == scheme.gens.size()) {
      scheme.derive(vals, out);
      if (!fn(out)) stop = true;
      return;
    }
    for (int v = 0; v < gsize && !stop; ++v) {
      vals[d] = v;
      if (scheme.triples_ok(vals, static_cast<int>(d))) self(self, d + 1);
    }
  };
  rec(rec, 0);
}

TopFunctor functor_from_aut(const FinSpace& base, const AutGroup& g,
                            const std::vector<int>& elem_per_pair) {
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  auto pairs = comparable_pairs(base);
  if (elem_per_pair.size() != pairs.size())
    throw std::invalid_argument("one group element per comparable pair required");
  for (std::size_t k = 0; k < pairs.size(); ++k) arrows[pairs[k]] = g.elems.at(elem_per_pair[k]);
  return TopFunctor(base, std::vector<FinSpace>(base.size(), g.space), std::move(arrows));
}

std::vector<TopFunctor> enumerate_functors_to_aut(const FinSpace& base, const AutGroup& g) {
  std::vector<TopFunctor> out;
  for_each_functor_to_aut(base, g, [&](const std::vector<int>& elems) {
    out.push_back(functor_from_aut(base, g, elems));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Natural isomorphism search.

namespace {

struct TreeEdge {
  int child, parent;
  bool up;  // true when parent <= child
};

// BFS spanning tree of the comparability graph inside one component.
std::vector<TreeEdge> zigzag_tree(const FinSpace& b, const std::vector<int>& comp) {
  std::vector<TreeEdge> edges;
  std::vector<char> seen(b.size(), 0);
  std::vector<int> queue{comp[0]};
  seen[comp[0]] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int w : comp) {
      if (seen[w] || (!b.leq(v, w) && !b.leq(w, v))) continue;
      seen[w] = 1;
      edges.push_back({w, v, b.leq(v, w)});
      queue.push_back(w);
    }
  }
  return edges;
}

bool square_holds(const TopFunctor& c, const TopFunctor& d, int i, int j,
                  const std::vector<int>& gi, const std::vector<int>& gj) {
  const auto& carr = c.arrow_image(i, j);
  const auto& darr = d.arrow_image(i, j);
  for (std::size_t x = 0; x < carr.size(); ++x)
    if (gj[carr[x]] != darr[gi[x]]) return false;
  return true;
}

}  // namespace

std::optional<std::vector<ContinuousMap>> natural_iso(const TopFunctor& c, const TopFunctor& d,
                                                      SearchBudget* budget) {
  if (!(c.base() == d.base())) throw std::invalid_argument("natural_iso: base mismatch");
  SearchBudget local;
  if (!budget) budget = &local;
  const FinSpace& base = c.base();
  const int n = static_cast<int>(base.size());

  std::vector<std::vector<int>> assign(n);
  auto comps = connected_components(base);
  const bool fast = is_morphism_inverting(c) && is_morphism_inverting(d);

  for (const auto& comp : comps) {
    bool found = false;
    if (fast) {
      auto tree = zigzag_tree(base, comp);
      int rt = comp[0];
      for_each_homeomorphism(c.object_at(rt), d.object_at(rt), [&](const std::vector<int>& g0) {
        budget->charge();
        assign[rt] = g0;
        for (const auto& e : tree) {
          const auto& gp = assign[e.parent];
          std::vector<int> gc(c.object_at(e.child).size());
          if (e.up) {
            // g_child = D(parent<=child) ∘ g_parent ∘ C(parent<=child)^{-1}
            const auto& carr = c.arrow_image(e.parent, e.child);
            const auto& darr = d.arrow_image(e.parent, e.child);
            std::vector<int> cinv(carr.size());
            for (std::size_t x = 0; x < carr.size(); ++x) cinv[carr[x]] = static_cast<int>(x);
            for (std::size_t x = 0; x < gc.size(); ++x) gc[x] = darr[gp[cinv[x]]];
          } else {
            // g_child = D(child<=parent)^{-1} ∘ g_parent ∘ C(child<=parent)
            const auto& carr = c.arrow_image(e.child, e.parent);
            const auto& darr = d.arrow_image(e.child, e.parent);
            std::vector<int> dinv(darr.size());
            for (std::size_t x = 0; x < darr.size(); ++x) dinv[darr[x]] = static_cast<int>(x);
            for (std::size_t x = 0; x < gc.size(); ++x) gc[x] = dinv[gp[carr[x]]];
          }
          assign[e.child] = std::move(gc);
        }
        for (int i : comp)
          for (int j : comp) {
            if (!base.leq(i, j)) continue;
            if (!square_holds(c, d, i, j, assign[i], assign[j])) return true;
          }
        found = true;
        return false;
      });
    } else {
      std::vector<std::vector<std::vector<int>>> cand(comp.size());
      bool feasible = true;
      for (std::size_t k = 0; k < comp.size() && feasible; ++k) {
        for_each_homeomorphism(c.object_at(comp[k]), d.object_at(comp[k]),
                               [&](const std::vector<int>& img) {
                                 cand[k].push_back(img);
                                 return true;
                               });
        if (cand[k].empty()) feasible = false;
      }
      if (!feasible) return std::nullopt;
      auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == comp.size()) return true;
        int v = comp[k];
        for (const auto& g0 : cand[k]) {
          budget->charge();
          bool ok = true;
          for (std::size_t k2 = 0; k2 < k && ok; ++k2) {
            int w = comp[k2];
            if (base.leq(v, w) && !square_holds(c, d, v, w, g0, assign[w])) ok = false;
            if (ok && base.leq(w, v) && !square_holds(c, d, w, v, assign[w], g0)) ok = false;
          }
          if (!ok) continue;
          assign[v] = g0;
          if (self(self, k + 1)) return true;
        }
        return false;
      };
      found = rec(rec, 0);
    }
    if (!found) return std::nullopt;
  }

  std::vector<ContinuousMap> family;
  family.reserve(n);
  for (int b = 0; b < n; ++b)
    family.emplace_back(c.object_at(b), d.object_at(b), assign[b]);
  return family;
}

bool is_natural_transformation(const std::vector<std::vector<int>>& comps, const TopFunctor& c,
                               const TopFunctor& d) {
  if (!(c.base() == d.base())) throw std::invalid_argument("base mismatch");
  const int n = static_cast<int>(c.base().size());
  if (comps.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("component dom/cod mismatch");
  for (int b = 0; b < n; ++b) {
    if (comps[b].size() != c.object_at(b).size())
      throw std::invalid_argument("component dom/cod mismatch");
    for (int v : comps[b])
      if (v < 0 || static_cast<std::size_t>(v) >= d.object_at(b).size())
        throw std::invalid_argument("component dom/cod mismatch");
  }
  for (int b = 0; b < n; ++b) {
    const FinSpace& from = c.object_at(b);
    const FinSpace& to = d.object_at(b);
    for (std::size_t x = 0; x < from.size(); ++x)
      for (std::size_t y = 0; y < from.size(); ++y)
        if (from.leq(x, y) && !to.leq(comps[b][x], comps[b][y])) return false;
  }
  for (auto [i, j] : c.pairs())
    if (!square_holds(c, d, i, j, comps[i], comps[j])) return false;
  return true;
}

bool is_weak_nat_trans(const std::vector<std::vector<int>>& comps, const TopFunctor& c,
                       const TopFunctor& d) {
  if (!(c.base() == d.base())) throw std::invalid_argument("base mismatch");
  const int n = static_cast<int>(c.base().size());
  if (comps.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("component dom/cod mismatch");
  for (int b = 0; b < n; ++b) {
    if (comps[b].size() != c.object_at(b).size())
      throw std::invalid_argument("component dom/cod mismatch");
    for (int v : comps[b])
      if (v < 0 || static_cast<std::size_t>(v) >= d.object_at(b).size())
        throw std::invalid_argument("component dom/cod mismatch");
  }
  // Components must be continuous maps.
  for (int b = 0; b < n; ++b) {
    const FinSpace& from = c.object_at(b);
    const FinSpace& to = d.object_at(b);
    for (std::size_t x = 0; x < from.size(); ++x)
      for (std::size_t y = 0; y < from.size(); ++y)
        if (from.leq(x, y) && !to.leq(comps[b][x], comps[b][y])) return false;
  }
  // D(b1<=b2) ∘ θ_{b1} ⪯ θ_{b2} ∘ C(b1<=b2), checked on minimal opens.
  for (auto [b1, b2] : c.pairs()) {
    const auto& carr = c.arrow_image(b1, b2);
    const auto& darr = d.arrow_image(b1, b2);
    const FinSpace& to = d.object_at(b2);
    for (std::size_t x = 0; x < carr.size(); ++x) {
      int fx = darr[comps[b1][x]];
      int gx = comps[b2][carr[x]];
      for (std::size_t y = 0; y < to.size(); ++y)
        if (to.leq(gx, y) && !to.leq(fx, y)) return false;
    }
  }
  return true;
}

WeakNatTrans WeakNatTrans::make(TopFunctor source, TopFunctor target,
                                std::vector<std::vector<int>> components) {
  if (!is_weak_nat_trans(components, source, target))
    throw std::invalid_argument("family is not a weak natural transformation");
  return WeakNatTrans{std::move(source), std::move(target), std::move(components)};
}

ContinuousMap WeakNatTrans::component_at(std::size_t b) const {
  return ContinuousMap(source.object_at(b), target.object_at(b), components.at(b));
}

WeakNatTrans identity_weak(const TopFunctor& d) {
  std::vector<std::vector<int>> comps(d.base().size());
  for (std::size_t b = 0; b < d.base().size(); ++b)
    comps[b] = identity_vector(d.object_at(b).size());
  return WeakNatTrans::make(d, d, std::move(comps));
}

WeakNatTrans compose_weak(const WeakNatTrans& theta, const WeakNatTrans& psi) {
  if (!(psi.target == theta.source))
    throw std::invalid_argument("compose_weak: target of psi must be the source of theta");
  std::vector<std::vector<int>> comps(psi.components.size());
  for (std::size_t b = 0; b < comps.size(); ++b) {
    comps[b].resize(psi.components[b].size());
    for (std::size_t x = 0; x < comps[b].size(); ++x)
      comps[b][x] = theta.components[b][psi.components[b][x]];
  }
  return WeakNatTrans::make(psi.source, theta.target, std::move(comps));
}

}  // namespace fintop
