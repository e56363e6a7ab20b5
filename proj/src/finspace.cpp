#include "fintop/finspace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fintop {

struct FinSpace::Core {
  std::vector<std::string> labels;
  std::vector<PointSet> below;  // below[i] = U_i = {j : j <= i}
  std::vector<PointSet> above;  // above[i] = {j : i <= j}
  std::vector<std::pair<int, int>> gens;
  bool t0 = true;
};

namespace {

void check_labels_distinct(const std::vector<std::string>& labels) {
  std::set<std::string_view> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate label: " + l);
}

// Canonical generating set: a cycle through each indistinguishability class
// plus covering edges between class representatives. Its closure regenerates
// the full preorder.
std::vector<std::pair<int, int>> canonical_generators(const std::vector<PointSet>& below) {
  const std::size_t n = below.size();
  auto leq = [&](std::size_t i, std::size_t j) { return below[j].contains(i); };

  std::vector<int> class_of(n, -1);
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (class_of[i] >= 0) continue;
    int c = static_cast<int>(members.size());
    members.push_back({});
    for (std::size_t j = i; j < n; ++j)
      if (class_of[j] < 0 && leq(i, j) && leq(j, i)) {
        class_of[j] = c;
        members[c].push_back(static_cast<int>(j));
      }
  }
  const int nc = static_cast<int>(members.size());

  std::vector<std::pair<int, int>> gens;
  for (const auto& m : members)
    if (m.size() >= 2)
      for (std::size_t k = 0; k < m.size(); ++k) gens.emplace_back(m[k], m[(k + 1) % m.size()]);

  auto cleq = [&](int p, int q) { return leq(members[p][0], members[q][0]); };
  for (int p = 0; p < nc; ++p)
    for (int q = 0; q < nc; ++q) {
      if (p == q || !cleq(p, q)) continue;
      bool covering = true;
      for (int r = 0; r < nc && covering; ++r)
        if (r != p && r != q && cleq(p, r) && cleq(r, q)) covering = false;
      if (covering) gens.emplace_back(members[p][0], members[q][0]);
    }
  std::sort(gens.begin(), gens.end());
  return gens;
}

}  // namespace

FinSpace::FinSpace() {
  auto core = std::make_shared<Core>();
  core_ = std::move(core);
}

FinSpace FinSpace::from_relations(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::string, std::string>>& generators) {
  check_labels_distinct(labels);
  const std::size_t n = labels.size();
  std::map<std::string_view, int> idx;
  for (std::size_t i = 0; i < n; ++i) idx[labels[i]] = static_cast<int>(i);

  std::vector<PointSet> below(n, PointSet(n));
  for (std::size_t i = 0; i < n; ++i) below[i].add(i);

  std::vector<std::pair<int, int>> gens;
  for (const auto& [a, b] : generators) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw std::invalid_argument("unknown label in generator: " + a);
    if (ib == idx.end()) throw std::invalid_argument("unknown label in generator: " + b);
    below[ib->second].add(ia->second);
    gens.emplace_back(ia->second, ib->second);
  }

  // Warshall pass on the reachability rows: after processing k, below[j]
  // contains everything reaching j through intermediates up to k.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (below[j].contains(k)) below[j] |= below[k];

  return from_closure(std::move(labels), std::move(below), std::move(gens));
}

FinSpace FinSpace::from_closure(std::vector<std::string> labels, std::vector<PointSet> below,
                                std::vector<std::pair<int, int>> generators) {
  check_labels_distinct(labels);
  const std::size_t n = labels.size();
  if (below.size() != n) throw std::invalid_argument("relation size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (below[i].universe() != n) throw std::invalid_argument("relation universe mismatch");
    if (!below[i].contains(i)) throw std::invalid_argument("relation not reflexive");
  }
  for (std::size_t j = 0; j < n; ++j) {
    PointSet closed = below[j];
    below[j].for_each([&](std::size_t k) { closed |= below[k]; });
    if (!(closed == below[j])) throw std::invalid_argument("relation not transitive");
  }

  auto core = std::make_shared<Core>();
  core->labels = std::move(labels);
  core->below = std::move(below);
  core->above.assign(n, PointSet(n));
  for (std::size_t j = 0; j < n; ++j)
    core->below[j].for_each([&](std::size_t i) { core->above[i].add(j); });
  core->t0 = true;
  for (std::size_t i = 0; i < n && core->t0; ++i) {
    PointSet cls = core->below[i];
    cls &= core->above[i];
    if (cls.count() != 1) core->t0 = false;
  }
  core->gens = generators.empty() ? canonical_generators(core->below) : std::move(generators);
  return FinSpace(std::move(core));
}

std::size_t FinSpace::size() const { return core_->labels.size(); }
const std::string& FinSpace::label(std::size_t i) const { return core_->labels.at(i); }
const std::vector<std::string>& FinSpace::labels() const { return core_->labels; }

std::optional<std::size_t> FinSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < core_->labels.size(); ++i)
    if (core_->labels[i] == label) return i;
  return std::nullopt;
}

bool FinSpace::leq(std::size_t i, std::size_t j) const { return core_->below.at(j).contains(i); }
bool FinSpace::same_class(std::size_t i, std::size_t j) const { return leq(i, j) && leq(j, i); }

const PointSet& FinSpace::minimal_open(std::size_t i) const {
  if (i >= size()) throw std::invalid_argument("unknown point");
  return core_->below[i];
}
const PointSet& FinSpace::up_set(std::size_t i) const {
  if (i >= size()) throw std::invalid_argument("unknown point");
  return core_->above[i];
}

bool FinSpace::is_open(const PointSet& s) const {
  if (s.universe() != size()) throw std::invalid_argument("point set universe mismatch");
  bool open = true;
  s.for_each([&](std::size_t i) {
    if (!core_->below[i].subset_of(s)) open = false;
  });
  return open;
}

bool FinSpace::is_t0() const { return core_->t0; }

std::vector<PointSet> FinSpace::open_sets() const {
  const std::size_t n = size();
  if (n > 16) throw std::invalid_argument("open-set enumeration limited to 16 points");
  std::vector<std::uint32_t> below_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    core_->below[i].for_each([&](std::size_t j) { below_mask[i] |= 1u << j; });

  std::vector<PointSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool down = true;
    for (std::size_t i = 0; i < n && down; ++i)
      if ((m >> i) & 1)
        if ((below_mask[i] & ~m) != 0) down = false;
    if (!down) continue;
    PointSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) s.add(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) {
    auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.to_vector() < b.to_vector();
  });
  return out;
}

const std::vector<std::pair<int, int>>& FinSpace::generators() const { return core_->gens; }

std::vector<std::pair<int, int>> FinSpace::covering_pairs() const {
  return canonical_generators(core_->below);
}

bool operator==(const FinSpace& a, const FinSpace& b) {
  if (a.core_ == b.core_) return true;
  return a.core_->labels == b.core_->labels && a.core_->below == b.core_->below;
}

// ---------------------------------------------------------------------------

ContinuousMap::ContinuousMap(FinSpace dom, FinSpace cod, std::vector<int> img)
    : dom_(std::move(dom)), cod_(std::move(cod)), img_(std::move(img)) {
  const std::size_t n = dom_.size();
  if (img_.size() != n) throw std::invalid_argument("map not total");
  for (int v : img_)
    if (v < 0 || static_cast<std::size_t>(v) >= cod_.size())
      throw std::invalid_argument("map image out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dom_.leq(i, j) && !cod_.leq(img_[i], img_[j]))
        throw std::invalid_argument("map not order-preserving at " + dom_.label(i) + " <= " +
                                    dom_.label(j));
}

ContinuousMap ContinuousMap::identity(const FinSpace& x) {
  std::vector<int> img(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) img[i] = static_cast<int>(i);
  return ContinuousMap(x, x, std::move(img));
}

ContinuousMap ContinuousMap::constant(const FinSpace& dom, const FinSpace& cod, int value) {
  if (value < 0 || static_cast<std::size_t>(value) >= cod.size())
    throw std::invalid_argument("constant value out of range");
  return ContinuousMap(dom, cod, std::vector<int>(dom.size(), value));
}

bool ContinuousMap::is_bijective() const {
  if (dom_.size() != cod_.size()) return false;
  std::vector<char> hit(cod_.size(), 0);
  for (int v : img_) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool ContinuousMap::is_homeomorphism() const {
  if (!is_bijective()) return false;
  const std::size_t n = dom_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cod_.leq(img_[i], img_[j]) && !dom_.leq(i, j)) return false;
  return true;
}

ContinuousMap ContinuousMap::inverse() const {
  if (!is_homeomorphism()) throw std::invalid_argument("map is not a homeomorphism");
  std::vector<int> inv(cod_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<int>(i);
  return ContinuousMap(cod_, dom_, std::move(inv));
}

PointSet ContinuousMap::preimage(const PointSet& v) const {
  if (v.universe() != cod_.size()) throw std::invalid_argument("preimage universe mismatch");
  PointSet out(dom_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (v.contains(img_[i])) out.add(i);
  return out;
}

bool operator==(const ContinuousMap& a, const ContinuousMap& b) {
  return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.img_ == b.img_;
}

ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
  if (!(f.cod() == g.dom())) throw std::invalid_argument("compose: cod/dom mismatch");
  std::vector<int> img(f.dom().size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = g(f(i));
  return ContinuousMap(f.dom(), g.cod(), std::move(img));
}

// ---------------------------------------------------------------------------

KolmogorovQuotient kolmogorov(const FinSpace& x) {
  const std::size_t n = x.size();
  std::vector<int> class_of(n, -1);
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (class_of[i] >= 0) continue;
    int c = static_cast<int>(members.size());
    members.push_back({});
    for (std::size_t j = i; j < n; ++j)
      if (class_of[j] < 0 && x.same_class(i, j)) {
        class_of[j] = c;
        members[c].push_back(static_cast<int>(j));
      }
  }
  const std::size_t nc = members.size();

  std::vector<std::string> qlabels(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::string least = x.label(members[c][0]);
    for (int m : members[c]) least = std::min(least, x.label(m));
    qlabels[c] = std::move(least);
  }

  std::vector<PointSet> below(nc, PointSet(nc));
  for (std::size_t p = 0; p < nc; ++p)
    for (std::size_t q = 0; q < nc; ++q)
      if (x.leq(members[p][0], members[q][0])) below[q].add(p);

  FinSpace quotient = FinSpace::from_closure(std::move(qlabels), std::move(below));
  ContinuousMap sigma(x, quotient, std::move(class_of));
  return KolmogorovQuotient{x, std::move(quotient), std::move(sigma)};
}

ContinuousMap kolmogorov_map(const ContinuousMap& f) {
  KolmogorovQuotient kd = kolmogorov(f.dom());
  KolmogorovQuotient kc = kolmogorov(f.cod());
  std::vector<int> img(kd.quotient.size(), -1);
  for (std::size_t i = 0; i < f.dom().size(); ++i) img[kd.sigma(i)] = kc.sigma(f(i));
  return ContinuousMap(kd.quotient, kc.quotient, std::move(img));
}

FinSpace product(const FinSpace& x, const FinSpace& y) {
  const std::size_t nx = x.size(), ny = y.size(), n = nx * ny;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) labels.push_back(x.label(i) + "|" + y.label(j));

  std::vector<PointSet> below(n, PointSet(n));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      PointSet& b = below[i * ny + j];
      x.minimal_open(i).for_each([&](std::size_t i2) {
        y.minimal_open(j).for_each([&](std::size_t j2) { b.add(i2 * ny + j2); });
      });
    }
  return FinSpace::from_closure(std::move(labels), std::move(below));
}

namespace {

FinSpace extend_with_tops(const FinSpace& x, const std::vector<std::string>& tops) {
  const std::size_t n = x.size(), m = n + tops.size();
  for (const auto& t : tops)
    if (x.index_of(t)) throw std::invalid_argument("label collision with " + t);
  std::vector<std::string> labels(x.labels());
  labels.insert(labels.end(), tops.begin(), tops.end());
  std::vector<PointSet> below(m, PointSet(m));
  for (std::size_t i = 0; i < n; ++i)
    x.minimal_open(i).for_each([&](std::size_t j) { below[i].add(j); });
  for (std::size_t t = n; t < m; ++t) {
    for (std::size_t i = 0; i < n; ++i) below[t].add(i);
    below[t].add(t);
  }
  return FinSpace::from_closure(std::move(labels), std::move(below));
}

}  // namespace

FinSpace cone(const FinSpace& x) { return extend_with_tops(x, {"+"}); }
FinSpace suspension(const FinSpace& x) { return extend_with_tops(x, {"+", "-"}); }

std::vector<std::vector<int>> connected_components(const FinSpace& x) {
  const std::size_t n = x.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.push_back({});
    std::vector<std::size_t> stack{i};
    comp[i] = c;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      out[c].push_back(static_cast<int>(v));
      for (std::size_t w = 0; w < n; ++w)
        if (comp[w] < 0 && (x.leq(v, w) || x.leq(w, v))) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

namespace {

// Cheap per-point invariants matched before backtracking.
struct PointSig {
  std::size_t down, up, cls;
  friend bool operator==(const PointSig&, const PointSig&) = default;
};

std::vector<PointSig> signatures(const FinSpace& x) {
  std::vector<PointSig> sig(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sig[i].down = x.minimal_open(i).count();
    sig[i].up = x.up_set(i).count();
    PointSet cls = x.minimal_open(i);
    cls &= x.up_set(i);
    sig[i].cls = cls.count();
  }
  return sig;
}

struct HomeoSearch {
  const FinSpace& x;
  const FinSpace& y;
  const std::function<bool(const std::vector<int>&)>& fn;
  std::vector<std::vector<int>> cand;
  std::vector<int> img;
  std::vector<char> used;
  bool stopped = false;

  bool run() {
    const std::size_t n = x.size();
    if (n != y.size()) return true;
    auto sx = signatures(x), sy = signatures(y);
    cand.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (sx[i] == sy[j]) cand[i].push_back(static_cast<int>(j));
      if (cand[i].empty()) return true;
    }
    img.assign(n, -1);
    used.assign(n, 0);
    rec(0);
    return !stopped;
  }

  void rec(std::size_t i) {
    if (stopped) return;
    const std::size_t n = x.size();
    if (i == n) {
      if (!fn(img)) stopped = true;
      return;
    }
    for (int j : cand[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        if (x.leq(i, k) != y.leq(j, img[k])) ok = false;
        if (ok && x.leq(k, i) != y.leq(img[k], j)) ok = false;
      }
      if (!ok) continue;
      img[i] = j;
      used[j] = 1;
      rec(i + 1);
      used[j] = 0;
      img[i] = -1;
      if (stopped) return;
    }
  }
};

}  // namespace

bool for_each_homeomorphism(const FinSpace& x, const FinSpace& y,
                            const std::function<bool(const std::vector<int>&)>& fn) {
  HomeoSearch s{x, y, fn, {}, {}, {}, false};
  return s.run();
}

std::optional<ContinuousMap> find_homeomorphism(const FinSpace& x, const FinSpace& y) {
  std::optional<std::vector<int>> found;
  for_each_homeomorphism(x, y, [&](const std::vector<int>& img) {
    found = img;
    return false;
  });
  if (!found) return std::nullopt;
  return ContinuousMap(x, y, std::move(*found));
}

std::vector<ContinuousMap> all_homeomorphisms(const FinSpace& x, const FinSpace& y) {
  std::vector<ContinuousMap> out;
  for_each_homeomorphism(x, y, [&](const std::vector<int>& img) {
    out.emplace_back(x, y, img);
    return true;
  });
  return out;
}

Subspace subspace(const FinSpace& x, const PointSet& s) {
  if (s.universe() != x.size()) throw std::invalid_argument("subspace universe mismatch");
  std::vector<int> points = s.to_vector();
  const std::size_t m = points.size();
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = x.label(points[i]);
  std::vector<PointSet> below(m, PointSet(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (x.leq(points[i], points[j])) below[j].add(i);
  return Subspace{FinSpace::from_closure(std::move(labels), std::move(below)), std::move(points)};
}

}  // namespace fintop
