#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fintop {

// Set of point indices backed by 64-bit words.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static PointSet full(std::size_t n) {
    PointSet s(n);
    for (std::size_t w = 0; w + 1 < s.w_.size(); ++w) s.w_[w] = ~std::uint64_t{0};
    if (!s.w_.empty()) {
      std::size_t rest = n - 64 * (s.w_.size() - 1);
      s.w_.back() = rest == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rest) - 1);
    }
    return s;
  }

  std::size_t universe() const { return n_; }
  bool contains(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void add(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void remove(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  PointSet& operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend bool operator==(const PointSet&, const PointSet&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// A finite Alexandroff space presented as a preordered set over an ordered
// label sequence. leq(x, y) means x <= y, i.e. U_x is contained in U_y; the
// open sets are exactly the down-sets, and U_x = {y : y <= x} is the minimal
// open neighbourhood of x. Antisymmetry is not required: non-T0 spaces are
// first-class. Point identity is positional; labels are presentation only.
//
// Values are immutable after construction and share storage on copy.
class FinSpace {
 public:
  FinSpace();  // the empty space

  // Reflexive-transitive closure of the generator pairs.
  static FinSpace from_relations(std::vector<std::string> labels,
                                 const std::vector<std::pair<std::string, std::string>>& generators);

  // `below[i]` must already be a closed preorder (reflexive, transitive);
  // `generators`, when given, are retained verbatim for emission.
  static FinSpace from_closure(std::vector<std::string> labels, std::vector<PointSet> below,
                               std::vector<std::pair<int, int>> generators = {});

  std::size_t size() const;
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool leq(std::size_t i, std::size_t j) const;          // i <= j
  bool same_class(std::size_t i, std::size_t j) const;   // i <= j and j <= i
  const PointSet& minimal_open(std::size_t i) const;     // U_i = {j : j <= i}
  const PointSet& up_set(std::size_t i) const;           // {j : i <= j}
  bool is_open(const PointSet& s) const;                 // s is a down-set
  bool is_t0() const;

  // Every open set, i.e. every down-set. Guarded to small spaces.
  std::vector<PointSet> open_sets() const;

  // Either the generators supplied at construction or a canonical generating
  // set (class cycles plus covering edges between class representatives).
  const std::vector<std::pair<int, int>>& generators() const;

  // The canonical generating set, independent of how the space was built.
  std::vector<std::pair<int, int>> covering_pairs() const;

  friend bool operator==(const FinSpace& a, const FinSpace& b);

 private:
  struct Core;
  std::shared_ptr<const Core> core_;
  explicit FinSpace(std::shared_ptr<const Core> core) : core_(std::move(core)) {}
};

// An order-preserving (equivalently, continuous) total map between spaces.
class ContinuousMap {
 public:
  // Throws std::invalid_argument if img is not total into cod or not
  // order-preserving.
  ContinuousMap(FinSpace dom, FinSpace cod, std::vector<int> img);

  static ContinuousMap identity(const FinSpace& x);
  static ContinuousMap constant(const FinSpace& dom, const FinSpace& cod, int value);

  const FinSpace& dom() const { return dom_; }
  const FinSpace& cod() const { return cod_; }
  int operator()(std::size_t i) const { return img_[i]; }
  const std::vector<int>& image() const { return img_; }

  bool is_bijective() const;
  bool is_homeomorphism() const;  // bijective with order-preserving inverse
  ContinuousMap inverse() const;  // requires is_homeomorphism()
  PointSet preimage(const PointSet& v) const;

  friend bool operator==(const ContinuousMap& a, const ContinuousMap& b);

 private:
  FinSpace dom_, cod_;
  std::vector<int> img_;
};

// g after f.
ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f);

// Kolmogorov quotient: identifies topologically indistinguishable points.
// Class labels are the lexicographically least member label; classes are
// ordered by least member index, so the result is deterministic.
struct KolmogorovQuotient {
  FinSpace source;
  FinSpace quotient;       // T0
  ContinuousMap sigma;     // source -> quotient, surjective and open
};

KolmogorovQuotient kolmogorov(const FinSpace& x);

// The unique map K(f) with K(f)∘sigma_dom = sigma_cod∘f.
ContinuousMap kolmogorov_map(const ContinuousMap& f);

// Product space: points are pairs "x|y" in x-major order, ordered
// componentwise.
FinSpace product(const FinSpace& x, const FinSpace& y);

// Non-Hausdorff cone: adds a maximum "+". Non-Hausdorff suspension: adds two
// incomparable points "+", "-" above everything. Throws on label collision.
FinSpace cone(const FinSpace& x);
FinSpace suspension(const FinSpace& x);

// Connected components of the comparability graph, each sorted ascending,
// ordered by least member.
std::vector<std::vector<int>> connected_components(const FinSpace& x);

// Order isomorphism search with per-point invariant pruning. Returns the
// first isomorphism in lexicographic backtracking order, or nullopt.
std::optional<ContinuousMap> find_homeomorphism(const FinSpace& x, const FinSpace& y);

// Enumerates all order isomorphisms x -> y in lexicographic order; stops when
// the callback returns false. Returns false iff stopped early.
bool for_each_homeomorphism(const FinSpace& x, const FinSpace& y,
                            const std::function<bool(const std::vector<int>&)>& fn);

std::vector<ContinuousMap> all_homeomorphisms(const FinSpace& x, const FinSpace& y);

// Subspace on the given points; the subspace order of any subset is the
// restricted order. `points` maps subspace indices back to x.
struct Subspace {
  FinSpace space;
  std::vector<int> points;
};
Subspace subspace(const FinSpace& x, const PointSet& s);

}  // namespace fintop
