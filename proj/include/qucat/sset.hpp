#pragma once

// Levelwise-finite, dimension-truncated semi-simplicial sets.
//
// Simplices are addressed by (dimension, index within the level). Face i of
// a k-simplex is the (k-1)-simplex opposite its i'th vertex, so for an edge
// d0 is the target and d1 the source.
//
// An object carries a truncation D. If it is `finite`, every level above D is
// empty; otherwise levels above D are unknown and asking for them throws
// ResourceError.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/ordinal.hpp"

namespace qucat {

using Label = std::vector<int>;
using IndexTuple = std::vector<std::size_t>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class SSet {
 public:
  using Level = std::vector<IndexTuple>;  // face tuples; empty tuples at level 0

  SSet() : SSet(0, true, {Level{}}, {}) {}

  /// Checks that face references resolve; does not check simplicial identities
  /// (see validate()).
  SSet(std::size_t truncation, bool finite, std::vector<Level> levels, std::vector<Label> labels)
      : d_(std::make_shared<Data>()) {
    levels.resize(std::max(levels.size(), truncation + 1));
    require(levels.size() == truncation + 1, "SSet: more levels than the truncation allows");
    if (labels.empty())
      for (std::size_t v = 0; v < levels[0].size(); ++v) labels.push_back({static_cast<int>(v)});
    require(labels.size() == levels[0].size(), "SSet: one label per vertex required");
    for (std::size_t k = 0; k < levels.size(); ++k)
      for (const auto& f : levels[k]) {
        require(f.size() == (k == 0 ? 0 : k + 1), "SSet: wrong number of faces");
        for (auto x : f) require(x < levels[k - 1].size(), "SSet: face reference out of range");
      }
    d_->truncation = truncation;
    d_->finite = finite;
    d_->levels = std::move(levels);
    d_->labels = std::move(labels);
    compute_vertices();
  }

  std::size_t truncation() const { return d_->truncation; }
  bool finite() const { return d_->finite; }
  bool has_level(std::size_t k) const { return k <= d_->truncation || d_->finite; }

  std::size_t level_size(std::size_t k) const {
    if (k <= d_->truncation) return d_->levels[k].size();
    if (d_->finite) return 0;
    throw ResourceError("level " + std::to_string(k) + " requested beyond truncation " +
                        std::to_string(d_->truncation));
  }

  /// Highest nonempty level (0 for the empty object).
  std::size_t dimension() const {
    for (std::size_t k = d_->truncation + 1; k-- > 0;)
      if (!d_->levels[k].empty()) return k;
    return 0;
  }

  std::size_t total_simplices() const {
    std::size_t s = 0;
    for (const auto& l : d_->levels) s += l.size();
    return s;
  }

  const std::vector<Level>& levels() const { return d_->levels; }
  const IndexTuple& faces(std::size_t k, std::size_t idx) const { return d_->levels.at(k).at(idx); }
  std::size_t face(std::size_t k, std::size_t idx, std::size_t i) const { return faces(k, idx).at(i); }
  const IndexTuple& vertices(std::size_t k, std::size_t idx) const { return d_->vertices.at(k).at(idx); }
  const Label& label(std::size_t vertex) const { return d_->labels.at(vertex); }
  const std::vector<Label>& labels() const { return d_->labels; }

  std::vector<Label> key(std::size_t k, std::size_t idx) const {
    std::vector<Label> out;
    for (auto v : vertices(k, idx)) out.push_back(label(v));
    return out;
  }

  /// h^* of a k-simplex for an injective h : [j] -> [k].
  std::size_t restrict(std::size_t k, std::size_t idx, const OrdinalMap& h) const {
    require(h.codomain_size() == k && h.is_injective(), "restrict: need an injective map into [k]");
    std::vector<bool> keep(k + 1, false);
    for (auto x : h.values()) keep[x] = true;
    std::size_t dim = k, cur = idx;
    for (std::size_t i = k + 1; i-- > 0;)
      if (!keep[i]) cur = face(dim--, cur, i);
    return cur;
  }

  /// The edge of a k-simplex spanned by its vertices a < b.
  std::size_t edge_between(std::size_t k, std::size_t idx, std::size_t a, std::size_t b) const {
    return restrict(k, idx, OrdinalMap(k, {a, b}));
  }

  /// Simplices of level k with the given vertex tuple.
  const std::vector<std::size_t>& find_by_vertices(std::size_t k, const IndexTuple& verts) const {
    static const std::vector<std::size_t> none;
    if (k > d_->truncation) return none;
    const auto& idx = index();
    auto it = idx.by_vertices[k].find(verts);
    return it == idx.by_vertices[k].end() ? none : it->second;
  }

  /// Simplices of level k with the given face tuple.
  const std::vector<std::size_t>& find_by_faces(std::size_t k, const IndexTuple& fs) const {
    static const std::vector<std::size_t> none;
    if (k > d_->truncation) return none;
    const auto& idx = index();
    auto it = idx.by_faces[k].find(fs);
    return it == idx.by_faces[k].end() ? none : it->second;
  }

  std::optional<std::size_t> find_vertex(const Label& l) const {
    const auto& idx = index();
    auto it = idx.by_label.find(l);
    if (it == idx.by_label.end() || it->second.size() != 1) return std::nullopt;
    return it->second.front();
  }

  /// Looks up a simplex by the labels of its vertices. Requires labels and
  /// vertex tuples to identify simplices uniquely.
  std::optional<std::size_t> find_by_key(const std::vector<Label>& key) const {
    if (key.empty()) return std::nullopt;
    IndexTuple verts;
    for (const auto& l : key) {
      auto v = find_vertex(l);
      if (!v) return std::nullopt;
      verts.push_back(*v);
    }
    const auto& hits = find_by_vertices(key.size() - 1, verts);
    if (hits.size() != 1) return std::nullopt;
    return hits.front();
  }

  /// True when distinct simplices have distinct vertex tuples and distinct
  /// vertices have distinct labels (an ordered simplicial complex).
  bool is_complex_like() const {
    const auto& idx = index();
    for (const auto& [l, vs] : idx.by_label)
      if (vs.size() > 1) return false;
    for (const auto& lvl : idx.by_vertices)
      for (const auto& [t, ss] : lvl)
        if (ss.size() > 1) return false;
    return true;
  }

  bool operator==(const SSet& o) const {
    return d_->truncation == o.d_->truncation && d_->finite == o.d_->finite &&
           d_->levels == o.d_->levels && d_->labels == o.d_->labels;
  }

  SSet with_labels(std::vector<Label> labels) const {
    return SSet(d_->truncation, d_->finite, d_->levels, std::move(labels));
  }

 private:
  struct Index {
    std::vector<std::map<IndexTuple, std::vector<std::size_t>>> by_vertices, by_faces;
    std::map<Label, std::vector<std::size_t>> by_label;
  };
  struct Data {
    std::size_t truncation = 0;
    bool finite = true;
    std::vector<Level> levels;
    std::vector<Label> labels;
    std::vector<std::vector<IndexTuple>> vertices;
    mutable std::once_flag index_once;
    mutable Index index;
  };

  void compute_vertices() {
    auto& d = *d_;
    d.vertices.assign(d.levels.size(), {});
    for (std::size_t v = 0; v < d.levels[0].size(); ++v) d.vertices[0].push_back({v});
    for (std::size_t k = 1; k < d.levels.size(); ++k)
      for (const auto& f : d.levels[k]) {
        // vertices 0..k-1 from d_k, vertex k is the last vertex of d_0
        IndexTuple vs = d.vertices[k - 1][f[k]];
        vs.push_back(d.vertices[k - 1][f[0]].back());
        d.vertices[k].push_back(std::move(vs));
      }
  }

  const Index& index() const {
    std::call_once(d_->index_once, [this] {
      auto& idx = d_->index;
      const auto& d = *d_;
      idx.by_vertices.resize(d.levels.size());
      idx.by_faces.resize(d.levels.size());
      for (std::size_t k = 0; k < d.levels.size(); ++k)
        for (std::size_t i = 0; i < d.levels[k].size(); ++i) {
          idx.by_vertices[k][d.vertices[k][i]].push_back(i);
          idx.by_faces[k][d.levels[k][i]].push_back(i);
        }
      for (std::size_t v = 0; v < d.labels.size(); ++v) idx.by_label[d.labels[v]].push_back(v);
    });
    return d_->index;
  }

  std::shared_ptr<Data> d_;
};

/// Incremental construction; single owner.
class SSetBuilder {
 public:
  explicit SSetBuilder(std::size_t truncation, bool finite = true)
      : truncation_(truncation), finite_(finite), levels_(truncation + 1) {}

  std::size_t add_vertex(Label l = {}) {
    if (l.empty()) l = {static_cast<int>(levels_[0].size())};
    labels_.push_back(std::move(l));
    levels_[0].push_back({});
    return levels_[0].size() - 1;
  }

  std::size_t add_simplex(std::size_t k, IndexTuple faces) {
    if (k == 0) return add_vertex();
    if (k > truncation_) throw ResourceError("SSetBuilder: simplex above truncation");
    levels_[k].push_back(std::move(faces));
    return levels_[k].size() - 1;
  }

  std::size_t level_size(std::size_t k) const { return levels_.at(k).size(); }

  SSet build() && { return SSet(truncation_, finite_, std::move(levels_), std::move(labels_)); }

 private:
  std::size_t truncation_;
  bool finite_;
  std::vector<SSet::Level> levels_;
  std::vector<Label> labels_;
};

struct IdentityViolation {
  std::size_t dim, index, i, j;
  bool operator==(const IdentityViolation&) const = default;
};

/// Every (simplex, i, j) with i < j where d_i d_j != d_{j-1} d_i.
inline std::vector<IdentityViolation> validate(const SSet& x) {
  std::vector<IdentityViolation> out;
  for (std::size_t k = 2; k <= x.truncation(); ++k)
    for (std::size_t s = 0; s < x.level_size(k); ++s)
      for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (x.face(k - 1, x.face(k, s, j), i) != x.face(k - 1, x.face(k, s, i), j - 1))
            out.push_back({k, s, i, j});
  return out;
}

// ---------------------------------------------------------------------------
// Standard complexes: subcomplexes of Δⁿ, simplices = nonempty vertex subsets.

/// The subcomplex of Δⁿ on the subsets accepted by `keep` (which must be
/// closed under taking nonempty subsets). Levels in lexicographic order.
inline SSet simplex_subcomplex(std::size_t n, const std::function<bool(const IndexTuple&)>& keep,
                               std::size_t truncation) {
  require(truncation >= n, "simplex_subcomplex: truncation below n");
  SSetBuilder b(truncation, true);
  std::vector<std::map<IndexTuple, std::size_t>> at(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (const auto& f : enumerate_maps(k, n, MapClass::injective)) {
      const auto& s = f.values();
      if (!keep(s)) continue;
      std::size_t id;
      if (k == 0) {
        id = b.add_vertex({static_cast<int>(s[0])});
      } else {
        IndexTuple faces;
        for (std::size_t i = 0; i <= k; ++i) {
          IndexTuple t = s;
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
          auto it = at[k - 1].find(t);
          require(it != at[k - 1].end(), "simplex_subcomplex: selection not closed under faces");
          faces.push_back(it->second);
        }
        id = b.add_simplex(k, std::move(faces));
      }
      at[k][s] = id;
    }
  return std::move(b).build();
}

inline SSet standard(std::size_t n, std::optional<std::size_t> truncation = {}) {
  return simplex_subcomplex(n, [](const IndexTuple&) { return true; }, truncation.value_or(n));
}

inline SSet boundary(std::size_t n, std::optional<std::size_t> truncation = {}) {
  return simplex_subcomplex(n, [n](const IndexTuple& s) { return s.size() <= n; },
                            truncation.value_or(n));
}

/// Λⁿᵢ: everything but the top simplex and the facet opposite vertex i.
inline SSet horn(std::size_t n, std::size_t i, std::optional<std::size_t> truncation = {}) {
  require(n >= 1 && i <= n, "horn: need n >= 1 and 0 <= i <= n");
  return simplex_subcomplex(
      n,
      [n, i](const IndexTuple& s) {
        if (s.size() == n + 1) return false;
        if (s.size() == n && std::find(s.begin(), s.end(), i) == s.end()) return false;
        return true;
      },
      truncation.value_or(n));
}

inline SSet spine(std::size_t n, std::optional<std::size_t> truncation = {}) {
  return simplex_subcomplex(
      n, [](const IndexTuple& s) { return s.size() == 1 || (s.size() == 2 && s[1] == s[0] + 1); },
      truncation.value_or(n));
}

/// Δ^I ⊆ Δⁿ.
inline SSet sub_simplex(std::size_t n, const std::vector<std::size_t>& subset,
                        std::optional<std::size_t> truncation = {}) {
  require(!subset.empty(), "sub_simplex: vertex subset must be nonempty");
  for (auto v : subset) require(v <= n, "sub_simplex: vertex out of range");
  std::set<std::size_t> I(subset.begin(), subset.end());
  return simplex_subcomplex(
      n,
      [&I](const IndexTuple& s) {
        return std::all_of(s.begin(), s.end(), [&I](std::size_t v) { return I.count(v) > 0; });
      },
      truncation.value_or(n));
}

/// cosk₀ of a finite set: level k is all (k+1)-tuples, faces delete a coordinate.
inline SSet coskeleton0(std::size_t points, std::size_t truncation) {
  SSetBuilder b(truncation, false);
  std::vector<std::map<IndexTuple, std::size_t>> at(truncation + 1);
  std::vector<IndexTuple> prev;
  for (std::size_t p = 0; p < points; ++p) {
    at[0][{p}] = b.add_vertex({static_cast<int>(p)});
    prev.push_back({p});
  }
  for (std::size_t k = 1; k <= truncation; ++k) {
    std::vector<IndexTuple> cur;
    for (const auto& t : prev)
      for (std::size_t p = 0; p < points; ++p) {
        IndexTuple s = t;
        s.push_back(p);
        IndexTuple faces;
        for (std::size_t i = 0; i <= k; ++i) {
          IndexTuple f = s;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
          faces.push_back(at[k - 1].at(f));
        }
        at[k][s] = b.add_simplex(k, std::move(faces));
        cur.push_back(std::move(s));
      }
    prev = std::move(cur);
  }
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Maps.

/// A levelwise function commuting with faces. Defined on levels
/// 0..source.truncation().
class SSetMap {
 public:
  using Levels = std::vector<std::vector<std::size_t>>;

  SSetMap(SSet source, SSet target, Levels levels)
      : source_(std::move(source)), target_(std::move(target)), levels_(std::move(levels)) {
    require(levels_.size() == source_.truncation() + 1, "SSetMap: one function per source level");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      require(levels_[k].size() == source_.level_size(k), "SSetMap: level function size mismatch");
      if (!levels_[k].empty() && !target_.has_level(k))
        throw ResourceError("SSetMap: target level " + std::to_string(k) + " unavailable");
      for (auto t : levels_[k]) require(t < target_.level_size(k), "SSetMap: image out of range");
    }
    require(commutes_with_faces(), "SSetMap: does not commute with faces");
  }

  static SSetMap identity(const SSet& x) {
    Levels l(x.truncation() + 1);
    for (std::size_t k = 0; k < l.size(); ++k)
      for (std::size_t i = 0; i < x.level_size(k); ++i) l[k].push_back(i);
    return SSetMap(x, x, std::move(l));
  }

  const SSet& source() const { return source_; }
  const SSet& target() const { return target_; }
  const Levels& levels() const { return levels_; }
  std::size_t operator()(std::size_t k, std::size_t idx) const { return levels_.at(k).at(idx); }

  bool is_injective() const {
    for (const auto& l : levels_) {
      std::set<std::size_t> seen(l.begin(), l.end());
      if (seen.size() != l.size()) return false;
    }
    return true;
  }

  bool operator==(const SSetMap& o) const {
    return levels_ == o.levels_ && source_ == o.source_ && target_ == o.target_;
  }

 private:
  bool commutes_with_faces() const {
    for (std::size_t k = 1; k < levels_.size(); ++k)
      for (std::size_t s = 0; s < levels_[k].size(); ++s)
        for (std::size_t i = 0; i <= k; ++i)
          if (target_.face(k, levels_[k][s], i) != levels_[k - 1][source_.face(k, s, i)]) return false;
    return true;
  }

  SSet source_, target_;
  Levels levels_;
};

/// g ∘ f.
inline SSetMap compose(const SSetMap& f, const SSetMap& g) {
  require(f.target() == g.source(), "compose: target of f differs from source of g");
  SSetMap::Levels l(f.levels().size());
  for (std::size_t k = 0; k < l.size(); ++k)
    for (auto x : f.levels()[k]) l[k].push_back(g(k, x));
  return SSetMap(f.source(), g.target(), std::move(l));
}

/// Constraints for the exhaustive map search.
struct MapSearchOptions {
  Budget budget{};
  /// Extra admissibility test for assigning source simplex (k, s) to target t.
  std::function<bool(std::size_t k, std::size_t s, std::size_t t)> allow;
  /// Pre-assigned values (npos = free); indexed [k][s].
  SSetMap::Levels fixed;
  bool injective = false;
  std::string stage = "enumerate_maps";
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> search_order(const SSet& x) {
  // place each simplex right after its last vertex, faces before cofaces
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> keyed;
  for (std::size_t k = 0; k <= x.truncation(); ++k)
    for (std::size_t s = 0; s < x.level_size(k); ++s) {
      const auto& vs = x.vertices(k, s);
      keyed.emplace_back(*std::max_element(vs.begin(), vs.end()), k, s);
    }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [v, k, s] : keyed) out.emplace_back(k, s);
  return out;
}

}  // namespace detail

/// Calls `visit` for every face-commuting map X -> Y satisfying `opts`, in a
/// deterministic order; stops early when `visit` returns false.
inline void for_each_map(const SSet& x, const SSet& y, const MapSearchOptions& opts,
                         const std::function<bool(const SSetMap::Levels&)>& visit) {
  const std::size_t top = x.truncation();
  for (std::size_t k = 0; k <= top; ++k)
    if (x.level_size(k) > 0 && !y.has_level(k))
      throw ResourceError(opts.stage + ": target level " + std::to_string(k) + " unavailable");
  SSetMap::Levels img(top + 1);
  for (std::size_t k = 0; k <= top; ++k) img[k].assign(x.level_size(k), npos);
  std::vector<std::vector<char>> used;
  if (opts.injective)
    for (std::size_t k = 0; k <= top; ++k) used.emplace_back(y.has_level(k) ? y.level_size(k) : 0, 0);
  const auto order = detail::search_order(x);
  BudgetCounter counter(opts.budget, opts.stage);
  bool stop = false;

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(img)) stop = true;
      return;
    }
    auto [k, s] = order[pos];
    auto attempt = [&](std::size_t t) {
      counter.tick();
      if (opts.allow && !opts.allow(k, s, t)) return;
      if (opts.injective) {
        if (used[k][t]) return;
        used[k][t] = 1;
      }
      img[k][s] = t;
      self(self, pos + 1);
      img[k][s] = npos;
      if (opts.injective) used[k][t] = 0;
    };
    std::size_t fixed = (k < opts.fixed.size() && s < opts.fixed[k].size()) ? opts.fixed[k][s] : npos;
    if (k == 0) {
      if (fixed != npos) {
        attempt(fixed);
      } else {
        for (std::size_t t = 0; t < y.level_size(0) && !stop; ++t) attempt(t);
      }
      return;
    }
    IndexTuple want;
    for (auto f : x.faces(k, s)) want.push_back(img[k - 1][f]);
    if (fixed != npos) {
      if (y.faces(k, fixed) == want) attempt(fixed);
      return;
    }
    for (auto t : y.find_by_faces(k, want)) {
      if (stop) break;
      attempt(t);
    }
  };
  rec(rec, 0);
}

inline std::vector<SSetMap> enumerate_maps(const SSet& x, const SSet& y, const MapSearchOptions& opts = {}) {
  std::vector<SSetMap> out;
  for_each_map(x, y, opts, [&](const SSetMap::Levels& l) {
    out.emplace_back(x, y, l);
    return true;
  });
  return out;
}

/// Result of gluing B to X along A.
struct Pushout {
  SSet object;
  SSetMap from_x;  // X -> P
  SSetMap from_b;  // B -> P
};

/// Pushout of B <-f- A -g-> X with f levelwise injective. Simplices of X keep
/// their indices; simplices of B outside f(A) are appended in order.
inline Pushout pushout(const SSetMap& f, const SSetMap& g) {
  require(f.source() == g.source(), "pushout: f and g must share their source");
  require(f.is_injective(), "pushout: f must be levelwise injective");
  const SSet& b = f.target();
  const SSet& x = g.target();
  const SSet& a = f.source();
  std::size_t top = std::max(b.truncation(), x.truncation());
  if (!b.finite() || !x.finite()) top = std::min(b.truncation(), x.truncation());
  if (b.finite() != x.finite() && !b.finite() && b.truncation() < x.dimension())
    throw ResourceError("pushout: B is truncated below the dimension of X");
  if (b.finite() != x.finite() && !x.finite() && x.truncation() < b.dimension())
    throw ResourceError("pushout: X is truncated below the dimension of B");
  require(a.truncation() >= std::min(top, a.dimension()), "pushout: source truncated too low");

  std::vector<SSet::Level> levels(top + 1);
  std::vector<Label> labels;
  SSetMap::Levels bmap(b.truncation() + 1), xmap(x.truncation() + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t xs = x.has_level(k) ? x.level_size(k) : 0;
    for (std::size_t s = 0; s < xs; ++s) {
      levels[k].push_back(x.faces(k, s));
      if (k <= x.truncation()) xmap[k].push_back(s);
      if (k == 0) labels.push_back(x.label(s));
    }
    if (!b.has_level(k)) continue;
    std::vector<std::size_t> preimage(b.level_size(k), npos);
    if (k <= a.truncation())
      for (std::size_t s = 0; s < a.level_size(k); ++s) preimage[f(k, s)] = s;
    for (std::size_t s = 0; s < b.level_size(k); ++s) {
      std::size_t target;
      if (preimage[s] != npos) {
        target = g(k, preimage[s]);
      } else {
        IndexTuple faces;
        if (k > 0)
          for (auto fc : b.faces(k, s)) faces.push_back(bmap[k - 1][fc]);
        levels[k].push_back(std::move(faces));
        if (k == 0) labels.push_back(b.label(s));
        target = levels[k].size() - 1;
      }
      if (k <= b.truncation()) bmap[k].push_back(target);
    }
  }
  for (std::size_t k = top + 1; k <= x.truncation(); ++k) xmap[k].clear();
  SSet p(top, b.finite() && x.finite(), std::move(levels), std::move(labels));
  xmap.resize(x.truncation() + 1);
  bmap.resize(b.truncation() + 1);
  return {p, SSetMap(x, p, std::move(xmap)), SSetMap(b, p, std::move(bmap))};
}

/// The subobject on the selected simplices (closed under faces) with its
/// inclusion. Selected simplices keep their relative order.
inline std::pair<SSet, SSetMap> subobject(const SSet& x, const std::vector<std::vector<bool>>& keep) {
  const std::size_t top = x.truncation();
  std::vector<SSet::Level> levels(top + 1);
  std::vector<Label> labels;
  std::vector<std::vector<std::size_t>> renum(top + 1);
  SSetMap::Levels incl(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    renum[k].assign(x.level_size(k), npos);
    for (std::size_t s = 0; s < x.level_size(k); ++s) {
      if (k >= keep.size() || s >= keep[k].size() || !keep[k][s]) continue;
      IndexTuple faces;
      if (k > 0)
        for (auto f : x.faces(k, s)) {
          require(renum[k - 1][f] != npos, "subobject: selection not closed under faces");
          faces.push_back(renum[k - 1][f]);
        }
      renum[k][s] = levels[k].size();
      levels[k].push_back(std::move(faces));
      if (k == 0) labels.push_back(x.label(s));
      incl[k].push_back(s);
    }
  }
  SSet sub(top, x.finite(), std::move(levels), std::move(labels));
  SSetMap inc(sub, x, std::move(incl));
  return {sub, inc};
}

// ---------------------------------------------------------------------------
// Isomorphism.

/// Sorted levelwise face signatures: an isomorphism invariant used to reject
/// non-isomorphic pairs before searching.
inline std::vector<std::vector<std::vector<std::size_t>>> signature(const SSet& x) {
  // per level, the sorted list of (for each simplex) the sorted degrees of its faces
  std::vector<std::vector<std::size_t>> cofaces(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k) cofaces[k].assign(x.level_size(k), 0);
  for (std::size_t k = 1; k <= x.truncation(); ++k)
    for (std::size_t s = 0; s < x.level_size(k); ++s)
      for (auto f : x.faces(k, s)) ++cofaces[k - 1][f];
  std::vector<std::vector<std::vector<std::size_t>>> sig(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k) {
    for (std::size_t s = 0; s < x.level_size(k); ++s) {
      std::vector<std::size_t> row{cofaces[k][s]};
      if (k > 0)
        for (auto f : x.faces(k, s)) row.push_back(cofaces[k - 1][f]);
      sig[k].push_back(std::move(row));
    }
    std::sort(sig[k].begin(), sig[k].end());
  }
  if (x.finite())
    while (sig.size() > 1 && sig.back().empty()) sig.pop_back();
  return sig;
}

/// Finds an isomorphism X -> Y preserving `allow` (used for markings).
inline std::optional<SSetMap> find_isomorphism(
    const SSet& x, const SSet& y,
    std::function<bool(std::size_t, std::size_t, std::size_t)> allow = {}, Budget budget = {}) {
  if (x.finite() != y.finite()) return std::nullopt;
  if (!x.finite() && x.truncation() != y.truncation()) return std::nullopt;
  if (signature(x) != signature(y)) return std::nullopt;
  // vertex profile: number of k-simplices having the vertex at position p
  auto profile = [](const SSet& z) {
    std::vector<std::vector<std::size_t>> prof(z.level_size(0));
    for (std::size_t k = 0; k <= z.truncation(); ++k)
      for (std::size_t s = 0; s < z.level_size(k); ++s) {
        const auto& vs = z.vertices(k, s);
        for (std::size_t p = 0; p < vs.size(); ++p) {
          auto& row = prof[vs[p]];
          std::size_t slot = k * (k + 1) / 2 + p;
          if (row.size() <= slot) row.resize(slot + 1, 0);
          ++row[slot];
        }
      }
    return prof;
  };
  auto px = profile(x), py = profile(y);
  MapSearchOptions opts;
  opts.budget = budget;
  opts.injective = true;
  opts.stage = "isomorphism search";
  opts.allow = [&](std::size_t k, std::size_t s, std::size_t t) {
    if (k == 0 && px[s] != py[t]) return false;
    return !allow || allow(k, s, t);
  };
  std::optional<SSetMap> found;
  for_each_map(x, y, opts, [&](const SSetMap::Levels& l) {
    found.emplace(x, y, l);
    return false;
  });
  return found;
}

inline bool isomorphic(const SSet& x, const SSet& y) { return find_isomorphism(x, y).has_value(); }

}  // namespace qucat
