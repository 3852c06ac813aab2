#pragma once

// Marked semi-simplicial sets, the flat/sharp/tilde constructions, marking
// closures, and the marked tensor product of shuffles.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/ordinal.hpp"
#include "qucat/sset.hpp"

namespace qucat {

class MarkedSSet {
 public:
  MarkedSSet() : marking_() {}

  MarkedSSet(SSet x, std::vector<bool> marking) : x_(std::move(x)), marking_(std::move(marking)) {
    const std::size_t e = x_.truncation() >= 1 ? x_.level_size(1) : 0;
    if (marking_.empty()) marking_.assign(e, false);
    require(marking_.size() == e, "MarkedSSet: marking must have one flag per edge");
  }

  static MarkedSSet from_edges(SSet x, const std::vector<std::size_t>& edges) {
    std::vector<bool> m(x.truncation() >= 1 ? x.level_size(1) : 0, false);
    for (auto e : edges) {
      require(e < m.size(), "MarkedSSet: marked edge out of range");
      m[e] = true;
    }
    return MarkedSSet(std::move(x), std::move(m));
  }

  const SSet& underlying() const { return x_; }
  const std::vector<bool>& marking() const { return marking_; }
  bool is_marked(std::size_t edge) const { return marking_.at(edge); }

  std::vector<std::size_t> marked_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < marking_.size(); ++e)
      if (marking_[e]) out.push_back(e);
    return out;
  }
  std::size_t marking_size() const { return static_cast<std::size_t>(std::count(marking_.begin(), marking_.end(), true)); }

  bool operator==(const MarkedSSet&) const = default;

 private:
  SSet x_;
  std::vector<bool> marking_;
};

inline MarkedSSet flat(const SSet& x) { return MarkedSSet(x, {}); }

inline MarkedSSet sharp(const SSet& x) {
  return MarkedSSet(x, std::vector<bool>(x.truncation() >= 1 ? x.level_size(1) : 0, true));
}

/// True when every edge of the k-simplex is marked.
inline bool all_edges_marked(const MarkedSSet& w, std::size_t k, std::size_t s) {
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = a + 1; b <= k; ++b)
      if (!w.is_marked(w.underlying().edge_between(k, s, a, b))) return false;
  return true;
}

/// W̃: the largest subobject all of whose edges are marked, with every edge marked.
inline MarkedSSet tilde(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  std::vector<std::vector<bool>> keep(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k) {
    keep[k].resize(x.level_size(k));
    for (std::size_t s = 0; s < x.level_size(k); ++s) keep[k][s] = all_edges_marked(w, k, s);
  }
  return sharp(subobject(x, keep).first);
}

/// Least marking containing W's and closed under: a triangle with two marked
/// edges has its third marked.
inline MarkedSSet closure_2of3(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  auto m = w.marking();
  if (x.truncation() < 2) return w;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t t = 0; t < x.level_size(2); ++t) {
      const auto& f = x.faces(2, t);
      int count = m[f[0]] + m[f[1]] + m[f[2]];
      if (count == 2) {
        for (auto e : f) m[e] = true;
        changed = true;
      }
    }
  }
  return MarkedSSet(x, std::move(m));
}

/// Closure under the 2-of-3 rule and the 2-of-6 rule: a 3-simplex with
/// edges 02 and 13 marked has all six edges marked.
inline MarkedSSet closure_2of6(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  MarkedSSet cur = closure_2of3(w);
  if (x.truncation() < 3) return cur;
  for (bool changed = true; changed;) {
    changed = false;
    auto m = cur.marking();
    for (std::size_t s = 0; s < x.level_size(3); ++s) {
      if (!m[x.edge_between(3, s, 0, 2)] || !m[x.edge_between(3, s, 1, 3)]) continue;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
          auto e = x.edge_between(3, s, a, b);
          if (!m[e]) {
            m[e] = true;
            changed = true;
          }
        }
    }
    if (changed) cur = closure_2of3(MarkedSSet(x, std::move(m)));
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Tensor product.

struct TensorOptions {
  std::size_t max_truncation = 16;
};

namespace detail {

/// The first value in [0, top] the projection misses, if any.
inline std::optional<std::size_t> missed_value(const std::vector<std::size_t>& proj, std::size_t top) {
  std::vector<bool> hit(top + 1, false);
  for (auto p : proj) hit[p] = true;
  for (std::size_t v = 0; v <= top; ++v)
    if (!hit[v]) return v;
  return std::nullopt;
}

}  // namespace detail

/// Level k = ⊔_{a,b} P^{a,b}_k × X_a × Y_b, ordered by (a, b, shuffle, x, y).
/// Vertex labels are concatenations of the factor labels; the marking is
/// (A×Y₀) ⊔ (X₀×B) ⊔ (A×B).
inline MarkedSSet tensor(const MarkedSSet& mx, const MarkedSSet& my, TensorOptions opts = {}) {
  const SSet& x = mx.underlying();
  const SSet& y = my.underlying();
  std::size_t top;
  bool finite = x.finite() && y.finite();
  if (finite) {
    top = x.dimension() + y.dimension();
  } else {
    top = std::min(x.finite() ? npos : x.truncation(), y.finite() ? npos : y.truncation());
  }
  if (top > opts.max_truncation)
    throw ResourceError("tensor: truncation " + std::to_string(top) + " exceeds cap " +
                        std::to_string(opts.max_truncation));

  using Key = std::tuple<std::size_t, std::size_t, std::vector<GridPoint>, std::size_t, std::size_t>;
  std::vector<std::map<Key, std::size_t>> ids(top + 1);
  std::vector<SSet::Level> levels(top + 1);
  std::vector<Label> labels;
  std::vector<bool> marking;

  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t a = 0; a <= k; ++a) {
      if (!x.has_level(a) || x.level_size(a) == 0) continue;
      for (std::size_t b = 0; b <= k; ++b) {
        if (a + b < k || !y.has_level(b) || y.level_size(b) == 0) continue;
        for (const auto& sh : enumerate_shuffles(a, b, k)) {
          const auto& pts = sh.points();
          for (std::size_t xs = 0; xs < x.level_size(a); ++xs)
            for (std::size_t ys = 0; ys < y.level_size(b); ++ys) {
              IndexTuple faces;
              if (k > 0)
                for (std::size_t i = 0; i <= k; ++i) {
                  std::vector<GridPoint> q = pts;
                  q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
                  std::vector<std::size_t> p1, p2;
                  for (auto [u, w] : q) {
                    p1.push_back(u);
                    p2.push_back(w);
                  }
                  std::size_t fa = a, fb = b, fx = xs, fy = ys;
                  if (auto v = detail::missed_value(p1, a)) {
                    fx = x.face(a, xs, *v);
                    --fa;
                    for (auto& pt : q)
                      if (pt.first > *v) --pt.first;
                  }
                  if (auto v = detail::missed_value(p2, b)) {
                    fy = y.face(b, ys, *v);
                    --fb;
                    for (auto& pt : q)
                      if (pt.second > *v) --pt.second;
                  }
                  faces.push_back(ids[k - 1].at(Key{fa, fb, std::move(q), fx, fy}));
                }
              ids[k][Key{a, b, pts, xs, ys}] = levels[k].size();
              levels[k].push_back(std::move(faces));
              if (k == 0) {
                Label l = x.label(xs);
                const Label& r = y.label(ys);
                l.insert(l.end(), r.begin(), r.end());
                labels.push_back(std::move(l));
              } else if (k == 1) {
                bool mk = (a == 1 && b == 0 && mx.is_marked(xs)) ||
                          (a == 0 && b == 1 && my.is_marked(ys)) ||
                          (a == 1 && b == 1 && mx.is_marked(xs) && my.is_marked(ys));
                marking.push_back(mk);
              }
            }
        }
      }
    }
  }
  SSet t(top, finite, std::move(levels), std::move(labels));
  return MarkedSSet(std::move(t), std::move(marking));
}

/// The shuffle, factor simplices and factor dimensions of each tensor
/// simplex, in the order tensor() lays them out.
struct TensorCell {
  std::size_t a, b;
  std::vector<GridPoint> points;
  std::size_t x, y;
};

inline std::vector<TensorCell> tensor_cells(const SSet& x, const SSet& y, std::size_t k) {
  std::vector<TensorCell> out;
  for (std::size_t a = 0; a <= k; ++a) {
    if (!x.has_level(a) || x.level_size(a) == 0) continue;
    for (std::size_t b = 0; b <= k; ++b) {
      if (a + b < k || !y.has_level(b) || y.level_size(b) == 0) continue;
      for (const auto& sh : enumerate_shuffles(a, b, k))
        for (std::size_t xs = 0; xs < x.level_size(a); ++xs)
          for (std::size_t ys = 0; ys < y.level_size(b); ++ys) out.push_back({a, b, sh.points(), xs, ys});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Marked horns.

struct MarkedHornSpec {
  std::size_t n = 2;
  std::size_t i = 1;
  std::vector<std::pair<std::size_t, std::size_t>> marking;
};

inline bool is_admissible(const MarkedHornSpec& h) {
  if (h.n < 2 || h.i > h.n) return false;
  std::set<std::pair<std::size_t, std::size_t>> m;
  for (auto [a, b] : h.marking) m.insert({std::min(a, b), std::max(a, b)});
  if (h.i > 0 && h.i < h.n) return m.empty();
  if (h.i == 0) return m == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}};
  return m == std::set<std::pair<std::size_t, std::size_t>>{{h.n - 1, h.n}};
}

/// (Λⁿᵢ, A) ⊆ (Δⁿ, A) with A given as vertex pairs.
inline MarkedSSet marked_simplex(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  SSet d = standard(n);
  std::vector<std::size_t> ids;
  for (auto [a, b] : edges) {
    const auto& hits = d.find_by_vertices(1, {std::min(a, b), std::max(a, b)});
    require(hits.size() == 1 && a != b, "marked_simplex: not an edge of the simplex");
    ids.push_back(hits.front());
  }
  return MarkedSSet::from_edges(d, ids);
}

// ---------------------------------------------------------------------------
// Marked maps and comparisons.

inline bool preserves_marking(const SSetMap& f, const MarkedSSet& x, const MarkedSSet& y) {
  if (f.levels().size() < 2) return true;
  for (std::size_t e = 0; e < f.levels()[1].size(); ++e)
    if (x.is_marked(e) && !y.is_marked(f(1, e))) return false;
  return true;
}

/// Maps X -> Y carrying marked edges to marked edges.
inline std::vector<SSetMap> enumerate_marked_maps(const MarkedSSet& x, const MarkedSSet& y,
                                                  MapSearchOptions opts = {}) {
  auto user = opts.allow;
  opts.allow = [&x, &y, user](std::size_t k, std::size_t s, std::size_t t) {
    if (k == 1 && x.is_marked(s) && !y.is_marked(t)) return false;
    return !user || user(k, s, t);
  };
  return enumerate_maps(x.underlying(), y.underlying(), opts);
}

/// Isomorphism up to renaming of simplices, matching markings exactly.
inline bool marked_isomorphic(const MarkedSSet& x, const MarkedSSet& y, Budget budget = {}) {
  if (x.marking_size() != y.marking_size()) return false;
  return find_isomorphism(
             x.underlying(), y.underlying(),
             [&x, &y](std::size_t k, std::size_t s, std::size_t t) {
               return k != 1 || x.is_marked(s) == y.is_marked(t);
             },
             budget)
      .has_value();
}

/// Simplices of a labelled object as label tuples, with the marked edges.
struct LabelledShape {
  std::vector<std::set<std::vector<Label>>> levels;
  std::set<std::vector<Label>> marked;
  bool operator==(const LabelledShape&) const = default;
};

inline LabelledShape labelled_shape(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  require(x.is_complex_like(), "labelled_shape: object is not determined by vertex labels");
  LabelledShape s;
  s.levels.resize(x.dimension() + 1);
  for (std::size_t k = 0; k <= x.dimension(); ++k)
    for (std::size_t i = 0; i < x.level_size(k); ++i) s.levels[k].insert(x.key(k, i));
  if (x.truncation() >= 1)
    for (auto e : w.marked_edges()) s.marked.insert(x.key(1, e));
  return s;
}

}  // namespace qucat
