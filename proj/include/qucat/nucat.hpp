#pragma once

// Finite non-unital categories and their nerves.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/marked.hpp"
#include "qucat/ordinal.hpp"
#include "qucat/sset.hpp"

namespace qucat {

struct Morphism {
  std::string name;
  std::size_t src = 0, tgt = 0;
  bool operator==(const Morphism&) const = default;
};

/// A composable triple (h, g, f) with (h∘g)∘f != h∘(g∘f).
struct AssociativityViolation {
  std::size_t h, g, f;
  bool operator==(const AssociativityViolation&) const = default;
};

/// Objects, typed morphisms and a total composition table on composable
/// pairs. Construction checks typing; associativity is reported separately
/// so that malformed input can be diagnosed.
class NuCat {
 public:
  NuCat() = default;

  /// comp maps (g, f) with tgt(f) = src(g) to g∘f; every composable pair must appear.
  NuCat(std::vector<std::string> objects, std::vector<Morphism> morphisms,
        const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& comp)
      : objects_(std::move(objects)), morphisms_(std::move(morphisms)) {
    const std::size_t n = morphisms_.size();
    for (const auto& m : morphisms_)
      require(m.src < objects_.size() && m.tgt < objects_.size(), "NuCat: morphism endpoint out of range");
    comp_.assign(n * n, npos);
    for (const auto& [gf, h] : comp) {
      auto [g, f] = gf;
      require(g < n && f < n && h < n, "NuCat: composition entry out of range");
      require(morphisms_[f].tgt == morphisms_[g].src, "NuCat: composite of non-composable pair");
      require(morphisms_[h].src == morphisms_[f].src && morphisms_[h].tgt == morphisms_[g].tgt,
              "NuCat: composite " + morphisms_[h].name + " has the wrong endpoints");
      comp_[g * n + f] = h;
    }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f)
        if (morphisms_[f].tgt == morphisms_[g].src)
          require(comp_[g * n + f] != npos,
                  "NuCat: missing composite " + morphisms_[g].name + "∘" + morphisms_[f].name);
    homs_.assign(objects_.size() * objects_.size(), {});
    for (std::size_t m = 0; m < n; ++m) homs_[morphisms_[m].src * objects_.size() + morphisms_[m].tgt].push_back(m);
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const {
    return homs_.at(x * objects_.size() + y);
  }

  bool composable(std::size_t g, std::size_t f) const { return morphisms_[f].tgt == morphisms_[g].src; }

  /// g ∘ f.
  std::size_t compose(std::size_t g, std::size_t f) const {
    require(composable(g, f), "NuCat::compose: not composable");
    return comp_[g * morphisms_.size() + f];
  }

  std::vector<AssociativityViolation> associativity_violations() const {
    std::vector<AssociativityViolation> out;
    const std::size_t n = morphisms_.size();
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        if (!composable(g, f)) continue;
        for (std::size_t h = 0; h < n; ++h)
          if (composable(h, g) && compose(compose(h, g), f) != compose(h, compose(g, f))) out.push_back({h, g, f});
      }
    return out;
  }

  bool is_associative() const { return associativity_violations().empty(); }

  bool operator==(const NuCat& o) const {
    return objects_ == o.objects_ && morphisms_ == o.morphisms_ && comp_ == o.comp_;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> comp_;
  std::vector<std::vector<std::size_t>> homs_;
};

// ---------------------------------------------------------------------------
// Small constructions.

/// A one-object category from a multiplication table on {0..n-1}, mul[a][b] = a·b
/// read as a∘b.
inline NuCat monoid_category(const std::vector<std::vector<std::size_t>>& mul,
                             const std::vector<std::string>& names = {}) {
  std::vector<Morphism> ms;
  for (std::size_t a = 0; a < mul.size(); ++a)
    ms.push_back({names.empty() ? "m" + std::to_string(a) : names[a], 0, 0});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (std::size_t a = 0; a < mul.size(); ++a)
    for (std::size_t b = 0; b < mul.size(); ++b) comp[{a, b}] = mul[a][b];
  return NuCat({"*"}, std::move(ms), comp);
}

/// Z/n as a one-object category.
inline NuCat cyclic_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return monoid_category(mul);
}

/// The two-element null semigroup: a·a = b, b absorbing.
inline NuCat null_semigroup() { return monoid_category({{1, 1}, {1, 1}}, {"a", "b"}); }

/// The one-object category with a single idempotent morphism.
inline NuCat idempotent() { return monoid_category({{0}}, {"e"}); }

/// A finite poset as a unital category; leq[x][y] says x <= y (must be a partial order).
inline NuCat poset_category(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  for (std::size_t x = 0; x < n; ++x) {
    require(leq[x].size() == n && leq[x][x], "poset_category: relation must be reflexive");
    for (std::size_t y = 0; y < n; ++y) {
      require(x == y || !(leq[x][y] && leq[y][x]), "poset_category: relation must be antisymmetric");
      for (std::size_t z = 0; z < n; ++z)
        require(!(leq[x][y] && leq[y][z]) || leq[x][z], "poset_category: relation must be transitive");
    }
  }
  std::vector<std::string> objs;
  for (std::size_t x = 0; x < n; ++x) objs.push_back(std::to_string(x));
  std::vector<Morphism> ms;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id_of;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (leq[x][y]) {
        id_of[{x, y}] = ms.size();
        ms.push_back({std::to_string(x) + "<=" + std::to_string(y), x, y});
      }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (std::size_t f = 0; f < ms.size(); ++f)
    for (std::size_t g = 0; g < ms.size(); ++g)
      if (ms[f].tgt == ms[g].src) comp[{g, f}] = id_of.at({ms[f].src, ms[g].tgt});
  return NuCat(std::move(objs), std::move(ms), comp);
}

/// The linear order 0 < 1 < ... < n-1.
inline NuCat chain_category(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) leq[x][y] = x <= y;
  return poset_category(leq);
}

/// The full subcategory on the listed objects (morphisms keep their relative order).
inline std::pair<NuCat, std::vector<std::size_t>> full_subcategory(const NuCat& c,
                                                                   const std::vector<std::size_t>& objs) {
  std::vector<std::size_t> obj_new(c.object_count(), npos);
  std::vector<std::string> names;
  for (auto x : objs) {
    require(x < c.object_count() && obj_new[x] == npos, "full_subcategory: bad object list");
    obj_new[x] = names.size();
    names.push_back(c.objects()[x]);
  }
  std::vector<std::size_t> mor_new(c.morphism_count(), npos), mor_old;
  std::vector<Morphism> ms;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mm = c.morphism(m);
    if (obj_new[mm.src] == npos || obj_new[mm.tgt] == npos) continue;
    mor_new[m] = ms.size();
    mor_old.push_back(m);
    ms.push_back({mm.name, obj_new[mm.src], obj_new[mm.tgt]});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (auto f : mor_old)
    for (auto g : mor_old)
      if (c.composable(g, f)) comp[{mor_new[g], mor_new[f]}] = mor_new[c.compose(g, f)];
  return {NuCat(std::move(names), std::move(ms), comp), mor_old};
}

// ---------------------------------------------------------------------------
// Nerves.

/// Levels of the nerve computed on demand: level k holds the composable
/// strings (f_1, ..., f_k), lexicographic in morphism ids; level 0 the objects.
/// Safe for concurrent readers.
class LazyNerve {
 public:
  explicit LazyNerve(NuCat c) : c_(std::move(c)) {}

  const NuCat& category() const { return c_; }

  std::size_t level_size(std::size_t k) const {
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return k == 0 ? c_.object_count() : strings_[k].size();
  }

  /// The string of morphisms of a k-simplex (k >= 1).
  std::vector<std::size_t> string(std::size_t k, std::size_t s) const {
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return strings_.at(k).at(s);
  }

  std::size_t face(std::size_t k, std::size_t s, std::size_t i) const {
    require(k >= 1 && i <= k, "LazyNerve::face: bad index");
    auto str = string(k, s);
    if (k == 1) return i == 0 ? c_.morphism(str[0]).tgt : c_.morphism(str[0]).src;
    std::vector<std::size_t> f;
    if (i == 0) {
      f.assign(str.begin() + 1, str.end());
    } else if (i == k) {
      f.assign(str.begin(), str.end() - 1);
    } else {
      f = str;
      f[i - 1] = c_.compose(str[i], str[i - 1]);
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return find(k - 1, f);
  }

  std::size_t find(std::size_t k, const std::vector<std::size_t>& str) const {
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return index_.at(k).at(str);
  }

  /// Vertex j of a k-simplex.
  std::size_t vertex(std::size_t k, std::size_t s, std::size_t j) const {
    if (k == 0) return s;
    auto str = string(k, s);
    return j == 0 ? c_.morphism(str[0]).src : c_.morphism(str[j - 1]).tgt;
  }

  /// The nerve through level `depth` as an explicit object.
  SSet materialize(std::size_t depth) const {
    ensure(depth);
    std::vector<SSet::Level> levels(depth + 1);
    levels[0].assign(c_.object_count(), {});
    for (std::size_t k = 1; k <= depth; ++k)
      for (std::size_t s = 0; s < level_size(k); ++s) {
        IndexTuple fs;
        for (std::size_t i = 0; i <= k; ++i) fs.push_back(face(k, s, i));
        levels[k].push_back(std::move(fs));
      }
    return SSet(depth, false, std::move(levels), {});
  }

 private:
  void ensure(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (strings_.empty()) {
      strings_.emplace_back();
      index_.emplace_back();
    }
    while (strings_.size() <= k) {
      const std::size_t lvl = strings_.size();
      std::vector<std::vector<std::size_t>> next;
      if (lvl == 1) {
        for (std::size_t m = 0; m < c_.morphism_count(); ++m) next.push_back({m});
      } else {
        for (const auto& s : strings_[lvl - 1])
          for (std::size_t m = 0; m < c_.morphism_count(); ++m)
            if (c_.composable(m, s.back())) {
              auto t = s;
              t.push_back(m);
              next.push_back(std::move(t));
            }
      }
      std::map<std::vector<std::size_t>, std::size_t> idx;
      for (std::size_t i = 0; i < next.size(); ++i) idx[next[i]] = i;
      strings_.push_back(std::move(next));
      index_.push_back(std::move(idx));
    }
  }

  NuCat c_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<std::vector<std::size_t>>> strings_;
  mutable std::vector<std::map<std::vector<std::size_t>, std::size_t>> index_;
};

/// The nerve through level `depth`. Level-1 ids are morphism ids.
inline SSet nerve(const NuCat& c, std::size_t depth) { return LazyNerve(c).materialize(depth); }

// ---------------------------------------------------------------------------
// Invertibles and quasi-units.

/// f : x -> y such that post-composition Hom(z,x) -> Hom(z,y) and
/// pre-composition Hom(y,z) -> Hom(x,z) are bijections for every z.
inline bool is_invertible(const NuCat& c, std::size_t f) {
  const auto& m = c.morphism(f);
  for (std::size_t z = 0; z < c.object_count(); ++z) {
    const auto& from = c.hom(z, m.src);
    const auto& to = c.hom(z, m.tgt);
    if (from.size() != to.size()) return false;
    std::set<std::size_t> img;
    for (auto g : from) img.insert(c.compose(f, g));
    if (img.size() != to.size()) return false;
    const auto& from2 = c.hom(m.tgt, z);
    const auto& to2 = c.hom(m.src, z);
    if (from2.size() != to2.size()) return false;
    std::set<std::size_t> img2;
    for (auto h : from2) img2.insert(c.compose(h, f));
    if (img2.size() != to2.size()) return false;
  }
  return true;
}

inline std::vector<std::size_t> invertibles(const NuCat& c) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    if (is_invertible(c, f)) out.push_back(f);
  return out;
}

/// q : x -> x with q∘g = g and h∘q = h for every composable g, h.
inline bool is_quasi_unit(const NuCat& c, std::size_t q) {
  const auto& m = c.morphism(q);
  if (m.src != m.tgt) return false;
  for (std::size_t g = 0; g < c.morphism_count(); ++g) {
    if (c.morphism(g).tgt == m.src && c.compose(q, g) != g) return false;
    if (c.morphism(g).src == m.src && c.compose(g, q) != g) return false;
  }
  return true;
}

inline std::vector<std::size_t> quasi_units(const NuCat& c) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    if (is_quasi_unit(c, f)) out.push_back(f);
  return out;
}

inline std::vector<std::size_t> quasi_units_at(const NuCat& c, std::size_t x) {
  std::vector<std::size_t> out;
  for (auto q : c.hom(x, x))
    if (is_quasi_unit(c, q)) out.push_back(q);
  return out;
}

inline bool is_quasi_unital(const NuCat& c) {
  for (std::size_t x = 0; x < c.object_count(); ++x)
    if (quasi_units_at(c, x).empty()) return false;
  return true;
}

/// An object where "has a quasi-unit" and "has an invertible morphism out"
/// disagree.
struct QuInvMismatch {
  std::size_t object;
  bool has_quasi_unit, has_invertible_out;
  bool operator==(const QuInvMismatch&) const = default;
};

inline std::vector<QuInvMismatch> check_l_qu_inv(const NuCat& c) {
  std::vector<bool> inv_out(c.object_count(), false);
  for (auto f : invertibles(c)) inv_out[c.morphism(f).src] = true;
  std::vector<QuInvMismatch> out;
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    bool qu = !quasi_units_at(c, x).empty();
    if (qu != inv_out[x]) out.push_back({x, qu, inv_out[x]});
  }
  return out;
}

/// Objects carrying more than one quasi-unit.
inline std::vector<std::size_t> check_qu_connected(const NuCat& c) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < c.object_count(); ++x)
    if (quasi_units_at(c, x).size() > 1) out.push_back(x);
  return out;
}

enum class MarkingRule { none, invertibles, quasi_units, all };

inline MarkedSSet marked_nerve(const NuCat& c, std::size_t depth, MarkingRule rule) {
  SSet x = nerve(c, depth);
  switch (rule) {
    case MarkingRule::none: return flat(x);
    case MarkingRule::all: return sharp(x);
    case MarkingRule::invertibles: return MarkedSSet::from_edges(x, invertibles(c));
    case MarkingRule::quasi_units: return MarkedSSet::from_edges(x, quasi_units(c));
  }
  return flat(x);
}

inline MarkedSSet marked_nerve(const NuCat& c, std::size_t depth, const std::vector<std::size_t>& marked) {
  return MarkedSSet::from_edges(nerve(c, depth), marked);
}

// ---------------------------------------------------------------------------
// Functors.

struct NuFunctor {
  std::vector<std::size_t> objects;    // per source object
  std::vector<std::size_t> morphisms;  // per source morphism
  bool operator==(const NuFunctor&) const = default;
};

/// Empty when F is a well-typed, composition-preserving functor C -> D.
inline std::vector<std::string> functor_violations(const NuFunctor& F, const NuCat& c, const NuCat& d) {
  std::vector<std::string> out;
  if (F.objects.size() != c.object_count() || F.morphisms.size() != c.morphism_count()) {
    out.push_back("functor: wrong number of images");
    return out;
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (F.morphisms[m] >= d.morphism_count()) {
      out.push_back("functor: morphism image out of range");
      return out;
    }
    const auto& a = c.morphism(m);
    const auto& b = d.morphism(F.morphisms[m]);
    if (F.objects[a.src] != b.src || F.objects[a.tgt] != b.tgt) out.push_back("functor: " + a.name + " mistyped");
  }
  if (!out.empty()) return out;
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    for (std::size_t g = 0; g < c.morphism_count(); ++g)
      if (c.composable(g, f) &&
          F.morphisms[c.compose(g, f)] != d.compose(F.morphisms[g], F.morphisms[f]))
        out.push_back("functor: " + c.morphism(g).name + "∘" + c.morphism(f).name + " not preserved");
  return out;
}

/// Every functor C -> D, in lexicographic order of (object map, morphism map).
inline std::vector<NuFunctor> enumerate_functors(const NuCat& c, const NuCat& d, Budget budget = {}) {
  std::vector<NuFunctor> out;
  BudgetCounter counter(budget, "enumerate_functors");
  NuFunctor F;
  F.objects.assign(c.object_count(), 0);
  F.morphisms.assign(c.morphism_count(), npos);
  auto morph = [&](auto&& self, std::size_t m) -> void {
    if (m == c.morphism_count()) {
      out.push_back(F);
      return;
    }
    const auto& mm = c.morphism(m);
    for (auto t : d.hom(F.objects[mm.src], F.objects[mm.tgt])) {
      counter.tick();
      F.morphisms[m] = t;
      bool ok = true;
      // every pair among assigned morphisms whose composite is assigned
      for (std::size_t a = 0; a <= m && ok; ++a)
        for (std::size_t b = 0; b <= m && ok; ++b) {
          if (a != m && b != m) continue;
          if (!c.composable(a, b)) continue;
          auto ab = c.compose(a, b);
          if (ab <= m) ok = F.morphisms[ab] == d.compose(F.morphisms[a], F.morphisms[b]);
        }
      if (ok) {
        // composites landing on m from earlier pairs
        for (std::size_t a = 0; a < m && ok; ++a)
          for (std::size_t b = 0; b < m && ok; ++b)
            if (c.composable(a, b) && c.compose(a, b) == m)
              ok = F.morphisms[m] == d.compose(F.morphisms[a], F.morphisms[b]);
      }
      if (ok) self(self, m + 1);
    }
    F.morphisms[m] = npos;
  };
  auto obj = [&](auto&& self, std::size_t x) -> void {
    if (x == c.object_count()) {
      morph(morph, 0);
      return;
    }
    for (std::size_t y = 0; y < d.object_count(); ++y) {
      counter.tick();
      F.objects[x] = y;
      self(self, x + 1);
    }
  };
  obj(obj, 0);
  return out;
}

struct PreservationFlags {
  bool preserves_qu = false;
  bool preserves_inv = false;
};

inline PreservationFlags functor_preservation(const NuFunctor& F, const NuCat& c, const NuCat& d) {
  require(is_quasi_unital(c) && is_quasi_unital(d), "functor_preservation: both categories must be quasi-unital");
  require(functor_violations(F, c, d).empty(), "functor_preservation: not a functor");
  PreservationFlags p{true, true};
  for (auto q : quasi_units(c))
    if (!is_quasi_unit(d, F.morphisms[q])) p.preserves_qu = false;
  for (auto f : invertibles(c))
    if (!is_invertible(d, F.morphisms[f])) p.preserves_inv = false;
  return p;
}

// ---------------------------------------------------------------------------
// Segal condition and categories from semi-simplicial sets.

/// A pair (n, m) at which X_{n+m} -> X_n ×_{X_0} X_m is not a bijection.
struct SegalDefect {
  std::size_t n, m;
  std::size_t simplices, pairs;  // |X_{n+m}| and |X_n ×_{X_0} X_m|
  bool injective, surjective;
  bool operator==(const SegalDefect&) const = default;
};

/// Checks every n, m >= 1 with n + m <= depth.
inline std::vector<SegalDefect> segal_defect(const SSet& x, std::size_t depth) {
  require(depth <= x.truncation() || x.finite(), "segal_defect: depth beyond truncation");
  std::vector<SegalDefect> out;
  auto level = [&](std::size_t k) { return x.has_level(k) ? x.level_size(k) : std::size_t{0}; };
  for (std::size_t total = 2; total <= depth; ++total)
    for (std::size_t n = 1; n < total; ++n) {
      const std::size_t m = total - n;
      // fiber product size
      std::vector<std::size_t> ends(level(0), 0), starts(level(0), 0);
      for (std::size_t s = 0; s < level(n); ++s) ++ends[x.vertices(n, s).back()];
      for (std::size_t s = 0; s < level(m); ++s) ++starts[x.vertices(m, s).front()];
      std::size_t pairs = 0;
      for (std::size_t v = 0; v < level(0); ++v) pairs += ends[v] * starts[v];
      std::set<std::pair<std::size_t, std::size_t>> images;
      std::vector<std::size_t> front_v(n + 1), back_v(m + 1);
      std::iota(front_v.begin(), front_v.end(), 0);
      std::iota(back_v.begin(), back_v.end(), n);
      OrdinalMap front(total, front_v), back(total, back_v);
      for (std::size_t s = 0; s < level(total); ++s)
        images.insert({x.restrict(total, s, front), x.restrict(total, s, back)});
      bool inj = images.size() == level(total);
      bool sur = images.size() == pairs;
      if (!inj || !sur) out.push_back({n, m, level(total), pairs, inj, sur});
    }
  return out;
}

/// Reads off a non-unital category: objects X_0, morphisms X_1, and g∘f the
/// d_1 of the unique triangle with d_2 = f, d_0 = g. Needs an empty Segal
/// defect through dimension 3.
inline NuCat category_from_sset(const SSet& x) {
  require(x.truncation() >= 3 || x.finite(), "category_from_sset: needs levels through 3");
  auto defect = segal_defect(x, 3);
  if (!defect.empty()) {
    std::string msg = "category_from_sset: Segal defect at";
    for (const auto& d : defect) msg += " (" + std::to_string(d.n) + "," + std::to_string(d.m) + ")";
    throw InvalidInput(msg);
  }
  std::vector<std::string> objs;
  for (std::size_t v = 0; v < x.level_size(0); ++v) objs.push_back(std::to_string(v));
  std::vector<Morphism> ms;
  const std::size_t e = x.has_level(1) ? x.level_size(1) : 0;
  for (std::size_t f = 0; f < e; ++f) ms.push_back({"e" + std::to_string(f), x.face(1, f, 1), x.face(1, f, 0)});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  if (x.has_level(2))
    for (std::size_t t = 0; t < x.level_size(2); ++t) comp[{x.face(2, t, 0), x.face(2, t, 2)}] = x.face(2, t, 1);
  NuCat c(std::move(objs), std::move(ms), comp);
  require(c.is_associative(), "category_from_sset: composition read from level 2 is not associative");
  return c;
}

/// Invertible edges of a Segal object, computed through its category.
inline std::vector<std::size_t> invertible_edges(const SSet& x) { return invertibles(category_from_sset(x)); }

// ---------------------------------------------------------------------------
// Equivalence classes, DK-equivalences and completeness.

/// Class index per vertex for the equivalence generated by marked edges;
/// classes numbered by first vertex.
inline std::vector<std::size_t> eq_classes(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  std::vector<std::size_t> parent(x.level_size(0));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto e : w.marked_edges()) {
    auto a = find(x.face(1, e, 0)), b = find(x.face(1, e, 1));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> cls(parent.size());
  std::map<std::size_t, std::size_t> number;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    auto r = find(v);
    auto it = number.emplace(r, number.size()).first;
    cls[v] = it->second;
  }
  return cls;
}

struct DkReport {
  bool equivalence = true;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;  // source vertices
  std::string reason;
};

/// Fully faithful on edges and marked edges, and surjective on ≃-classes.
inline DkReport is_dk_equivalence(const SSetMap& f, const MarkedSSet& x, const MarkedSSet& y) {
  require(f.source() == x.underlying() && f.target() == y.underlying(), "is_dk_equivalence: map/object mismatch");
  require(preserves_marking(f, x, y), "is_dk_equivalence: map does not preserve markings");
  const SSet& X = x.underlying();
  const SSet& Y = y.underlying();
  DkReport r;
  const std::size_t nx = X.level_size(0);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> hx, hy;
  for (std::size_t e = 0; e < (X.truncation() >= 1 ? X.level_size(1) : 0); ++e)
    hx[{X.face(1, e, 1), X.face(1, e, 0)}].push_back(e);
  for (std::size_t e = 0; e < (Y.truncation() >= 1 ? Y.level_size(1) : 0); ++e)
    hy[{Y.face(1, e, 1), Y.face(1, e, 0)}].push_back(e);
  for (std::size_t a = 0; a < nx && r.equivalence; ++a)
    for (std::size_t b = 0; b < nx && r.equivalence; ++b) {
      const auto& src = hx[{a, b}];
      const auto& tgt = hy[{f(0, a), f(0, b)}];
      std::set<std::size_t> img, mimg;
      std::size_t msrc = 0, mtgt = 0;
      for (auto e : src) {
        img.insert(f(1, e));
        if (x.is_marked(e)) {
          ++msrc;
          mimg.insert(f(1, e));
        }
      }
      for (auto e : tgt) mtgt += y.is_marked(e);
      if (img.size() != src.size() || img.size() != tgt.size()) {
        r = {false, std::make_pair(a, b), "hom-set comparison is not a bijection"};
      } else if (mimg.size() != msrc || msrc != mtgt) {
        r = {false, std::make_pair(a, b), "marked hom-set comparison is not a bijection"};
      }
    }
  if (!r.equivalence) return r;
  auto cy = eq_classes(y);
  std::set<std::size_t> hit;
  for (std::size_t v = 0; v < nx; ++v) hit.insert(cy[f(0, v)]);
  std::set<std::size_t> all(cy.begin(), cy.end());
  if (hit != all) r = {false, std::nullopt, "not surjective on equivalence classes"};
  return r;
}

/// Clauses of the discrete marked semiSegal conditions that fail.
inline std::vector<std::string> marked_semisegal_violations(const MarkedSSet& w) {
  std::vector<std::string> out;
  const SSet& x = w.underlying();
  if (!segal_defect(x, std::min<std::size_t>(3, x.finite() ? 3 : x.truncation())).empty()) {
    out.push_back("Segal condition fails");
    return out;
  }
  auto inv = invertible_edges(x);
  std::set<std::size_t> invs(inv.begin(), inv.end());
  for (auto e : w.marked_edges())
    if (!invs.count(e)) {
      out.push_back("marked edge " + std::to_string(e) + " is not invertible");
      break;
    }
  if (!(closure_2of3(w) == w)) out.push_back("marking not closed under 2-out-of-3");
  return out;
}

struct CompletenessReport {
  bool complete = false;
  std::vector<std::string> precondition_violations;
  std::vector<std::string> failures;
};

/// Marking = invertible edges, and source/target restricted to the marking
/// are bijections onto the vertices.
inline CompletenessReport completeness_report(const MarkedSSet& w) {
  CompletenessReport r;
  r.precondition_violations = marked_semisegal_violations(w);
  if (!r.precondition_violations.empty()) return r;
  const SSet& x = w.underlying();
  auto inv = invertible_edges(x);
  if (inv != w.marked_edges()) r.failures.push_back("marking differs from the invertible edges");
  for (std::size_t i = 0; i <= 1; ++i) {
    std::vector<std::size_t> hits(x.level_size(0), 0);
    for (auto e : w.marked_edges()) ++hits[x.face(1, e, i)];
    bool bij = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; });
    if (!bij) r.failures.push_back(i == 0 ? "target map on marked edges is not a bijection"
                                          : "source map on marked edges is not a bijection");
  }
  r.complete = r.failures.empty();
  return r;
}

inline bool is_complete_discrete(const MarkedSSet& w) { return completeness_report(w).complete; }

/// A unital category whose only isomorphisms are identities.
inline bool is_gaunt(const NuCat& c) {
  if (!is_quasi_unital(c)) return false;
  for (auto f : invertibles(c))
    if (!is_quasi_unit(c, f)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Corpora.

namespace detail {

/// Backtracking over composition tables with incremental associativity checks.
class TableSearch {
 public:
  TableSearch(std::size_t objects, std::vector<Morphism> ms) : objects_(objects), ms_(std::move(ms)) {
    n_ = ms_.size();
    table_.assign(n_ * n_, npos);
    for (std::size_t g = 0; g < n_; ++g)
      for (std::size_t f = 0; f < n_; ++f)
        if (ms_[f].tgt == ms_[g].src) pairs_.emplace_back(g, f);
    for (std::size_t h = 0; h < n_; ++h) hom_[{ms_[h].src, ms_[h].tgt}].push_back(h);
  }

  std::size_t pair_count() const { return pairs_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

  std::vector<std::size_t> candidates(std::size_t g, std::size_t f) const {
    auto it = hom_.find({ms_[f].src, ms_[g].tgt});
    return it == hom_.end() ? std::vector<std::size_t>{} : it->second;
  }

  std::size_t get(std::size_t g, std::size_t f) const { return table_[g * n_ + f]; }

  bool assign(std::size_t g, std::size_t f, std::size_t h) {
    table_[g * n_ + f] = h;
    if (consistent(g, f)) return true;
    table_[g * n_ + f] = npos;
    return false;
  }
  void unassign(std::size_t g, std::size_t f) { table_[g * n_ + f] = npos; }

  NuCat build(const std::vector<std::string>& objs) const {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
    for (auto [g, f] : pairs_) comp[{g, f}] = get(g, f);
    return NuCat(objs, ms_, comp);
  }

 private:
  bool triple_ok(std::size_t a, std::size_t b, std::size_t c) const {
    // (a∘b)∘c = a∘(b∘c) when all four composites are known
    auto ab = get(a, b), bc = get(b, c);
    if (ab == npos || bc == npos) return true;
    auto l = get(ab, c), r = get(a, bc);
    return l == npos || r == npos || l == r;
  }

  // checks the triples in which the pair (g, f) occurs, in any of its four roles
  bool consistent(std::size_t g, std::size_t f) const {
    for (std::size_t a = 0; a < n_; ++a) {
      if (ms_[a].src == ms_[g].tgt && !triple_ok(a, g, f)) return false;
      if (ms_[f].src == ms_[a].tgt && !triple_ok(g, f, a)) return false;
    }
    for (auto [b, c] : pairs_) {
      const auto bc = get(b, c);
      if (bc == f && !triple_ok(g, b, c)) return false;
      if (bc == g && !triple_ok(b, c, f)) return false;
    }
    return true;
  }

  std::size_t objects_, n_ = 0;
  std::vector<Morphism> ms_;
  std::vector<std::size_t> table_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> hom_;
};

inline std::vector<std::string> object_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < n; ++x) out.push_back("x" + std::to_string(x));
  return out;
}

inline std::vector<Morphism> morphisms_for(std::size_t objects, const std::vector<std::size_t>& sizes) {
  std::vector<Morphism> ms;
  for (std::size_t x = 0; x < objects; ++x)
    for (std::size_t y = 0; y < objects; ++y)
      for (std::size_t i = 0; i < sizes[x * objects + y]; ++i)
        ms.push_back({"f" + std::to_string(x) + std::to_string(y) + "_" + std::to_string(i), x, y});
  return ms;
}

}  // namespace detail

/// Every associative composition table on 0..max_objects objects with hom-sets
/// of size at most max_hom (morphisms labelled, not up to isomorphism), in a
/// fixed order. Calls `visit` per category; stops when it returns false.
inline void for_each_nucat(std::size_t max_objects, std::size_t max_hom,
                           const std::function<bool(const NuCat&)>& visit, Budget budget = {}) {
  BudgetCounter counter(budget, "corpus enumeration");
  bool stop = false;
  for (std::size_t o = 0; o <= max_objects && !stop; ++o) {
    std::vector<std::size_t> sizes(o * o, 0);
    auto objs = detail::object_names(o);
    for (bool more = true; more && !stop;) {
      detail::TableSearch search(o, detail::morphisms_for(o, sizes));
      const auto& pairs = search.pairs();
      auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (stop) return;
        if (pos == pairs.size()) {
          if (!visit(search.build(objs))) stop = true;
          return;
        }
        auto [g, f] = pairs[pos];
        for (auto h : search.candidates(g, f)) {
          counter.tick();
          if (!search.assign(g, f, h)) continue;
          self(self, pos + 1);
          search.unassign(g, f);
          if (stop) return;
        }
      };
      rec(rec, 0);
      // next hom-size vector (odometer)
      more = false;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < max_hom) {
          ++sizes[i];
          more = true;
          break;
        }
        sizes[i] = 0;
      }
    }
  }
}

inline std::vector<NuCat> nucat_corpus(std::size_t max_objects, std::size_t max_hom, Budget budget = {}) {
  std::vector<NuCat> out;
  for_each_nucat(max_objects, max_hom, [&](const NuCat& c) {
    out.push_back(c);
    return true;
  }, budget);
  return out;
}

/// Deterministic 64-bit generator with an explicit reduction so that samples
/// do not depend on the standard library's distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }

 private:
  std::mt19937_64 g_;
};

/// Random associative table on `objects` objects with hom-sets of size at
/// most max_hom. With `unital`, every endomorphism set is nonempty and its
/// first morphism is forced to act as an identity.
inline std::optional<NuCat> sample_nucat(SeededRng& rng, std::size_t objects, std::size_t max_hom, bool unital,
                                         std::uint64_t node_limit = 20000) {
  std::vector<std::size_t> sizes(objects * objects);
  for (std::size_t x = 0; x < objects; ++x)
    for (std::size_t y = 0; y < objects; ++y) {
      std::size_t lo = (unital && x == y) ? 1 : 0;
      sizes[x * objects + y] = lo + rng.below(max_hom - lo + 1);
    }
  auto ms = detail::morphisms_for(objects, sizes);
  detail::TableSearch search(objects, ms);
  std::vector<std::size_t> ident(objects, npos);
  if (unital)
    for (std::size_t m = 0; m < ms.size(); ++m)
      if (ms[m].src == ms[m].tgt && ident[ms[m].src] == npos) ident[ms[m].src] = m;
  auto pairs = search.pairs();
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
  std::uint64_t nodes = 0;
  bool found = false;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (found || nodes > node_limit) return;
    if (pos == pairs.size()) {
      found = true;
      return;
    }
    auto [g, f] = pairs[pos];
    std::vector<std::size_t> cands;
    if (unital && ident[ms[g].src] == g) {
      cands = {f};
    } else if (unital && ident[ms[f].tgt] == f) {
      cands = {g};
    } else {
      cands = search.candidates(g, f);
      for (std::size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[rng.below(i)]);
    }
    for (auto h : cands) {
      ++nodes;
      if (!search.assign(g, f, h)) continue;
      self(self, pos + 1);
      if (found) return;
      search.unassign(g, f);
    }
  };
  rec(rec, 0);
  if (!found) return std::nullopt;
  return search.build(detail::object_names(objects));
}

/// `count` samples, alternating unital and arbitrary, from a seed.
inline std::vector<NuCat> sampled_corpus(std::uint64_t seed, std::size_t count, std::size_t objects,
                                         std::size_t max_hom) {
  SeededRng rng(seed);
  std::vector<NuCat> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw ResourceError("sampled_corpus: too many failed attempts");
    if (auto c = sample_nucat(rng, objects, max_hom, out.size() % 2 == 0)) out.push_back(std::move(*c));
  }
  return out;
}

/// Every partial order on {0..n-1} (labelled), in a fixed order.
inline std::vector<NuCat> poset_corpus(std::size_t max_elements) {
  std::vector<NuCat> out;
  for (std::size_t n = 0; n <= max_elements; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> offdiag;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (x != y) offdiag.emplace_back(x, y);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << offdiag.size()); ++mask) {
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (std::size_t x = 0; x < n; ++x) leq[x][x] = true;
      for (std::size_t i = 0; i < offdiag.size(); ++i)
        if ((mask >> i) & 1u) leq[offdiag[i].first][offdiag[i].second] = true;
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t y = 0; y < n && ok; ++y) {
          if (x != y && leq[x][y] && leq[y][x]) ok = false;
          for (std::size_t z = 0; z < n && ok; ++z)
            if (leq[x][y] && leq[y][z] && !leq[x][z]) ok = false;
        }
      if (ok) out.push_back(poset_category(leq));
    }
  }
  return out;
}

/// The map of nerves induced by a functor.
inline SSetMap nerve_map(const NuFunctor& F, const NuCat& c, const NuCat& d, std::size_t depth) {
  require(functor_violations(F, c, d).empty(), "nerve_map: not a functor");
  LazyNerve nc(c), nd(d);
  SSetMap::Levels l(depth + 1);
  l[0] = F.objects;
  for (std::size_t k = 1; k <= depth; ++k)
    for (std::size_t s = 0; s < nc.level_size(k); ++s) {
      auto str = nc.string(k, s);
      for (auto& m : str) m = F.morphisms[m];
      l[k].push_back(nd.find(k, str));
    }
  return SSetMap(nc.materialize(depth), nd.materialize(depth), std::move(l));
}

}  // namespace qucat
