#pragma once

// Replayable decompositions of marked inclusions into pushouts along
// admissible horn inclusions and triangle remarkings.
//
// Certificates live inside a vertex-labelled ambient: every simplex is named
// by the labels of its vertices, so a certificate is independent of the ids
// any particular construction assigns.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/marked.hpp"
#include "qucat/ordinal.hpp"
#include "qucat/sset.hpp"

namespace qucat {

using SimplexKey = std::vector<Label>;

/// Attach the simplex along the horn missing the face opposite vertex v.
struct HornStep {
  SimplexKey simplex;
  std::size_t v = 0;
  bool operator==(const HornStep&) const = default;
};

/// Mark the third edge of a triangle that has exactly two marked edges.
struct RemarkStep {
  SimplexKey triangle;
  bool operator==(const RemarkStep&) const = default;
};

using Step = std::variant<HornStep, RemarkStep>;

struct PushoutCertificate {
  MarkedSSet start;
  MarkedSSet target;
  std::vector<Step> steps;
};

/// What the verifier saw at one horn step.
struct HornRecord {
  std::size_t step = 0;
  std::size_t k = 0, v = 0;
  std::vector<std::pair<std::size_t, std::size_t>> marking;  // B, as vertex pairs of Δᵏ
  bool admissible = false;
};

struct VerifyReport {
  bool ok = true;
  std::optional<std::size_t> failing_step;  // unset when the failure is not tied to a step
  std::string clause;
  std::vector<HornRecord> horns;
  std::optional<MarkedSSet> replayed;  // set once every step has been applied
  explicit operator bool() const { return ok; }
};

namespace detail {

inline std::string key_string(const SimplexKey& key) {
  std::string s = "[";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ",";
    if (key[i].size() == 1) {
      s += std::to_string(key[i][0]);
    } else {
      s += "(";
      for (std::size_t j = 0; j < key[i].size(); ++j) s += (j ? "," : "") + std::to_string(key[i][j]);
      s += ")";
    }
  }
  return s + "]";
}

inline SimplexKey drop(const SimplexKey& key, std::size_t i) {
  SimplexKey out = key;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

/// Pushout of `state` along (Λᵏᵥ, B) ⊆ (Δᵏ, B), where the horn is mapped
/// into state by vertex labels.
inline MarkedSSet attach_horn(const MarkedSSet& state, const SimplexKey& key, std::size_t v) {
  const std::size_t k = key.size() - 1;
  const SSet& x = state.underlying();
  SSet simplex = standard(k).with_labels(key);
  SSet h = horn(k, v).with_labels(key);
  SSetMap::Levels into_simplex(k + 1), into_state(k + 1);
  for (std::size_t d = 0; d <= k; ++d)
    for (std::size_t s = 0; s < h.level_size(d); ++s) {
      const auto verts = h.vertices(d, s);
      into_simplex[d].push_back(simplex.find_by_vertices(d, verts).front());
      into_state[d].push_back(*x.find_by_key(h.key(d, s)));
    }
  auto po = pushout(SSetMap(h, simplex, into_simplex), SSetMap(h, x, into_state));
  std::vector<bool> marking(po.object.level_size(1), false);
  for (auto e : state.marked_edges()) marking[po.from_x(1, e)] = true;
  return MarkedSSet(po.object, std::move(marking));
}

}  // namespace detail

/// Replays the certificate from its start and checks every step and the
/// final object against the target. Stops at the first failure.
inline VerifyReport verify(const PushoutCertificate& cert) {
  VerifyReport r;
  auto fail = [&r](std::optional<std::size_t> step, std::string clause) {
    r.ok = false;
    r.failing_step = step;
    r.clause = std::move(clause);
    return r;
  };
  if (!validate(cert.start.underlying()).empty()) return fail(std::nullopt, "start violates the face identities");
  if (!cert.start.underlying().is_complex_like()) return fail(std::nullopt, "start is not determined by vertex labels");
  if (!cert.target.underlying().is_complex_like())
    return fail(std::nullopt, "target is not determined by vertex labels");

  MarkedSSet state = cert.start;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const SSet& x = state.underlying();
    if (const auto* h = std::get_if<HornStep>(&cert.steps[i])) {
      const auto& key = h->simplex;
      const std::size_t k = key.size() - 1;
      if (key.size() < 3) return fail(i, "horn step on a simplex of dimension < 2");
      if (h->v > k) return fail(i, "horn vertex out of range");
      if (std::set<Label>(key.begin(), key.end()).size() != key.size())
        return fail(i, "simplex " + detail::key_string(key) + " has repeated vertices");
      for (const auto& l : key)
        if (!x.find_vertex(l)) return fail(i, "vertex of " + detail::key_string(key) + " missing");
      if (x.find_by_key(key)) return fail(i, "simplex " + detail::key_string(key) + " already present");
      if (x.find_by_key(detail::drop(key, h->v)))
        return fail(i, "not a horn attachment: face opposite vertex " + std::to_string(h->v) + " of " +
                           detail::key_string(key) + " already present");
      for (std::size_t j = 0; j <= k; ++j)
        if (j != h->v && !x.find_by_key(detail::drop(key, j)))
          return fail(i, "not a horn attachment: face " + std::to_string(j) + " of " + detail::key_string(key) +
                             " missing");
      HornRecord rec;
      rec.step = i;
      rec.k = k;
      rec.v = h->v;
      auto marked = [&](std::size_t a, std::size_t b) {
        return state.is_marked(*x.find_by_key({key[a], key[b]}));
      };
      if (h->v == 0 && marked(0, 1)) rec.marking.push_back({0, 1});
      if (h->v == k && marked(k - 1, k)) rec.marking.push_back({k - 1, k});
      rec.admissible = is_admissible({k, h->v, rec.marking});
      r.horns.push_back(rec);
      if (!rec.admissible)
        return fail(i, "horn (" + std::to_string(k) + "," + std::to_string(h->v) + ") on " +
                           detail::key_string(key) + " is not admissible");
      state = detail::attach_horn(state, key, h->v);
    } else {
      const auto& key = std::get<RemarkStep>(cert.steps[i]).triangle;
      if (key.size() != 3) return fail(i, "remark step needs a triangle");
      auto t = x.find_by_key(key);
      if (!t) return fail(i, "triangle " + detail::key_string(key) + " missing");
      const auto& fs = x.faces(2, *t);
      int count = state.is_marked(fs[0]) + state.is_marked(fs[1]) + state.is_marked(fs[2]);
      if (count != 2)
        return fail(i, "triangle " + detail::key_string(key) + " has " + std::to_string(count) +
                           " marked edges, expected 2");
      auto m = state.marking();
      for (auto e : fs) m[e] = true;
      state = MarkedSSet(x, std::move(m));
    }
  }
  r.replayed = state;
  if (!validate(state.underlying()).empty()) return fail(std::nullopt, "replayed object violates the face identities");
  auto got = labelled_shape(state);
  auto want = labelled_shape(cert.target);
  if (got.levels != want.levels) return fail(std::nullopt, "replayed object differs from the target");
  if (got.marked != want.marked) return fail(std::nullopt, "replayed marking differs from the target marking");
  return r;
}

// ---------------------------------------------------------------------------
// Spread simplices.

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size == 0 || size > n + 1) return out;
  for (const auto& f : enumerate_maps(size - 1, n, MapClass::injective)) out.push_back(f.values());
  return out;
}

inline SimplexKey key_of(const std::vector<std::size_t>& vs) {
  SimplexKey k;
  for (auto v : vs) k.push_back({static_cast<int>(v)});
  return k;
}

}  // namespace detail

/// J ⊆ [n] is spread when it contains i, meets both {0..j-1}∖{i} and
/// {j..n}∖{i}, and has at least three elements.
inline bool is_spread(const std::vector<std::size_t>& J, std::size_t i, std::size_t j) {
  if (J.size() < 3 || std::find(J.begin(), J.end(), i) == J.end()) return false;
  bool low = false, high = false;
  for (auto x : J) {
    if (x == i) continue;
    if (x < j) low = true;
    else high = true;
  }
  return low && high;
}

/// The marking on Λⁿᵢ used by the spread decomposition: edges from i to
/// larger vertices below j, and edges into i from smaller vertices at or above j.
inline std::vector<std::pair<std::size_t, std::size_t>> spread_marking(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (std::size_t x = 0; x <= n; ++x) {
    if (x == i) continue;
    if (x < j && x > i) m.push_back({i, x});
    if (x >= j && x < i) m.push_back({x, i});
  }
  return m;
}

namespace detail {

inline MarkedSSet mark_pairs(const SSet& x, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::size_t> ids;
  for (auto [a, b] : pairs)
    if (auto e = x.find_by_key({{static_cast<int>(a)}, {static_cast<int>(b)}})) ids.push_back(*e);
  return MarkedSSet::from_edges(x, ids);
}

}  // namespace detail

/// (Δᴬ ∪ Δᴮ, M) -> (Λⁿᵢ, M) with A = {0..j-1} ∪ {i}, B = {j..n} ∪ {i}, by
/// attaching the spread simplices in order of dimension, each along the
/// horn at vertex i.
inline PushoutCertificate spread_decomposition(std::size_t n, std::size_t i, std::size_t j) {
  require(n >= 2 && i <= n && j <= n, "spread_decomposition: need n >= 2 and 0 <= i, j <= n");
  const bool low_empty = j == 0 || (j == 1 && i == 0);
  const bool high_empty = j == n && i == n;
  require(!low_empty && !high_empty,
          "spread_decomposition: {0..j-1} or {j..n} has no vertex besides i, so the union is the whole simplex");
  auto in_start = [&](const IndexTuple& s) {
    bool in_a = std::all_of(s.begin(), s.end(), [&](std::size_t x) { return x < j || x == i; });
    bool in_b = std::all_of(s.begin(), s.end(), [&](std::size_t x) { return x >= j || x == i; });
    return in_a || in_b;
  };
  auto marking = spread_marking(n, i, j);
  PushoutCertificate cert;
  cert.start = detail::mark_pairs(simplex_subcomplex(n, in_start, n), marking);
  cert.target = detail::mark_pairs(horn(n, i), marking);
  for (std::size_t size = 3; size <= n; ++size)
    for (const auto& J : detail::subsets_by_size(n, size))
      if (is_spread(J, i, j)) {
        std::size_t v = static_cast<std::size_t>(std::find(J.begin(), J.end(), i) - J.begin());
        cert.steps.push_back(HornStep{detail::key_of(J), v});
      }
  return cert;
}

// ---------------------------------------------------------------------------
// Filtration of Δᵐ ⊗ Δⁿ by special simplices.

struct FiltrationTag {
  bool full = false;
  bool special = false;
  long index = 0;
  bool operator==(const FiltrationTag&) const = default;
};

/// Tags a simplex of Δᵐ ⊗ Δⁿ given by its two projections f : [k] -> [m]
/// and g : [k] -> [n], relative to the horn vertex l.
inline FiltrationTag classify(const OrdinalMap& f, const OrdinalMap& g, std::size_t m, std::size_t n, std::size_t l) {
  require(l >= 1 && l <= n, "classify: need 0 < l <= n");
  require(f.codomain_size() == m && g.codomain_size() == n && f.domain_size() == g.domain_size(),
          "classify: projections do not match the dimensions");
  const std::size_t k = f.domain_size();
  FiltrationTag t;
  std::set<std::size_t> img(g.values().begin(), g.values().end());
  bool covers = true;
  for (std::size_t y = 0; y <= n; ++y)
    if (y != l && !img.count(y)) covers = false;
  t.full = f.is_surjective() && covers;
  auto gl = g.fiber(l), gl1 = g.fiber(l - 1);
  t.special = t.full && !gl.empty() && !gl1.empty() && f(gl.front()) == f(gl1.back());
  t.index = static_cast<long>(k + 1) - static_cast<long>(n) - static_cast<long>(gl.size());
  return t;
}

namespace detail {

inline std::pair<OrdinalMap, OrdinalMap> projections(const SimplexKey& key, std::size_t m, std::size_t n) {
  std::vector<std::size_t> a, b;
  for (const auto& p : key) {
    a.push_back(static_cast<std::size_t>(p.at(0)));
    b.push_back(static_cast<std::size_t>(p.at(1)));
  }
  return {OrdinalMap(m, a), OrdinalMap(n, b)};
}

inline SimplexKey reverse_key(const SimplexKey& key, std::size_t m, std::size_t n) {
  SimplexKey out;
  for (auto it = key.rbegin(); it != key.rend(); ++it)
    out.push_back({static_cast<int>(m) - (*it)[0], static_cast<int>(n) - (*it)[1]});
  return out;
}

inline MarkedSSet horn_factor(std::size_t n, std::size_t l, bool whole) {
  std::vector<std::pair<std::size_t, std::size_t>> a;
  if (l == n) a.push_back({n - 1, n});
  if (l == 0) a.push_back({0, 1});
  SSet x = whole ? standard(n) : horn(n, l);
  return mark_pairs(x, a);
}

/// The subobject of a labelled marked object on the simplices accepted by `keep`.
inline MarkedSSet marked_sub(const MarkedSSet& w, const std::function<bool(const SimplexKey&)>& keep) {
  const SSet& x = w.underlying();
  std::vector<std::vector<bool>> sel(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k)
    for (std::size_t s = 0; s < x.level_size(k); ++s) sel[k].push_back(keep(x.key(k, s)));
  auto [sub, inc] = subobject(x, sel);
  std::vector<bool> m;
  for (std::size_t e = 0; e < (sub.truncation() >= 1 ? sub.level_size(1) : 0); ++e)
    m.push_back(w.is_marked(inc(1, e)));
  return MarkedSSet(sub, std::move(m));
}

}  // namespace detail

/// The special simplices of Δᵐ ⊗ Δⁿ for 0 < l <= n, ordered by dimension,
/// then index, then point sequence, each with its horn vertex min g⁻¹(l).
inline std::vector<HornStep> special_schedule(std::size_t m, std::size_t n, std::size_t l) {
  std::vector<std::tuple<std::size_t, long, SimplexKey, std::size_t>> rows;
  for (std::size_t k = 0; k <= m + n; ++k)
    for (const auto& chain : grid_chains(m, n, k)) {
      SimplexKey key;
      for (auto [a, b] : chain) key.push_back({static_cast<int>(a), static_cast<int>(b)});
      auto [f, g] = detail::projections(key, m, n);
      auto t = classify(f, g, m, n, l);
      if (t.special) rows.emplace_back(k, t.index, key, g.fiber(l).front());
    }
  std::sort(rows.begin(), rows.end());
  std::vector<HornStep> out;
  for (auto& [k, idx, key, v] : rows) out.push_back({key, v});
  return out;
}

/// ((∂Δᵐ)♭ ⊗ (Δⁿ,A)) ∪ ((Δᵐ)♭ ⊗ (Λⁿₗ,A)) -> (Δᵐ)♭ ⊗ (Δⁿ,A), with A the
/// admissible marking for the horn at l. The case l = 0 is obtained from
/// l = n by reversing both orders.
inline PushoutCertificate shuffle_filtration(std::size_t m, std::size_t n, std::size_t l) {
  require(n >= 2 && l <= n, "shuffle_filtration: need n >= 2, 0 <= l <= n");
  PushoutCertificate cert;
  MarkedSSet ambient = tensor(flat(standard(m)), detail::horn_factor(n, l, true));
  MarkedSSet boundary_part = tensor(flat(boundary(m)), detail::horn_factor(n, l, true));
  MarkedSSet horn_part = tensor(flat(standard(m)), detail::horn_factor(n, l, false));
  auto present = [](const MarkedSSet& w) {
    std::set<SimplexKey> keys;
    const SSet& x = w.underlying();
    for (std::size_t k = 0; k <= x.dimension(); ++k)
      for (std::size_t s = 0; s < x.level_size(k); ++s) keys.insert(x.key(k, s));
    return keys;
  };
  auto keys = present(boundary_part);
  auto more = present(horn_part);
  keys.insert(more.begin(), more.end());
  cert.start = detail::marked_sub(ambient, [&keys](const SimplexKey& k) { return keys.count(k) > 0; });
  cert.target = ambient;
  if (l >= 1) {
    for (auto& s : special_schedule(m, n, l)) cert.steps.push_back(std::move(s));
  } else {
    for (auto& s : special_schedule(m, n, n)) {
      const std::size_t k = s.simplex.size() - 1;
      cert.steps.push_back(HornStep{detail::reverse_key(s.simplex, m, n), k - s.v});
    }
  }
  return cert;
}

/// Number of special simplices of Δᵐ ⊗ Δⁿ, found by classifying every chain.
inline std::size_t special_census(std::size_t m, std::size_t n, std::size_t l) {
  std::size_t count = 0;
  for (std::size_t k = 0; k <= m + n; ++k)
    for (const auto& chain : grid_chains(m, n, k)) {
      std::vector<std::size_t> a, b;
      for (auto [x, y] : chain) {
        a.push_back(x);
        b.push_back(y);
      }
      count += classify(OrdinalMap(m, a), OrdinalMap(n, b), m, n, l).special;
    }
  return count;
}

// ---------------------------------------------------------------------------
// Section pairs.

struct SectionPairGraph {
  std::vector<std::pair<OrdinalMap, OrdinalMap>> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool connected = false;
};

/// Pairs of sections of a surjection, adjacent when they differ by 1 in L1 distance.
inline SectionPairGraph section_pair_graph(const OrdinalMap& f) {
  auto secs = sections_of(f);
  SectionPairGraph g;
  for (const auto& a : secs)
    for (const auto& b : secs) g.nodes.emplace_back(a, b);
  auto dist = [](const OrdinalMap& x, const OrdinalMap& y) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < x.values().size(); ++i)
      d += x(i) > y(i) ? x(i) - y(i) : y(i) - x(i);
    return d;
  };
  const std::size_t N = g.nodes.size();
  std::vector<std::vector<std::size_t>> adj(N);
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q)
      if (dist(g.nodes[p].first, g.nodes[q].first) + dist(g.nodes[p].second, g.nodes[q].second) == 1) {
        g.edges.emplace_back(p, q);
        adj[p].push_back(q);
        adj[q].push_back(p);
      }
  std::vector<bool> seen(N, false);
  std::queue<std::size_t> todo;
  if (N > 0) {
    todo.push(0);
    seen[0] = true;
  }
  std::size_t reached = 0;
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop();
    ++reached;
    for (auto q : adj[p])
      if (!seen[q]) {
        seen[q] = true;
        todo.push(q);
      }
  }
  g.connected = reached == N;
  return g;
}

/// M_f on the spine of the domain of f : [m] -> [n]: {j, j+1} is marked when
/// f(j) = f(j+1) or {f(j), f(j+1)} is in M. M lists i for the spine edge {i, i+1} of Δⁿ.
inline std::vector<std::pair<std::size_t, std::size_t>> pulled_back_marking(const OrdinalMap& f,
                                                                             const std::set<std::size_t>& M) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < f.domain_size(); ++j)
    if (f(j) == f(j + 1) || M.count(f(j))) out.push_back({j, j + 1});
  return out;
}

/// (Δᵐ, M̃_f): the 2-out-of-3 closure of M_f on the whole simplex.
inline MarkedSSet closed_marking(const OrdinalMap& f, const std::set<std::size_t>& M) {
  return closure_2of3(detail::mark_pairs(standard(f.domain_size()), pulled_back_marking(f, M)));
}

/// T(h1, h2) ⊆ (Δᵐ, M̃_f): the spine edges inside fibres of f together with
/// the edges {h1(i), h2(i+1)}, with the marking induced from M̃_f.
inline MarkedSSet build_T(const OrdinalMap& h1, const OrdinalMap& h2, const OrdinalMap& f,
                          const std::set<std::size_t>& M) {
  require(f.is_surjective(), "build_T: f must be surjective");
  const std::size_t m = f.domain_size(), n = f.codomain_size();
  require(compose(h1, f) == OrdinalMap::identity(n) && compose(h2, f) == OrdinalMap::identity(n),
          "build_T: h1 and h2 must be sections of f");
  for (auto i : M) require(i < n, "build_T: spine marking out of range");
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t j = 0; j < m; ++j)
    if (f(j) == f(j + 1)) edges.insert({j, j + 1});
  for (std::size_t i = 0; i < n; ++i) edges.insert({h1(i), h2(i + 1)});
  auto keep = [&edges](const IndexTuple& s) { return s.size() == 1 || (s.size() == 2 && edges.count({s[0], s[1]})); };
  SSet t = simplex_subcomplex(m, keep, m);
  MarkedSSet ambient = closed_marking(f, M);
  std::vector<bool> marking;
  for (std::size_t e = 0; e < t.level_size(1); ++e)
    marking.push_back(ambient.is_marked(*ambient.underlying().find_by_key(t.key(1, e))));
  return MarkedSSet(t, std::move(marking));
}

/// (Sp^m, M_f).
inline MarkedSSet spine_with_marking(const OrdinalMap& f, const std::set<std::size_t>& M) {
  return detail::mark_pairs(spine(f.domain_size()), pulled_back_marking(f, M));
}

/// h_max(i) = max f⁻¹(i), h_min(i) = min f⁻¹(i).
inline std::pair<OrdinalMap, OrdinalMap> extreme_sections(const OrdinalMap& f) {
  require(f.is_surjective(), "extreme_sections: f must be surjective");
  std::vector<std::size_t> hi, lo;
  for (std::size_t i = 0; i <= f.codomain_size(); ++i) {
    auto fib = f.fiber(i);
    hi.push_back(fib.back());
    lo.push_back(fib.front());
  }
  return {OrdinalMap(f.domain_size(), hi), OrdinalMap(f.domain_size(), lo)};
}

}  // namespace qucat
