#pragma once

// Exhaustive right lifting property checks for marked maps, and the three
// inclusions that encode quasi-unitality.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/marked.hpp"
#include "qucat/nucat.hpp"
#include "qucat/sset.hpp"

namespace qucat {

/// A map of semi-simplicial sets that carries marked edges to marked edges.
class MarkedMap {
 public:
  MarkedMap(MarkedSSet source, MarkedSSet target, SSetMap map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    require(map_.source() == source_.underlying() && map_.target() == target_.underlying(),
            "MarkedMap: map does not match the marked objects");
    require(preserves_marking(map_, source_, target_), "MarkedMap: a marked edge is sent to an unmarked edge");
  }

  const MarkedSSet& source() const { return source_; }
  const MarkedSSet& target() const { return target_; }
  const SSetMap& map() const { return map_; }

 private:
  MarkedSSet source_, target_;
  SSetMap map_;
};

struct Generator {
  std::string name;
  MarkedMap inclusion;
};

namespace detail {

inline SSetMap inclusion_by_labels(const SSet& sub, const SSet& ambient) {
  SSetMap::Levels l(sub.truncation() + 1);
  for (std::size_t k = 0; k <= sub.truncation(); ++k)
    for (std::size_t s = 0; s < sub.level_size(k); ++s) l[k].push_back(*ambient.find_by_key(sub.key(k, s)));
  return SSetMap(sub, ambient, std::move(l));
}

}  // namespace detail

/// C₀ : Δ{0} -> (Δ¹)♯, C₁ : Δ{1} -> (Δ¹)♯, C₂ : (Δ³, {02, 13}) -> (Δ³)♯.
inline std::vector<Generator> q_generators() {
  std::vector<Generator> out;
  SSet edge = standard(1);
  for (std::size_t v = 0; v <= 1; ++v) {
    SSet point = simplex_subcomplex(1, [v](const IndexTuple& s) { return s.size() == 1 && s[0] == v; }, 1);
    out.push_back({"C" + std::to_string(v),
                   MarkedMap(flat(point), sharp(edge), detail::inclusion_by_labels(point, edge))});
  }
  SSet d3 = standard(3);
  auto a = MarkedSSet::from_edges(d3, {*d3.find_by_key({{0}, {2}}), *d3.find_by_key({{1}, {3}})});
  out.push_back({"C2", MarkedMap(a, sharp(d3), SSetMap::identity(d3))});
  return out;
}

/// A commuting square from g : A -> B to p : W -> Z, as the level functions
/// of its top A -> W and bottom B -> Z.
struct LiftingSquare {
  SSetMap::Levels top, bottom;
  bool operator==(const LiftingSquare&) const = default;
};

struct RlpResult {
  bool holds = true;
  std::size_t squares = 0;
  /// Fewest lifts over all squares (0 when the property fails).
  std::size_t min_lifts = 0;
  /// Every square has exactly one lift: the discrete form of a contractible lifting property.
  bool unique_lifts = true;
  /// The first square without a lift, or the first square when the property holds.
  std::optional<LiftingSquare> reported;
  std::size_t reported_lifts = 0;
};

/// Marked lifts B -> W of one square.
inline std::size_t count_lifts(const MarkedMap& p, const MarkedMap& g, const LiftingSquare& sq, Budget budget = {},
                               std::size_t stop_after = std::numeric_limits<std::size_t>::max()) {
  const SSet& A = g.source().underlying();
  const SSet& B = g.target().underlying();
  MapSearchOptions opts;
  opts.budget = budget;
  opts.stage = "lift search";
  opts.fixed.assign(B.truncation() + 1, {});
  for (std::size_t k = 0; k <= B.truncation(); ++k) opts.fixed[k].assign(B.level_size(k), npos);
  for (std::size_t k = 0; k <= A.truncation(); ++k)
    for (std::size_t s = 0; s < A.level_size(k); ++s) opts.fixed[k][g.map()(k, s)] = sq.top[k][s];
  const auto& pm = p.map();
  const auto& gb = g.target();
  const auto& w = p.source();
  opts.allow = [&](std::size_t k, std::size_t s, std::size_t t) {
    if (pm(k, t) != sq.bottom[k][s]) return false;
    return k != 1 || !gb.is_marked(s) || w.is_marked(t);
  };
  std::size_t count = 0;
  for_each_map(B, w.underlying(), opts, [&](const SSetMap::Levels&) { return ++count < stop_after; });
  return count;
}

/// Decides whether p : W -> Z has the right lifting property against g : A -> B
/// by enumerating every commuting square and counting its lifts.
inline RlpResult has_rlp(const MarkedMap& p, const MarkedMap& g, Budget budget = {}) {
  const SSet& A = g.source().underlying();
  const SSet& B = g.target().underlying();
  const auto& pm = p.map();
  const auto& gm = g.map();
  RlpResult r;
  r.min_lifts = std::numeric_limits<std::size_t>::max();

  MapSearchOptions bottom_opts;
  bottom_opts.budget = budget;
  bottom_opts.stage = "square search";
  bottom_opts.allow = [&](std::size_t k, std::size_t s, std::size_t t) {
    return k != 1 || !g.target().is_marked(s) || p.target().is_marked(t);
  };
  for_each_map(B, p.target().underlying(), bottom_opts, [&](const SSetMap::Levels& bottom) {
    MapSearchOptions top_opts;
    top_opts.budget = budget;
    top_opts.stage = "square search";
    top_opts.allow = [&](std::size_t k, std::size_t s, std::size_t t) {
      if (pm(k, t) != bottom[k][gm(k, s)]) return false;
      return k != 1 || !g.source().is_marked(s) || p.source().is_marked(t);
    };
    bool keep_going = true;
    for_each_map(A, p.source().underlying(), top_opts, [&](const SSetMap::Levels& top) {
      LiftingSquare sq{top, bottom};
      ++r.squares;
      std::size_t n = count_lifts(p, g, sq, budget, 2);
      if (n == 0) {
        r.holds = false;
        r.unique_lifts = false;
        r.min_lifts = 0;
        r.reported = sq;
        r.reported_lifts = 0;
        keep_going = false;
        return false;
      }
      if (n != 1) r.unique_lifts = false;
      if (!r.reported) {
        r.reported = sq;
        r.reported_lifts = count_lifts(p, g, sq, budget);
      }
      r.min_lifts = std::min(r.min_lifts, n == 1 ? std::size_t{1} : count_lifts(p, g, sq, budget));
      return true;
    });
    return keep_going;
  });
  if (r.squares == 0) r.min_lifts = 0;
  return r;
}

/// W -> T with T = cosk₀(point) sharply marked, through W's truncation.
inline MarkedMap terminal_map(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  const std::size_t top = x.finite() ? std::max<std::size_t>(x.truncation(), 3) : x.truncation();
  SSet t = coskeleton0(1, top);
  SSetMap::Levels l(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k) l[k].assign(x.level_size(k), 0);
  return MarkedMap(w, sharp(t), SSetMap(x, t, std::move(l)));
}

struct QuasiUnitalReport {
  bool marked_out_everywhere = false;  // every vertex is the source of a marked edge
  bool invertibles_marked = false;     // every invertible edge is marked
  bool quasi_unital() const { return marked_out_everywhere && invertibles_marked; }
};

inline void require_marked_semisegal(const MarkedSSet& w, const std::string& who) {
  require(w.underlying().truncation() >= 3 || w.underlying().finite(), who + ": needs levels through 3");
  auto v = marked_semisegal_violations(w);
  if (!v.empty()) throw InvalidInput(who + ": " + v.front());
}

/// The two conditions read directly off W.
inline QuasiUnitalReport quasi_unital_direct(const MarkedSSet& w) {
  require_marked_semisegal(w, "quasi_unital_direct");
  const SSet& x = w.underlying();
  QuasiUnitalReport r;
  std::vector<bool> out(x.level_size(0), false);
  for (auto e : w.marked_edges()) out[x.face(1, e, 1)] = true;
  r.marked_out_everywhere = std::all_of(out.begin(), out.end(), [](bool b) { return b; });
  r.invertibles_marked = true;
  for (auto e : invertible_edges(x))
    if (!w.is_marked(e)) r.invertibles_marked = false;
  return r;
}

struct RlpQuasiUnitalReport {
  std::vector<std::pair<std::string, RlpResult>> generators;
  bool quasi_unital() const {
    return std::all_of(generators.begin(), generators.end(), [](const auto& g) { return g.second.holds; });
  }
};

/// Quasi-unitality as the lifting property of W -> T against C₀, C₁, C₂.
inline RlpQuasiUnitalReport quasi_unital_via_rlp(const MarkedSSet& w, Budget budget = {}) {
  require_marked_semisegal(w, "is_quasi_unital_via_rlp");
  auto p = terminal_map(w);
  RlpQuasiUnitalReport r;
  for (const auto& g : q_generators()) r.generators.emplace_back(g.name, has_rlp(p, g.inclusion, budget));
  return r;
}

inline bool is_quasi_unital_via_rlp(const MarkedSSet& w, Budget budget = {}) {
  return quasi_unital_via_rlp(w, budget).quasi_unital();
}

/// Markings of a nerve that pass the marked semiSegal checks: subsets of the
/// invertible edges closed under 2-out-of-3.
inline std::vector<MarkedSSet> admissible_markings(const SSet& x, std::size_t max_invertibles = 10) {
  auto inv = invertible_edges(x);
  require(inv.size() <= max_invertibles, "admissible_markings: too many invertible edges");
  std::vector<MarkedSSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inv.size()); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < inv.size(); ++i)
      if (mask >> i & 1u) chosen.push_back(inv[i]);
    auto w = MarkedSSet::from_edges(x, chosen);
    if (closure_2of3(w) == w) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace qucat
