#pragma once

// Simplicial sets with degeneracies, the marked forgetful functor, and a
// truncated computation of the marked right Kan extension over surjections.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qucat/error.hpp"
#include "qucat/marked.hpp"
#include "qucat/nucat.hpp"
#include "qucat/ordinal.hpp"
#include "qucat/sset.hpp"

namespace qucat {

/// A truncated simplicial set: a semi-simplicial set together with
/// degeneracies s_i : X_k -> X_{k+1} for k < truncation.
class SimpSet {
 public:
  /// degeneracies[k][i][s] = s_i(s) for s in X_k, 0 <= i <= k.
  using Degeneracies = std::vector<std::vector<std::vector<std::size_t>>>;

  SimpSet(SSet underlying, Degeneracies degeneracies)
      : x_(std::move(underlying)), s_(std::move(degeneracies)) {
    const std::size_t top = x_.truncation();
    require(s_.size() == top, "SimpSet: one degeneracy family per level below the truncation");
    for (std::size_t k = 0; k < top; ++k) {
      require(s_[k].size() == k + 1, "SimpSet: level " + std::to_string(k) + " needs k+1 degeneracies");
      for (const auto& si : s_[k]) {
        require(si.size() == x_.level_size(k), "SimpSet: degeneracy table size mismatch");
        for (auto t : si) require(t < x_.level_size(k + 1), "SimpSet: degeneracy value out of range");
      }
    }
  }

  const SSet& underlying() const { return x_; }
  std::size_t truncation() const { return x_.truncation(); }
  std::size_t degeneracy(std::size_t k, std::size_t i, std::size_t s) const { return s_.at(k).at(i).at(s); }
  const Degeneracies& degeneracies() const { return s_; }

 private:
  SSet x_;
  Degeneracies s_;
};

/// Failures of the mixed simplicial identities, as readable clauses.
inline std::vector<std::string> simplicial_violations(const SimpSet& x) {
  std::vector<std::string> out;
  const SSet& u = x.underlying();
  for (auto v : validate(u))
    out.push_back("face identity d" + std::to_string(v.i) + "d" + std::to_string(v.j) + " at level " +
                  std::to_string(v.dim));
  auto where = [](const char* rule, std::size_t k, std::size_t i, std::size_t j, std::size_t s) {
    return std::string(rule) + " (level " + std::to_string(k) + ", i=" + std::to_string(i) +
           ", j=" + std::to_string(j) + ", simplex " + std::to_string(s) + ")";
  };
  for (std::size_t k = 0; k < x.truncation(); ++k)
    for (std::size_t s = 0; s < u.level_size(k); ++s)
      for (std::size_t j = 0; j <= k; ++j) {
        const std::size_t sj = x.degeneracy(k, j, s);
        for (std::size_t i = 0; i <= k + 1; ++i) {
          const std::size_t lhs = u.face(k + 1, sj, i);
          if (i == j || i == j + 1) {
            if (lhs != s) out.push_back(where("d_i s_j = id", k, i, j, s));
          } else if (i < j) {
            if (lhs != x.degeneracy(k - 1, j - 1, u.face(k, s, i))) out.push_back(where("d_i s_j = s_{j-1} d_i", k, i, j, s));
          } else if (lhs != x.degeneracy(k - 1, j, u.face(k, s, i - 1))) {
            out.push_back(where("d_i s_j = s_j d_{i-1}", k, i, j, s));
          }
        }
        if (k + 1 < x.truncation())
          for (std::size_t i = 0; i <= j; ++i)
            if (x.degeneracy(k + 1, i, sj) != x.degeneracy(k + 1, j + 1, x.degeneracy(k, i, s)))
              out.push_back(where("s_i s_j = s_{j+1} s_i", k, i, j, s));
      }
  return out;
}

/// The nerve of a unital category with its degeneracies, which insert identities.
inline SimpSet simplicial_nerve(const NuCat& c, std::size_t depth) {
  require(is_quasi_unital(c), "simplicial_nerve: the category needs identities");
  LazyNerve n(c);
  SSet x = n.materialize(depth);
  std::vector<std::size_t> id(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) id[o] = quasi_units_at(c, o).front();
  SimpSet::Degeneracies s(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    s[k].assign(k + 1, std::vector<std::size_t>(n.level_size(k)));
    for (std::size_t t = 0; t < n.level_size(k); ++t)
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<std::size_t> str = k == 0 ? std::vector<std::size_t>{} : n.string(k, t);
        str.insert(str.begin() + static_cast<std::ptrdiff_t>(i), id[n.vertex(k, t, i)]);
        s[k][i][t] = n.find(k + 1, str);
      }
  }
  return SimpSet(std::move(x), std::move(s));
}

/// F⁺: the underlying semi-simplicial set, marked by the degenerate edges.
inline MarkedSSet forget_plus(const SimpSet& x) {
  const SSet& u = x.underlying();
  require(u.truncation() >= 1, "forget_plus: needs level 1");
  std::vector<std::size_t> marked;
  for (std::size_t v = 0; v < u.level_size(0); ++v) marked.push_back(x.degeneracy(0, 0, v));
  return MarkedSSet::from_edges(u, marked);
}

/// F♮: marked by the invertible edges of the Segal object.
inline MarkedSSet f_natural(const SSet& x) { return MarkedSSet::from_edges(x, invertible_edges(x)); }
inline MarkedSSet f_natural(const SimpSet& x) { return f_natural(x.underlying()); }

/// (Δᵐ)^f: the simplex with its f-degenerate edges marked.
inline MarkedSSet degenerate_marked_simplex(const OrdinalMap& f) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a <= f.domain_size(); ++a)
    for (std::size_t b = a + 1; b <= f.domain_size(); ++b)
      if (f(a) == f(b)) edges.push_back({a, b});
  return marked_simplex(f.domain_size(), edges);
}

namespace detail {

inline void require_level(const MarkedSSet& w, std::size_t m, const std::string& who) {
  if (!w.underlying().has_level(m))
    throw ResourceError(who + ": level " + std::to_string(m) + " unavailable; needs depth >= " + std::to_string(m));
}

}  // namespace detail

/// X^f_m: the m-simplices all of whose f-degenerate edges are marked.
inline std::vector<std::size_t> x_f_m(const MarkedSSet& w, const OrdinalMap& f) {
  require(f.is_surjective(), "x_f_m: f must be surjective");
  const std::size_t m = f.domain_size();
  detail::require_level(w, m, "x_f_m");
  const SSet& x = w.underlying();
  std::vector<std::pair<std::size_t, std::size_t>> degenerate;
  for (std::size_t a = 0; a <= m; ++a)
    for (std::size_t b = a + 1; b <= m; ++b)
      if (f(a) == f(b)) degenerate.push_back({a, b});
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < x.level_size(m); ++s) {
    bool ok = true;
    for (auto [a, b] : degenerate)
      if (!w.is_marked(x.edge_between(m, s, a, b))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(s);
  }
  return out;
}

/// Surjections [m] ->> [n] for n <= m <= m_max, ordered by m then lexicographically.
inline std::vector<OrdinalMap> surjection_index(std::size_t n, std::size_t m_max) {
  std::vector<OrdinalMap> out;
  for (std::size_t m = n; m <= m_max; ++m)
    for (auto& f : enumerate_maps(m, n, MapClass::surjective)) out.push_back(std::move(f));
  return out;
}

struct RkLevel {
  std::size_t n = 0, m_max = 0;
  std::vector<OrdinalMap> index;                  // the objects f : [m] ->> [n]
  std::vector<std::vector<std::size_t>> families;  // one value in X^f_m per object, sorted
  bool stabilized = false;
  std::string diagnostic;

  /// Value of each family at the identity of [n], i.e. the comparison to X_n.
  std::vector<std::size_t> at_identity() const {
    std::vector<std::size_t> out;
    for (const auto& fam : families) out.push_back(fam.front());
    return out;
  }
};

namespace detail {

/// Compatible families over the surjections with m <= m_max.
inline std::vector<std::vector<std::size_t>> rk_families(const MarkedSSet& w, const std::vector<OrdinalMap>& index,
                                                         std::size_t m_max, Budget budget, std::string& diagnostic) {
  const SSet& x = w.underlying();
  const std::size_t N = index.size();
  std::map<OrdinalMap, std::size_t> pos;
  for (std::size_t i = 0; i < N; ++i) pos[index[i]] = i;

  // morphisms f -> g given by injective h with f∘h = g
  std::vector<std::vector<std::pair<std::size_t, OrdinalMap>>> out(N);
  std::vector<std::vector<std::size_t>> allowed(N);
  std::vector<std::size_t> maximal;
  for (std::size_t i = 0; i < N; ++i) {
    const auto& f = index[i];
    const std::size_t m = f.domain_size();
    for (std::size_t k = f.codomain_size(); k <= m; ++k)
      for (const auto& h : enumerate_maps(k, m, MapClass::injective)) {
        auto g = compose(h, f);
        if (g.is_surjective()) out[i].emplace_back(pos.at(g), h);
      }
    allowed[i] = x_f_m(w, f);
    if (m == m_max) {
      maximal.push_back(i);
      if (allowed[i].empty() && diagnostic.empty())
        diagnostic = "X^f_" + std::to_string(m) + " is empty for f = " + f.to_string() + ", so the limit is empty";
    }
  }

  std::vector<std::vector<std::size_t>> families;
  std::vector<std::size_t> val(N, npos);
  std::vector<std::size_t> trail;
  BudgetCounter counter(budget, "rk_plus_level");
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == maximal.size()) {
      families.push_back(val);
      return;
    }
    const std::size_t i = maximal[p];
    for (auto s : allowed[i]) {
      counter.tick();
      const std::size_t mark = trail.size();
      bool ok = true;
      for (const auto& [j, h] : out[i]) {
        const std::size_t y = x.restrict(index[i].domain_size(), s, h);
        if (val[j] == npos) {
          val[j] = y;
          trail.push_back(j);
        } else if (val[j] != y) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, p + 1);
      while (trail.size() > mark) {
        val[trail.back()] = npos;
        trail.pop_back();
      }
    }
  };
  rec(rec, 0);
  std::sort(families.begin(), families.end());
  return families;
}

}  // namespace detail

/// The limit of f ↦ X^f_m over surjections onto [n] with m <= m_max.
/// Stabilization compares with m_max - 1 by restricting families.
inline RkLevel rk_plus_level(const MarkedSSet& w, std::size_t n, std::size_t m_max, Budget budget = {}) {
  require(m_max >= n, "rk_plus_level: m_max must be at least n");
  detail::require_level(w, m_max, "rk_plus_level");
  RkLevel r;
  r.n = n;
  r.m_max = m_max;
  r.index = surjection_index(n, m_max);
  r.families = detail::rk_families(w, r.index, m_max, budget, r.diagnostic);
  if (m_max == n) {
    r.stabilized = false;
    if (r.diagnostic.empty()) r.diagnostic = "m_max must exceed n to compare against a smaller truncation";
    return r;
  }
  std::string unused;
  auto smaller_index = surjection_index(n, m_max - 1);
  auto smaller = detail::rk_families(w, smaller_index, m_max - 1, budget, unused);
  std::set<std::vector<std::size_t>> restricted;
  for (const auto& fam : r.families) restricted.emplace(fam.begin(), fam.begin() + smaller_index.size());
  r.stabilized = restricted.size() == r.families.size() &&
                 restricted == std::set<std::vector<std::size_t>>(smaller.begin(), smaller.end());
  if (!r.stabilized && r.diagnostic.empty()) r.diagnostic = "restriction to m_max - 1 is not a bijection";
  return r;
}

/// True when the families' values at the identity biject with X_n.
inline bool bijects_with_level(const RkLevel& r, const SSet& x) {
  auto ids = r.at_identity();
  std::set<std::size_t> distinct(ids.begin(), ids.end());
  return distinct.size() == ids.size() && ids.size() == x.level_size(r.n);
}

struct CounitFailure {
  OrdinalMap f, h;
  std::string reason;
};

/// For a gaunt category C and X = F♮(N C): every restriction h* : X^f_m -> X_n
/// along a section h of a surjection f : [m] ->> [n], m <= m_max, is a bijection.
inline std::vector<CounitFailure> verify_counit_gaunt(const NuCat& c, std::size_t n, std::size_t m_max) {
  require(is_gaunt(c), "verify_counit_gaunt: category is not gaunt");
  require(m_max >= n, "verify_counit_gaunt: m_max must be at least n");
  MarkedSSet w = f_natural(nerve(c, std::max<std::size_t>(m_max, 3)));
  const SSet& x = w.underlying();
  std::vector<CounitFailure> out;
  for (const auto& f : surjection_index(n, m_max)) {
    auto dom = x_f_m(w, f);
    for (const auto& h : sections_of(f)) {
      std::set<std::size_t> img;
      for (auto s : dom) img.insert(x.restrict(f.domain_size(), s, h));
      if (img.size() != dom.size()) {
        out.push_back({f, h, "h* is not injective"});
      } else if (img.size() != x.level_size(n)) {
        out.push_back({f, h, "h* is not surjective"});
      }
    }
  }
  return out;
}

}  // namespace qucat
