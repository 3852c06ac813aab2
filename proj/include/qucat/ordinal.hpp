#pragma once

// Finite ordinals [n] = {0,...,n}, monotone maps between them, and shuffles.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qucat/error.hpp"

namespace qucat {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// A weakly increasing map [m] -> [n], stored as its value sequence.
class OrdinalMap {
 public:
  OrdinalMap() = default;

  OrdinalMap(std::size_t codomain, std::vector<std::size_t> values)
      : codomain_(codomain), values_(std::move(values)) {
    require(!values_.empty(), "OrdinalMap: domain [m] needs m+1 >= 1 values");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      require(values_[i] <= codomain_, "OrdinalMap: value out of range");
      require(i == 0 || values_[i - 1] <= values_[i], "OrdinalMap: values not weakly increasing");
    }
  }

  static OrdinalMap identity(std::size_t n) {
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = i;
    return OrdinalMap(n, std::move(v));
  }

  /// The coface d^i : [n-1] -> [n] skipping i.
  static OrdinalMap coface(std::size_t n, std::size_t i) {
    require(n >= 1 && i <= n, "coface: need n >= 1 and i <= n");
    std::vector<std::size_t> v;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != i) v.push_back(j);
    return OrdinalMap(n, std::move(v));
  }

  std::size_t domain_size() const { return values_.size() - 1; }
  std::size_t codomain_size() const { return codomain_; }
  const std::vector<std::size_t>& values() const { return values_; }

  /// "(f(0),...,f(m))->[n]"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? "," : "") + std::to_string(values_[i]);
    return s + ")->[" + std::to_string(codomain_) + "]";
  }
  std::size_t operator()(std::size_t i) const { return values_.at(i); }

  bool is_injective() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i - 1] == values_[i]) return false;
    return true;
  }

  bool is_surjective() const {
    // weakly increasing: surjective iff it starts at 0, ends at n, and never jumps by 2
    if (values_.front() != 0 || values_.back() != codomain_) return false;
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] - values_[i - 1] > 1) return false;
    return true;
  }

  /// Indices of the domain mapping to y, in increasing order.
  std::vector<std::size_t> fiber(std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] == y) out.push_back(i);
    return out;
  }

  auto operator<=>(const OrdinalMap&) const = default;
  bool operator==(const OrdinalMap&) const = default;

 private:
  std::size_t codomain_ = 0;
  std::vector<std::size_t> values_{0};
};

/// g ∘ f.
inline OrdinalMap compose(const OrdinalMap& f, const OrdinalMap& g) {
  require(f.codomain_size() == g.domain_size(), "compose: codomain of f differs from domain of g");
  std::vector<std::size_t> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f(i));
  return OrdinalMap(g.codomain_size(), std::move(v));
}

enum class MapClass { all, injective, surjective };

/// All monotone maps [m] -> [n] of the given class, lexicographic in their values.
inline std::vector<OrdinalMap> enumerate_maps(std::size_t m, std::size_t n, MapClass cls) {
  std::vector<OrdinalMap> out;
  std::vector<std::size_t> v(m + 1);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t lo) -> void {
    if (pos == m + 1) {
      OrdinalMap f(n, v);
      if (cls == MapClass::surjective && !f.is_surjective()) return;
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t x = lo; x <= n; ++x) {
      v[pos] = x;
      self(self, pos + 1, cls == MapClass::injective ? x + 1 : x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// All monotone h with f ∘ h = id, lexicographic.
inline std::vector<OrdinalMap> sections_of(const OrdinalMap& f) {
  require(f.is_surjective(), "sections_of: map is not surjective");
  const std::size_t n = f.codomain_size();
  std::vector<std::vector<std::size_t>> fibers(n + 1);
  for (std::size_t y = 0; y <= n; ++y) fibers[y] = f.fiber(y);
  std::vector<OrdinalMap> out;
  std::vector<std::size_t> v(n + 1);
  auto rec = [&](auto&& self, std::size_t y) -> void {
    if (y == n + 1) {
      out.emplace_back(f.domain_size(), v);
      return;
    }
    for (std::size_t x : fibers[y]) {
      v[y] = x;
      self(self, y + 1);
    }
  };
  rec(rec, 0);
  return out;
}

using GridPoint = std::pair<std::size_t, std::size_t>;

/// An injective order-preserving map [k] -> [n] x [m] whose projections are
/// both surjective.
class Shuffle {
 public:
  Shuffle(std::size_t n, std::size_t m, std::vector<GridPoint> points)
      : n_(n), m_(m), points_(std::move(points)) {
    require(!points_.empty(), "Shuffle: needs at least one point");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const auto& [a0, b0] = points_[i - 1];
      const auto& [a1, b1] = points_[i];
      require(a0 <= a1 && b0 <= b1 && points_[i - 1] != points_[i],
              "Shuffle: points not strictly increasing in the product order");
    }
    require(first().is_surjective() && second().is_surjective(),
            "Shuffle: a projection is not surjective");
  }

  std::size_t k() const { return points_.size() - 1; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::vector<GridPoint>& points() const { return points_; }

  OrdinalMap first() const {
    std::vector<std::size_t> v;
    for (auto [a, b] : points_) v.push_back(a);
    return OrdinalMap(n_, std::move(v));
  }
  OrdinalMap second() const {
    std::vector<std::size_t> v;
    for (auto [a, b] : points_) v.push_back(b);
    return OrdinalMap(m_, std::move(v));
  }

  auto operator<=>(const Shuffle&) const = default;
  bool operator==(const Shuffle&) const = default;

 private:
  std::size_t n_, m_;
  std::vector<GridPoint> points_;
};

/// All strictly increasing chains of length k+1 in [n] x [m], lexicographic
/// in the point sequence.
inline std::vector<std::vector<GridPoint>> grid_chains(std::size_t n, std::size_t m, std::size_t k) {
  std::vector<std::vector<GridPoint>> out;
  std::vector<GridPoint> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == k + 1) {
      out.push_back(cur);
      return;
    }
    std::size_t a0 = 0, b0 = 0;
    bool first = cur.empty();
    if (!first) std::tie(a0, b0) = cur.back();
    for (std::size_t a = a0; a <= n; ++a)
      for (std::size_t b = b0; b <= m; ++b) {
        if (!first && a == a0 && b == b0) continue;
        cur.emplace_back(a, b);
        self(self);
        cur.pop_back();
      }
  };
  rec(rec);
  return out;
}

/// P^{n,m}_k in lexicographic order of the point sequence.
inline std::vector<Shuffle> enumerate_shuffles(std::size_t n, std::size_t m, std::size_t k) {
  std::vector<Shuffle> out;
  if (k < std::max(n, m) || k > n + m) return out;
  for (auto& c : grid_chains(n, m, k)) {
    if (c.front() != GridPoint{0, 0} || c.back() != GridPoint{n, m}) continue;
    bool ok = true;
    for (std::size_t i = 1; i < c.size() && ok; ++i)
      ok = c[i].first - c[i - 1].first <= 1 && c[i].second - c[i - 1].second <= 1;
    if (ok) out.emplace_back(n, m, std::move(c));
  }
  return out;
}

}  // namespace qucat
