#pragma once

// Brute-force reference computations written without the library's search
// code, used to cross-check it on small inputs.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qucat/sset.hpp"

namespace oracle {

/// Number of (k+1)-element chains in the product poset [n] x [m], by subset scan.
inline std::size_t grid_chain_count(std::size_t n, std::size_t m, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= m; ++b) pts.emplace_back(a, b);
  const std::size_t N = pts.size();
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k + 1) continue;
    bool chain = true;
    for (std::size_t i = 0; i < N && chain; ++i)
      for (std::size_t j = i + 1; j < N && chain; ++j) {
        if (!((mask >> i) & 1u) || !((mask >> j) & 1u)) continue;
        auto [a, b] = pts[i];
        auto [c, d] = pts[j];
        chain = (a <= c && b <= d) || (c <= a && d <= b);
      }
    if (chain) ++count;
  }
  return count;
}

/// Counts face-commuting level functions X -> Y by trying every function.
inline std::size_t count_maps_brute(const qucat::SSet& x, const qucat::SSet& y) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t k = 0; k <= x.truncation(); ++k)
    for (std::size_t s = 0; s < x.level_size(k); ++s) cells.emplace_back(k, s);
  std::vector<std::vector<std::size_t>> img(x.truncation() + 1);
  for (std::size_t k = 0; k <= x.truncation(); ++k) img[k].assign(x.level_size(k), 0);
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == cells.size()) {
      for (std::size_t k = 1; k <= x.truncation(); ++k)
        for (std::size_t s = 0; s < x.level_size(k); ++s)
          for (std::size_t i = 0; i <= k; ++i)
            if (y.face(k, img[k][s], i) != img[k - 1][x.face(k, s, i)]) return;
      ++count;
      return;
    }
    auto [k, s] = cells[pos];
    for (std::size_t t = 0; t < y.level_size(k); ++t) {
      img[k][s] = t;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace oracle
