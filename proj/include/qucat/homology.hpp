#pragma once

// Exact integral homology of finite semi-simplicial sets, with boundary
// ∂ = Σ (-1)^i d_i.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qucat/error.hpp"
#include "qucat/sset.hpp"

namespace qucat {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x == 0; });
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row i += q * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += q * (*this)(j, c);
  }
  /// col i += q * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += q * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), "matrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// ∂_k : C_k -> C_{k-1} as a |X_{k-1}| x |X_k| matrix.
inline IntMatrix boundary_matrix(const SSet& x, std::size_t k) {
  require(k >= 1 && k <= x.truncation(), "boundary_matrix: need 1 <= k <= truncation");
  IntMatrix m(x.level_size(k - 1), x.level_size(k));
  for (std::size_t s = 0; s < x.level_size(k); ++s)
    for (std::size_t i = 0; i <= k; ++i) m(x.face(k, s, i), s) += (i % 2 == 0) ? 1 : -1;
  return m;
}

struct SmithForm {
  IntMatrix d, u, v;  // u * m * v = d
};

/// Smith normal form with unimodular transforms; the diagonal is
/// nonnegative and each entry divides the next.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm f{m, IntMatrix::identity(R), IntMatrix::identity(C)};
  auto& d = f.d;
  auto& u = f.u;
  auto& v = f.v;
  auto abs_big = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };

  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = R, pc = C;
    for (std::size_t r = t; r < R; ++r)
      for (std::size_t c = t; c < C; ++c)
        if (d(r, c) != 0 && (pr == R || abs_big(d(r, c)) < abs_big(d(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr == R) break;
    d.swap_rows(t, pr);
    u.swap_rows(t, pr);
    d.swap_cols(t, pc);
    v.swap_cols(t, pc);

    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (d(r, t) == 0) continue;
        BigInt q = d(r, t) / d(t, t);
        d.add_row(r, t, -q);
        u.add_row(r, t, -q);
        if (d(r, t) != 0) {
          d.swap_rows(t, r);
          u.swap_rows(t, r);
          dirty = true;
        }
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (d(t, c) == 0) continue;
        BigInt q = d(t, c) / d(t, t);
        d.add_col(c, t, -q);
        v.add_col(c, t, -q);
        if (d(t, c) != 0) {
          d.swap_cols(t, c);
          v.swap_cols(t, c);
          dirty = true;
        }
      }
      if (dirty) continue;
      // enforce divisibility of the rest of the block by the pivot
      for (std::size_t r = t + 1; r < R && !dirty; ++r)
        for (std::size_t c = t + 1; c < C && !dirty; ++c)
          if (d(r, c) % d(t, t) != 0) {
            d.add_row(t, r, 1);
            u.add_row(t, r, 1);
            dirty = true;
          }
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return f;
}

/// Nonzero invariant factors of a boundary matrix. Unit pivots are
/// eliminated sparsely first; the remainder goes through the dense form.
inline std::vector<BigInt> invariant_factors(const SSet& x, std::size_t k) {
  const std::size_t R = x.level_size(k - 1), C = x.level_size(k);
  std::vector<std::map<std::size_t, BigInt>> rows(R);
  std::vector<std::set<std::size_t>> col_rows(C);
  for (std::size_t s = 0; s < C; ++s)
    for (std::size_t i = 0; i <= k; ++i) {
      auto r = x.face(k, s, i);
      rows[r][s] += (i % 2 == 0) ? 1 : -1;
    }
  for (std::size_t r = 0; r < R; ++r)
    for (auto it = rows[r].begin(); it != rows[r].end();) {
      if (it->second == 0) {
        it = rows[r].erase(it);
      } else {
        col_rows[it->first].insert(r);
        ++it;
      }
    }

  std::vector<BigInt> factors;
  std::vector<bool> row_alive(R, true), col_alive(C, true);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t c = 0; c < C; ++c) {
      if (!col_alive[c] || col_rows[c].empty()) continue;
      std::size_t best = R;
      for (auto r : col_rows[c]) {
        const auto& val = rows[r].at(c);
        if ((val == 1 || val == -1) && (best == R || rows[r].size() < rows[best].size())) best = r;
      }
      if (best == R) continue;
      const auto pivot_row = rows[best];
      const BigInt p = pivot_row.at(c);
      std::vector<std::size_t> others(col_rows[c].begin(), col_rows[c].end());
      for (auto r : others) {
        if (r == best) continue;
        BigInt q = rows[r].at(c) * p;  // p = ±1, so a/p = a*p
        for (const auto& [cc, val] : pivot_row) {
          auto& e = rows[r][cc];
          e -= q * val;
          if (e == 0) {
            rows[r].erase(cc);
            col_rows[cc].erase(r);
          } else {
            col_rows[cc].insert(r);
          }
        }
      }
      for (const auto& [cc, val] : pivot_row) col_rows[cc].erase(best);
      rows[best].clear();
      row_alive[best] = false;
      col_alive[c] = false;
      factors.push_back(1);
      progress = true;
    }
  }

  std::vector<std::size_t> rest_rows, rest_cols;
  for (std::size_t r = 0; r < R; ++r)
    if (row_alive[r] && !rows[r].empty()) rest_rows.push_back(r);
  for (std::size_t c = 0; c < C; ++c)
    if (col_alive[c] && !col_rows[c].empty()) rest_cols.push_back(c);
  if (!rest_rows.empty() && !rest_cols.empty()) {
    std::map<std::size_t, std::size_t> cpos;
    for (std::size_t j = 0; j < rest_cols.size(); ++j) cpos[rest_cols[j]] = j;
    IntMatrix m(rest_rows.size(), rest_cols.size());
    for (std::size_t i = 0; i < rest_rows.size(); ++i)
      for (const auto& [c, val] : rows[rest_rows[i]]) m(i, cpos.at(c)) = val;
    auto snf = smith_normal_form(m);
    for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t)
      if (snf.d(t, t) != 0) factors.push_back(snf.d(t, t));
  }
  return factors;
}

struct HomologyGroup {
  std::size_t k = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;
  bool operator==(const HomologyGroup&) const = default;
};

using HomologyProfile = std::vector<HomologyGroup>;

/// H_k for 0 <= k <= truncation, with C_{truncation+1} taken to be zero.
inline HomologyProfile homology(const SSet& x) {
  const std::size_t top = x.truncation();
  std::vector<std::vector<BigInt>> inv(top + 2);
  for (std::size_t k = 1; k <= top; ++k) inv[k] = invariant_factors(x, k);
  HomologyProfile out;
  for (std::size_t k = 0; k <= top; ++k) {
    HomologyGroup g;
    g.k = k;
    const std::size_t rank_out = k >= 1 ? inv[k].size() : 0;
    const std::size_t rank_in = inv[k + 1].size();
    g.betti = x.level_size(k) - rank_out - rank_in;
    for (const auto& d : inv[k + 1])
      if (d > 1) g.torsion.push_back(d);
    std::sort(g.torsion.begin(), g.torsion.end());
    out.push_back(std::move(g));
  }
  return out;
}

inline HomologyProfile point_profile(std::size_t top) {
  HomologyProfile p;
  for (std::size_t k = 0; k <= top; ++k) p.push_back({k, k == 0 ? 1u : 0u, {}});
  return p;
}

/// Homology of the (d)-sphere, reported through degree `top`.
inline HomologyProfile sphere_profile(std::size_t d, std::size_t top) {
  HomologyProfile p;
  for (std::size_t k = 0; k <= top; ++k) {
    std::size_t b = (k == 0 ? 1u : 0u) + (k == d ? 1u : 0u);
    p.push_back({k, b, {}});
  }
  return p;
}

}  // namespace qucat
