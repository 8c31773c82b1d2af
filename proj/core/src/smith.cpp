#include "strata/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "strata/errors.hpp"

namespace strata {

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

std::vector<std::vector<long long>> SparseMatrix::to_dense() const {
  std::vector<std::vector<long long>> d(rows, std::vector<long long>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (auto [i, v] : columns[j]) d[i][j] = v;
  return d;
}

namespace {

using Column = std::vector<SparseMatrix::Entry>;

long long labs_checked(long long x) {
  if (x == std::numeric_limits<long long>::min()) throw OverflowError("integer overflow in abs");
  return x < 0 ? -x : x;
}

// a <- a*p + b*q, entrywise over the row union.
Column combine(const Column& a, long long p, const Column& b, long long q) {
  Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint32_t row;
    long long v;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      row = a[i].first;
      v = checked::mul(a[i].second, p);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      row = b[j].first;
      v = checked::mul(b[j].second, q);
      ++j;
    } else {
      row = a[i].first;
      v = checked::add(checked::mul(a[i].second, p), checked::mul(b[j].second, q));
      ++i;
      ++j;
    }
    if (v != 0) out.emplace_back(row, v);
  }
  return out;
}

// Extended gcd with g = x*a + y*b, g >= 0.
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long long q = a / b;
    long long t = checked::sub(a, checked::mul(q, b));
    a = b;
    b = t;
    t = checked::sub(x0, checked::mul(q, x1));
    x0 = x1;
    x1 = t;
    t = checked::sub(y0, checked::mul(q, y1));
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

// Unit-pivot elimination on a general column set, then dense Smith form.
SmithInvariants eliminate(std::vector<Column> cols, std::size_t nrows) {
  SmithInvariants out;
  std::vector<std::set<std::uint32_t>> row_cols(nrows);
  for (std::uint32_t c = 0; c < cols.size(); ++c)
    for (auto [r, v] : cols[c]) row_cols[r].insert(c);
  std::vector<bool> alive(cols.size(), true);

  auto set_column = [&](std::uint32_t c, Column next) {
    for (auto [r, v] : cols[c]) row_cols[r].erase(c);
    cols[c] = std::move(next);
    for (auto [r, v] : cols[c]) row_cols[r].insert(c);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t c = 0; c < cols.size(); ++c) {
      if (!alive[c] || cols[c].empty()) continue;
      auto unit = std::find_if(cols[c].begin(), cols[c].end(),
                               [](const auto& e) { return e.second == 1 || e.second == -1; });
      if (unit == cols[c].end()) continue;
      const std::uint32_t r = unit->first;
      const long long p = unit->second;
      std::vector<std::uint32_t> others(row_cols[r].begin(), row_cols[r].end());
      for (std::uint32_t o : others) {
        if (o == c) continue;
        long long a = 0;
        for (auto [rr, v] : cols[o])
          if (rr == r) a = v;
        // Column op: col_o -= (a / p) col_c, with p = +-1.
        set_column(o, combine(cols[o], 1, cols[c], -checked::mul(a, p)));
      }
      // Row r now meets only column c; row ops clear the rest of column c
      // without touching other columns.
      set_column(c, {});
      alive[c] = false;
      ++out.rank;
      progress = true;
    }
  }

  std::vector<std::uint32_t> live_cols;
  std::map<std::uint32_t, std::size_t> live_rows;
  for (std::uint32_t c = 0; c < cols.size(); ++c) {
    if (!alive[c] || cols[c].empty()) continue;
    live_cols.push_back(c);
    for (auto [r, v] : cols[c]) live_rows.emplace(r, 0);
  }
  if (live_cols.empty()) return out;
  std::size_t k = 0;
  for (auto& [r, idx] : live_rows) idx = k++;
  std::vector<std::vector<long long>> dense(live_rows.size(),
                                            std::vector<long long>(live_cols.size(), 0));
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (auto [r, v] : cols[live_cols[j]]) dense[live_rows[r]][j] = v;
  for (long long d : smith_diagonal(std::move(dense))) {
    ++out.rank;
    if (d != 1) out.torsion.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<long long> diag;
  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    std::size_t pi = m, pj = n;
    long long best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (best == 0 || labs_checked(a[i][j]) < best)) {
          best = labs_checked(a[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        long long q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j)
          a[i][j] = checked::sub(a[i][j], checked::mul(q, a[t][j]));
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        long long q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i)
          a[i][j] = checked::sub(a[i][j], checked::mul(q, a[i][t]));
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // The pivot must divide the whole remaining block.
        for (std::size_t i = t + 1; i < m && clean; ++i)
          for (std::size_t j = t + 1; j < n && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t jj = t; jj < n; ++jj)
                a[t][jj] = checked::add(a[t][jj], a[i][jj]);
              clean = false;
            }
      }
    }
    diag.push_back(labs_checked(a[t][t]));
    ++t;
  }
  // Divisibility already holds by construction; normalize defensively.
  for (std::size_t i = 0; i + 1 < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      long long g = std::gcd(diag[i], diag[j]);
      long long l = checked::mul(diag[i] / g, diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

SmithInvariants smith_invariants(const SparseMatrix& m) {
  std::vector<Column> cols = m.columns;
  // pivot_of[row] = column whose lowest nonzero sits in that row.
  std::vector<std::int64_t> pivot_of(m.rows, -1);
  bool all_units = true;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    while (!cols[j].empty()) {
      auto [low, a] = cols[j].back();
      std::int64_t k = pivot_of[low];
      if (k < 0) {
        pivot_of[low] = static_cast<std::int64_t>(j);
        if (a != 1 && a != -1) all_units = false;
        break;
      }
      long long b = cols[static_cast<std::size_t>(k)].back().second;
      if (a % b == 0) {
        cols[j] = combine(cols[j], 1, cols[static_cast<std::size_t>(k)], -(a / b));
      } else {
        // Replace (col_k, col_j) by a unimodular combination putting
        // gcd(b, a) into col_k and 0 into col_j at this row.
        long long x, y;
        long long g = ext_gcd(b, a, x, y);
        Column ck = combine(cols[static_cast<std::size_t>(k)], x, cols[j], y);
        Column cj = combine(cols[static_cast<std::size_t>(k)], -(a / g), cols[j], b / g);
        cols[static_cast<std::size_t>(k)] = std::move(ck);
        cols[j] = std::move(cj);
        if (g != 1) all_units = false;
      }
    }
  }
  if (all_units) {
    SmithInvariants out;
    for (const auto& c : cols)
      if (!c.empty()) ++out.rank;
    return out;
  }
  std::vector<Column> nonzero;
  for (auto& c : cols)
    if (!c.empty()) nonzero.push_back(std::move(c));
  auto out = eliminate(std::move(nonzero), m.rows);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw InputError("matrix dimensions do not match");
  SparseMatrix out(a.rows, b.cols);
  std::map<std::uint32_t, long long> acc;
  for (std::size_t j = 0; j < b.cols; ++j) {
    acc.clear();
    for (auto [k, v] : b.columns[j])
      for (auto [i, w] : a.columns[k]) acc[i] = checked::add(acc[i], checked::mul(w, v));
    for (auto [i, v] : acc)
      if (v != 0) out.columns[j].emplace_back(i, v);
  }
  return out;
}

}  // namespace strata
