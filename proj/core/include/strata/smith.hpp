#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace strata {

/// Integer matrix stored by columns; each column is sorted by row and holds
/// no zero entries.
struct SparseMatrix {
  using Entry = std::pair<std::uint32_t, long long>;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
  std::size_t nonzeros() const;
  std::vector<std::vector<long long>> to_dense() const;
};

/// Rank and the invariant factors different from 1, ascending, each dividing
/// the next.
struct SmithInvariants {
  std::size_t rank = 0;
  std::vector<long long> torsion;
};

/// Smith normal form invariants of a sparse integer matrix.
///
/// First pass is column reduction with unimodular column operations. When
/// every pivot is a unit the invariants are all 1. Otherwise the reduced
/// columns go through unit-pivot elimination and a dense Smith form on the
/// residue. All arithmetic is overflow checked.
SmithInvariants smith_invariants(const SparseMatrix& m);

/// Diagonal of the Smith normal form of a dense matrix (nonzero entries only,
/// each dividing the next, all positive).
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> a);

/// Product a * b, overflow checked.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace strata
