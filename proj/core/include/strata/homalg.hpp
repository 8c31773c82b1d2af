#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "strata/chains.hpp"
#include "strata/lattice.hpp"
#include "strata/smith.hpp"

namespace strata {

using Simplex = std::vector<std::uint32_t>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Finite abstract simplicial complex; simplices are sorted vertex lists,
/// grouped by dimension and indexed for boundary assembly.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Adds s (sorted, duplicate-free) if new. Faces are not added.
  bool add(Simplex s);
  /// Adds s together with all of its faces.
  void add_closed(const Simplex& s);

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int d) const;
  std::size_t size() const;
  const std::vector<Simplex>& simplices(int d) const { return by_dim_[static_cast<std::size_t>(d)]; }
  /// Index of s among simplices of its dimension, or -1.
  long long index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }
  /// Every face of every simplex is present.
  bool is_closed() const;

  /// Boundary matrix from dimension d to d - 1 (d >= 1), sign (-1)^i for
  /// dropping the i-th vertex.
  SparseMatrix boundary(int d) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, std::uint32_t, SimplexHash>> index_;
};

/// Order complex of the sub-poset on `subset`: one simplex per nonempty chain.
/// Vertex k is subset[k] after sorting `subset` into a linear extension, so
/// every simplex lists its chain bottom-up.
struct OrderComplex {
  SimplicialComplex complex;
  std::vector<ElementId> vertices;
};
OrderComplex order_complex(const Poset& p, std::vector<ElementId> subset);
OrderComplex order_complex(const Poset& p);

struct DegreeGroup {
  long long betti = 0;
  std::vector<long long> torsion;
  friend bool operator==(const DegreeGroup&, const DegreeGroup&) = default;
};

/// Groups by degree 0..N; trailing zero degrees are trimmed.
struct HomologySummary {
  std::vector<DegreeGroup> degrees;

  bool is_zero() const;
  bool is_free() const;
  long long euler() const;
  /// Degrees with a nonzero group.
  std::vector<int> support() const;
  friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

HomologySummary homology(const SimplicialComplex& k);
/// Homology of the pair (K, L). Throws InputError unless L is a subcomplex.
HomologySummary relative_homology(const SimplicialComplex& k, const SimplicialComplex& l);
/// H^n = Hom(H_n, Z) + Ext(H_{n-1}, Z).
HomologySummary cohomology_from_homology(const HomologySummary& h);

/// Verifies d_{n-1} d_n = 0 on the relative chain complex of (K, L). Throws
/// InvariantViolation on failure.
void check_boundary_squared(const SimplicialComplex& k, const SimplicialComplex& l);

/// Stalk of mu(T) at a pair w <= x.
///
/// With K the nerve of (w, x] and L the nerve of (w, x), `pair_cohomology` is
/// H^*(K, L). The mu-degree of a class in pair degree n is n + 1 (the [1]
/// shift), so Euler characteristics in mu-degrees equal the Moebius function.
/// For w = x the stalk is the unit: rank 1 in mu-degree 0.
struct MuStalk {
  bool unit = false;
  HomologySummary pair_cohomology;
  int shift = 1;
  /// Free ranks indexed by mu-degree.
  std::vector<long long> betti;
  bool is_free = true;

  bool is_zero() const;
  long long euler() const;
};

/// Single point: interval of Ch(Q) between chains.
MuStalk mu_stalk(const Chain& w, const Chain& x);
/// Several points: the product of the intervals [w_i, x_i].
MuStalk mu_stalk(const std::vector<Chain>& w, const std::vector<Chain>& x);
/// Same, with the chains given as catalog indices.
MuStalk mu_stalk(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                 const std::vector<std::size_t>& x);

/// Graded tensor product of free stalks. Throws InvariantViolation if either
/// factor has torsion.
MuStalk tensor(const MuStalk& a, const MuStalk& b);

/// The closed product interval [w, x] as a plain poset. Element 0 is w and the
/// last element is x; labels join word strings with '|'.
Poset product_interval(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                       const std::vector<std::size_t>& x);

struct EulerMobius {
  long long euler = 0;
  long long mobius = 0;
  bool equal = false;
};

/// Euler characteristic of the stalk against the Moebius function of the same
/// interval, computed by recursion on the interval poset.
EulerMobius euler_vs_mobius(const Chain& w, const Chain& x);
EulerMobius euler_vs_mobius(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                            const std::vector<std::size_t>& x);

/// Crosscut complex of a closed interval [w, x] of a lattice given as a poset
/// with bottom 0 and top `size-1`: faces are sets of atoms whose join is not
/// the top. Its reduced homology matches that of the open interval.
SimplicialComplex crosscut_complex(const Poset& interval);

/// Reduced homology (augmented complex) of K; empty K gives Z in degree -1,
/// reported at index 0 with `degree_offset` -1.
struct ReducedHomology {
  int degree_offset = -1;
  HomologySummary groups;
};
ReducedHomology reduced_homology(const SimplicialComplex& k);

}  // namespace strata
