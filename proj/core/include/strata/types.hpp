#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strata/chains.hpp"
#include "strata/divisors.hpp"
#include "strata/homalg.hpp"

namespace strata {

enum class TypeFlavor { absolute, relative, pointed };

std::string to_string(TypeFlavor f);
TypeFlavor parse_flavor(const std::string& s);

/// One point of a type: lower <= upper. Absolute entries have a trivial lower.
struct TypeEntry {
  DepthFunction lower;
  DepthFunction upper;

  bool strict() const { return !(lower == upper); }
  friend bool operator==(const TypeEntry&, const TypeEntry&) = default;
};

/// Canonical entry order: upper first, then lower, both by canonical_less.
bool entry_less(const TypeEntry& a, const TypeEntry& b);

/// A multiset of entries with an optional basepoint entry. Entries are kept
/// sorted, so equality is multiset equality.
class CombinatorialType {
 public:
  CombinatorialType(LatticePtr lattice, TypeFlavor flavor);

  static CombinatorialType absolute(LatticePtr lattice, const std::vector<DepthFunction>& points);
  static CombinatorialType relative(LatticePtr lattice, std::vector<TypeEntry> entries);
  static CombinatorialType pointed(LatticePtr lattice, TypeEntry basepoint,
                                   std::vector<TypeEntry> entries);

  /// Adds an entry; throws InputError if lower > upper somewhere, if an
  /// absolute entry has a nontrivial lower, or if the entry is trivial.
  void add(TypeEntry e);
  void set_basepoint(TypeEntry e);

  const MeetSemilattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  TypeFlavor flavor() const { return flavor_; }
  const std::vector<TypeEntry>& entries() const { return entries_; }
  const std::optional<TypeEntry>& basepoint() const { return basepoint_; }
  std::size_t size() const { return entries_.size(); }
  bool is_saturated() const;

  friend bool operator==(const CombinatorialType& a, const CombinatorialType& b) {
    return a.flavor_ == b.flavor_ && a.entries_ == b.entries_ && a.basepoint_ == b.basepoint_;
  }

 private:
  LatticePtr lattice_;
  TypeFlavor flavor_;
  std::vector<TypeEntry> entries_;
  std::optional<TypeEntry> basepoint_;
};

/// Canonical order on types of one flavor: size, then basepoint, then entries.
bool type_less(const CombinatorialType& a, const CombinatorialType& b);

/// Words of the entries, e.g. "{triv<1*l1, 1*l2<2*l2}" or "*(1*l4<1*l4);{...}".
std::string type_string(const CombinatorialType& t);

CombinatorialType type_of(const LabeledConfiguration& x);
CombinatorialType type_of(const RelativePair& p);

/// Pointwise saturation of every entry (lower and upper separately).
CombinatorialType saturate_type(const CombinatorialType& t);
/// Absolute type reread as a relative one with trivial lowers.
CombinatorialType as_relative(const CombinatorialType& t);

/// S <=_+ T: there is F from the entries of T onto those of S (pointed maps in
/// the pointed flavor) with every S entry below the sum of its preimages.
bool leq_plus(const CombinatorialType& s, const CombinatorialType& t);

/// The order <=_{+,sat} on an explicit universe of saturated types of one
/// flavor: transitive closure of "some type saturating to S1 is <=_+ S2".
class SaturatedOrder {
 public:
  explicit SaturatedOrder(std::vector<CombinatorialType> universe);

  std::size_t size() const { return universe_.size(); }
  const CombinatorialType& at(std::size_t i) const { return universe_[i]; }
  /// Throws InputError if t is outside the universe.
  std::size_t index_of(const CombinatorialType& t) const;
  bool one_step(std::size_t a, std::size_t b) const { return bit(step_, a, b); }
  bool leq(std::size_t a, std::size_t b) const { return bit(closure_, a, b); }
  /// A path a = p0, p1, ..., pk = b of one-step relations, or empty.
  std::vector<std::size_t> witness(std::size_t a, std::size_t b) const;
  /// First pair a != b related both ways, if any.
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation() const;

 private:
  bool bit(const std::vector<std::uint64_t>& m, std::size_t a, std::size_t b) const {
    return (m[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  std::vector<CombinatorialType> universe_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> step_;
  std::vector<std::uint64_t> closure_;
};

bool leq_plus_sat(const CombinatorialType& s, const CombinatorialType& t,
                  const SaturatedOrder& universe);

/// Minimal order-compatible g with saturate(g) = c.
std::vector<DepthFunction> minimal_preimages(const Chain& c);
/// Minimal pairs (a <= b) with saturate(a) = lower and saturate(b) = upper.
std::vector<TypeEntry> minimal_preimages(const TypeEntry& saturated_entry);

/// Which lower chains relative enumeration may use.
enum class LowerRange {
  any,              ///< every chain within the depth bound
  coatom_multiples  ///< trivial or d * q for a maximal non-top element q
};

struct TypeBounds {
  int max_points = 2;  ///< non-basepoint entries
  int max_depth = 2;   ///< bound on the total depth of every chain
  LowerRange lowers = LowerRange::any;
};

/// Saturated types within the bounds, canonically ordered and duplicate free.
/// Absolute: multisets of nontrivial chains. Relative: multisets of strict
/// pairs. Pointed: a basepoint pair (possibly equal, possibly trivial) plus
/// strict pairs. With essential_only every pair must be essential (absolute
/// entries are read with a trivial lower).
std::vector<CombinatorialType> enumerate_saturated_types(const LatticePtr& lattice,
                                                         const TypeBounds& bounds,
                                                         TypeFlavor flavor,
                                                         bool essential_only);

void for_each_saturated_type(const LatticePtr& lattice, const TypeBounds& bounds,
                             TypeFlavor flavor, bool essential_only,
                             const std::function<void(const CombinatorialType&)>& visit);

/// Per-type sums of gamma, rank and supp for the blowup weights at dimension v.
struct KappaParts {
  long long gamma = 0;
  long long rank = 0;
  long long supp = 0;
  long long kappa() const { return gamma - rank - supp; }
};

/// Throws InputError on absolute types.
KappaParts kappa_parts(const CombinatorialType& t, int v);
long long kappa_of(const CombinatorialType& t, int v);

struct StratumRecord {
  CombinatorialType type;
  long long gamma = 0;
  long long rank = 0;
  long long supp = 0;
  long long kappa = 0;
  long long config_dim_real = 0;
  bool essential = false;
  long long mobius = 1;
  bool has_mu = false;
  std::vector<long long> mu_betti;  ///< by mu-degree
};

/// Absolute types are read as relative with trivial lowers.
StratumRecord stratum_record(const CombinatorialType& t, int v, bool with_mu);

}  // namespace strata
