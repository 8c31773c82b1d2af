#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

using ElementId = std::uint32_t;

/// A finite partial order stored as a full comparability bit matrix.
///
/// Elements carry stable integer indices and optional display labels. The
/// relation is validated (reflexive, antisymmetric, transitive) on
/// construction, so every Poset value is a genuine partial order.
class Poset {
 public:
  Poset() = default;

  /// Builds the order from a predicate `leq(a, b)` evaluated on all pairs.
  Poset(std::vector<std::string> labels,
        const std::function<bool(ElementId, ElementId)>& leq);

  /// Same as above with labels "0", "1", ... .
  Poset(std::size_t size, const std::function<bool(ElementId, ElementId)>& leq);

  std::size_t size() const { return size_; }
  bool leq(ElementId a, ElementId b) const {
    return (rows_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  bool lt(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }
  const std::string& label(ElementId a) const { return labels_[a]; }
  std::optional<ElementId> find(std::string_view label) const;

  /// Elements sorted so that every strict relation a < b puts a first.
  std::vector<ElementId> linear_extension() const;
  std::vector<ElementId> maximal_elements() const;
  std::vector<ElementId> minimal_elements() const;

 private:
  void build(const std::function<bool(ElementId, ElementId)>& leq);

  std::size_t size_ = 0;
  std::size_t words_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> rows_;  // bit b of row a set iff a <= b
};

/// Finite meet-semilattice with a top element. The meet table is
/// precomputed and validated at construction.
class MeetSemilattice {
 public:
  /// Validates idempotence, commutativity, associativity and that `top` is a
  /// unit for meet; derives the order x <= y iff meet(x, y) = x.
  static MeetSemilattice from_meet_table(std::vector<std::string> labels,
                                         std::vector<ElementId> meet_table, ElementId top);

  /// Computes all binary meets of an order; throws InputError when some pair
  /// has no greatest lower bound or there is no top.
  static MeetSemilattice from_order(Poset order);

  const Poset& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  ElementId top() const { return top_; }
  std::optional<ElementId> bottom() const { return bottom_; }
  ElementId meet(ElementId a, ElementId b) const { return meet_[a * size() + b]; }
  bool leq(ElementId a, ElementId b) const { return order_.leq(a, b); }
  const std::string& label(ElementId a) const { return order_.label(a); }
  ElementId find(std::string_view label) const;

  /// The non-top elements, in index order.
  const std::vector<ElementId>& proper_elements() const { return proper_; }

 private:
  MeetSemilattice() = default;
  void finish();

  Poset order_;
  std::vector<ElementId> meet_;
  ElementId top_ = 0;
  std::optional<ElementId> bottom_;
  std::vector<ElementId> proper_;
};

using LatticePtr = std::shared_ptr<const MeetSemilattice>;

/// Scans a meet table for the semilattice axioms. Returns a description of the
/// first failure, or nullopt when the table is valid.
std::optional<std::string> check_meet_table(std::size_t size,
                                            std::span<const ElementId> meet_table,
                                            ElementId top);

/// The incidence lattice {0, l1, ..., lr, V} of r lines in a vector space of
/// dimension v, with its expected-codimension and rank weights.
///
/// Element indices: 0 is the zero subspace, i in [1, r] is line l_i and
/// r + 1 is the whole space V (the top).
struct BlowupPoset {
  LatticePtr lattice;
  int lines = 0;
  int ambient_dim = 0;
  std::vector<long long> gamma;  ///< 2(v-1) on lines, 2v on 0, 0 on V
  std::vector<long long> rank;   ///< 1 on lines, 2 on 0, 0 on V

  ElementId zero() const { return 0; }
  ElementId line(int i) const { return static_cast<ElementId>(i); }
  ElementId whole() const { return static_cast<ElementId>(lines + 1); }
};

/// Requires r >= 1 and v >= 3.
BlowupPoset build_blowup_poset(int r, int v);

/// Expected-codimension weights for a lattice of blowup shape
/// (bottom < pairwise incomparable atoms < top). Throws InputError otherwise.
std::vector<long long> blowup_gamma_weights(const MeetSemilattice& lattice, int v);

/// rank(q) = length of the longest chain from q up to the top.
std::vector<long long> rank_weights(const MeetSemilattice& lattice);

/// All z with lo <= z <= hi (ends dropped per the flags), in index order.
std::vector<ElementId> interval_elements(const Poset& p, ElementId lo, ElementId hi,
                                         bool open_lo, bool open_hi);

/// Moebius function via sum_{lo <= z <= hi} mu(lo, z) = [lo = hi].
long long mobius(const Poset& p, ElementId lo, ElementId hi);

/// Number of strict steps in the longest chain from lo to hi.
std::size_t maximal_chain_length(const Poset& p, ElementId lo, ElementId hi);

/// Boolean lattice on n atoms: subsets of {0..n-1} indexed by bitmask.
Poset boolean_lattice(int atoms);

}  // namespace strata
