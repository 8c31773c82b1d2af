#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "strata/lattice.hpp"

namespace strata {

/// A map g from the non-top elements of a meet-semilattice to the naturals,
/// subject to order compatibility: q <= q' implies g(q) <= g(q').
///
/// Depths are stored for every element; the top entry is always 0.
class DepthFunction {
 public:
  DepthFunction() = default;
  /// The trivial (all zero) function.
  explicit DepthFunction(LatticePtr lattice);
  /// Validates size, nonnegativity, top entry 0 and order compatibility.
  DepthFunction(LatticePtr lattice, std::vector<int> depths);
  /// Depths by element label; unnamed elements get 0.
  static DepthFunction from_labels(LatticePtr lattice,
                                   const std::vector<std::pair<std::string, int>>& depths);

  const MeetSemilattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  int operator[](ElementId q) const { return depths_[q]; }
  const std::vector<int>& depths() const { return depths_; }
  std::size_t size() const { return depths_.size(); }

  bool is_trivial() const;
  int max_depth() const;
  /// g(p meet q) = min(g(p), g(q)) for all non-top p, q.
  bool is_meet_preserving() const;

  friend bool operator==(const DepthFunction& a, const DepthFunction& b) {
    return a.depths_ == b.depths_;
  }

 private:
  friend DepthFunction unchecked_depths(LatticePtr, std::vector<int>);
  LatticePtr lattice_;
  std::vector<int> depths_;
};

/// Builds a DepthFunction without validation. For internal hot loops where the
/// caller guarantees the invariants.
DepthFunction unchecked_depths(LatticePtr lattice, std::vector<int> depths);

bool pointwise_leq(const DepthFunction& a, const DepthFunction& b);
DepthFunction pointwise_max(const DepthFunction& a, const DepthFunction& b);
DepthFunction pointwise_sum(const DepthFunction& a, const DepthFunction& b);

/// Canonical total order: (max depth, depths lexicographic by element index).
bool canonical_less(const DepthFunction& a, const DepthFunction& b);

/// One letter of a word: element q repeated `count` times.
struct Letter {
  ElementId element = 0;
  int count = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A saturated (meet-preserving) depth function, i.e. an element of Ch(Q).
class Chain {
 public:
  Chain() = default;
  /// Throws InputError unless g is meet-preserving.
  explicit Chain(DepthFunction g);
  /// The trivial chain (all depths zero).
  static Chain trivial(LatticePtr lattice);

  const DepthFunction& depth() const { return g_; }
  const MeetSemilattice& lattice() const { return g_.lattice(); }
  int operator[](ElementId q) const { return g_[q]; }
  bool is_trivial() const { return g_.is_trivial(); }
  /// Length of the word, which equals the largest depth.
  int total_depth() const { return g_.max_depth(); }

  /// f(n) = inf{q : g(q) >= n} for n = 1..total_depth.
  std::vector<ElementId> sequence() const;
  /// Letters from the highest element of the sequence down to the lowest.
  std::vector<Letter> word() const;

  friend bool operator==(const Chain& a, const Chain& b) { return a.g_ == b.g_; }

 private:
  struct Trusted {};
  Chain(DepthFunction g, Trusted) : g_(std::move(g)) {}
  friend Chain saturate(const DepthFunction&);
  friend class ChainCatalog;
  friend Chain chain_from_sequence(LatticePtr, const std::vector<ElementId>&);

  DepthFunction g_;
};

/// Least meet-preserving g' >= g.
Chain saturate(const DepthFunction& g);

/// Rebuilds g(q) = #{n : f(n) <= q} from a weakly increasing sequence in the
/// non-top elements. Throws InputError when the sequence is not a multichain.
Chain chain_from_sequence(LatticePtr lattice, const std::vector<ElementId>& seq);
Chain chain_from_word(LatticePtr lattice, const std::vector<Letter>& word);

/// "2*l1+1*0"; the trivial chain renders as "triv".
std::string word_string(const Chain& c);
/// Inverse of word_string. A bare label means count 1.
Chain parse_word(LatticePtr lattice, std::string_view text);

std::vector<Letter> chain_to_word(const DepthFunction& g);

bool chain_leq(const Chain& a, const Chain& b);
Chain chain_join(const Chain& a, const Chain& b);

/// Every chain with total depth <= max_len, canonically ordered.
std::vector<Chain> enumerate_chains(const LatticePtr& lattice, int max_len);

/// Covers of c with total depth <= budget, canonically ordered.
std::vector<Chain> covers_above(const Chain& c, int budget);

struct EssentialJoin {
  Chain join;
  std::vector<Chain> witness;  ///< a cover subset whose join is `join`
};

/// Joins of nonempty subsets of covers_above(c, budget), deduplicated and
/// canonically ordered. The witness is the first subset by (size, lex).
std::vector<EssentialJoin> essential_above(const Chain& c, int budget);

/// x == w or x is a join of covers of w. Throws InputError unless w <= x.
bool is_essential_pair(const Chain& w, const Chain& x);

struct DepthHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

/// Ch(Q) truncated at a total depth, with the order, cover relation and joins
/// precomputed on indices. Indices follow the canonical order.
class ChainCatalog {
 public:
  ChainCatalog(LatticePtr lattice, int max_len);

  const LatticePtr& lattice_ptr() const { return lattice_; }
  int max_len() const { return max_len_; }
  std::size_t size() const { return chains_.size(); }
  const Chain& at(std::size_t i) const { return chains_[i]; }
  const std::vector<Chain>& chains() const { return chains_; }
  std::optional<std::size_t> index_of(const DepthFunction& g) const;
  std::size_t index_of(const Chain& c) const;
  std::size_t trivial_index() const { return 0; }

  bool leq(std::size_t a, std::size_t b) const {
    return (leq_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  const std::vector<std::size_t>& covers_above(std::size_t a) const { return up_covers_[a]; }
  std::size_t join(std::size_t a, std::size_t b) const;
  /// Index of the join of all covers of w that lie below x (w itself if none).
  std::size_t cover_join_below(std::size_t w, std::size_t x) const;
  bool is_essential_pair(std::size_t w, std::size_t x) const {
    return leq(w, x) && cover_join_below(w, x) == x;
  }
  std::vector<std::size_t> interval(std::size_t lo, std::size_t hi, bool open_lo,
                                    bool open_hi) const;

 private:
  LatticePtr lattice_;
  int max_len_;
  std::vector<Chain> chains_;
  std::unordered_map<std::vector<int>, std::size_t, DepthHash> index_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> leq_;
  std::vector<std::vector<std::size_t>> up_covers_;
};

}  // namespace strata
