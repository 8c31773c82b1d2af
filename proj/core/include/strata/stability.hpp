#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "strata/chains.hpp"
#include "strata/types.hpp"

namespace strata {

/// Curve genus g, class (d; n_1..n_r), ambient dimension v and flags.
struct CurveContext {
  int genus = 0;
  long long degree = 0;
  std::vector<long long> n;
  int ambient_dim = 3;
  bool pointed = false;
  bool general_position = false;

  int lines() const { return static_cast<int>(n.size()); }
  long long sum_n() const;
  /// n_j for 1 <= j, with n_j = 0 past the last line.
  long long n_at(int j) const;
  /// Throws InputError unless r >= 1, n_i >= 0, g >= 0 and v >= 3.
  void validate() const;
};

/// d - m0 - ml >= 2g - 1.
bool rr_unobstructed(const CurveContext& ctx, long long m0, long long ml);

struct GpResult {
  bool ok = false;
  /// Sum over j <= v of max(0, -(d - m0 + 2 - 2g - sum_{i != j} m_i)).
  long long h1_bound = 0;
};

/// For every j <= v (with m_j = 0 past the last line):
/// -m_j + sum_i m_i <= d - m0 + 2 - 2g. Throws InputError unless the context
/// has general_position set and mvec has one entry per line.
GpResult gp_unobstructed(const CurveContext& ctx, long long m0, const std::vector<long long>& mvec);

/// v(d + 1 - g) - v m0 - (v - 1) ml. May be negative.
long long expected_section_dim(const CurveContext& ctx, long long m0, long long ml);

/// Amount subtracted from I and from the connectivity in the pointed case.
inline constexpr long long kPointedOffset = 1;

struct StabilityRange {
  bool feasible = false;
  std::string reason;  ///< empty when feasible
  long long M = 0;
  long long I = 0;
  long long slope = 0;      ///< connectivity(k) = slope * k + intercept
  long long intercept = 0;
  /// Per-j positivity values d - sum n + n_j (general position only).
  std::vector<long long> conditions;

  long long connectivity(long long k) const { return slope * k + intercept; }
};

/// Basic: M = d - sum n, I = M - 2g. General position: M = d - sum n +
/// min_{j <= v} n_j, I = M - 2g, feasible iff every d - sum n + n_j > 0.
/// connectivity(k) = M k - 2g - 2; pointed subtracts kPointedOffset from the
/// connectivity and from I. Infeasible ranges are returned, never thrown.
StabilityRange stability_range(const CurveContext& ctx);

enum class PFlavor { plain, general_position, pointed };
std::string to_string(PFlavor f);

struct UniverseBounds {
  int max_points = 3;  ///< bound on supp (non-basepoint strict entries)
  int max_depth = 4;   ///< bound on the total depth of moved uppers
};

struct ClauseResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  ///< moves leaving the universe
  std::string offending;    ///< first failing type and the reason
};

struct PCertificate {
  bool passed = false;
  std::size_t universe_size = 0;
  std::size_t members = 0;
  std::size_t kappa_bounded = 0;
  ClauseResult downward;     ///< (a)
  ClauseResult contains;     ///< (b)
  ClauseResult unobstructed; ///< (c)
};

/// The subposet P of relative types over a prescribed w-type, with its
/// enumerated universe.
///
/// Plain: m0(x) + ml(x) <= I + sum n on absolute upper multiplicities.
/// General position: m0(w<x) + sum_{i != j} m_li(w<x) <= I for all j <= v.
/// Pointed: the matching rule over Q_{r+1} with n' = (n, 1), a basepoint whose
/// lower is 1*l_{r+1}, intersected with R (no l_{r+1} letters away from the
/// basepoint, at most one at the basepoint). Types with exactly one strict
/// entry that is a cover are always members.
///
/// The universe holds every type whose lowers form a w of the prescribed
/// multidegree (pairwise disjoint, one line per point), with at most
/// max_points moved or new points, moved uppers of total depth at most
/// max_depth, and unmoved w points kept as equal entries.
class PSystem {
 public:
  PSystem(const CurveContext& ctx, long long I, PFlavor flavor, UniverseBounds bounds = {});

  const CurveContext& context() const { return ctx_; }
  long long I() const { return I_; }
  PFlavor flavor() const { return flavor_; }
  const UniverseBounds& bounds() const { return bounds_; }
  const BlowupPoset& blowup() const { return blowup_; }
  const ChainCatalog& catalog() const { return *catalog_; }
  /// Multidegree of w, including the basepoint line in the pointed flavor.
  const std::vector<long long>& w_degrees() const { return wdeg_; }

  /// Membership predicate on relative (or pointed) saturated types.
  bool member(const CombinatorialType& t) const;
  long long kappa(const CombinatorialType& t) const;
  bool in_universe(const CombinatorialType& t) const;

  std::size_t universe_size() const { return universe_.size(); }
  /// Universe types in canonical order.
  std::vector<CombinatorialType> universe() const;
  /// Universe types with kappa <= I.
  std::vector<CombinatorialType> kappa_bounded() const;

  PCertificate certify() const;

  /// Compact form: [base_lo, base_up, lo_1, up_1, ...] as catalog indices,
  /// base slots set to kNone when unpointed, pairs sorted.
  using Key = std::vector<std::uint32_t>;
  static constexpr std::uint32_t kNone = 0xffffffffU;
  CombinatorialType to_type(const Key& k) const;
  std::optional<Key> to_key(const CombinatorialType& t) const;

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  struct PairStats {
    long long weight = 0;       // gamma - rank of upper minus lower
    std::vector<long long> dm;  // relative letter counts per element
  };

  void build_universe();
  bool member_key(const Key& k) const;
  long long kappa_key(const Key& k) const;
  bool minimal_key(const Key& k) const;
  bool unobstructed_upper(const std::vector<long long>& m) const;
  const PairStats& stats(std::uint32_t lo, std::uint32_t up) const {
    return pair_stats_[static_cast<std::size_t>(lo) * catalog_->size() + up];
  }
  std::optional<std::uint32_t> sum_index(std::uint32_t a, std::uint32_t b) const;
  std::string key_string(const Key& k) const;

  CurveContext ctx_;
  long long I_;
  PFlavor flavor_;
  UniverseBounds bounds_;
  BlowupPoset blowup_;
  std::vector<long long> wdeg_;
  std::unique_ptr<ChainCatalog> catalog_;
  std::vector<std::vector<std::size_t>> covers_below_;
  std::vector<std::vector<long long>> letters_;  // per chain: letter count per element
  std::vector<long long> gamma_, rank_;          // per chain
  std::vector<PairStats> pair_stats_;  // indexed lo * size + up
  std::vector<Key> universe_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

PSystem build_P(const CurveContext& ctx, long long I, PFlavor flavor, UniverseBounds bounds = {});

}  // namespace strata
