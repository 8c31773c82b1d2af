#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/chains.hpp"

namespace strata {

/// A finitely supported map from opaque point labels to depth functions,
/// i.e. an element of Hilb(C)^Q. Trivial entries are dropped on insertion;
/// the optional basepoint slot keeps its value even when trivial.
class LabeledConfiguration {
 public:
  explicit LabeledConfiguration(LatticePtr lattice) : lattice_(std::move(lattice)) {}

  /// Sets the depth function at a point; a trivial g erases the point.
  LabeledConfiguration& set(const std::string& label, DepthFunction g);
  LabeledConfiguration& set_basepoint(DepthFunction g);

  const MeetSemilattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::map<std::string, DepthFunction>& points() const { return points_; }
  const std::optional<DepthFunction>& basepoint() const { return basepoint_; }
  bool pointed() const { return basepoint_.has_value(); }
  /// Depth function at a label; trivial when absent.
  DepthFunction at(const std::string& label) const;
  std::size_t support() const { return points_.size(); }

 private:
  LatticePtr lattice_;
  std::map<std::string, DepthFunction> points_;
  std::optional<DepthFunction> basepoint_;
};

/// w <= x pointwise, including the basepoint slot when present.
struct RelativePair {
  LabeledConfiguration lower;
  LabeledConfiguration upper;

  /// Throws InputError unless lower <= upper pointwise and both agree on
  /// whether a basepoint is present.
  RelativePair(LabeledConfiguration lower, LabeledConfiguration upper);
};

LabeledConfiguration saturate_config(const LabeledConfiguration& x);

/// Letters equal to q in the words of the saturated entries, summed over all
/// points including the basepoint. Throws InputError for q = top.
long long multiplicity(const LabeledConfiguration& x, ElementId q);
long long multiplicity(const RelativePair& p, ElementId q);

/// Sum over word letters of h(letter), for a single chain.
long long extend_function(const std::vector<long long>& h, const Chain& c);
/// Sum over points of the per-chain extension, computed on the saturation.
/// Throws InputError if h has the wrong size or h(top) != 0.
long long extend_function(const std::vector<long long>& h, const LabeledConfiguration& x);

long long rank_of(const LabeledConfiguration& x);
long long gamma_of(const LabeledConfiguration& x, int v);
/// Number of non-basepoint points.
long long supp_of(const LabeledConfiguration& x);

/// Relative values are value(upper) - value(lower).
long long extend_function(const std::vector<long long>& h, const RelativePair& p);
long long rank_of(const RelativePair& p);
long long gamma_of(const RelativePair& p, int v);
/// Non-basepoint labels where the saturated upper strictly exceeds the lower.
long long supp_of(const RelativePair& p);

}  // namespace strata
