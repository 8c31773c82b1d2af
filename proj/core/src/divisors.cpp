#include "strata/divisors.hpp"


#include "strata/errors.hpp"

namespace strata {

LabeledConfiguration& LabeledConfiguration::set(const std::string& label, DepthFunction g) {
  if (g.size() != lattice_->size()) throw InputError("depth function from another lattice");
  if (g.is_trivial()) points_.erase(label);
  else points_.insert_or_assign(label, std::move(g));
  return *this;
}

LabeledConfiguration& LabeledConfiguration::set_basepoint(DepthFunction g) {
  if (g.size() != lattice_->size()) throw InputError("depth function from another lattice");
  basepoint_ = std::move(g);
  return *this;
}

DepthFunction LabeledConfiguration::at(const std::string& label) const {
  auto it = points_.find(label);
  return it == points_.end() ? DepthFunction(lattice_) : it->second;
}

RelativePair::RelativePair(LabeledConfiguration lo, LabeledConfiguration up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.lattice().size() != upper.lattice().size())
    throw InputError("relative pair over different lattices");
  if (lower.pointed() != upper.pointed())
    throw InputError("relative pair must be pointed on both sides or neither");
  for (const auto& [label, g] : lower.points()) {
    if (!upper.points().count(label))
      throw InputError("lower label '" + label + "' missing from upper");
    if (!pointwise_leq(g, upper.points().at(label)))
      throw InputError("lower exceeds upper at '" + label + "'");
  }
  if (lower.pointed() && !pointwise_leq(*lower.basepoint(), *upper.basepoint()))
    throw InputError("lower exceeds upper at the basepoint");
}

LabeledConfiguration saturate_config(const LabeledConfiguration& x) {
  LabeledConfiguration out(x.lattice_ptr());
  for (const auto& [label, g] : x.points()) out.set(label, saturate(g).depth());
  if (x.basepoint()) out.set_basepoint(saturate(*x.basepoint()).depth());
  return out;
}

namespace {

template <class F>
void for_each_entry(const LabeledConfiguration& x, F&& f) {
  for (const auto& [label, g] : x.points()) f(g);
  if (x.basepoint()) f(*x.basepoint());
}

}  // namespace

long long multiplicity(const LabeledConfiguration& x, ElementId q) {
  if (q >= x.lattice().size()) throw InputError("element index out of range");
  if (q == x.lattice().top()) throw InputError("multiplicity of the top element is undefined");
  long long total = 0;
  for_each_entry(x, [&](const DepthFunction& g) {
    for (const auto& l : saturate(g).word())
      if (l.element == q) total = checked::add(total, l.count);
  });
  return total;
}

long long multiplicity(const RelativePair& p, ElementId q) {
  return checked::sub(multiplicity(p.upper, q), multiplicity(p.lower, q));
}

long long extend_function(const std::vector<long long>& h, const Chain& c) {
  long long total = 0;
  for (const auto& l : c.word()) total = checked::add(total, checked::mul(h[l.element], l.count));
  return total;
}

long long extend_function(const std::vector<long long>& h, const LabeledConfiguration& x) {
  if (h.size() != x.lattice().size()) throw InputError("weight vector has wrong size");
  if (h[x.lattice().top()] != 0) throw InputError("weight at the top element must be 0");
  long long total = 0;
  for_each_entry(x, [&](const DepthFunction& g) {
    total = checked::add(total, extend_function(h, saturate(g)));
  });
  return total;
}

long long rank_of(const LabeledConfiguration& x) {
  return extend_function(rank_weights(x.lattice()), x);
}

long long gamma_of(const LabeledConfiguration& x, int v) {
  return extend_function(blowup_gamma_weights(x.lattice(), v), x);
}

long long supp_of(const LabeledConfiguration& x) {
  return static_cast<long long>(x.support());
}

long long extend_function(const std::vector<long long>& h, const RelativePair& p) {
  return checked::sub(extend_function(h, p.upper), extend_function(h, p.lower));
}

long long rank_of(const RelativePair& p) {
  return checked::sub(rank_of(p.upper), rank_of(p.lower));
}

long long gamma_of(const RelativePair& p, int v) {
  return checked::sub(gamma_of(p.upper, v), gamma_of(p.lower, v));
}

long long supp_of(const RelativePair& p) {
  long long n = 0;
  for (const auto& [label, g] : p.upper.points())
    if (!(saturate(g) == saturate(p.lower.at(label)))) ++n;
  return n;
}

}  // namespace strata
