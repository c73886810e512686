#pragma once

#include <cstdint>

#include "kneser/group.hpp"
#include "kneser/set.hpp"

namespace kneser {

/// The canonical homomorphism parent -> parent / kernel. Quotient elements
/// are named by the lex-min element of their coset.
class QuotientMap {
 public:
  /// Throws ErrorKind::InvalidSubgroup if `kernel` is not a subgroup of `parent`.
  QuotientMap(FinAbGroup parent, Subgroup kernel);

  const FinAbGroup& parent() const { return parent_; }
  const Subgroup& kernel() const { return kernel_; }
  const FinAbGroup& quotient() const { return quotient_; }

  std::uint32_t map_forward(std::uint32_t parent_index) const;
  GroupElem map_forward(const GroupElem& x) const;

  /// The coset rep(xbar) + kernel, as a subset of the parent.
  GSet preimage(std::uint32_t quotient_index) const;
  GSet preimage(const GroupElem& xbar) const;

 private:
  FinAbGroup parent_;
  Subgroup kernel_;
  FinAbGroup quotient_;
};

inline QuotientMap quotient(const FinAbGroup& g, const Subgroup& k) { return QuotientMap(g, k); }

}  // namespace kneser
