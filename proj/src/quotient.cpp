#include "kneser/quotient.hpp"

#include "kneser/error.hpp"

namespace kneser {

namespace {

Subgroup checked_kernel(const FinAbGroup& parent, Subgroup kernel) {
  if (!(kernel.group() == parent)) {
    throw Error(ErrorKind::InvalidSubgroup,
                "kernel lives in " + kernel.group().spec() + ", not in " + parent.spec());
  }
  return kernel;
}

}  // namespace

QuotientMap::QuotientMap(FinAbGroup parent, Subgroup kernel)
    : parent_(std::move(parent)),
      kernel_(checked_kernel(parent_, std::move(kernel))),
      quotient_(FinAbGroup::make_quotient(parent_, kernel_.carrier().indices())) {}

std::uint32_t QuotientMap::map_forward(std::uint32_t parent_index) const {
  if (parent_index >= parent_.order()) {
    throw Error(ErrorKind::DomainMismatch, "element index out of range for " + parent_.spec());
  }
  return quotient_.coset_index()[parent_index];
}

GroupElem QuotientMap::map_forward(const GroupElem& x) const {
  return quotient_.elem(map_forward(parent_.index_of(x)));
}

GSet QuotientMap::preimage(std::uint32_t quotient_index) const {
  if (quotient_index >= quotient_.order()) {
    throw Error(ErrorKind::DomainMismatch, "element index out of range for " + quotient_.spec());
  }
  const std::uint32_t rep = quotient_.representatives()[quotient_index];
  return translate(kernel_.carrier(), rep);
}

GSet QuotientMap::preimage(const GroupElem& xbar) const { return preimage(quotient_.index_of(xbar)); }

}  // namespace kneser
