#include "kneser/set.hpp"

#include <algorithm>

#include "kneser/error.hpp"
#include "kneser/quotient.hpp"

namespace kneser {

GSet::GSet(FinAbGroup group) : group_(std::move(group)), bits_(group_.order()) {}

GSet::GSet(FinAbGroup group, Bits bits) : group_(std::move(group)), bits_(std::move(bits)) {
  if (bits_.size() != group_.order()) {
    throw Error(ErrorKind::DomainMismatch, "bitset width does not match group order");
  }
}

GSet GSet::from_indices(FinAbGroup group, std::span<const std::uint32_t> indices) {
  Bits bits(group.order());
  for (const std::uint32_t i : indices) {
    if (i >= bits.size()) throw Error(ErrorKind::DomainMismatch, "element index out of range");
    bits.set(i);
  }
  return GSet(std::move(group), std::move(bits));
}

GSet GSet::from_elems(FinAbGroup group, std::span<const GroupElem> elems) {
  Bits bits(group.order());
  for (const GroupElem& e : elems) bits.set(group.index_of(e));
  return GSet(std::move(group), std::move(bits));
}

GSet GSet::from_mask(FinAbGroup group, std::uint64_t mask) {
  if (group.order() > 64) {
    throw Error(ErrorKind::InvalidArgument, "mask construction needs order <= 64");
  }
  if (group.order() < 64 && (mask >> group.order()) != 0) {
    throw Error(ErrorKind::DomainMismatch, "mask has bits beyond the group order");
  }
  Bits bits(group.order(), mask);
  return GSet(std::move(group), std::move(bits));
}

GSet GSet::full(FinAbGroup group) {
  Bits bits(group.order());
  bits.set();
  return GSet(std::move(group), std::move(bits));
}

bool GSet::contains(const GroupElem& e) const {
  return group_.contains(e) && bits_.test(group_.index_of(e));
}

bool GSet::subset_of(const GSet& other) const {
  require_same_group(*this, other);
  return bits_.is_subset_of(other.bits_);
}

std::vector<std::uint32_t> GSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<GroupElem> GSet::members() const {
  std::vector<GroupElem> out;
  out.reserve(size());
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    out.push_back(group_.elem(static_cast<std::uint32_t>(i)));
  }
  return out;
}

std::uint32_t GSet::front() const {
  const auto i = bits_.find_first();
  if (i == Bits::npos) throw Error(ErrorKind::EmptySet, "front() of empty set");
  return static_cast<std::uint32_t>(i);
}

std::string GSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    if (!first) out += ',';
    first = false;
    out += group_.format(static_cast<std::uint32_t>(i));
  }
  return out + '}';
}

bool lex_less(const GSet& a, const GSet& b) {
  const auto x = a.indices();
  const auto y = b.indices();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Subgroup::Subgroup(GSet carrier) : carrier_(std::move(carrier)) {
  if (!carrier_.contains(FinAbGroup::zero())) {
    throw Error(ErrorKind::InvalidSubgroup, "subgroup must contain the identity: " + carrier_.to_string());
  }
  // A finite nonempty set closed under addition is a subgroup.
  const auto members = carrier_.indices();
  const FinAbGroup& g = carrier_.group();
  for (const std::uint32_t x : members) {
    for (const std::uint32_t y : members) {
      if (!carrier_.contains(g.add(x, y))) {
        throw Error(ErrorKind::InvalidSubgroup,
                    "set is not closed under addition: " + carrier_.to_string());
      }
    }
  }
}

Subgroup Subgroup::trivial(const FinAbGroup& group) {
  const std::uint32_t zero[] = {FinAbGroup::zero()};
  return Subgroup(GSet::from_indices(group, zero));
}

Subgroup Subgroup::whole(const FinAbGroup& group) { return Subgroup(GSet::full(group)); }

void require_same_group(const GSet& a, const GSet& b) {
  if (!(a.group() == b.group())) {
    throw Error(ErrorKind::DomainMismatch,
                "sets belong to different groups: " + a.group().spec() + " vs " + b.group().spec());
  }
}

GSet sumset(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  const FinAbGroup& g = a.group();
  GSet::Bits out(g.order());
  const auto bs = b.indices();
  for (const std::uint32_t x : a.indices()) {
    for (const std::uint32_t y : bs) out.set(g.add(x, y));
  }
  return GSet(g, std::move(out));
}

GSet translate(const GSet& a, std::uint32_t shift) {
  const FinAbGroup& g = a.group();
  if (shift >= g.order()) throw Error(ErrorKind::DomainMismatch, "translation element out of range");
  GSet::Bits out(g.order());
  for (const std::uint32_t x : a.indices()) out.set(g.add(x, shift));
  return GSet(g, std::move(out));
}

GSet translate(const GSet& a, const GroupElem& shift) { return translate(a, a.group().index_of(shift)); }

Subgroup stabilizer(const GSet& a) {
  const FinAbGroup& g = a.group();
  if (a.empty()) return Subgroup::whole(g);
  // Any period g must carry the first member onto some member, so the
  // candidates are a - a0.
  const auto members = a.indices();
  const std::uint32_t a0 = members.front();
  GSet::Bits out(g.order());
  for (const std::uint32_t x : members) {
    const std::uint32_t shift = g.sub(x, a0);
    const bool fixes = std::all_of(members.begin(), members.end(),
                                   [&](std::uint32_t y) { return a.contains(g.add(y, shift)); });
    if (fixes) out.set(shift);
  }
  return Subgroup(GSet(g, std::move(out)));
}

GSet saturate(const GSet& a, const Subgroup& h) { return sumset(a, h.carrier()); }

GSet set_algebra(SetOp op, const GSet& a, const GSet& b) {
  require_same_group(a, b);
  switch (op) {
    case SetOp::Union: return GSet(a.group(), a.bits() | b.bits());
    case SetOp::Intersect: return GSet(a.group(), a.bits() & b.bits());
    case SetOp::Difference: return GSet(a.group(), a.bits() - b.bits());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown set operation");
}

GSet image(const GSet& a, const QuotientMap& phi) {
  if (!(a.group() == phi.parent())) {
    throw Error(ErrorKind::DomainMismatch, "set is not in the parent group of the quotient map");
  }
  GSet::Bits out(phi.quotient().order());
  for (const std::uint32_t x : a.indices()) out.set(phi.map_forward(x));
  return GSet(phi.quotient(), std::move(out));
}

}  // namespace kneser
