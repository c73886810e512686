#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kneser/group.hpp"

namespace kneser {

class QuotientMap;

/// A finite subset of a FinAbGroup, stored as a bitset over element indices.
/// The sorted member list (ascending lex order) is the interchange form.
class GSet {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  explicit GSet(FinAbGroup group);
  GSet(FinAbGroup group, Bits bits);

  static GSet from_indices(FinAbGroup group, std::span<const std::uint32_t> indices);
  static GSet from_elems(FinAbGroup group, std::span<const GroupElem> elems);
  /// Bit i of `mask` selects element index i; requires order <= 64.
  static GSet from_mask(FinAbGroup group, std::uint64_t mask);
  static GSet full(FinAbGroup group);

  const FinAbGroup& group() const { return group_; }
  const Bits& bits() const { return bits_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(std::uint32_t index) const { return index < bits_.size() && bits_.test(index); }
  bool contains(const GroupElem& e) const;
  bool subset_of(const GSet& other) const;

  std::vector<std::uint32_t> indices() const;
  std::vector<GroupElem> members() const;
  /// Smallest member index; set must be nonempty.
  std::uint32_t front() const;

  /// "{0,1,4}" or "{(0,1),(1,0)}".
  std::string to_string() const;

  friend bool operator==(const GSet& a, const GSet& b) {
    return a.bits_ == b.bits_ && a.group_ == b.group_;
  }
  /// Lexicographic comparison of the sorted member lists.
  friend bool lex_less(const GSet& a, const GSet& b);

 private:
  FinAbGroup group_;
  Bits bits_;
};

/// A GSet closed under the group operation. Construction verifies closure.
class Subgroup {
 public:
  /// Throws ErrorKind::InvalidSubgroup if `carrier` is empty or not closed.
  explicit Subgroup(GSet carrier);

  static Subgroup trivial(const FinAbGroup& group);
  static Subgroup whole(const FinAbGroup& group);

  const GSet& carrier() const { return carrier_; }
  const FinAbGroup& group() const { return carrier_.group(); }
  std::size_t size() const { return carrier_.size(); }
  bool is_trivial() const { return carrier_.size() == 1; }
  bool contains(std::uint32_t index) const { return carrier_.contains(index); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.carrier_ == b.carrier_; }

 private:
  GSet carrier_;
};

/// Throws ErrorKind::DomainMismatch unless both sets live in the same group.
void require_same_group(const GSet& a, const GSet& b);

GSet sumset(const GSet& a, const GSet& b);
GSet translate(const GSet& a, std::uint32_t g);
GSet translate(const GSet& a, const GroupElem& g);

/// All g with a + g = a. The empty set is fixed by every g, so its
/// stabilizer is the whole group.
Subgroup stabilizer(const GSet& a);

/// a + h, a union of h-cosets.
GSet saturate(const GSet& a, const Subgroup& h);

enum class SetOp { Union, Intersect, Difference };
GSet set_algebra(SetOp op, const GSet& a, const GSet& b);
inline GSet set_union(const GSet& a, const GSet& b) { return set_algebra(SetOp::Union, a, b); }
inline GSet set_intersect(const GSet& a, const GSet& b) { return set_algebra(SetOp::Intersect, a, b); }
inline GSet set_difference(const GSet& a, const GSet& b) { return set_algebra(SetOp::Difference, a, b); }

/// phi(a) for the quotient map phi, deduplicated.
GSet image(const GSet& a, const QuotientMap& phi);

}  // namespace kneser
