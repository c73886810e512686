#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kneser {

inline constexpr std::size_t kDefaultOrderCap = 4096;

// An element in the coordinates of the underlying product of cyclic factors.
// Quotient-group elements carry the coordinates of their lex-min coset
// representative, so every element of every group encodes the same way.
struct GroupElem {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

namespace detail {
struct GroupData;
}

/// A finite abelian group: either a direct product Z_n1 x ... x Z_nk or a
/// quotient of another FinAbGroup by a subgroup.
///
/// Elements are numbered 0..order()-1 in lexicographic order of their
/// coordinates; index 0 is always the identity. The index form is what the
/// set code works with; GroupElem is the interchange form. Copies share the
/// immutable underlying tables.
class FinAbGroup {
 public:
  enum class Kind { Product, Quotient };

  /// Throws ErrorKind::InvalidGroup for an empty list or an order < 1 and
  /// ErrorKind::TooLarge when the product exceeds `order_cap`.
  static FinAbGroup make(std::span<const std::int64_t> factor_orders,
                         std::size_t order_cap = kDefaultOrderCap);
  static FinAbGroup make(std::initializer_list<std::int64_t> factor_orders) {
    return make(std::span<const std::int64_t>(factor_orders.begin(), factor_orders.size()));
  }

  Kind kind() const;
  std::size_t order() const;
  /// Number of coordinates in an element encoding.
  std::size_t width() const;
  /// Cyclic factor orders of the underlying product group.
  const std::vector<std::uint32_t>& base_factors() const;

  /// Quotient kind only.
  FinAbGroup parent() const;
  /// Quotient kind only: kernel as sorted parent indices.
  const std::vector<std::uint32_t>& kernel_indices() const;
  /// Quotient kind only: the parent index of each element's representative.
  const std::vector<std::uint32_t>& representatives() const;
  /// Quotient kind only: the quotient index of each parent element's coset.
  const std::vector<std::uint32_t>& coset_index() const;

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg(std::uint32_t x) const;
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
  static constexpr std::uint32_t zero() { return 0; }

  GroupElem elem(std::uint32_t index) const;
  /// Throws ErrorKind::DomainMismatch if `e` is not an element of this group
  /// (wrong width, coordinate out of range, or not a canonical representative).
  std::uint32_t index_of(const GroupElem& e) const;
  bool contains(const GroupElem& e) const;

  GroupElem add(const GroupElem& x, const GroupElem& y) const;
  GroupElem neg(const GroupElem& x) const;
  GroupElem zero_elem() const { return elem(0); }
  std::vector<GroupElem> elements() const;

  /// Maps an index of the underlying product group to the element of this
  /// group whose coset contains it. Identity for product groups.
  std::uint32_t project(std::uint32_t base_index) const;
  std::uint32_t base_index(std::uint32_t index) const;

  /// Canonical representative of the coset containing `e`, where `e` is any
  /// tuple of the underlying product encoding.
  GroupElem canonicalize(const GroupElem& e) const;

  /// "Z6", "Z2xZ4", or for quotients "Z6/{0,3}" (kernel in parent encoding).
  std::string spec() const;
  std::string format(const GroupElem& e) const;
  std::string format(std::uint32_t index) const { return format(elem(index)); }

  /// Structural equality: same factors, and for quotients the same parent and kernel.
  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b);

 private:
  friend class QuotientMap;
  explicit FinAbGroup(std::shared_ptr<const detail::GroupData> data) : data_(std::move(data)) {}
  static FinAbGroup make_quotient(const FinAbGroup& parent, std::vector<std::uint32_t> kernel);

  std::shared_ptr<const detail::GroupData> data_;
};

/// Finite subsets of Z placed in Z_N without wraparound. A is shifted by
/// shift_a and B by shift_b so both start at 0; the modulus is large enough
/// that A+B neither wraps nor picks up a nontrivial period.
struct IntegerEmbedding {
  std::int64_t modulus;
  std::int64_t shift_a;
  std::int64_t shift_b;
  FinAbGroup group;
};

/// Both spans must be nonempty (ErrorKind::EmptySet otherwise).
IntegerEmbedding embed_integer_sets(std::span<const std::int64_t> a,
                                    std::span<const std::int64_t> b,
                                    std::size_t order_cap = kDefaultOrderCap);

}  // namespace kneser
