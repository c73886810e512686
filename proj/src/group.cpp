#include "kneser/group.hpp"

#include <algorithm>
#include <limits>

#include "kneser/error.hpp"

namespace kneser {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::DomainMismatch: return "domain-mismatch";
    case ErrorKind::InvalidSubgroup: return "invalid-subgroup";
    case ErrorKind::EmptySet: return "empty-set";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::ProofFalsified: return "proof-falsified";
  }
  return "unknown";
}

namespace detail {

// Groups up to this order get a full addition table.
constexpr std::size_t kTableOrder = 1024;

struct GroupData {
  FinAbGroup::Kind kind = FinAbGroup::Kind::Product;
  std::size_t order = 1;
  std::vector<std::uint32_t> factors;
  std::vector<std::uint32_t> strides;

  std::shared_ptr<const GroupData> parent;
  std::vector<std::uint32_t> kernel;
  std::vector<std::uint32_t> reps;
  std::vector<std::uint32_t> coset_of;

  std::vector<std::uint16_t> add_table;
  std::vector<std::uint32_t> neg_table;

  std::uint32_t add_uncached(std::uint32_t x, std::uint32_t y) const {
    if (kind == FinAbGroup::Kind::Quotient) {
      return coset_of[parent->add(reps[x], reps[y])];
    }
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::uint32_t n = factors[i];
      const std::uint32_t cx = (x / strides[i]) % n;
      const std::uint32_t cy = (y / strides[i]) % n;
      out += ((cx + cy) % n) * strides[i];
    }
    return out;
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    if (!add_table.empty()) return add_table[static_cast<std::size_t>(x) * order + y];
    return add_uncached(x, y);
  }

  std::uint32_t base_index(std::uint32_t x) const {
    if (kind == FinAbGroup::Kind::Quotient) return parent->base_index(reps[x]);
    return x;
  }

  std::uint32_t project(std::uint32_t base) const {
    if (kind == FinAbGroup::Kind::Quotient) return coset_of[parent->project(base)];
    return base;
  }

  void build_tables() {
    if (order <= kTableOrder) {
      add_table.resize(order * order);
      for (std::uint32_t x = 0; x < order; ++x) {
        for (std::uint32_t y = 0; y < order; ++y) {
          add_table[static_cast<std::size_t>(x) * order + y] =
              static_cast<std::uint16_t>(add_uncached(x, y));
        }
      }
    }
    neg_table.assign(order, 0);
    // x + y = 0 pairs; each x has exactly one partner.
    for (std::uint32_t x = 0; x < order; ++x) {
      if (x != 0 && neg_table[x] != 0) continue;
      if (kind == FinAbGroup::Kind::Product) {
        std::uint32_t out = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const std::uint32_t n = factors[i];
          const std::uint32_t c = (x / strides[i]) % n;
          out += ((n - c) % n) * strides[i];
        }
        neg_table[x] = out;
      } else {
        neg_table[x] = coset_of[parent->neg_table[reps[x]]];
      }
      neg_table[neg_table[x]] = x;
    }
  }
};

}  // namespace detail

FinAbGroup FinAbGroup::make(std::span<const std::int64_t> factor_orders, std::size_t order_cap) {
  if (factor_orders.empty()) {
    throw Error(ErrorKind::InvalidGroup, "group needs at least one cyclic factor");
  }
  auto data = std::make_shared<detail::GroupData>();
  std::size_t order = 1;
  for (const std::int64_t n : factor_orders) {
    if (n < 1) {
      throw Error(ErrorKind::InvalidGroup,
                  "cyclic factor order must be >= 1, got " + std::to_string(n));
    }
    if (static_cast<std::uint64_t>(n) > order_cap || order * static_cast<std::size_t>(n) > order_cap) {
      throw Error(ErrorKind::TooLarge,
                  "group order exceeds cap of " + std::to_string(order_cap));
    }
    order *= static_cast<std::size_t>(n);
    data->factors.push_back(static_cast<std::uint32_t>(n));
  }
  data->order = order;
  data->strides.assign(data->factors.size(), 1);
  for (std::size_t i = data->factors.size(); i-- > 1;) {
    data->strides[i - 1] = data->strides[i] * data->factors[i];
  }
  data->build_tables();
  return FinAbGroup(std::move(data));
}

FinAbGroup FinAbGroup::make_quotient(const FinAbGroup& parent, std::vector<std::uint32_t> kernel) {
  auto data = std::make_shared<detail::GroupData>();
  data->kind = Kind::Quotient;
  data->factors = parent.data_->factors;
  data->strides = parent.data_->strides;
  data->parent = parent.data_;
  std::sort(kernel.begin(), kernel.end());
  data->kernel = std::move(kernel);

  const std::size_t n = parent.order();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();
  data->coset_of.assign(n, kUnassigned);
  // Scanning in index order makes the first hit of each coset its lex-min element.
  for (std::uint32_t x = 0; x < n; ++x) {
    if (data->coset_of[x] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(data->reps.size());
    data->reps.push_back(x);
    for (const std::uint32_t k : data->kernel) data->coset_of[parent.add(x, k)] = id;
  }
  data->order = data->reps.size();
  data->build_tables();
  return FinAbGroup(std::move(data));
}

FinAbGroup::Kind FinAbGroup::kind() const { return data_->kind; }
std::size_t FinAbGroup::order() const { return data_->order; }
std::size_t FinAbGroup::width() const { return data_->factors.size(); }
const std::vector<std::uint32_t>& FinAbGroup::base_factors() const { return data_->factors; }

FinAbGroup FinAbGroup::parent() const {
  if (data_->kind != Kind::Quotient) {
    throw Error(ErrorKind::InvalidArgument, "product group has no parent");
  }
  return FinAbGroup(data_->parent);
}

const std::vector<std::uint32_t>& FinAbGroup::kernel_indices() const { return data_->kernel; }
const std::vector<std::uint32_t>& FinAbGroup::representatives() const { return data_->reps; }
const std::vector<std::uint32_t>& FinAbGroup::coset_index() const { return data_->coset_of; }

std::uint32_t FinAbGroup::add(std::uint32_t x, std::uint32_t y) const { return data_->add(x, y); }
std::uint32_t FinAbGroup::neg(std::uint32_t x) const { return data_->neg_table[x]; }
std::uint32_t FinAbGroup::project(std::uint32_t base_index) const { return data_->project(base_index); }
std::uint32_t FinAbGroup::base_index(std::uint32_t index) const { return data_->base_index(index); }

GroupElem FinAbGroup::elem(std::uint32_t index) const {
  if (index >= order()) {
    throw Error(ErrorKind::DomainMismatch, "element index out of range");
  }
  const std::uint32_t base = data_->base_index(index);
  GroupElem e;
  e.coords.resize(width());
  for (std::size_t i = 0; i < width(); ++i) {
    e.coords[i] = (base / data_->strides[i]) % data_->factors[i];
  }
  return e;
}

namespace {

std::uint32_t base_index_of(const detail::GroupData& d, const GroupElem& e) {
  if (e.coords.size() != d.factors.size()) {
    throw Error(ErrorKind::DomainMismatch,
                "element has " + std::to_string(e.coords.size()) + " coordinates, group expects " +
                    std::to_string(d.factors.size()));
  }
  std::uint32_t base = 0;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    if (e.coords[i] >= d.factors[i]) {
      throw Error(ErrorKind::DomainMismatch,
                  "coordinate " + std::to_string(e.coords[i]) + " out of range for Z" +
                      std::to_string(d.factors[i]));
    }
    base += e.coords[i] * d.strides[i];
  }
  return base;
}

}  // namespace

std::uint32_t FinAbGroup::index_of(const GroupElem& e) const {
  const std::uint32_t base = base_index_of(*data_, e);
  const std::uint32_t idx = data_->project(base);
  if (data_->base_index(idx) != base) {
    throw Error(ErrorKind::DomainMismatch,
                "element is not a canonical coset representative of " + spec());
  }
  return idx;
}

bool FinAbGroup::contains(const GroupElem& e) const {
  try {
    (void)index_of(e);
    return true;
  } catch (const Error&) {
    return false;
  }
}

GroupElem FinAbGroup::add(const GroupElem& x, const GroupElem& y) const {
  return elem(add(index_of(x), index_of(y)));
}

GroupElem FinAbGroup::neg(const GroupElem& x) const { return elem(neg(index_of(x))); }

std::vector<GroupElem> FinAbGroup::elements() const {
  std::vector<GroupElem> out;
  out.reserve(order());
  for (std::uint32_t i = 0; i < order(); ++i) out.push_back(elem(i));
  return out;
}

GroupElem FinAbGroup::canonicalize(const GroupElem& e) const {
  return elem(data_->project(base_index_of(*data_, e)));
}

std::string FinAbGroup::format(const GroupElem& e) const {
  if (e.coords.size() == 1) return std::to_string(e.coords[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.coords[i]);
  }
  return out + ')';
}

std::string FinAbGroup::spec() const {
  if (data_->kind == Kind::Quotient) {
    const FinAbGroup p = parent();
    std::string out = p.spec() + "/{";
    for (std::size_t i = 0; i < data_->kernel.size(); ++i) {
      if (i) out += ',';
      out += p.format(data_->kernel[i]);
    }
    return out + '}';
  }
  std::string out;
  for (std::size_t i = 0; i < data_->factors.size(); ++i) {
    if (i) out += 'x';
    out += 'Z' + std::to_string(data_->factors[i]);
  }
  return out;
}

bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
  const detail::GroupData* x = a.data_.get();
  const detail::GroupData* y = b.data_.get();
  while (x != y) {
    if (x->kind != y->kind || x->order != y->order || x->factors != y->factors) return false;
    if (x->kind == FinAbGroup::Kind::Product) return true;
    if (x->kernel != y->kernel) return false;
    x = x->parent.get();
    y = y->parent.get();
  }
  return true;
}

IntegerEmbedding embed_integer_sets(std::span<const std::int64_t> a,
                                    std::span<const std::int64_t> b, std::size_t order_cap) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::EmptySet, "integer sets must be nonempty");
  }
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  // Spans are bounded by the cap check below, so only guard the subtraction.
  const long double span = static_cast<long double>(*amax) - *amin + (static_cast<long double>(*bmax) - *bmin);
  if (span * 2 + 1 > static_cast<long double>(order_cap)) {
    throw Error(ErrorKind::TooLarge, "integer sets span too wide to embed under the order cap");
  }
  // A+B lies in [0, span]; a modulus above 2*span keeps it from wrapping
  // and from being a union of cosets of any nontrivial subgroup.
  const std::int64_t modulus = 2 * static_cast<std::int64_t>(span) + 1;
  const std::int64_t orders[] = {modulus};
  return IntegerEmbedding{modulus, -*amin, -*bmin, FinAbGroup::make(orders, order_cap)};
}

}  // namespace kneser
