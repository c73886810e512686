#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kneser/group.hpp"
#include "kneser/set.hpp"

namespace kneser {

/// Parsed form of `Z6`, `Z2xZ4`, `Z6/{0,3}` or the bare `Z` (the integers).
struct GroupSpec {
  bool integers = false;
  std::vector<std::int64_t> factors;
  std::vector<std::string> kernels;  // set literals, one per quotient level
};

/// Throws ErrorKind::Parse with a 1-based position on malformed input.
GroupSpec parse_group_spec(std::string_view text);

/// Builds the group, quotienting by each kernel in turn. Throws
/// ErrorKind::InvalidArgument for the integer spec, which has no finite group.
FinAbGroup build_group(const GroupSpec& spec, std::size_t order_cap = kDefaultOrderCap);
FinAbGroup parse_group(std::string_view text, std::size_t order_cap = kDefaultOrderCap);

/// `{e1,e2,...}` with integer elements for one-coordinate groups and
/// `(x1,...,xk)` tuples otherwise. Out-of-range elements raise
/// ErrorKind::DomainMismatch; syntax errors ErrorKind::Parse.
GSet parse_set(std::string_view text, const FinAbGroup& group);

/// `{...}` of possibly negative integers, deduplicated and sorted.
std::vector<std::int64_t> parse_integer_set(std::string_view text);

std::string format_integer_set(const std::vector<std::int64_t>& values);

}  // namespace kneser
