#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kneser {

enum class ErrorKind {
  InvalidGroup,
  DomainMismatch,
  InvalidSubgroup,
  EmptySet,
  Containment,
  Precondition,
  BudgetExceeded,
  TooLarge,
  InvalidArgument,
  Parse,
  ProofFalsified,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the toolkit; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kneser
