#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "kneser/group.hpp"
#include "kneser/set.hpp"

namespace kneser::oracle {

/// Exhaustive sweeps enumerate 2^order subsets; this caps the order.
inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kDefaultConvergentBudget = 18;
inline constexpr std::string_view kGeneratorId = "mt19937_64";

struct SweepOptions {
  bool certify = false;
  std::optional<std::size_t> max_set_size;
  unsigned jobs = 1;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

struct ExhaustReport {
  std::string group;
  std::string mode;  // "exhaust" or "sample"
  std::optional<std::uint64_t> seed;
  bool certified = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t equality_pairs = 0;
  std::uint64_t certify_failures = 0;
  std::uint64_t verify_rejections = 0;
  std::uint64_t descent_stalls = 0;
  std::uint64_t max_chain_length = 0;
  std::chrono::nanoseconds elapsed{0};

  bool clean() const { return bound_violations == 0 && certify_failures == 0 && verify_rejections == 0; }
};

/// Every ordered pair of nonempty subsets, outer loop over A by ascending
/// bitmask. Throws ErrorKind::TooLarge past the enumeration cap.
ExhaustReport exhaust(const FinAbGroup& g, const SweepOptions& options = {});

/// Draws nonempty subsets from mt19937_64: each subset takes
/// ceil(order/64) raw 64-bit outputs, bit i of the concatenation selects
/// element i, and all-zero draws are redrawn.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::uint64_t seed) : engine_(seed) {}
  GSet next(const FinAbGroup& g);

 private:
  std::mt19937_64 engine_;
};

/// `count` pseudorandom pairs (A drawn before B). Same seed, same report.
ExhaustReport sample(const FinAbGroup& g, std::uint64_t count, std::uint64_t seed,
                     const SweepOptions& options = {});

/// Exponential search over all C inside A+B for a convergent of least
/// stabilizer order, ties broken by the lexicographically least C. Inputs
/// must be normalized (S(A+B) trivial, A n B nonempty and proper in A).
/// Throws ErrorKind::BudgetExceeded if |A+B| > budget.
GSet brute_min_stab_convergent(const GSet& a, const GSet& b,
                               std::size_t budget = kDefaultConvergentBudget);

struct CauchyDavenportReport {
  std::int64_t p = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
};

/// |A+B| >= min(p, |A|+|B|-1) over all nonempty A, B in Z_p.
/// Throws ErrorKind::InvalidArgument for non-prime p.
CauchyDavenportReport cauchy_davenport_check(std::int64_t p,
                                             std::size_t enumeration_cap = kDefaultEnumerationCap);

struct ProgressionReport {
  std::int64_t n = 0;
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
};

/// In Z_n, A = {0, d, ..., (k-1)d} and B = {0, d, ..., (l-1)d} with
/// gcd(d, n) = 1 and k + l - 1 <= n must give equality with |A+B| = k+l-1.
ProgressionReport progression_equality(std::int64_t n);

std::string csv_header(bool timing = false);
std::string csv_row(const ExhaustReport& r, bool timing = false);
std::string summary(const ExhaustReport& r);

}  // namespace kneser::oracle
