#include "kneser/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "kneser/engine.hpp"
#include "kneser/error.hpp"

namespace kneser::oracle {

namespace {

// Hard ceiling: subset masks are 64-bit and sweeps square 2^order.
constexpr std::size_t kMaxEnumerationOrder = 30;

void check_enumerable(const FinAbGroup& g, std::size_t cap) {
  const std::size_t limit = std::min(cap, kMaxEnumerationOrder);
  if (g.order() > limit) {
    throw Error(ErrorKind::TooLarge, "order " + std::to_string(g.order()) + " of " + g.spec() +
                                         " exceeds the enumeration cap of " + std::to_string(limit));
  }
}

void check_pair(const GSet& a, const GSet& b, bool with_certificate, ExhaustReport& r) {
  ++r.pairs_checked;
  const BoundReport bound = kneser_bound(a, b);
  if (!bound.holds) ++r.bound_violations;
  if (bound.equality) ++r.equality_pairs;
  if (!with_certificate) return;
  try {
    const Certificate cert = certify(a, b);
    if (!verify(cert, a, b).accepted) ++r.verify_rejections;
    const CertificateStats stats = certificate_stats(cert);
    if (stats.direct_fallback) ++r.descent_stalls;
    r.max_chain_length = std::max<std::uint64_t>(r.max_chain_length, stats.descent_moves);
  } catch (const Error&) {
    ++r.certify_failures;
  }
}

void merge(ExhaustReport& into, const ExhaustReport& part) {
  into.pairs_checked += part.pairs_checked;
  into.bound_violations += part.bound_violations;
  into.equality_pairs += part.equality_pairs;
  into.certify_failures += part.certify_failures;
  into.verify_rejections += part.verify_rejections;
  into.descent_stalls += part.descent_stalls;
  into.max_chain_length = std::max(into.max_chain_length, part.max_chain_length);
}

// Runs body(lo, hi, report) over [0, total) split into contiguous ranges and
// merges the partial reports in range order.
template <typename Body>
void run_partitioned(std::uint64_t total, unsigned jobs, ExhaustReport& out, Body body) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || total < jobs) {
    body(0, total, out);
    return;
  }
  std::vector<ExhaustReport> parts(jobs);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t lo = std::min(total, w * chunk);
    const std::uint64_t hi = std::min(total, lo + chunk);
    workers.emplace_back([&, w, lo, hi] { body(lo, hi, parts[w]); });
  }
  for (auto& t : workers) t.join();
  for (const auto& p : parts) merge(out, p);
}

// Subset arithmetic on 64-bit masks, independent of GSet.
class MaskArith {
 public:
  explicit MaskArith(const FinAbGroup& g) : g_(g), n_(g.order()) {}

  std::uint64_t translate(std::uint64_t m, std::uint32_t shift) const {
    std::uint64_t out = 0;
    for (; m; m &= m - 1) out |= bit(g_.add(static_cast<std::uint32_t>(std::countr_zero(m)), shift));
    return out;
  }
  std::uint64_t sum(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (; a; a &= a - 1) out |= translate(b, static_cast<std::uint32_t>(std::countr_zero(a)));
    return out;
  }
  std::uint64_t stabilizer(std::uint64_t m) const {
    std::uint64_t out = 0;
    for (std::uint32_t s = 0; s < n_; ++s) {
      if (translate(m, s) == m) out |= bit(s);
    }
    return out;
  }

 private:
  static std::uint64_t bit(std::uint32_t i) { return std::uint64_t{1} << i; }
  const FinAbGroup& g_;
  std::size_t n_;
};

std::uint64_t to_mask(const GSet& s) {
  std::uint64_t m = 0;
  for (const std::uint32_t i : s.indices()) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<std::uint32_t> mask_indices(std::uint64_t m) {
  std::vector<std::uint32_t> out;
  for (; m; m &= m - 1) out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
  return out;
}

}  // namespace

ExhaustReport exhaust(const FinAbGroup& g, const SweepOptions& options) {
  check_enumerable(g, options.enumeration_cap);
  const auto start = std::chrono::steady_clock::now();
  ExhaustReport report;
  report.group = g.spec();
  report.mode = "exhaust";
  report.certified = options.certify;
  const std::uint64_t subsets = (std::uint64_t{1} << g.order()) - 1;  // nonempty, masks 1..subsets
  const std::size_t max_size = options.max_set_size.value_or(g.order());

  run_partitioned(subsets, options.jobs, report, [&](std::uint64_t lo, std::uint64_t hi, ExhaustReport& r) {
    for (std::uint64_t ma = lo + 1; ma <= hi; ++ma) {
      if (static_cast<std::size_t>(std::popcount(ma)) > max_size) continue;
      const GSet a = GSet::from_mask(g, ma);
      for (std::uint64_t mb = 1; mb <= subsets; ++mb) {
        if (static_cast<std::size_t>(std::popcount(mb)) > max_size) continue;
        check_pair(a, GSet::from_mask(g, mb), options.certify, r);
      }
    }
  });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

GSet SubsetSampler::next(const FinAbGroup& g) {
  const std::size_t n = g.order();
  GSet::Bits bits(n);
  while (true) {
    for (std::size_t word = 0; word * 64 < n; ++word) {
      const std::uint64_t draw = engine_();
      for (std::size_t j = 0; j < 64 && word * 64 + j < n; ++j) {
        if ((draw >> j) & 1u) bits.set(word * 64 + j);
      }
    }
    if (bits.any()) return GSet(g, std::move(bits));
  }
}

ExhaustReport sample(const FinAbGroup& g, std::uint64_t count, std::uint64_t seed, const SweepOptions& options) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  ExhaustReport report;
  report.group = g.spec();
  report.mode = "sample";
  report.seed = seed;
  report.certified = options.certify;

  SubsetSampler sampler(seed);
  std::vector<std::pair<GSet, GSet>> pairs;
  pairs.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) {
    GSet a = sampler.next(g);
    GSet b = sampler.next(g);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  run_partitioned(count, options.jobs, report, [&](std::uint64_t lo, std::uint64_t hi, ExhaustReport& r) {
    for (std::uint64_t n = lo; n < hi; ++n) check_pair(pairs[n].first, pairs[n].second, options.certify, r);
  });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

GSet brute_min_stab_convergent(const GSet& a, const GSet& b, std::size_t budget) {
  require_same_group(a, b);
  const FinAbGroup& g = a.group();
  if (g.order() > 64) throw Error(ErrorKind::TooLarge, "brute-force convergent search needs order <= 64");
  const MaskArith arith(g);
  const std::uint64_t ma = to_mask(a);
  const std::uint64_t mb = to_mask(b);
  const std::uint64_t meet = ma & mb;
  if (ma == 0 || mb == 0) throw Error(ErrorKind::EmptySet, "A and B must be nonempty");
  if (meet == 0 || meet == ma) throw Error(ErrorKind::Precondition, "A n B must be nonempty and proper in A");
  const std::uint64_t mab = arith.sum(ma, mb);
  if (std::popcount(arith.stabilizer(mab)) != 1) throw Error(ErrorKind::Precondition, "S(A+B) must be trivial");
  const std::vector<std::uint32_t> universe = mask_indices(mab);
  if (universe.size() > budget) {
    throw Error(ErrorKind::BudgetExceeded, "|A+B| = " + std::to_string(universe.size()) +
                                               " exceeds the search budget of " + std::to_string(budget));
  }

  const int meet_size = std::popcount(meet);
  const std::uint64_t join = ma | mb;
  int best_order = 0;
  std::vector<std::uint32_t> best;
  // Empty C is never a convergent: its stabilizer is G and (A u B) + G = G.
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << universe.size()); ++pick) {
    std::uint64_t c = 0;
    for (std::uint64_t p = pick; p; p &= p - 1) c |= std::uint64_t{1} << universe[std::countr_zero(p)];
    const std::uint64_t h = arith.stabilizer(c);
    const int h_order = std::popcount(h);
    if (!best.empty() && h_order > best_order) continue;
    const int lhs = std::popcount(c) + h_order;
    const int rhs = meet_size + std::popcount(arith.sum(join, h));
    if (lhs < rhs) continue;
    std::vector<std::uint32_t> members = mask_indices(c);
    if (best.empty() || h_order < best_order || members < best) {
      best_order = h_order;
      best = std::move(members);
    }
  }
  if (best.empty()) throw Error(ErrorKind::ProofFalsified, "no convergent exists inside A+B");
  return GSet::from_indices(g, best);
}

CauchyDavenportReport cauchy_davenport_check(std::int64_t p, std::size_t enumeration_cap) {
  bool prime = p >= 2;
  for (std::int64_t d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
  if (!prime) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  const std::int64_t orders[] = {p};
  const FinAbGroup g = FinAbGroup::make(orders);
  check_enumerable(g, enumeration_cap);
  const MaskArith arith(g);

  CauchyDavenportReport report;
  report.p = p;
  const std::uint64_t subsets = (std::uint64_t{1} << p) - 1;
  for (std::uint64_t ma = 1; ma <= subsets; ++ma) {
    for (std::uint64_t mb = 1; mb <= subsets; ++mb) {
      ++report.pairs_checked;
      const std::int64_t lhs = std::popcount(arith.sum(ma, mb));
      const std::int64_t want = std::min<std::int64_t>(p, std::popcount(ma) + std::popcount(mb) - 1);
      if (lhs < want) ++report.violations;
    }
  }
  return report;
}

ProgressionReport progression_equality(std::int64_t n) {
  const std::int64_t orders[] = {n};
  const FinAbGroup g = FinAbGroup::make(orders);
  ProgressionReport report;
  report.n = n;
  auto progression = [&](std::int64_t d, std::int64_t len) {
    std::vector<std::uint32_t> idx;
    for (std::int64_t j = 0; j < len; ++j) idx.push_back(static_cast<std::uint32_t>((j * d) % n));
    return GSet::from_indices(g, idx);
  };
  for (std::int64_t d = 1; d <= n; ++d) {
    if (std::gcd(d, n) != 1) continue;
    for (std::int64_t k = 1; k <= n; ++k) {
      for (std::int64_t l = 1; k + l - 1 <= n; ++l) {
        ++report.cases;
        const BoundReport bound = kneser_bound(progression(d, k), progression(d, l));
        if (!bound.equality || bound.lhs != k + l - 1) ++report.mismatches;
      }
    }
  }
  return report;
}

std::string csv_header(bool timing) {
  std::string out =
      "group,mode,seed,generator,pairs_checked,bound_violations,equality_pairs,certify_failures,"
      "verify_rejections,descent_stalls,max_chain_length";
  if (timing) out += ",elapsed_ms";
  return out;
}

std::string csv_row(const ExhaustReport& r, bool timing) {
  std::ostringstream out;
  out << r.group << ',' << r.mode << ',';
  if (r.seed) {
    out << *r.seed << ',' << kGeneratorId;
  } else {
    out << "-,-";
  }
  out << ',' << r.pairs_checked << ',' << r.bound_violations << ',' << r.equality_pairs << ','
      << r.certify_failures << ',' << r.verify_rejections << ',' << r.descent_stalls << ','
      << r.max_chain_length;
  if (timing) out << ',' << std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
  return out.str();
}

std::string summary(const ExhaustReport& r) {
  std::ostringstream out;
  out << r.group << " (" << r.mode << "): " << r.pairs_checked << " pairs, " << r.bound_violations
      << " bound violations, " << r.equality_pairs << " equality pairs";
  if (r.certified) {
    out << ", " << r.certify_failures << " certify failures, " << r.verify_rejections
        << " verify rejections, " << r.descent_stalls << " descent stalls, longest chain "
        << r.max_chain_length;
  }
  out << (r.clean() ? " -- OK" : " -- FAILED");
  return out.str();
}

}  // namespace kneser::oracle
