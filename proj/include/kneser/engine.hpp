#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kneser/group.hpp"
#include "kneser/set.hpp"

namespace kneser {

struct BoundReport {
  Subgroup K;
  std::int64_t lhs = 0;  // |A+B|
  std::int64_t rhs = 0;  // |A+K| + |B+K| - |K|
  bool holds = false;
  bool equality = false;
};

/// K = S(A+B) and both sides of |A+B| >= |A+K| + |B+K| - |K|.
/// Throws ErrorKind::EmptySet for empty inputs.
BoundReport kneser_bound(const GSet& a, const GSet& b);

struct ConvergentReport {
  GSet C;
  Subgroup H;
  std::int64_t lhs = 0;  // |C| + |H|
  std::int64_t rhs = 0;  // |A n B| + |(A u B) + H|
  bool is_convergent = false;
};

/// Throws ErrorKind::Containment unless C is a subset of A+B.
ConvergentReport is_convergent(const GSet& c, const GSet& a, const GSet& b);

/// (A n B) + (A u B). Throws ErrorKind::Precondition when A and B are disjoint.
GSet initial_convergent(const GSet& a, const GSet& b);

struct TranslateWitness {
  GroupElem a;
  GroupElem a_prime;
  GroupElem b;
  GSet translated_B;  // B - b + a
};

/// Moves B so that A n B is nonempty and proper in A. Returns nullopt when
/// that already holds; otherwise the lex-first (a, a', b) with b + a' - a
/// outside B. Requires S(A+B) trivial and |A| >= 2 (ErrorKind::Precondition).
std::optional<TranslateWitness> normalize_translation(const GSet& a, const GSet& b);

struct DescentMove {
  GroupElem a;
  GroupElem b;
  int i = 1;
  GSet A_i;
  GSet B_i;
  GSet new_C;
  Subgroup new_H;
};

/// One step of the convergent descent: from a convergent C with nontrivial
/// stabilizer H, grow C by some A_i + B_i so that it stays a convergent and
/// its stabilizer is a proper subgroup of H.
///
/// Pairs (a, b) are scanned in lex order, keeping those with (a+b)+H not
/// inside A+B. For each pair i = 1 and then i = 2 (when A_2 and B_2 are
/// nonempty and a+H != b+H) are tried; the first pair with an acceptable
/// candidate wins, preferring the smaller new stabilizer and then i = 1.
/// Returns nullopt if no pair yields an acceptable move (a stall).
///
/// Throws ErrorKind::Precondition if C is not a convergent, H is trivial,
/// S(A+B) is nontrivial, or A n B is empty or all of A.
std::optional<DescentMove> descend(const GSet& c, const GSet& a, const GSet& b);

struct Certificate;

struct QuotientStep {
  Subgroup K;
  std::unique_ptr<Certificate> sub;

  QuotientStep(Subgroup k, Certificate sub_cert);
  QuotientStep(const QuotientStep& other);
  QuotientStep& operator=(const QuotientStep& other);
  QuotientStep(QuotientStep&&) noexcept = default;
  QuotientStep& operator=(QuotientStep&&) noexcept = default;
  ~QuotientStep();
};

struct BaseStep {};

struct DerivationStep {
  std::optional<TranslateWitness> translate;
  GSet initial_C;
  std::vector<DescentMove> chain;
  GSet final_C;
};

struct DirectStep {};

using CertificateStep = std::variant<QuotientStep, BaseStep, DerivationStep, DirectStep>;

struct Certificate {
  FinAbGroup group;
  GSet A;
  GSet B;
  std::int64_t claimed_bound = 0;
  CertificateStep step;
};

std::string_view step_name(const CertificateStep& step);

/// Builds the derivation for the bound on (A, B): a Quotient step when
/// S(A+B) is nontrivial, Base when |A| = 1, otherwise a translation plus a
/// descent chain from (A n B) + (A u B). If descent stalls the Direct step is
/// emitted after checking |A+B| >= |A| + |B| - 1; should that fail too,
/// ErrorKind::ProofFalsified is thrown.
Certificate certify(const GSet& a, const GSet& b);

struct VerifyReport {
  bool accepted = false;
  std::string reason;  // first failure, empty on accept
};

/// Replays every step of `cert` with set arithmetic. Never throws on bad
/// certificates; the first failed check is reported.
VerifyReport verify(const Certificate& cert, const GSet& a, const GSet& b);

struct CertificateStats {
  int descent_moves = 0;    // longest chain in the tree
  bool direct_fallback = false;
};
CertificateStats certificate_stats(const Certificate& cert);

struct AuditPart {
  int i = 1;
  bool present = false;  // A_i and B_i both nonempty
  GSet A_i;
  GSet B_i;
  std::int64_t size_A_i = 0;
  std::int64_t size_B_i = 0;
  std::int64_t size_sum = 0;       // |A_i + B_i|
  Subgroup H_i;                    // S(A_i + B_i)
  std::int64_t size_H_i = 0;
  Subgroup stab_C_i;               // S(C u (A_i + B_i)), for comparison with H_i
  // Chain (1): lhs < mid1 = mid2 <= rhs under the contradiction hypothesis.
  std::int64_t eq1_lhs = 0;        // |(A u B)+H| - |(A u B)+H_i|
  std::int64_t eq1_mid = 0;        // |H| - |A_i + B_i| - |H_i|
  std::int64_t eq1_rhs = 0;        // |H| - |A_i + H_i| - |B_i + H_i|
  // (2): |H| >= |A_i| + |B_i| + |H_i|
  std::int64_t eq2_lhs = 0;
  std::int64_t eq2_rhs = 0;
  // (3): |H| >= t1 >= t2 > t3
  std::int64_t eq3_lhs = 0;
  std::int64_t eq3_t1 = 0;         // |(A u B)+H| + |A n B| - |C|
  std::int64_t eq3_t2 = 0;         // |S| + |T| + |A u B| + |A n B| - |A+B| + |A_i+B_i|
  std::int64_t eq3_t3 = 0;         // |S| + |T| + |A_i| + |B_i| - |H_i|
};

struct DescentDiagnostics {
  Subgroup H;
  GSet S;  // (a+H) \ (A_1 u B_2)
  GSet T;  // (b+H) \ (A_2 u B_1)
  bool same_coset = false;  // a+H == b+H
  bool S_T_disjoint = false;
  bool a_partition = false;  // a+H == S u A_1 u B_2
  bool b_partition = false;  // b+H == T u A_2 u B_1
  AuditPart part1;
  AuditPart part2;
  std::int64_t final_lhs = 0;  // 2|H|
  std::int64_t final_rhs = 0;  // |A_1| + |B_2| + |S| + |A_2| + |B_1| + |T|
};

/// Evaluates the quantities of the contradiction argument at (C, a, b).
/// Purely diagnostic; no inequality is assumed to hold.
DescentDiagnostics audit_contradiction(const GSet& c, const GSet& a, const GSet& b,
                                       const GroupElem& ea, const GroupElem& eb);

}  // namespace kneser
