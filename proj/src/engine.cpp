#include "kneser/engine.hpp"

#include "kneser/error.hpp"
#include "kneser/quotient.hpp"

namespace kneser {

namespace {

std::int64_t sz(const GSet& s) { return static_cast<std::int64_t>(s.size()); }
std::int64_t sz(const Subgroup& h) { return static_cast<std::int64_t>(h.size()); }

void require_nonempty(const GSet& a, const GSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "A and B must be nonempty");
}

bool coset_inside(const Subgroup& h, std::uint32_t shift, const GSet& target) {
  return translate(h.carrier(), shift).subset_of(target);
}

bool strictly_inside(const Subgroup& inner, const Subgroup& outer) {
  return inner.size() < outer.size() && inner.carrier().subset_of(outer.carrier());
}

struct CosetSplit {
  GSet a_coset;  // a + H
  GSet b_coset;  // b + H
  GSet A1, B1, A2, B2;
};

CosetSplit split(const GSet& a, const GSet& b, const Subgroup& h, std::uint32_t ea, std::uint32_t eb) {
  GSet a_coset = translate(h.carrier(), ea);
  GSet b_coset = translate(h.carrier(), eb);
  return CosetSplit{a_coset,
                    b_coset,
                    set_intersect(a, a_coset),
                    set_intersect(b, b_coset),
                    set_intersect(a, b_coset),
                    set_intersect(b, a_coset)};
}

}  // namespace

BoundReport kneser_bound(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  require_nonempty(a, b);
  const GSet ab = sumset(a, b);
  Subgroup k = stabilizer(ab);
  const std::int64_t lhs = sz(ab);
  const std::int64_t rhs = sz(saturate(a, k)) + sz(saturate(b, k)) - sz(k);
  return BoundReport{std::move(k), lhs, rhs, lhs >= rhs, lhs == rhs};
}

ConvergentReport is_convergent(const GSet& c, const GSet& a, const GSet& b) {
  require_same_group(a, b);
  require_same_group(c, a);
  if (!c.subset_of(sumset(a, b))) {
    throw Error(ErrorKind::Containment, "C = " + c.to_string() + " is not contained in A+B");
  }
  Subgroup h = stabilizer(c);
  const std::int64_t lhs = sz(c) + sz(h);
  const std::int64_t rhs = sz(set_intersect(a, b)) + sz(saturate(set_union(a, b), h));
  return ConvergentReport{c, std::move(h), lhs, rhs, lhs >= rhs};
}

GSet initial_convergent(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  const GSet meet = set_intersect(a, b);
  if (meet.empty()) {
    throw Error(ErrorKind::Precondition, "A and B are disjoint; normalize the translation first");
  }
  return sumset(meet, set_union(a, b));
}

std::optional<TranslateWitness> normalize_translation(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  require_nonempty(a, b);
  if (a.size() < 2) throw Error(ErrorKind::Precondition, "translation needs |A| >= 2");
  if (!stabilizer(sumset(a, b)).is_trivial()) {
    throw Error(ErrorKind::Precondition, "translation needs S(A+B) trivial; take the quotient first");
  }
  const GSet meet = set_intersect(a, b);
  if (!meet.empty() && !(meet == a)) return std::nullopt;

  const FinAbGroup& g = a.group();
  const auto as = a.indices();
  const auto bs = b.indices();
  for (const std::uint32_t x : as) {
    for (const std::uint32_t x2 : as) {
      if (x2 == x) continue;
      const std::uint32_t step = g.sub(x2, x);
      for (const std::uint32_t y : bs) {
        if (b.contains(g.add(y, step))) continue;
        // a lands in the new B and a' does not, so the meet is proper and nonempty.
        GSet moved = translate(b, g.sub(x, y));
        return TranslateWitness{g.elem(x), g.elem(x2), g.elem(y), std::move(moved)};
      }
    }
  }
  // Unreachable when S(A+B) is trivial: a' - a would stabilize B.
  throw Error(ErrorKind::ProofFalsified, "no translation witness exists for A = " + a.to_string() +
                                             ", B = " + b.to_string());
}

std::optional<DescentMove> descend(const GSet& c, const GSet& a, const GSet& b) {
  require_nonempty(a, b);
  const ConvergentReport report = is_convergent(c, a, b);
  if (!report.is_convergent) {
    throw Error(ErrorKind::Precondition, "C = " + c.to_string() + " is not a convergent");
  }
  const Subgroup& h = report.H;
  if (h.is_trivial()) throw Error(ErrorKind::Precondition, "C already has trivial stabilizer");
  const GSet ab = sumset(a, b);
  if (!stabilizer(ab).is_trivial()) {
    throw Error(ErrorKind::Precondition, "descent needs S(A+B) trivial");
  }
  const GSet meet = set_intersect(a, b);
  if (meet.empty() || meet == a) {
    throw Error(ErrorKind::Precondition, "descent needs A n B nonempty and proper in A");
  }

  const FinAbGroup& g = a.group();
  const auto bs = b.indices();
  for (const std::uint32_t x : a.indices()) {
    for (const std::uint32_t y : bs) {
      if (coset_inside(h, g.add(x, y), ab)) continue;
      const CosetSplit parts = split(a, b, h, x, y);

      std::optional<DescentMove> best;
      auto consider = [&](int i, const GSet& ai, const GSet& bi) {
        GSet grown = set_union(c, sumset(ai, bi));
        Subgroup grown_h = stabilizer(grown);
        if (!strictly_inside(grown_h, h)) return;
        if (best && grown_h.size() >= best->new_H.size()) return;
        if (!is_convergent(grown, a, b).is_convergent) return;
        best = DescentMove{g.elem(x), g.elem(y), i, ai, bi, std::move(grown), std::move(grown_h)};
      };
      consider(1, parts.A1, parts.B1);
      if (!(parts.a_coset == parts.b_coset) && !parts.A2.empty() && !parts.B2.empty()) {
        consider(2, parts.A2, parts.B2);
      }
      if (best) return best;
    }
  }
  return std::nullopt;
}

QuotientStep::QuotientStep(Subgroup k, Certificate sub_cert)
    : K(std::move(k)), sub(std::make_unique<Certificate>(std::move(sub_cert))) {}

QuotientStep::QuotientStep(const QuotientStep& other)
    : K(other.K), sub(std::make_unique<Certificate>(*other.sub)) {}

QuotientStep& QuotientStep::operator=(const QuotientStep& other) {
  if (this != &other) {
    K = other.K;
    sub = std::make_unique<Certificate>(*other.sub);
  }
  return *this;
}

QuotientStep::~QuotientStep() = default;

std::string_view step_name(const CertificateStep& step) {
  struct Visitor {
    std::string_view operator()(const QuotientStep&) const { return "quotient"; }
    std::string_view operator()(const BaseStep&) const { return "base"; }
    std::string_view operator()(const DerivationStep&) const { return "derivation"; }
    std::string_view operator()(const DirectStep&) const { return "direct"; }
  };
  return std::visit(Visitor{}, step);
}

namespace {

Certificate direct_or_fail(const GSet& a, const GSet& b, std::int64_t bound) {
  const std::int64_t lhs = sz(sumset(a, b));
  if (lhs < sz(a) + sz(b) - 1) {
    throw Error(ErrorKind::ProofFalsified,
                "descent stalled and |A+B| < |A|+|B|-1 for A = " + a.to_string() + ", B = " + b.to_string());
  }
  return Certificate{a.group(), a, b, bound, DirectStep{}};
}

}  // namespace

Certificate certify(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  require_nonempty(a, b);
  const BoundReport bound = kneser_bound(a, b);
  const FinAbGroup& g = a.group();

  if (!bound.K.is_trivial()) {
    const QuotientMap phi(g, bound.K);
    Certificate sub = certify(image(a, phi), image(b, phi));
    return Certificate{g, a, b, bound.rhs, QuotientStep(bound.K, std::move(sub))};
  }
  if (a.size() == 1) return Certificate{g, a, b, bound.rhs, BaseStep{}};

  std::optional<TranslateWitness> witness = normalize_translation(a, b);
  const GSet& moved_b = witness ? witness->translated_B : b;
  const GSet start = initial_convergent(a, moved_b);
  if (!is_convergent(start, a, moved_b).is_convergent) return direct_or_fail(a, b, bound.rhs);

  std::vector<DescentMove> chain;
  GSet current = start;
  while (!stabilizer(current).is_trivial()) {
    std::optional<DescentMove> move = descend(current, a, moved_b);
    if (!move) return direct_or_fail(a, b, bound.rhs);
    current = move->new_C;
    chain.push_back(std::move(*move));
  }
  return Certificate{g, a, b, bound.rhs,
                     DerivationStep{std::move(witness), start, std::move(chain), std::move(current)}};
}

namespace {

using Failure = std::optional<std::string>;

Failure check_witness(const TranslateWitness& w, const GSet& a, const GSet& b) {
  const FinAbGroup& g = a.group();
  if (!g.contains(w.a) || !g.contains(w.a_prime) || !g.contains(w.b)) {
    return "translation witness element outside the group";
  }
  const std::uint32_t x = g.index_of(w.a);
  const std::uint32_t x2 = g.index_of(w.a_prime);
  const std::uint32_t y = g.index_of(w.b);
  if (x == x2) return "translation witness has a == a'";
  if (!a.contains(x) || !a.contains(x2)) return "translation witness a or a' not in A";
  if (!b.contains(y)) return "translation witness b not in B";
  if (b.contains(g.add(y, g.sub(x2, x)))) return "translation witness has b + a' - a in B";
  if (!(w.translated_B.group() == g) || !(w.translated_B == translate(b, g.sub(x, y)))) {
    return "translated B is not B - b + a";
  }
  const GSet meet = set_intersect(a, w.translated_B);
  if (meet.empty() || meet == a) return "translated B does not meet A properly";
  return std::nullopt;
}

bool same_witness(const TranslateWitness& x, const TranslateWitness& y) {
  return x.a == y.a && x.a_prime == y.a_prime && x.b == y.b;
}

Failure check_move(const DescentMove& m, const GSet& c, const GSet& a, const GSet& b, const GSet& ab) {
  const FinAbGroup& g = a.group();
  const Subgroup h = stabilizer(c);
  if (h.is_trivial()) return "descent from a convergent with trivial stabilizer";
  if (!g.contains(m.a) || !g.contains(m.b)) return "a or b outside the group";
  const std::uint32_t x = g.index_of(m.a);
  const std::uint32_t y = g.index_of(m.b);
  if (!a.contains(x)) return "a not in A";
  if (!b.contains(y)) return "b not in B";
  if (coset_inside(h, g.add(x, y), ab)) return "(a+b)+H lies inside A+B";
  if (m.i != 1 && m.i != 2) return "i must be 1 or 2";
  const CosetSplit parts = split(a, b, h, x, y);
  if (m.i == 2) {
    if (parts.a_coset == parts.b_coset) return "i = 2 with a+H = b+H duplicates i = 1";
    if (parts.A2.empty() || parts.B2.empty()) return "i = 2 with A_2 or B_2 empty";
  }
  const GSet& want_a = m.i == 1 ? parts.A1 : parts.A2;
  const GSet& want_b = m.i == 1 ? parts.B1 : parts.B2;
  if (!(m.A_i.group() == g) || !(m.A_i == want_a)) return "A_i does not match its coset definition";
  if (!(m.B_i.group() == g) || !(m.B_i == want_b)) return "B_i does not match its coset definition";
  if (!(m.new_C.group() == g)) return "new_C outside the group";
  const Subgroup actual_h = stabilizer(m.new_C);
  if (!strictly_inside(actual_h, h)) return "stabilizer not strictly smaller";
  if (!(m.new_C == set_union(c, sumset(want_a, want_b)))) return "new_C is not C u (A_i + B_i)";
  if (!m.new_C.subset_of(ab)) return "new_C not contained in A+B";
  if (!(m.new_H == actual_h)) return "new_H is not the stabilizer of new_C";
  if (!is_convergent(m.new_C, a, b).is_convergent) return "new_C is not a convergent";
  return std::nullopt;
}

Failure verify_node(const Certificate& cert);

Failure verify_quotient(const Certificate& cert, const QuotientStep& q, const Subgroup& k, const GSet& ab) {
  if (k.is_trivial()) return "quotient step but S(A+B) is trivial";
  if (!(q.K == k)) return "quotient kernel is not S(A+B)";
  if (!q.sub) return "quotient step without sub-certificate";
  const QuotientMap phi(cert.group, k);
  const Certificate& sub = *q.sub;
  if (!(sub.group == phi.quotient())) return "sub-certificate group is not the canonical quotient";
  const GSet pa = image(cert.A, phi);
  const GSet pb = image(cert.B, phi);
  if (!(sub.A == pa) || !(sub.B == pb)) return "sub-certificate sets are not phi(A), phi(B)";
  const GSet pab = sumset(pa, pb);
  if (!stabilizer(pab).is_trivial()) return "S(phi(A)+phi(B)) is not trivial";
  const std::int64_t ks = sz(k);
  if (sz(ab) != ks * sz(pab)) return "lift mismatch: |A+B| != |K| |phi(A)+phi(B)|";
  if (sz(saturate(cert.A, k)) != ks * sz(pa)) return "lift mismatch: |A+K| != |K| |phi(A)|";
  if (sz(saturate(cert.B, k)) != ks * sz(pb)) return "lift mismatch: |B+K| != |K| |phi(B)|";
  if (cert.claimed_bound != ks * sub.claimed_bound) return "lifted bound mismatch";
  if (Failure f = verify_node(sub)) return "quotient sub-certificate: " + *f;
  return std::nullopt;
}

Failure verify_derivation(const Certificate& cert, const DerivationStep& d, const Subgroup& k,
                          const GSet& ab) {
  const GSet& a = cert.A;
  if (!k.is_trivial()) return "derivation needs S(A+B) trivial";
  if (a.size() < 2) return "derivation needs |A| >= 2";
  const std::optional<TranslateWitness> canonical = normalize_translation(a, cert.B);
  if (d.translate) {
    if (Failure f = check_witness(*d.translate, a, cert.B)) return f;
    if (!canonical || !same_witness(*canonical, *d.translate)) {
      return "translation witness is not the canonical choice";
    }
  } else if (canonical) {
    return "A n B is empty or all of A but no translation witness given";
  }
  const GSet& b = d.translate ? d.translate->translated_B : cert.B;
  const GSet moved_ab = sumset(a, b);

  if (!(d.initial_C.group() == cert.group) || !(d.initial_C == initial_convergent(a, b))) {
    return "chain does not start at (A n B) + (A u B)";
  }
  if (!is_convergent(d.initial_C, a, b).is_convergent) return "initial C is not a convergent";

  GSet current = d.initial_C;
  for (std::size_t n = 0; n < d.chain.size(); ++n) {
    const DescentMove& m = d.chain[n];
    if (Failure f = check_move(m, current, a, b, moved_ab)) return "move " + std::to_string(n) + ": " + *f;
    const std::optional<DescentMove> expected = descend(current, a, b);
    if (!expected || expected->a != m.a || expected->b != m.b || expected->i != m.i) {
      return "move " + std::to_string(n) + ": not the canonical descent choice";
    }
    current = m.new_C;
  }
  if (!(d.final_C.group() == cert.group) || !(d.final_C == current)) return "final C is not the end of the chain";
  if (!stabilizer(current).is_trivial()) return "final convergent has nontrivial stabilizer";
  // A trivially stabilized convergent gives |A+B| >= |C| >= |A n B'| + |A u B'| - 1.
  if (sz(ab) < sz(a) + sz(cert.B) - 1) return "|A+B| < |A|+|B|-1";
  return std::nullopt;
}

Failure verify_node(const Certificate& cert) {
  if (!(cert.A.group() == cert.group) || !(cert.B.group() == cert.group)) {
    return "sets do not belong to the certificate group";
  }
  if (cert.A.empty() || cert.B.empty()) return "A and B must be nonempty";
  const GSet ab = sumset(cert.A, cert.B);
  const Subgroup k = stabilizer(ab);
  const std::int64_t expected = sz(saturate(cert.A, k)) + sz(saturate(cert.B, k)) - sz(k);
  if (cert.claimed_bound != expected) return "claimed bound mismatch";

  struct Visitor {
    const Certificate& cert;
    const Subgroup& k;
    const GSet& ab;
    Failure operator()(const QuotientStep& q) const { return verify_quotient(cert, q, k, ab); }
    Failure operator()(const BaseStep&) const {
      if (cert.A.size() != 1) return "base step needs |A| = 1";
      return std::nullopt;
    }
    Failure operator()(const DerivationStep& d) const { return verify_derivation(cert, d, k, ab); }
    Failure operator()(const DirectStep&) const {
      if (!k.is_trivial()) return "direct step needs S(A+B) trivial";
      if (sz(ab) < sz(cert.A) + sz(cert.B) - 1) return "|A+B| < |A|+|B|-1";
      return std::nullopt;
    }
  };
  return std::visit(Visitor{cert, k, ab}, cert.step);
}

}  // namespace

VerifyReport verify(const Certificate& cert, const GSet& a, const GSet& b) {
  try {
    if (!(cert.group == a.group()) || !(cert.group == b.group())) {
      return {false, "certificate group does not match inputs"};
    }
    if (!(cert.A == a) || !(cert.B == b)) return {false, "certificate sets do not match inputs"};
    if (Failure f = verify_node(cert)) return {false, *f};
    return {true, {}};
  } catch (const Error& e) {
    return {false, std::string(to_string(e.kind())) + ": " + e.what()};
  }
}

CertificateStats certificate_stats(const Certificate& cert) {
  CertificateStats stats;
  if (const auto* q = std::get_if<QuotientStep>(&cert.step)) {
    if (q->sub) stats = certificate_stats(*q->sub);
  } else if (const auto* d = std::get_if<DerivationStep>(&cert.step)) {
    stats.descent_moves = static_cast<int>(d->chain.size());
  } else if (std::holds_alternative<DirectStep>(cert.step)) {
    stats.direct_fallback = true;
  }
  return stats;
}

DescentDiagnostics audit_contradiction(const GSet& c, const GSet& a, const GSet& b,
                                       const GroupElem& ea, const GroupElem& eb) {
  require_nonempty(a, b);
  const ConvergentReport report = is_convergent(c, a, b);
  if (!report.is_convergent) throw Error(ErrorKind::Precondition, "C is not a convergent");
  const Subgroup& h = report.H;
  if (h.is_trivial()) throw Error(ErrorKind::Precondition, "C has trivial stabilizer");
  const FinAbGroup& g = a.group();
  const std::uint32_t x = g.index_of(ea);
  const std::uint32_t y = g.index_of(eb);
  if (!a.contains(x) || !b.contains(y)) throw Error(ErrorKind::Precondition, "need a in A and b in B");
  const GSet ab = sumset(a, b);
  if (coset_inside(h, g.add(x, y), ab)) throw Error(ErrorKind::Precondition, "(a+b)+H lies inside A+B");

  const CosetSplit parts = split(a, b, h, x, y);
  GSet s = set_difference(parts.a_coset, set_union(parts.A1, parts.B2));
  GSet t = set_difference(parts.b_coset, set_union(parts.A2, parts.B1));

  const GSet meet = set_intersect(a, b);
  const GSet join = set_union(a, b);
  const std::int64_t hs = sz(h);
  const std::int64_t join_h = sz(saturate(join, h));

  auto part = [&](int i, const GSet& ai, const GSet& bi) {
    const GSet sum = sumset(ai, bi);
    Subgroup hi = stabilizer(sum);
    Subgroup stab_ci = stabilizer(set_union(c, sum));
    const std::int64_t his = sz(hi);
    return AuditPart{
        .i = i,
        .present = !ai.empty() && !bi.empty(),
        .A_i = ai,
        .B_i = bi,
        .size_A_i = sz(ai),
        .size_B_i = sz(bi),
        .size_sum = sz(sum),
        .H_i = hi,
        .size_H_i = his,
        .stab_C_i = std::move(stab_ci),
        .eq1_lhs = join_h - sz(saturate(join, hi)),
        .eq1_mid = hs - sz(sum) - his,
        .eq1_rhs = hs - sz(saturate(ai, hi)) - sz(saturate(bi, hi)),
        .eq2_lhs = hs,
        .eq2_rhs = sz(ai) + sz(bi) + his,
        .eq3_lhs = hs,
        .eq3_t1 = join_h + sz(meet) - sz(c),
        .eq3_t2 = sz(s) + sz(t) + sz(join) + sz(meet) - sz(ab) + sz(sum),
        .eq3_t3 = sz(s) + sz(t) + sz(ai) + sz(bi) - his,
    };
  };

  const bool same = parts.a_coset == parts.b_coset;
  const bool disjoint = set_intersect(s, t).empty();
  const bool a_part = parts.a_coset == set_union(s, set_union(parts.A1, parts.B2));
  const bool b_part = parts.b_coset == set_union(t, set_union(parts.A2, parts.B1));
  const std::int64_t final_rhs = sz(parts.A1) + sz(parts.B2) + sz(s) + sz(parts.A2) + sz(parts.B1) + sz(t);
  AuditPart p1 = part(1, parts.A1, parts.B1);
  AuditPart p2 = part(2, parts.A2, parts.B2);
  return DescentDiagnostics{h,
                            std::move(s),
                            std::move(t),
                            same,
                            disjoint,
                            a_part,
                            b_part,
                            std::move(p1),
                            std::move(p2),
                            2 * hs,
                            final_rhs};
}

}  // namespace kneser
