#include <gtest/gtest.h>

#include <random>

#include "kneser/error.hpp"
#include "kneser/quotient.hpp"
#include "kneser/set.hpp"
#include "naive_sets.hpp"

using namespace kneser;

namespace {

GSet S(const FinAbGroup& g, std::initializer_list<std::uint32_t> idx) {
  std::vector<std::uint32_t> v(idx);
  return GSet::from_indices(g, v);
}

FinAbGroup Z(std::int64_t n) { return FinAbGroup::make({n}); }

naive::Product naive_of(const FinAbGroup& g) { return naive::Product{g.base_factors()}; }

}  // namespace

TEST(Sumset, Examples) {
  const FinAbGroup z5 = Z(5);
  EXPECT_EQ(sumset(S(z5, {0, 1}), S(z5, {0, 1})), S(z5, {0, 1, 2}));
  const FinAbGroup v4 = FinAbGroup::make({2, 2});
  // {(0,0),(1,0)} + {(0,0),(0,1)}
  EXPECT_EQ(sumset(S(v4, {0, 2}), S(v4, {0, 1})), GSet::full(v4));
  const GSet a = S(Z(7), {1, 3, 4});
  EXPECT_EQ(sumset(S(Z(7), {0}), a), a);
  EXPECT_TRUE(sumset(GSet(Z(7)), a).empty());
}

TEST(Sumset, GroupMismatch) {
  EXPECT_THROW(sumset(S(Z(5), {0}), S(Z(6), {0})), Error);
  try {
    sumset(S(Z(5), {0}), S(Z(6), {0}));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainMismatch);
  }
}

TEST(Translate, Examples) {
  const FinAbGroup z6 = Z(6);
  EXPECT_EQ(translate(S(z6, {0, 1}), 4u), S(z6, {4, 5}));
  const GSet a = S(z6, {1, 2, 5});
  EXPECT_EQ(translate(a, 0u), a);
  for (std::uint32_t g = 0; g < 6; ++g) EXPECT_EQ(translate(translate(a, g), z6.neg(g)), a);
  EXPECT_THROW(translate(a, GroupElem{{6}}), Error);
}

TEST(Stabilizer, Examples) {
  const FinAbGroup z6 = Z(6);
  EXPECT_EQ(stabilizer(S(z6, {0, 2, 4})).carrier(), S(z6, {0, 2, 4}));
  EXPECT_EQ(stabilizer(S(z6, {0, 1})).carrier(), S(z6, {0}));
  EXPECT_EQ(stabilizer(GSet::full(z6)).carrier(), GSet::full(z6));
  // Empty set: fixed by everything.
  EXPECT_EQ(stabilizer(GSet(z6)).carrier(), GSet::full(z6));
}

TEST(Saturate, Examples) {
  const FinAbGroup z6 = Z(6);
  EXPECT_EQ(saturate(S(z6, {1}), Subgroup(S(z6, {0, 3}))), S(z6, {1, 4}));
  const GSet a = S(z6, {0, 5});
  EXPECT_EQ(saturate(a, Subgroup::trivial(z6)), a);
  EXPECT_EQ(saturate(S(z6, {0, 1}), Subgroup(S(z6, {0, 2, 4}))), GSet::full(z6));
}

TEST(SetAlgebra, Examples) {
  const FinAbGroup z5 = Z(5);
  EXPECT_EQ(set_intersect(S(z5, {0, 1}), S(z5, {0, 4})), S(z5, {0}));
  EXPECT_EQ(set_union(S(z5, {0, 1}), S(z5, {0, 4})), S(z5, {0, 1, 4}));
  const FinAbGroup z8 = Z(8);
  EXPECT_EQ(set_difference(S(z8, {1, 5}), S(z8, {1})), S(z8, {5}));
  EXPECT_THROW(set_union(S(z5, {0}), S(z8, {0})), Error);
}

TEST(GSetForm, CanonicalTextAndOrder) {
  const FinAbGroup g = FinAbGroup::make({2, 3});
  const GSet s = GSet::from_elems(g, std::vector<GroupElem>{{{1, 0}}, {{0, 2}}, {{1, 0}}});
  EXPECT_EQ(s.to_string(), "{(0,2),(1,0)}");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(lex_less(S(Z(5), {0, 1}), S(Z(5), {0, 1, 2})));
  EXPECT_TRUE(lex_less(S(Z(5), {0, 1, 4}), S(Z(5), {0, 2})));
  EXPECT_FALSE(lex_less(S(Z(5), {0, 2}), S(Z(5), {0, 2})));
}

// Exhaustive agreement with the std::set reference, plus the algebraic
// laws, on every pair of subsets of small groups.
class SetLaws : public ::testing::TestWithParam<std::vector<std::int64_t>> {};

TEST_P(SetLaws, AgreeWithNaiveAndSatisfyLaws) {
  const FinAbGroup g = FinAbGroup::make(GetParam());
  const naive::Product p = naive_of(g);
  const std::uint64_t subsets = std::uint64_t{1} << g.order();
  for (std::uint64_t ma = 0; ma < subsets; ++ma) {
    const GSet a = GSet::from_mask(g, ma);
    const naive::Set na = naive::to_naive(a);
    const Subgroup sa = stabilizer(a);
    ASSERT_EQ(naive::to_naive(sa.carrier()), p.stabilizer(na));
    EXPECT_EQ(g.order() % sa.size(), 0u);
    EXPECT_EQ(saturate(a, sa), a);
    for (std::uint32_t s = 0; s < g.order(); ++s) {
      EXPECT_EQ(stabilizer(translate(a, s)), sa);
    }
    for (std::uint64_t mb = 0; mb < subsets; ++mb) {
      const GSet b = GSet::from_mask(g, mb);
      const GSet ab = sumset(a, b);
      ASSERT_EQ(naive::to_naive(ab), p.sum(na, naive::to_naive(b)));
      EXPECT_EQ(ab, sumset(b, a));
      if (!a.empty() && !b.empty()) {
        // S(A) is inside S(A+B)
        EXPECT_TRUE(sa.carrier().subset_of(stabilizer(ab).carrier()));
      }
      const std::uint32_t shift = static_cast<std::uint32_t>(mb % g.order());
      EXPECT_EQ(sumset(translate(a, shift), b), translate(ab, shift));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallGroups, SetLaws,
                         ::testing::Values(std::vector<std::int64_t>{1}, std::vector<std::int64_t>{4},
                                           std::vector<std::int64_t>{6}, std::vector<std::int64_t>{2, 2},
                                           std::vector<std::int64_t>{2, 3}));

TEST(SetLaws, AssociativityOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (const auto& orders : {std::vector<std::int64_t>{12}, std::vector<std::int64_t>{2, 4},
                             std::vector<std::int64_t>{3, 3}, std::vector<std::int64_t>{2, 2, 2}}) {
    const FinAbGroup g = FinAbGroup::make(orders);
    const std::uint64_t limit = (std::uint64_t{1} << g.order()) - 1;
    for (int trial = 0; trial < 300; ++trial) {
      const GSet a = GSet::from_mask(g, rng() & limit);
      const GSet b = GSet::from_mask(g, rng() & limit);
      const GSet c = GSet::from_mask(g, rng() & limit);
      EXPECT_EQ(sumset(sumset(a, b), c), sumset(a, sumset(b, c)));
    }
  }
}

TEST(Saturate, MultipleOfSubgroupOrder) {
  const FinAbGroup g = FinAbGroup::make({12});
  for (const std::uint32_t step : {1u, 2u, 3u, 4u, 6u, 12u}) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t x = 0; x < 12; x += step) idx.push_back(x);
    const Subgroup h(GSet::from_indices(g, idx));
    for (std::uint64_t mask = 0; mask < (1u << 12); mask += 37) {
      const GSet a = GSet::from_mask(g, mask);
      const GSet sat = saturate(a, h);
      EXPECT_EQ(sat.size() % h.size(), 0u);
      EXPECT_TRUE(a.subset_of(sat));
      EXPECT_TRUE(h.carrier().subset_of(stabilizer(sat).carrier()));
    }
  }
}

// |A+B| = |K| |phi(A) + phi(B)| for K = S(A+B).
TEST(Image, QuotientCompatibility) {
  for (const auto& orders : {std::vector<std::int64_t>{6}, std::vector<std::int64_t>{8},
                             std::vector<std::int64_t>{2, 4}}) {
    const FinAbGroup g = FinAbGroup::make(orders);
    const std::uint64_t subsets = std::uint64_t{1} << g.order();
    for (std::uint64_t ma = 1; ma < subsets; ++ma) {
      for (std::uint64_t mb = 1; mb < subsets; mb += 3) {
        const GSet a = GSet::from_mask(g, ma);
        const GSet b = GSet::from_mask(g, mb);
        const GSet ab = sumset(a, b);
        const Subgroup k = stabilizer(ab);
        const QuotientMap phi(g, k);
        const GSet pa = image(a, phi);
        const GSet pb = image(b, phi);
        EXPECT_EQ(ab.size(), k.size() * sumset(pa, pb).size());
        EXPECT_EQ(saturate(a, k).size(), k.size() * pa.size());
        EXPECT_TRUE(stabilizer(sumset(pa, pb)).is_trivial());
      }
    }
  }
}
