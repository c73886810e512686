#include <gtest/gtest.h>

#include <set>

#include "kneser/error.hpp"
#include "kneser/group.hpp"
#include "kneser/quotient.hpp"
#include "naive_sets.hpp"

using namespace kneser;

namespace {

GroupElem E(std::initializer_list<std::uint32_t> c) { return GroupElem{c}; }

GSet S(const FinAbGroup& g, std::initializer_list<std::uint32_t> idx) {
  std::vector<std::uint32_t> v(idx);
  return GSet::from_indices(g, v);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no kneser::Error thrown";
  return ErrorKind::InvalidArgument;
}

const std::vector<std::vector<std::int64_t>> kSmallGroups = {
    {1}, {2}, {3}, {5}, {6}, {8}, {12}, {2, 2}, {2, 4}, {3, 3}, {2, 2, 2}, {2, 3}, {4, 2}};

}  // namespace

TEST(MakeGroup, CyclicAndProductOrders) {
  EXPECT_EQ(FinAbGroup::make({6}).order(), 6u);
  EXPECT_EQ(FinAbGroup::make({2, 4}).order(), 8u);
  const FinAbGroup trivial = FinAbGroup::make({1});
  EXPECT_EQ(trivial.order(), 1u);
  EXPECT_EQ(trivial.elements(), std::vector<GroupElem>{E({0})});
  EXPECT_EQ(FinAbGroup::make({2, 4}).spec(), "Z2xZ4");
}

TEST(MakeGroup, RejectsBadFactors) {
  EXPECT_EQ(kind_of([] { FinAbGroup::make({0}); }), ErrorKind::InvalidGroup);
  EXPECT_EQ(kind_of([] { FinAbGroup::make({3, -2}); }), ErrorKind::InvalidGroup);
  EXPECT_EQ(kind_of([] { FinAbGroup::make(std::span<const std::int64_t>{}); }), ErrorKind::InvalidGroup);
  EXPECT_EQ(kind_of([] { FinAbGroup::make({64, 65}); }), ErrorKind::TooLarge);
}

TEST(ElemArith, Examples) {
  const FinAbGroup z6 = FinAbGroup::make({6});
  EXPECT_EQ(z6.add(E({4}), E({5})), E({3}));
  const FinAbGroup z2z4 = FinAbGroup::make({2, 4});
  EXPECT_EQ(z2z4.neg(E({1, 3})), E({1, 1}));
  for (const GroupElem& x : z2z4.elements()) EXPECT_EQ(z2z4.add(x, z2z4.zero_elem()), x);
}

TEST(ElemArith, ForeignElementIsDomainMismatch) {
  const FinAbGroup z6 = FinAbGroup::make({6});
  EXPECT_EQ(kind_of([&] { z6.add(E({4}), E({6})); }), ErrorKind::DomainMismatch);
  EXPECT_EQ(kind_of([&] { z6.neg(E({1, 1})); }), ErrorKind::DomainMismatch);
}

TEST(Enumerate, LexOrder) {
  EXPECT_EQ(FinAbGroup::make({3}).elements(), (std::vector<GroupElem>{E({0}), E({1}), E({2})}));
  EXPECT_EQ(FinAbGroup::make({2, 2}).elements(),
            (std::vector<GroupElem>{E({0, 0}), E({0, 1}), E({1, 0}), E({1, 1})}));
}

TEST(Enumerate, MatchesNaiveProduct) {
  for (const auto& orders : kSmallGroups) {
    const FinAbGroup g = FinAbGroup::make(orders);
    naive::Product p{std::vector<std::uint32_t>(orders.begin(), orders.end())};
    std::vector<GroupElem> want;
    for (const auto& t : p.all()) want.push_back(GroupElem{t});
    EXPECT_EQ(g.elements(), want) << g.spec();
  }
}

TEST(GroupLaws, ExhaustiveOnSmallGroups) {
  for (const auto& orders : kSmallGroups) {
    const FinAbGroup g = FinAbGroup::make(orders);
    naive::Product p{std::vector<std::uint32_t>(orders.begin(), orders.end())};
    const auto n = static_cast<std::uint32_t>(g.order());
    for (std::uint32_t x = 0; x < n; ++x) {
      EXPECT_EQ(g.add(x, g.neg(x)), 0u);
      EXPECT_EQ(g.add(x, 0), x);
      for (std::uint32_t y = 0; y < n; ++y) {
        EXPECT_EQ(g.add(x, y), g.add(y, x));
        EXPECT_EQ(g.elem(g.add(x, y)).coords, p.add(g.elem(x).coords, g.elem(y).coords));
        for (std::uint32_t z = 0; z < n; ++z) EXPECT_EQ(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
      }
    }
  }
}

TEST(Quotient, Z6ModuloOrderTwo) {
  const FinAbGroup z6 = FinAbGroup::make({6});
  const QuotientMap q(z6, Subgroup(S(z6, {0, 3})));
  EXPECT_EQ(q.quotient().order(), 3u);
  EXPECT_EQ(q.quotient().elements(), (std::vector<GroupElem>{E({0}), E({1}), E({2})}));
  // cosets {0,3}, {1,4}, {2,5}
  EXPECT_EQ(q.map_forward(E({4})), E({1}));
  EXPECT_EQ(q.map_forward(E({5})), E({2}));
  EXPECT_EQ(q.preimage(E({1})), S(z6, {1, 4}));
  EXPECT_EQ(q.quotient().spec(), "Z6/{0,3}");
  // 4 is not a coset representative of the quotient.
  EXPECT_EQ(kind_of([&] { q.preimage(E({4})); }), ErrorKind::DomainMismatch);
}

TEST(Quotient, TrivialAndFullKernels) {
  const FinAbGroup g = FinAbGroup::make({2, 4});
  const QuotientMap id(g, Subgroup::trivial(g));
  EXPECT_EQ(id.quotient().order(), g.order());
  for (const GroupElem& x : g.elements()) {
    EXPECT_EQ(id.map_forward(x), x);
    EXPECT_EQ(id.preimage(x).members(), std::vector<GroupElem>{x});
  }
  const QuotientMap collapse(g, Subgroup::whole(g));
  EXPECT_EQ(collapse.quotient().order(), 1u);
  for (const GroupElem& x : g.elements()) EXPECT_EQ(collapse.map_forward(x), g.zero_elem());
}

TEST(Quotient, RejectsForeignKernel) {
  const FinAbGroup z6 = FinAbGroup::make({6});
  const FinAbGroup z8 = FinAbGroup::make({8});
  EXPECT_EQ(kind_of([&] { QuotientMap(z6, Subgroup(S(z8, {0, 4}))); }), ErrorKind::InvalidSubgroup);
  EXPECT_EQ(kind_of([&] { Subgroup(S(z6, {0, 1})); }), ErrorKind::InvalidSubgroup);
}

// Every subgroup of every small group: homomorphism, partition, order.
TEST(Quotient, PropertiesOverAllSubgroups) {
  for (const auto& orders : kSmallGroups) {
    const FinAbGroup g = FinAbGroup::make(orders);
    if (g.order() > 12) continue;
    const auto n = static_cast<std::uint32_t>(g.order());
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      const GSet carrier = GSet::from_mask(g, mask);
      const GSet closure = sumset(carrier, carrier);
      if (!(closure == carrier) || !carrier.contains(0u)) continue;
      const Subgroup k(carrier);
      const QuotientMap q(g, k);
      EXPECT_EQ(q.quotient().order() * k.size(), g.order());
      EXPECT_EQ(g.order() % k.size(), 0u);
      for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
          EXPECT_EQ(q.map_forward(g.add(x, y)), q.quotient().add(q.map_forward(x), q.map_forward(y)));
          EXPECT_EQ(q.map_forward(x) == q.map_forward(y), k.contains(g.sub(x, y)));
        }
      }
      GSet covered(g);
      std::size_t total = 0;
      for (std::uint32_t c = 0; c < q.quotient().order(); ++c) {
        const GSet pre = q.preimage(c);
        EXPECT_EQ(pre.size(), k.size());
        EXPECT_TRUE(set_intersect(pre, covered).empty());
        covered = set_union(covered, pre);
        total += pre.size();
        // representative is the lex-min member of its coset
        EXPECT_EQ(q.quotient().base_index(c), pre.front());
      }
      EXPECT_EQ(total, g.order());
      EXPECT_EQ(covered, GSet::full(g));
      seen.insert(carrier.indices());
    }
    EXPECT_FALSE(seen.empty());
  }
}

TEST(Quotient, NestedCanonicalizationIsIdempotent) {
  const FinAbGroup g = FinAbGroup::make({2, 4});
  const QuotientMap first(g, Subgroup(S(g, {0, 2})));  // {(0,0),(0,2)}
  const FinAbGroup q1 = first.quotient();
  EXPECT_EQ(q1.order(), 4u);
  // (1,0) generates an order-two subgroup of the quotient.
  const GroupElem h = E({1, 0});
  const QuotientMap second(q1, Subgroup(GSet::from_elems(q1, std::vector<GroupElem>{q1.zero_elem(), h})));
  const FinAbGroup q2 = second.quotient();
  EXPECT_EQ(q2.order(), 2u);
  EXPECT_EQ(q2.spec(), "Z2xZ4/{(0,0),(0,2)}/{(0,0),(1,0)}");
  for (const FinAbGroup* grp : {&q1, &q2}) {
    for (const GroupElem& x : grp->elements()) {
      EXPECT_EQ(grp->canonicalize(x), x);
      EXPECT_EQ(grp->elem(grp->index_of(x)), x);
    }
  }
  // Any base tuple canonicalizes to the representative of its coset.
  EXPECT_EQ(q2.canonicalize(E({1, 3})), E({0, 1}));
  EXPECT_EQ(q2.canonicalize(E({1, 2})), E({0, 0}));
  // Rebuilt quotients compare equal structurally.
  const QuotientMap again(g, Subgroup(S(g, {0, 2})));
  EXPECT_TRUE(again.quotient() == q1);
  EXPECT_FALSE(q1 == q2);
}

TEST(IntegerEmbedding, NoWraparoundAndAperiodic) {
  const std::vector<std::int64_t> a{-3, 0, 2};
  const std::vector<std::int64_t> b{10, 11};
  const IntegerEmbedding e = embed_integer_sets(a, b);
  EXPECT_GT(e.modulus, (2 - -3) + (11 - 10));
  EXPECT_EQ(e.shift_a, 3);
  EXPECT_EQ(e.shift_b, -10);
  std::vector<std::uint32_t> ai, bi;
  for (auto x : a) ai.push_back(static_cast<std::uint32_t>(x + e.shift_a));
  for (auto x : b) bi.push_back(static_cast<std::uint32_t>(x + e.shift_b));
  const GSet sum = sumset(GSet::from_indices(e.group, ai), GSet::from_indices(e.group, bi));
  // Integer sumset {7,8,10,11,12,13} shifted by 3 - 10.
  EXPECT_EQ(sum, S(e.group, {0, 1, 3, 4, 5, 6}));
  EXPECT_TRUE(stabilizer(sum).is_trivial());
  EXPECT_EQ(kind_of([] { embed_integer_sets(std::vector<std::int64_t>{}, std::vector<std::int64_t>{1}); }),
            ErrorKind::EmptySet);
}

// Intervals are the worst case for periodicity: {0,1}+{0,1} fills Z_3.
TEST(IntegerEmbedding, IntervalSumsStayAperiodic) {
  for (std::int64_t k = 1; k <= 6; ++k) {
    for (std::int64_t l = 1; l <= 6; ++l) {
      std::vector<std::int64_t> a, b;
      for (std::int64_t x = 0; x < k; ++x) a.push_back(x);
      for (std::int64_t x = 0; x < l; ++x) b.push_back(x);
      const IntegerEmbedding e = embed_integer_sets(a, b);
      std::vector<std::uint32_t> ai(a.begin(), a.end()), bi(b.begin(), b.end());
      const GSet sum = sumset(GSet::from_indices(e.group, ai), GSet::from_indices(e.group, bi));
      EXPECT_EQ(static_cast<std::int64_t>(sum.size()), k + l - 1);
      EXPECT_TRUE(stabilizer(sum).is_trivial());
    }
  }
}
