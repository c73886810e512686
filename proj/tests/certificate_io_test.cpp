#include <gtest/gtest.h>

#include <random>

#include "kneser/certificate_io.hpp"
#include "kneser/error.hpp"
#include "kneser/oracle.hpp"

using namespace kneser;

namespace {

GSet S(const FinAbGroup& g, std::initializer_list<std::uint32_t> idx) {
  std::vector<std::uint32_t> v(idx);
  return GSet::from_indices(g, v);
}

}  // namespace

TEST(CertificateIo, WorkedExampleLayout) {
  const FinAbGroup g = FinAbGroup::make({8});
  const GSet a = S(g, {0, 1, 4});
  const GSet b = S(g, {0, 4, 5});
  const std::string text = serialize_certificate(certify(a, b));
  EXPECT_EQ(text,
            R"({
  "format": "kneser-cert/1",
  "group": "Z8",
  "A": [
    0,
    1,
    4
  ],
  "B": [
    0,
    4,
    5
  ],
  "claimed_bound": 5,
  "step": {
    "kind": "derivation",
    "translate": null,
    "initial_C": [
      0,
      1,
      4,
      5
    ],
    "chain": [
      {
        "a": 1,
        "b": 5,
        "i": 1,
        "A_i": [
          1
        ],
        "B_i": [
          5
        ],
        "new_C": [
          0,
          1,
          4,
          5,
          6
        ],
        "new_H": [
          0
        ]
      }
    ],
    "final_C": [
      0,
      1,
      4,
      5,
      6
    ]
  }
}
)");
}

// parse(serialize(c)) re-serializes to the same bytes and still verifies.
TEST(CertificateIo, RoundTripIsByteStable) {
  oracle::SubsetSampler sampler(2024);
  for (const auto& orders : {std::vector<std::int64_t>{6}, std::vector<std::int64_t>{12},
                             std::vector<std::int64_t>{2, 4}, std::vector<std::int64_t>{3, 3},
                             std::vector<std::int64_t>{2, 2, 2}}) {
    const FinAbGroup g = FinAbGroup::make(orders);
    for (int n = 0; n < 60; ++n) {
      const GSet a = sampler.next(g);
      const GSet b = sampler.next(g);
      const std::string text = serialize_certificate(certify(a, b));
      const CertificateFile file = parse_certificate(text);
      EXPECT_FALSE(file.embedding.has_value());
      EXPECT_EQ(serialize_certificate(file.cert), text);
      EXPECT_TRUE(verify(file.cert, a, b).accepted) << text;
    }
  }
}

TEST(CertificateIo, QuotientTupleEncoding) {
  const FinAbGroup g = FinAbGroup::make({2, 4});
  // A = {(0,0),(0,2)} = S(A+A), so certify goes through the quotient.
  const GSet a = S(g, {0, 2});
  const Certificate cert = certify(a, a);
  const std::string text = serialize_certificate(cert);
  EXPECT_NE(text.find("\"group\": \"Z2xZ4/{(0,0),(0,2)}\""), std::string::npos) << text;
  EXPECT_NE(text.find("\"kind\": \"quotient\""), std::string::npos);
  const CertificateFile file = parse_certificate(text);
  EXPECT_TRUE(verify(file.cert, a, a).accepted);
}

TEST(CertificateIo, EmbeddingRecord) {
  const FinAbGroup g = FinAbGroup::make({5});
  const GSet a = S(g, {0, 1});
  const EmbeddingRecord rec{5, 3, -1};
  const std::string text = serialize_certificate(certify(a, a), rec);
  const CertificateFile file = parse_certificate(text);
  ASSERT_TRUE(file.embedding.has_value());
  EXPECT_EQ(*file.embedding, rec);
}

TEST(CertificateIo, MalformedInputs) {
  auto kind = [](std::string_view text) {
    try {
      parse_certificate(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind("not json"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"format":"other/9"})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"format":"kneser-cert/1","group":"Z5","A":[0],"B":[0],"claimed_bound":1})"),
            ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"format":"kneser-cert/1","group":"Z5","A":[7],"B":[0],"claimed_bound":1,
                     "step":{"kind":"base"}})"),
            ErrorKind::DomainMismatch);
  EXPECT_EQ(kind(R"({"format":"kneser-cert/1","group":"Z5","A":[0],"B":[0],"claimed_bound":1,
                     "step":{"kind":"magic"}})"),
            ErrorKind::Parse);
}
