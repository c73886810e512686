#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kneser/engine.hpp"

namespace kneser {

inline constexpr std::string_view kCertificateFormat = "kneser-cert/1";

/// How integer inputs were placed in Z_modulus (x -> x + shift).
struct EmbeddingRecord {
  std::int64_t modulus = 0;
  std::int64_t shift_a = 0;
  std::int64_t shift_b = 0;

  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};

struct CertificateFile {
  Certificate cert;
  std::optional<EmbeddingRecord> embedding;
};

/// Deterministic JSON text (two-space indent, fixed key order, trailing newline).
std::string serialize_certificate(const Certificate& cert,
                                  const std::optional<EmbeddingRecord>& embedding = std::nullopt);

/// Throws ErrorKind::Parse on malformed documents and propagates group and
/// domain errors from rebuilding the sets.
CertificateFile parse_certificate(std::string_view text);

}  // namespace kneser
