#include "kneser/certificate_io.hpp"

#include <json.hpp>

#include "kneser/error.hpp"
#include "kneser/parse.hpp"

namespace kneser {

namespace {

using Json = nlohmann::ordered_json;

Json elem_json(const FinAbGroup& g, const GroupElem& e) {
  if (g.width() == 1) return e.coords[0];
  return e.coords;
}

Json set_json(const GSet& s) {
  Json out = Json::array();
  for (const GroupElem& e : s.members()) out.push_back(elem_json(s.group(), e));
  return out;
}

Json cert_json(const Certificate& cert);

Json step_json(const Certificate& cert) {
  const FinAbGroup& g = cert.group;
  Json step;
  step["kind"] = std::string(step_name(cert.step));
  if (const auto* q = std::get_if<QuotientStep>(&cert.step)) {
    step["K"] = set_json(q->K.carrier());
    step["sub"] = cert_json(*q->sub);
  } else if (const auto* d = std::get_if<DerivationStep>(&cert.step)) {
    if (d->translate) {
      const TranslateWitness& w = *d->translate;
      step["translate"] = Json{{"a", elem_json(g, w.a)},
                               {"a_prime", elem_json(g, w.a_prime)},
                               {"b", elem_json(g, w.b)},
                               {"translated_B", set_json(w.translated_B)}};
    } else {
      step["translate"] = nullptr;
    }
    step["initial_C"] = set_json(d->initial_C);
    Json chain = Json::array();
    for (const DescentMove& m : d->chain) {
      chain.push_back(Json{{"a", elem_json(g, m.a)},
                           {"b", elem_json(g, m.b)},
                           {"i", m.i},
                           {"A_i", set_json(m.A_i)},
                           {"B_i", set_json(m.B_i)},
                           {"new_C", set_json(m.new_C)},
                           {"new_H", set_json(m.new_H.carrier())}});
    }
    step["chain"] = std::move(chain);
    step["final_C"] = set_json(d->final_C);
  }
  return step;
}

Json cert_json(const Certificate& cert) {
  Json out;
  out["group"] = cert.group.spec();
  out["A"] = set_json(cert.A);
  out["B"] = set_json(cert.B);
  out["claimed_bound"] = cert.claimed_bound;
  out["step"] = step_json(cert);
  return out;
}

GroupElem elem_from(const FinAbGroup& g, const Json& j) {
  GroupElem e;
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw Error(ErrorKind::DomainMismatch, "negative coordinate in certificate");
    e.coords.push_back(static_cast<std::uint32_t>(v));
  } else if (j.is_array()) {
    for (const Json& c : j) {
      const auto v = c.get<std::int64_t>();
      if (v < 0) throw Error(ErrorKind::DomainMismatch, "negative coordinate in certificate");
      e.coords.push_back(static_cast<std::uint32_t>(v));
    }
  } else {
    throw Error(ErrorKind::Parse, "certificate element must be an integer or an array");
  }
  (void)g.index_of(e);
  return e;
}

GSet set_from(const FinAbGroup& g, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "certificate set must be an array");
  std::vector<GroupElem> elems;
  for (const Json& e : j) elems.push_back(elem_from(g, e));
  return GSet::from_elems(g, elems);
}

Certificate cert_from(const Json& j) {
  FinAbGroup g = parse_group(j.at("group").get<std::string>());
  GSet a = set_from(g, j.at("A"));
  GSet b = set_from(g, j.at("B"));
  const auto bound = j.at("claimed_bound").get<std::int64_t>();
  const Json& step = j.at("step");
  const auto kind = step.at("kind").get<std::string>();
  if (kind == "quotient") {
    Subgroup k(set_from(g, step.at("K")));
    Certificate sub = cert_from(step.at("sub"));
    return Certificate{g, std::move(a), std::move(b), bound, QuotientStep(std::move(k), std::move(sub))};
  }
  if (kind == "base") return Certificate{g, std::move(a), std::move(b), bound, BaseStep{}};
  if (kind == "direct") return Certificate{g, std::move(a), std::move(b), bound, DirectStep{}};
  if (kind != "derivation") throw Error(ErrorKind::Parse, "unknown certificate step kind '" + kind + "'");

  std::optional<TranslateWitness> witness;
  if (const Json& t = step.at("translate"); !t.is_null()) {
    witness = TranslateWitness{elem_from(g, t.at("a")), elem_from(g, t.at("a_prime")),
                               elem_from(g, t.at("b")), set_from(g, t.at("translated_B"))};
  }
  std::vector<DescentMove> chain;
  for (const Json& m : step.at("chain")) {
    chain.push_back(DescentMove{elem_from(g, m.at("a")), elem_from(g, m.at("b")), m.at("i").get<int>(),
                                set_from(g, m.at("A_i")), set_from(g, m.at("B_i")),
                                set_from(g, m.at("new_C")), Subgroup(set_from(g, m.at("new_H")))});
  }
  return Certificate{g, std::move(a), std::move(b), bound,
                     DerivationStep{std::move(witness), set_from(g, step.at("initial_C")), std::move(chain),
                                    set_from(g, step.at("final_C"))}};
}

}  // namespace

std::string serialize_certificate(const Certificate& cert, const std::optional<EmbeddingRecord>& embedding) {
  Json out;
  out["format"] = std::string(kCertificateFormat);
  if (embedding) {
    out["embedding"] = Json{{"source", "Z"},
                            {"modulus", embedding->modulus},
                            {"shift_A", embedding->shift_a},
                            {"shift_B", embedding->shift_b}};
  }
  const Json body = cert_json(cert);
  for (const auto& [key, value] : body.items()) out[key] = value;
  return out.dump(2) + "\n";
}

CertificateFile parse_certificate(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kCertificateFormat) {
      throw Error(ErrorKind::Parse, "unsupported certificate format '" + j.at("format").get<std::string>() + "'");
    }
    std::optional<EmbeddingRecord> embedding;
    if (j.contains("embedding")) {
      const Json& e = j.at("embedding");
      embedding = EmbeddingRecord{e.at("modulus").get<std::int64_t>(), e.at("shift_A").get<std::int64_t>(),
                                  e.at("shift_B").get<std::int64_t>()};
    }
    return CertificateFile{cert_from(j), embedding};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace kneser
