#include "kneser/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "kneser/certificate_io.hpp"
#include "kneser/engine.hpp"
#include "kneser/error.hpp"
#include "kneser/oracle.hpp"
#include "kneser/parse.hpp"

namespace kneser::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Set literals from the command line, or from --file with one per line.
std::vector<std::string> set_literals(const std::vector<std::string>& positional, const std::string& file) {
  if (file.empty()) return positional;
  if (!positional.empty()) throw UsageError("give sets either on the command line or with --file, not both");
  std::vector<std::string> out;
  std::istringstream lines(read_file(file));
  for (std::string line; std::getline(lines, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

std::vector<std::vector<std::string>> batches(const std::vector<std::string>& literals, std::size_t width,
                                              bool allow_many) {
  if (literals.empty() || literals.size() % width != 0 || (!allow_many && literals.size() != width)) {
    throw UsageError("expected " + std::to_string(width) + " set literal(s), got " +
                     std::to_string(literals.size()));
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < literals.size(); i += width) {
    out.emplace_back(literals.begin() + static_cast<std::ptrdiff_t>(i),
                     literals.begin() + static_cast<std::ptrdiff_t>(i + width));
  }
  return out;
}

// A pair of sets resolved in a finite group, possibly via the integer embedding.
struct Pair {
  FinAbGroup group;
  GSet a;
  GSet b;
  std::optional<EmbeddingRecord> embedding;
};

GSet shifted(const FinAbGroup& g, const std::vector<std::int64_t>& values, std::int64_t shift) {
  std::vector<std::uint32_t> idx;
  for (const std::int64_t v : values) idx.push_back(static_cast<std::uint32_t>(v + shift));
  return GSet::from_indices(g, idx);
}

Pair resolve_pair(const std::string& group_text, const std::string& a_text, const std::string& b_text) {
  const GroupSpec spec = parse_group_spec(group_text);
  if (!spec.integers) {
    FinAbGroup g = build_group(spec);
    GSet a = parse_set(a_text, g);
    GSet b = parse_set(b_text, g);
    return Pair{g, std::move(a), std::move(b), std::nullopt};
  }
  const auto a = parse_integer_set(a_text);
  const auto b = parse_integer_set(b_text);
  const IntegerEmbedding e = embed_integer_sets(a, b);
  return Pair{e.group, shifted(e.group, a, e.shift_a), shifted(e.group, b, e.shift_b),
              EmbeddingRecord{e.modulus, e.shift_a, e.shift_b}};
}

void print_embedding(std::ostream& out, const std::optional<EmbeddingRecord>& e) {
  if (!e) return;
  out << "embedding: Z -> Z" << e->modulus << " (A shifted by " << e->shift_a << ", B shifted by " << e->shift_b
      << ")\n";
}

void require_nonempty(const Pair& p) {
  if (p.a.empty() || p.b.empty()) throw Error(ErrorKind::EmptySet, "A and B must be nonempty");
}

int report_exit(bool ok) { return ok ? kOk : kRejected; }

struct Options {
  std::string group;
  std::vector<std::string> sets;
  std::string file;
  std::string out_path;
  std::string cert_path;
  bool certify = false;
  bool timing = false;
  std::optional<std::size_t> max_set_size;
  unsigned jobs = 1;
  std::size_t cap = oracle::kDefaultEnumerationCap;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::int64_t> primes;
};

int cmd_sumset(const Options& o, std::ostream& out) {
  for (const auto& batch : batches(set_literals(o.sets, o.file), 2, true)) {
    const Pair p = resolve_pair(o.group, batch[0], batch[1]);
    print_embedding(out, p.embedding);
    out << sumset(p.a, p.b).to_string() << '\n';
  }
  return kOk;
}

int cmd_stabilizer(const Options& o, std::ostream& out) {
  for (const auto& batch : batches(set_literals(o.sets, o.file), 1, true)) {
    const GroupSpec spec = parse_group_spec(o.group);
    if (spec.integers) {
      // Finite sets of integers have no nonzero period.
      (void)parse_integer_set(batch[0]);
      out << "{0}\n";
      continue;
    }
    const FinAbGroup g = build_group(spec);
    out << stabilizer(parse_set(batch[0], g)).carrier().to_string() << '\n';
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  bool all_hold = true;
  for (const auto& batch : batches(set_literals(o.sets, o.file), 2, true)) {
    const Pair p = resolve_pair(o.group, batch[0], batch[1]);
    require_nonempty(p);
    print_embedding(out, p.embedding);
    const BoundReport r = kneser_bound(p.a, p.b);
    out << "A=" << p.a.to_string() << " B=" << p.b.to_string() << " K=" << r.K.carrier().to_string()
        << " lhs=" << r.lhs << " rhs=" << r.rhs << ' '
        << (r.equality ? "equality" : (r.holds ? "holds" : "VIOLATED")) << '\n';
    all_hold = all_hold && r.holds;
  }
  return report_exit(all_hold);
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto batch = batches(set_literals(o.sets, o.file), 2, false).front();
  const Pair p = resolve_pair(o.group, batch[0], batch[1]);
  require_nonempty(p);
  const Certificate cert = certify(p.a, p.b);
  const std::string text = serialize_certificate(cert, p.embedding);
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + o.out_path);
    file << text;
    print_embedding(out, p.embedding);
    out << "wrote " << step_name(cert.step) << " certificate to " << o.out_path
        << " (claimed bound " << cert.claimed_bound << ")\n";
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto batch = batches(set_literals(o.sets, o.file), 2, false).front();
  const Pair p = resolve_pair(o.group, batch[0], batch[1]);
  const std::string text = read_file(o.cert_path);
  CertificateFile file = [&] {
    try {
      return parse_certificate(text);
    } catch (const Error& e) {
      throw MalformedCertificate(std::string("malformed certificate: ") + e.what());
    }
  }();
  if (file.embedding != p.embedding) {
    out << "reject: integer embedding does not match the inputs\n";
    return kRejected;
  }
  const VerifyReport r = verify(file.cert, p.a, p.b);
  if (r.accepted) {
    out << "accept: |A+B| >= " << file.cert.claimed_bound << '\n';
    return kOk;
  }
  out << "reject: " << r.reason << '\n';
  return kRejected;
}

oracle::SweepOptions sweep_options(const Options& o) {
  oracle::SweepOptions s;
  s.certify = o.certify;
  s.max_set_size = o.max_set_size;
  s.jobs = o.jobs;
  s.enumeration_cap = o.cap;
  return s;
}

int print_report(const oracle::ExhaustReport& r, bool timing, std::ostream& out) {
  out << oracle::csv_header(timing) << '\n' << oracle::csv_row(r, timing) << '\n';
  out << "# " << oracle::summary(r) << '\n';
  return report_exit(r.clean());
}

int cmd_exhaust(const Options& o, std::ostream& out) {
  return print_report(oracle::exhaust(parse_group(o.group), sweep_options(o)), o.timing, out);
}

int cmd_sample(const Options& o, std::ostream& out) {
  if (!o.seed) throw UsageError("sample requires an explicit --seed");
  return print_report(oracle::sample(parse_group(o.group), o.count, *o.seed, sweep_options(o)), o.timing, out);
}

int cmd_cd_check(const Options& o, std::ostream& out) {
  out << "p,pairs_checked,violations\n";
  bool ok = true;
  for (const std::int64_t p : o.primes) {
    const oracle::CauchyDavenportReport r = oracle::cauchy_davenport_check(p, o.cap);
    out << r.p << ',' << r.pairs_checked << ',' << r.violations << '\n';
    ok = ok && r.violations == 0;
  }
  out << "# Cauchy-Davenport: " << (ok ? "OK" : "FAILED") << '\n';
  return report_exit(ok);
}

GroupElem parse_single(const std::string& text, const FinAbGroup& g) {
  const GSet s = parse_set("{" + text + "}", g);
  if (s.size() != 1) throw UsageError("expected a single element, got " + text);
  return s.members().front();
}

int cmd_audit(const Options& o, std::ostream& out) {
  if (o.sets.size() != 5) throw UsageError("audit needs C A B a b");
  const FinAbGroup g = parse_group(o.group);
  const GSet c = parse_set(o.sets[0], g);
  const GSet a = parse_set(o.sets[1], g);
  const GSet b = parse_set(o.sets[2], g);
  const DescentDiagnostics d = audit_contradiction(c, a, b, parse_single(o.sets[3], g), parse_single(o.sets[4], g));
  out << "H=" << d.H.carrier().to_string() << "\n"
      << "S=" << d.S.to_string() << " T=" << d.T.to_string() << "\n"
      << "a+H==b+H: " << d.same_coset << "  S,T disjoint: " << d.S_T_disjoint << "\n"
      << "a+H = S u A_1 u B_2: " << d.a_partition << "  b+H = T u A_2 u B_1: " << d.b_partition << "\n";
  for (const AuditPart* part : {&d.part1, &d.part2}) {
    out << "i=" << part->i << (part->present ? "" : " (A_i or B_i empty)") << ": A_i=" << part->A_i.to_string()
        << " B_i=" << part->B_i.to_string() << " |A_i+B_i|=" << part->size_sum
        << " H_i=" << part->H_i.carrier().to_string() << " S(C_i)=" << part->stab_C_i.carrier().to_string()
        << "\n  (1) " << part->eq1_lhs << " < " << part->eq1_mid << " <= " << part->eq1_rhs
        << "\n  (2) " << part->eq2_lhs << " >= " << part->eq2_rhs << "\n  (3) " << part->eq3_lhs
        << " >= " << part->eq3_t1 << " >= " << part->eq3_t2 << " > " << part->eq3_t3 << "\n";
  }
  out << "final: 2|H| = " << d.final_lhs << " vs |A_1|+|B_2|+|S|+|A_2|+|B_1|+|T| = " << d.final_rhs << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumset arithmetic and certified Kneser bounds over finite abelian groups", "kneser"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print toolkit and certificate-format versions");

  Options o;
  auto add_group = [&](CLI::App* sub) { sub->add_option("group", o.group, "Group, e.g. Z6 or Z2xZ4 (Z for integers)")->required(); };
  auto add_sets = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("sets", o.sets, what);
    sub->add_option("--file", o.file, "Read set literals from a file, one per line");
  };

  auto* sumset_cmd = app.add_subcommand("sumset", "Print A+B");
  add_group(sumset_cmd);
  add_sets(sumset_cmd, "A B");
  auto* stab_cmd = app.add_subcommand("stabilizer", "Print S(A)");
  add_group(stab_cmd);
  add_sets(stab_cmd, "A");
  auto* check_cmd = app.add_subcommand("check", "Evaluate the Kneser bound for A, B");
  add_group(check_cmd);
  add_sets(check_cmd, "A B");
  auto* certify_cmd = app.add_subcommand("certify", "Write a certificate for the bound on A, B");
  add_group(certify_cmd);
  add_sets(certify_cmd, "A B");
  certify_cmd->add_option("--out", o.out_path, "Certificate path (default: standard output)");
  auto* verify_cmd = app.add_subcommand("verify", "Replay a certificate against A, B");
  add_group(verify_cmd);
  add_sets(verify_cmd, "A B");
  verify_cmd->add_option("--cert", o.cert_path, "Certificate path")->required();

  auto add_sweep = [&](CLI::App* sub) {
    add_group(sub);
    sub->add_flag("--certify", o.certify, "Also round-trip certify/verify on every pair");
    sub->add_option("--max-set-size", o.max_set_size, "Only pairs with |A|, |B| at most this");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", o.timing, "Append elapsed_ms to the report");
  };
  auto* exhaust_cmd = app.add_subcommand("exhaust", "Check every ordered pair of nonempty subsets");
  add_sweep(exhaust_cmd);
  exhaust_cmd->add_option("--cap", o.cap, "Enumeration cap on the group order");
  auto* sample_cmd = app.add_subcommand("sample", "Check seeded pseudorandom subset pairs");
  add_sweep(sample_cmd);
  sample_cmd->add_option("--count", o.count, "Number of pairs")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", o.seed, "Generator seed (required)");

  auto* cd_cmd = app.add_subcommand("cd-check", "Exhaustive Cauchy-Davenport check in Z_p");
  cd_cmd->add_option("p", o.primes, "Primes")->required();
  cd_cmd->add_option("--cap", o.cap, "Enumeration cap on p");

  auto* audit_cmd = app.add_subcommand("audit", "Evaluate the descent contradiction quantities");
  add_group(audit_cmd);
  audit_cmd->add_option("args", o.sets, "C A B a b")->expected(5);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (version) {
      out << "kneser " << kToolkitVersion << " (certificate format " << kCertificateFormat << ")\n";
      return kOk;
    }
    if (*sumset_cmd) return cmd_sumset(o, out);
    if (*stab_cmd) return cmd_stabilizer(o, out);
    if (*check_cmd) return cmd_check(o, out);
    if (*certify_cmd) return cmd_certify(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*exhaust_cmd) return cmd_exhaust(o, out);
    if (*sample_cmd) return cmd_sample(o, out);
    if (*cd_cmd) return cmd_cd_check(o, out);
    if (*audit_cmd) return cmd_audit(o, out);
    err << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::ProofFalsified ? kRejected : kUsage;
  } catch (const MalformedCertificate& e) {
    out << "reject: " << e.what() << '\n';
    return kRejected;
  }
}

}  // namespace kneser::cli
