#include "diaghyp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "diaghyp/certificate_io.hpp"
#include "diaghyp/closure_certifier.hpp"
#include "diaghyp/errors.hpp"
#include "json.hpp"

namespace diaghyp {

using nlohmann::json;

namespace {

const std::vector<std::string> kJobCommands{"tight", "frobenius", "fpure", "det", "oracle"};

struct JobResult {
  int exit_code = kExitDecided;
  std::string verdict;
  std::vector<std::string> lines;
  std::optional<ClosureCertificate> certificate;
  std::string document;  // used when there is no certificate
};

std::string family_name(DetFamily f) { return f == DetFamily::Det1 ? "Det1" : "Det2"; }

void describe(const ClosureCertificate& cert, std::vector<std::string>& lines, const std::string& indent) {
  const auto& pp = cert.params;
  std::ostringstream params;
  params << "n=" << pp.n << " p=" << pp.p << " e=" << pp.e << " q=" << pp.q << " k=" << pp.k
         << " delta=" << pp.delta;
  if (pp.m) params << " m=" << *pp.m;
  lines.push_back(indent + "claim: " + to_string(cert.kind));
  lines.push_back(indent + "proof path: " + to_string(cert.path));
  lines.push_back(indent + "params: " + params.str());
  for (const auto& d : cert.determinants) {
    lines.push_back(indent + "determinant " + family_name(d.spec.family) + "(" + std::to_string(d.spec.n) + ", " +
                    std::to_string(d.spec.a) + ", " + std::to_string(d.spec.k) + ") = " + d.integer_value +
                    ", mod " + std::to_string(d.modulus) + " = " + std::to_string(d.residue) + "  [" + d.label + "]");
  }
  for (const auto& c : cert.congruences) {
    lines.push_back(indent + "congruence rows r = 0.." + std::to_string(c.k) + ": " + (c.holds() ? "hold" : "FAIL"));
  }
  for (const auto& c : cert.containments) {
    const auto failing = c.report.failing();
    lines.push_back(indent + "containment at degree " + std::to_string(c.report.degree) + ": " +
                    std::to_string(c.report.monomials.size() - failing.size()) + "/" +
                    std::to_string(c.report.monomials.size()) + " monomials in the ideal  [" + c.label + "]");
  }
  for (const auto& m : cert.memberships) {
    lines.push_back(indent + (m.member ? "member" : "not member") + " at degree " + std::to_string(m.degree) +
                    "  [" + m.label + "]");
  }
  if (cert.fedder) {
    std::string witness = "none";
    if (cert.fedder->exponents) {
      witness.clear();
      for (auto a : *cert.fedder->exponents) witness += (witness.empty() ? "(" : ",") + std::to_string(a);
      witness += ")";
    }
    lines.push_back(indent + "surviving monomial of f^{p-1}: " + witness);
  }
  for (const auto& note : cert.notes) lines.push_back(indent + "note: " + note);
  for (const auto& sub : cert.further) {
    lines.push_back(indent + "additional exponent e=" + std::to_string(sub.params.e) + ":");
    describe(sub, lines, indent + "  ");
  }
  lines.push_back(indent + "verdict: " + cert.verdict_label());
}

JobResult from_certificate(ClosureCertificate cert, bool decided_regardless) {
  JobResult out;
  const Verdict overall = cert.overall_verdict();
  describe(cert, out.lines, "");
  out.verdict = cert.kind == ClaimKind::FPure || cert.kind == ClaimKind::NotFPure ? cert.verdict_label()
                                                                                    : to_string(overall);
  out.exit_code = decided_regardless || overall == Verdict::Verified ? kExitDecided : kExitRefuted;
  out.certificate = std::move(cert);
  return out;
}

JobResult run_det_suites() {
  JobResult out;
  json doc;
  doc["suites"] = json::array();
  bool all = true;
  for (const auto& report : {det1_closed_form_suite(), det2_closed_form_suite(), det2_ratio_suite(),
                             unit_determinant_suite(), six_m_plus_five_suite()}) {
    all = all && report.passed();
    out.lines.push_back(report.name + ": " + std::to_string(report.checked) + " checked, " +
                        std::to_string(report.undefined) + " undefined, " + std::to_string(report.failures.size()) +
                        " failed");
    for (const auto& f : report.failures) out.lines.push_back("  failure: " + f);
    doc["suites"].push_back(json{{"name", report.name},
                                 {"checked", report.checked},
                                 {"undefined", report.undefined},
                                 {"failures", report.failures},
                                 {"passed", report.passed()}});
  }
  doc["schema_version"] = kCertificateSchemaVersion;
  doc["toolkit_version"] = kToolkitVersion;
  out.document = doc.dump(2) + "\n";
  out.verdict = all ? "passed" : "failed";
  out.exit_code = all ? kExitDecided : kExitRefuted;
  out.lines.push_back("verdict: " + out.verdict);
  return out;
}

JobResult run_det_instance(std::int64_t n, std::int64_t p) {
  JobResult out;
  auto records = instance_determinants(n, p);
  for (const auto& d : records) {
    out.lines.push_back(family_name(d.spec.family) + "(" + std::to_string(d.spec.n) + ", " + std::to_string(d.spec.a) +
                        ", " + std::to_string(d.spec.k) + ") = " + d.integer_value + ", mod " +
                        std::to_string(d.modulus) + " = " + std::to_string(d.residue) + "  [" + d.label + "]");
  }
  out.document = determinants_to_json_text(records);
  out.verdict = "computed";
  return out;
}

// (x1...xn)^{(n-2)q + shift} against (x1^{(n-1)q}, ..., xn^{(n-1)q}) in R.
JobResult run_oracle(std::int64_t n, std::int64_t p, std::int64_t e, std::int64_t shift, std::uint32_t degree_bound) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  if (shift < 0) throw PreconditionError("shift must be nonnegative");
  const auto pp = PowerParams::make(n, p, e);
  const std::int64_t power = (n - 2) * pp.q + shift;
  if (n * power > degree_bound) {
    throw PreconditionError("total degree " + std::to_string(n * power) + " exceeds the degree bound " +
                            std::to_string(degree_bound));
  }
  PrimeField field(p);
  auto ring = hypersurface_ring(n, field);
  MultiPoly target = diagonal_monomial(ring, static_cast<std::uint32_t>(power));
  IdealSpec ideal = bracket_ideal(ring, static_cast<std::uint32_t>((n - 1) * pp.q), static_cast<std::size_t>(n),
                                  static_cast<std::uint32_t>(n));
  auto result = quotient_membership(target, ideal);
  auto record = make_membership_record("(x1...xn)^" + std::to_string(power) + " in (x_i^" +
                                           std::to_string((n - 1) * pp.q) + ") in R",
                                       MembershipMethod::QuotientMacaulay, target, ideal, result);
  JobResult out;
  out.lines.push_back("target: " + record.target);
  out.lines.push_back("ideal: (" + [&] {
    std::string g;
    for (const auto& s : record.generators) g += (g.empty() ? "" : ", ") + s;
    return g;
  }() + ") + (" + *record.relation + ")");
  if (record.member) {
    out.lines.push_back("witness re-expands: " + std::string(verify_membership_record(record) ? "yes" : "NO"));
  } else {
    out.lines.push_back("rank of the degree-" + std::to_string(record.degree) + " system: " +
                        std::to_string(record.rank.value_or(0)));
  }
  out.verdict = record.member ? "Member" : "NotMember";
  out.lines.push_back("verdict: " + out.verdict);
  out.exit_code = record.member ? kExitDecided : kExitRefuted;
  out.document = membership_record_to_json_text(record);
  return out;
}

struct JobParams {
  std::string command;
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::vector<std::int64_t> e;
  std::uint32_t degree_bound = CertifierOptions{}.degree_bound;
  std::int64_t shift = 0;
  bool has_np = false;
};

JobResult run_job(const JobParams& job) {
  CertifierOptions options;
  options.degree_bound = job.degree_bound;
  if (job.command == "tight") {
    std::optional<std::int64_t> first;
    if (!job.e.empty()) first = job.e.front();
    ClosureCertificate cert = certify_tight_closure(job.n, job.p, first, options);
    for (std::size_t i = 1; i < job.e.size(); ++i) {
      cert.further.push_back(certify_tight_closure(job.n, job.p, job.e[i], options));
    }
    return from_certificate(std::move(cert), false);
  }
  if (job.command == "frobenius") {
    return from_certificate(certify_frobenius_closure(job.n, job.p, job.e, options), false);
  }
  if (job.command == "fpure") return from_certificate(check_f_pure(job.n, job.p), true);
  if (job.command == "det") return job.has_np ? run_det_instance(job.n, job.p) : run_det_suites();
  if (job.command == "oracle") {
    if (job.e.size() > 1) throw PreconditionError("oracle takes a single e");
    return run_oracle(job.n, job.p, job.e.empty() ? 1 : job.e.front(), job.shift, job.degree_bound);
  }
  throw PreconditionError("unknown command '" + job.command + "'");
}

void write_result(const JobResult& result, const std::filesystem::path& path, std::int64_t elapsed_ms) {
  if (result.certificate) {
    write_certificate(*result.certificate, path, elapsed_ms);
  } else {
    write_text_atomically(path, result.document);
  }
}

int verify_certificate_file(const std::string& path, std::ostream& out, std::ostream& err) {
  ClosureCertificate cert;
  try {
    cert = read_certificate(path);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  auto problems = audit_certificate(cert);
  std::size_t witnesses = 0;
  std::vector<const ClosureCertificate*> stack{&cert};
  while (!stack.empty()) {
    const auto* c = stack.back();
    stack.pop_back();
    for (const auto& m : c->memberships) witnesses += m.member ? 1 : 0;
    for (const auto& sub : c->further) stack.push_back(&sub);
  }
  out << "claim: " << to_string(cert.kind) << "\n";
  out << "verdict recorded: " << cert.verdict_label() << "\n";
  out << "membership witnesses re-expanded: " << witnesses << "\n";
  for (const auto& p : problems) out << "problem: " << p << "\n";
  out << (problems.empty() ? "certificate OK" : "certificate FAILED") << "\n";
  return problems.empty() ? kExitDecided : kExitRefuted;
}

std::int64_t elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Batch

BatchConfig load_batch_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& ex) {
    throw std::runtime_error("config " + path.string() + " is not valid JSON: " + ex.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config must be a JSON object");
  BatchConfig config;
  std::filesystem::path dir = doc.value("output_dir", std::string("."));
  config.output_dir = dir.is_absolute() ? dir : path.parent_path() / dir;
  if (!doc.contains("jobs")) return config;
  if (!doc["jobs"].is_array()) throw std::runtime_error("\"jobs\" must be an array");
  std::size_t index = 0;
  for (const auto& j : doc["jobs"]) {
    try {
      BatchJob job;
      job.command = j.at("command").get<std::string>();
      if (j.contains("n")) job.n = j.at("n").get<std::int64_t>();
      if (j.contains("p")) job.p = j.at("p").get<std::int64_t>();
      if (j.contains("e")) {
        if (j.at("e").is_array()) {
          job.e = j.at("e").get<std::vector<std::int64_t>>();
        } else {
          job.e.push_back(j.at("e").get<std::int64_t>());
        }
      }
      if (j.contains("degree_bound")) job.degree_bound = j.at("degree_bound").get<std::uint32_t>();
      config.jobs.push_back(std::move(job));
    } catch (const json::exception& ex) {
      config.malformed.emplace_back(index, ex.what());
      config.jobs.push_back(BatchJob{"<malformed>", 0, 0, {}, {}});
    }
    ++index;
  }
  return config;
}

std::vector<BatchOutcome> batch_verify(const BatchConfig& config) {
  std::vector<BatchOutcome> outcomes;
  if (!config.jobs.empty()) std::filesystem::create_directories(config.output_dir);
  for (std::size_t i = 0; i < config.jobs.size(); ++i) {
    const auto& job = config.jobs[i];
    BatchOutcome outcome{i, job.command, job.n, job.p, false, "", std::nullopt, 0};
    const auto start = std::chrono::steady_clock::now();
    auto malformed = std::find_if(config.malformed.begin(), config.malformed.end(),
                                  [&](const auto& m) { return m.first == i; });
    try {
      if (malformed != config.malformed.end()) throw PreconditionError("malformed job: " + malformed->second);
      if (std::find(kJobCommands.begin(), kJobCommands.end(), job.command) == kJobCommands.end()) {
        throw PreconditionError("unknown command '" + job.command + "'");
      }
      JobParams params{job.command, job.n, job.p, job.e, job.degree_bound.value_or(CertifierOptions{}.degree_bound),
                       0, job.command != "det" || job.n != 0 || job.p != 0};
      JobResult result = run_job(params);
      outcome.elapsed_ms = elapsed_since(start);
      outcome.verdict = result.verdict;
      char name[64];
      std::snprintf(name, sizeof name, "job-%03zu-%s-n%lld-p%lld.json", i, job.command.c_str(),
                    static_cast<long long>(job.n), static_cast<long long>(job.p));
      auto file = config.output_dir / name;
      write_result(result, file, outcome.elapsed_ms);
      outcome.file = file;
    } catch (const std::exception& ex) {
      outcome.rejected = true;
      outcome.verdict = ex.what();
      outcome.elapsed_ms = elapsed_since(start);
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

void print_batch_summary(const std::vector<BatchOutcome>& outcomes, std::ostream& out) {
  out << std::left << std::setw(5) << "job" << std::setw(11) << "command" << std::setw(6) << "n" << std::setw(8)
      << "p" << std::setw(10) << "elapsed" << "verdict\n";
  for (const auto& o : outcomes) {
    out << std::left << std::setw(5) << o.index << std::setw(11) << o.command << std::setw(6) << o.n << std::setw(8)
        << o.p << std::setw(10) << (std::to_string(o.elapsed_ms) + "ms")
        << (o.rejected ? "rejected: " + o.verdict : o.verdict) << "\n";
  }
  const auto rejected = std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.rejected; });
  out << outcomes.size() << " jobs, " << rejected << " rejected\n";
}

// ---------------------------------------------------------------------------
// Entry point

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certification of tight and Frobenius closure memberships in diagonal hypersurfaces over F_p",
               "diaghyp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  JobParams params;
  std::string json_out;
  std::string cert_path;
  std::string batch_path;

  auto add_np = [&](CLI::App* sub, bool required) {
    auto* n = sub->add_option("--n", params.n, "number of variables");
    auto* p = sub->add_option("--p", params.p, "characteristic (prime)");
    if (required) {
      n->required();
      p->required();
    }
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json-out", json_out, "write the certificate to this path");
    sub->add_option("--degree-bound", params.degree_bound, "largest total degree for direct checks in R")
        ->check(CLI::PositiveNumber);
  };

  auto* tight = app.add_subcommand("tight", "certify (x1...xn)^{n-2} in the tight closure of (x_i^{n-1})");
  add_np(tight, true);
  tight->add_option("--e", params.e, "exponents e with q = p^e = 1 mod n (default: order of p mod n)");
  add_common(tight);

  auto* frob = app.add_subcommand("frobenius", "decide Frobenius closure membership of (x1...xn)^{n-2}");
  add_np(frob, true);
  frob->add_option("--e", params.e, "extra exponents for non-membership checks when p = 1 mod n");
  add_common(frob);

  auto* fpure = app.add_subcommand("fpure", "decide whether the hypersurface is F-pure");
  add_np(fpure, true);
  fpure->add_option("--json-out", json_out, "write the certificate to this path");

  auto* det = app.add_subcommand("det", "run the determinant identity suites, or the determinants of one (n, p)");
  add_np(det, false);
  det->add_option("--json-out", json_out, "write the report to this path");

  auto* oracle = app.add_subcommand("oracle", "raw membership (x1...xn)^{(n-2)q+shift} in (x_i^{(n-1)q}) in R");
  add_np(oracle, true);
  oracle->add_option("--e", params.e, "q = p^e (default 1)")->expected(1);
  oracle->add_option("--shift", params.shift, "added to the exponent (n-2)q (default 0)");
  add_common(oracle);

  auto* verify = app.add_subcommand("verify-cert", "re-check a certificate file without running the solver");
  verify->add_option("file", cert_path, "certificate JSON")->required();

  auto* batch = app.add_subcommand("batch", "run a JSON job list and write one certificate per job");
  batch->add_option("--batch,config", batch_path, "batch config JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return verify_certificate_file(cert_path, out, err);
    if (batch->parsed()) {
      BatchConfig config;
      try {
        config = load_batch_config(batch_path);
      } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
      }
      print_batch_summary(batch_verify(config), out);
      return kExitDecided;
    }
    CLI::App* chosen = app.get_subcommands().front();
    params.command = chosen->get_name();
    params.has_np = params.n != 0 || params.p != 0;
    if (params.command == "det" && params.has_np && (params.n == 0 || params.p == 0)) {
      throw PreconditionError("det needs both --n and --p, or neither");
    }
    const auto start = std::chrono::steady_clock::now();
    JobResult result = run_job(params);
    for (const auto& line : result.lines) out << line << "\n";
    if (!json_out.empty()) write_result(result, json_out, elapsed_since(start));
    return result.exit_code;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace diaghyp
