#include "diaghyp/certificate_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace diaghyp {

using nlohmann::json;

namespace {

json to_json(const PowerParams& p) {
  return json{{"n", p.n}, {"p", p.p}, {"e", p.e}, {"q", p.q}, {"k", p.k}, {"delta", p.delta},
              {"m", p.m ? json(*p.m) : json(nullptr)}};
}

PowerParams params_from_json(const json& j) {
  PowerParams p;
  p.n = j.at("n").get<std::int64_t>();
  p.p = j.at("p").get<std::int64_t>();
  p.e = j.at("e").get<std::int64_t>();
  p.q = j.at("q").get<std::int64_t>();
  p.k = j.at("k").get<std::int64_t>();
  p.delta = j.at("delta").get<std::int64_t>();
  if (!j.at("m").is_null()) p.m = j.at("m").get<std::int64_t>();
  return p;
}

json to_json(const DeterminantRecord& d) {
  return json{{"label", d.label},
              {"family", d.spec.family == DetFamily::Det1 ? "Det1" : "Det2"},
              {"n", d.spec.n},
              {"a", d.spec.a},
              {"k", d.spec.k},
              {"value", d.integer_value},
              {"modulus", d.modulus},
              {"mod_p", std::to_string(d.residue)}};
}

DeterminantRecord determinant_from_json(const json& j) {
  DeterminantRecord d;
  d.label = j.at("label").get<std::string>();
  const auto family = j.at("family").get<std::string>();
  if (family != "Det1" && family != "Det2") throw std::invalid_argument("unknown determinant family " + family);
  d.spec.family = family == "Det1" ? DetFamily::Det1 : DetFamily::Det2;
  d.spec.n = j.at("n").get<std::int64_t>();
  d.spec.a = j.at("a").get<std::int64_t>();
  d.spec.k = j.at("k").get<std::int64_t>();
  d.integer_value = j.at("value").get<std::string>();
  d.modulus = j.at("modulus").get<std::int64_t>();
  d.residue = static_cast<Residue>(std::stoul(j.at("mod_p").get<std::string>()));
  return d;
}

json to_json(const CongruenceReport& c) {
  json rows = json::array();
  for (const auto& r : c.rows) rows.push_back(json{{"r", r.r}, {"lhs", r.lhs}, {"rhs", r.rhs}});
  return json{{"n", c.n}, {"q", c.q}, {"p", c.p}, {"k", c.k}, {"rows", rows}, {"holds", c.holds()}};
}

CongruenceReport congruence_from_json(const json& j) {
  CongruenceReport c;
  c.n = j.at("n").get<std::int64_t>();
  c.q = j.at("q").get<std::int64_t>();
  c.p = j.at("p").get<std::int64_t>();
  c.k = j.at("k").get<std::int64_t>();
  for (const auto& r : j.at("rows")) {
    c.rows.push_back({r.at("r").get<std::int64_t>(), r.at("lhs").get<Residue>(), r.at("rhs").get<Residue>()});
  }
  return c;
}

json to_json(const ContainmentRecord& c) {
  json monos = json::array();
  for (const auto& m : c.report.monomials) monos.push_back(json{{"a_exponent", m.a_exponent}, {"in_ideal", m.in_ideal}});
  return json{{"label", c.label},          {"modulus", c.modulus},
              {"generators", c.generators}, {"degree", c.report.degree},
              {"contained", c.report.contained}, {"rank", c.report.rank},
              {"monomials", monos}};
}

ContainmentRecord containment_from_json(const json& j) {
  ContainmentRecord c;
  c.label = j.at("label").get<std::string>();
  c.modulus = j.at("modulus").get<std::int64_t>();
  c.generators = j.at("generators").get<std::vector<std::string>>();
  c.report.degree = j.at("degree").get<std::uint32_t>();
  c.report.contained = j.at("contained").get<bool>();
  c.report.rank = j.at("rank").get<std::size_t>();
  for (const auto& m : j.at("monomials")) {
    c.report.monomials.push_back({m.at("a_exponent").get<std::uint32_t>(), m.at("in_ideal").get<bool>()});
  }
  return c;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

json to_json(const MembershipRecord& m) {
  return json{{"label", m.label},
              {"method", to_string(m.method)},
              {"modulus", m.modulus},
              {"variables", m.variables},
              {"target", m.target},
              {"generators", m.generators},
              {"relation", optional_json(m.relation)},
              {"member", m.member},
              {"degree", m.degree},
              {"witness", m.witness},
              {"relation_witness", optional_json(m.relation_witness)},
              {"rank", optional_json(m.rank)}};
}

MembershipRecord membership_from_json(const json& j) {
  MembershipRecord m;
  m.label = j.at("label").get<std::string>();
  m.method = parse_membership_method(j.at("method").get<std::string>());
  m.modulus = j.at("modulus").get<std::int64_t>();
  m.variables = j.at("variables").get<std::vector<std::string>>();
  m.target = j.at("target").get<std::string>();
  m.generators = j.at("generators").get<std::vector<std::string>>();
  m.relation = optional_from<std::string>(j, "relation");
  m.member = j.at("member").get<bool>();
  m.degree = j.at("degree").get<std::uint32_t>();
  m.witness = j.at("witness").get<std::vector<std::string>>();
  m.relation_witness = optional_from<std::string>(j, "relation_witness");
  m.rank = optional_from<std::size_t>(j, "rank");
  return m;
}

json to_json(const FedderRecord& f) {
  return json{{"criterion", f.criterion},
              {"survives", f.survives},
              {"exponents", optional_json(f.exponents)},
              {"multinomial_mod_p", f.multinomial}};
}

FedderRecord fedder_from_json(const json& j) {
  FedderRecord f;
  f.criterion = j.at("criterion").get<bool>();
  f.survives = j.at("survives").get<bool>();
  f.exponents = optional_from<std::vector<std::uint32_t>>(j, "exponents");
  f.multinomial = j.at("multinomial_mod_p").get<Residue>();
  return f;
}

json to_json(const ClosureCertificate& c) {
  json j;
  j["claim"] = to_string(c.kind);
  j["params"] = to_json(c.params);
  j["proof_path"] = to_string(c.path);
  j["status"] = to_string(c.verdict);
  j["verdict"] = c.verdict_label();
  j["determinants"] = json::array();
  for (const auto& d : c.determinants) j["determinants"].push_back(to_json(d));
  j["congruences"] = json::array();
  for (const auto& x : c.congruences) j["congruences"].push_back(to_json(x));
  j["containments"] = json::array();
  for (const auto& x : c.containments) j["containments"].push_back(to_json(x));
  j["memberships"] = json::array();
  for (const auto& x : c.memberships) j["memberships"].push_back(to_json(x));
  j["fedder"] = c.fedder ? to_json(*c.fedder) : json(nullptr);
  j["notes"] = c.notes;
  j["further"] = json::array();
  for (const auto& x : c.further) j["further"].push_back(to_json(x));
  return j;
}

ClosureCertificate certificate_from_json(const json& j) {
  ClosureCertificate c;
  c.kind = parse_claim_kind(j.at("claim").get<std::string>());
  c.params = params_from_json(j.at("params"));
  c.path = parse_proof_path(j.at("proof_path").get<std::string>());
  c.verdict = parse_verdict(j.at("status").get<std::string>());
  for (const auto& x : j.at("determinants")) c.determinants.push_back(determinant_from_json(x));
  for (const auto& x : j.at("congruences")) c.congruences.push_back(congruence_from_json(x));
  for (const auto& x : j.at("containments")) c.containments.push_back(containment_from_json(x));
  for (const auto& x : j.at("memberships")) c.memberships.push_back(membership_from_json(x));
  if (!j.at("fedder").is_null()) c.fedder = fedder_from_json(j.at("fedder"));
  c.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& x : j.at("further")) c.further.push_back(certificate_from_json(x));
  if (j.at("verdict").get<std::string>() != c.verdict_label()) {
    throw std::invalid_argument("verdict field disagrees with claim and status");
  }
  return c;
}

}  // namespace

std::string certificate_to_json_text(const ClosureCertificate& cert, std::optional<std::int64_t> elapsed_ms) {
  json j = to_json(cert);
  j["schema_version"] = kCertificateSchemaVersion;
  j["toolkit_version"] = kToolkitVersion;
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j.dump(2) + "\n";
}

ClosureCertificate certificate_from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("certificate is not valid JSON: ") + ex.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kCertificateSchemaVersion) {
      throw std::invalid_argument("unsupported certificate schema version");
    }
    return certificate_from_json(j);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed certificate: ") + ex.what());
  }
}

void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move certificate into " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_certificate(const ClosureCertificate& cert, const std::filesystem::path& path,
                       std::optional<std::int64_t> elapsed_ms) {
  write_text_atomically(path, certificate_to_json_text(cert, elapsed_ms));
}

ClosureCertificate read_certificate(const std::filesystem::path& path) {
  return certificate_from_json_text(read_text(path));
}

std::string membership_record_to_json_text(const MembershipRecord& record) {
  json j = to_json(record);
  j["schema_version"] = kCertificateSchemaVersion;
  j["toolkit_version"] = kToolkitVersion;
  return j.dump(2) + "\n";
}

std::string determinants_to_json_text(const std::vector<DeterminantRecord>& records) {
  json j;
  j["determinants"] = json::array();
  for (const auto& r : records) j["determinants"].push_back(to_json(r));
  j["schema_version"] = kCertificateSchemaVersion;
  j["toolkit_version"] = kToolkitVersion;
  return j.dump(2) + "\n";
}

std::string without_timing(std::string_view json_text) {
  json j = json::parse(json_text);
  j.erase("elapsed_ms");
  return j.dump(2) + "\n";
}

}  // namespace diaghyp
