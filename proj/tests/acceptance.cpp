// Acceptance run: one PASS/FAIL line per criterion, each under its time limit.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "diaghyp/certificate_io.hpp"
#include "diaghyp/closure_certifier.hpp"
#include "diaghyp/determinant_identities.hpp"
#include "diaghyp/membership.hpp"

using namespace diaghyp;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail.push_back(what);
    }
  }
};

// Certificates from criteria 3 and 4, reused by criterion 9.
std::vector<ClosureCertificate> g_membership_certs;

std::string np(std::int64_t n, std::int64_t p) { return "(" + std::to_string(n) + "," + std::to_string(p) + ")"; }

const MembershipRecord* direct_record(const ClosureCertificate& c) {
  for (const auto& m : c.memberships) {
    if (m.label.find("direct") != std::string::npos || m.label.find("in R") != std::string::npos) return &m;
  }
  return nullptr;
}

void determinant_identities(Outcome& out) {
  for (const auto& suite : {det1_closed_form_suite(), det2_closed_form_suite(), det2_ratio_suite()}) {
    out.require(suite.passed(), suite.name + ": " + std::to_string(suite.failures.size()) + " failures");
    out.detail.push_back(suite.name + ": " + std::to_string(suite.checked) + " checked, " +
                         std::to_string(suite.undefined) + " undefined");
  }
  out.require(bareiss_determinant(build_matrix({DetFamily::Det1, 4, 1, 1})) == 20, "Det1(4,1,1) != 20");
  out.require(det1_closed_form(4, 1, 1) == 20, "closed Det1(4,1,1) != 20");
  out.require(bareiss_determinant(build_matrix({DetFamily::Det2, 7, 4, 1})) == 294, "Det2(7,4,1) != 294");
  out.require(det2_closed_form(7, 4, 1) == 294, "closed Det2(7,4,1) != 294");
}

void unit_determinant(Outcome& out) {
  auto suite = unit_determinant_suite(128);
  out.require(suite.passed(), suite.name + " failed");
  for (const auto& f : suite.failures) out.detail.push_back(f);
  out.detail.push_back(std::to_string(suite.checked) + " (n, q) pairs");
}

void tight_memberships(Outcome& out) {
  const std::vector<std::array<std::int64_t, 3>> cases{{3, 7, 1},  {3, 13, 1}, {3, 2, 2}, {3, 5, 2},
                                                      {4, 5, 1},  {4, 13, 1}, {5, 11, 1}};
  for (const auto& [n, p, e] : cases) {
    auto c = certify_tight_closure(n, p, e);
    const std::string tag = "tight (" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(e) + ")";
    out.require(c.verdict == Verdict::Verified, tag + " not verified");
    out.require(c.path == ProofPath::TwoVariableContainment, tag + " wrong path");
    out.require(!c.containments.empty() && c.containments.front().report.contained, tag + " containment fails");
    if ((n == 3 && p == 7) || (n == 3 && p == 2)) {
      const auto* d = direct_record(c);
      const std::string target = n == 3 && p == 7 ? "x1^8*x2^8*x3^8" : "x1^5*x2^5*x3^5";
      const std::string gen = n == 3 && p == 7 ? "x1^14" : "x1^8";
      out.require(d != nullptr && d->member && d->target == target && d->generators.front() == gen,
                  tag + " direct quotient check missing or failing");
    }
    g_membership_certs.push_back(std::move(c));
  }
}

void frobenius_memberships(Outcome& out) {
  const std::vector<std::tuple<std::int64_t, std::int64_t, ProofPath>> cases{
      {3, 2, ProofPath::P2Special},          {3, 5, ProofPath::SixMPlusFive},
      {3, 11, ProofPath::SixMPlusFive},      {4, 3, ProofPath::K0Identity},
      {4, 7, ProofPath::ShiftedContainment}, {5, 7, ProofPath::ShiftedContainment},
      {5, 13, ProofPath::ShiftedContainment},
  };
  for (const auto& [n, p, path] : cases) {
    auto c = certify_frobenius_closure(n, p);
    const std::string tag = "frobenius " + np(n, p);
    out.require(c.kind == ClaimKind::FrobeniusMembership, tag + " wrong claim");
    out.require(c.verdict == Verdict::Verified, tag + " not verified");
    out.require(c.path == path, tag + " wrong path " + to_string(c.path));
    if (path == ProofPath::P2Special) out.require(c.params.q == 8, tag + " not checked at q = 8");
    const std::int64_t direct_degree = n * (n - 2) * c.params.q;
    const auto* d = direct_record(c);
    if (direct_degree <= 60) {
      out.require(d != nullptr && d->member, tag + " direct oracle missing or failing");
    }
    out.detail.push_back(tag + ": " + to_string(c.path) +
                         (d ? ", direct check at degree " + std::to_string(d->degree) : ", no direct check"));
    g_membership_certs.push_back(std::move(c));
  }
}

void frobenius_non_membership(Outcome& out) {
  for (std::int64_t p : {7, 13}) {
    PrimeField field(p);
    auto ring = hypersurface_ring(3, field);
    auto target = diagonal_monomial(ring, static_cast<std::uint32_t>(p));
    auto ideal = bracket_ideal(ring, static_cast<std::uint32_t>(2 * p), 3, 3);
    auto r = quotient_membership(target, ideal);
    out.require(!is_member(r), "(x1x2x3)^" + std::to_string(p) + " unexpectedly in the bracket ideal");
    auto c = certify_frobenius_closure(3, p);
    out.require(c.kind == ClaimKind::FrobeniusNonMembership && c.verdict == Verdict::Verified,
                "frobenius " + np(3, p) + " not certified as non-membership");
  }
}

void f_purity(Outcome& out) {
  std::size_t pairs = 0;
  for (std::int64_t n : {3, 4, 5, 6}) {
    for (std::int64_t p = 2; p < 100; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      ++pairs;
      out.require(fedder_oracle(n, p) == (p % n == 1), "disagreement at " + np(n, p));
      auto c = check_f_pure(n, p);
      out.require((c.kind == ClaimKind::FPure) == (p % n == 1), "certificate disagrees at " + np(n, p));
    }
  }
  out.detail.push_back(std::to_string(pairs) + " pairs");
}

void six_m_plus_five(Outcome& out) {
  auto suite = six_m_plus_five_suite(30);
  out.require(suite.passed(), "F(4m+3, 2m+2, m) vanishes mod 6m+5");
  for (std::int64_t m = 0; m <= 30; ++m) {
    const std::int64_t p = 6 * m + 5;
    if (!is_prime(p)) continue;
    PrimeField f(p);
    auto closed = require_integral(det2_closed_form(4 * m + 3, 2 * m + 2, m));
    out.require(f.reduce(closed) != 0, "closed form vanishes at m = " + std::to_string(m));
    out.require(f.reduce(closed) == invertibility_mod_p(six_m_plus_five_spec(m), p),
                "closed form and elimination disagree at m = " + std::to_string(m));
  }
  out.detail.push_back(std::to_string(suite.checked) + " primes");
}

void induction_audit(Outcome& out) {
  std::size_t instances = 0, premises = 0;
  for (std::uint32_t alpha = 1; alpha <= 3; ++alpha) {
    for (std::uint32_t beta = 1; beta <= 3; ++beta) {
      for (std::uint32_t gamma = 1; gamma <= 3; ++gamma) {
        for (std::uint32_t r : {3u, 4u}) {
          for (std::int64_t p : {2, 5, 7}) {
            auto rep = induce_step_check(alpha, beta, gamma, r, p);
            ++instances;
            premises += rep.premise ? 1 : 0;
            out.require(rep.holds(), "premise true, conclusion false at (" + std::to_string(alpha) + "," +
                                         std::to_string(beta) + "," + std::to_string(gamma) + "," +
                                         std::to_string(r) + "," + std::to_string(p) + ")");
          }
        }
      }
    }
  }
  out.detail.push_back(std::to_string(instances) + " instances, " + std::to_string(premises) + " with true premise");
}

void witness_soundness(Outcome& out) {
  out.require(!g_membership_certs.empty(), "criteria 3 and 4 produced no certificates");
  std::size_t witnesses = 0;
  for (const auto& c : g_membership_certs) {
    for (const auto& m : c.memberships) {
      if (!m.member) continue;
      ++witnesses;
      out.require(verify_membership_record(m), "witness fails to re-expand: " + m.label);
    }
    out.require(audit_certificate(c).empty(), "audit problems in " + to_string(c.path));
  }
  out.detail.push_back(std::to_string(witnesses) + " witnesses re-expanded");

  auto dir = std::filesystem::temp_directory_path() / ("diaghyp-acceptance-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  std::size_t index = 0;
  for (const auto& c : g_membership_certs) {
    auto first = dir / ("a" + std::to_string(index) + ".json");
    auto second = dir / ("b" + std::to_string(index) + ".json");
    ++index;
    write_certificate(c, first, 1);
    write_certificate(c, second, 2);
    const auto a = read_text(first), b = read_text(second);
    out.require(without_timing(a) == without_timing(b), "files differ beyond timing for " + first.string());
    auto back = read_certificate(first);
    out.require(back == c, "round trip changed the certificate " + first.string());
    out.require(certificate_to_json_text(back, 1) == a, "re-serialization not byte-identical " + first.string());
  }
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "determinant identity suite", 10, determinant_identities},
      {2, "unit determinant and congruences", 10, unit_determinant},
      {3, "tight-closure memberships", 60, tight_memberships},
      {4, "Frobenius-closure memberships", 60, frobenius_memberships},
      {5, "Frobenius non-membership", 30, frobenius_non_membership},
      {6, "F-purity concordance", 10, f_purity},
      {7, "F(4m+3, 2m+2, m) nonvanishing", 5, six_m_plus_five},
      {8, "induction step audit", 60, induction_audit},
      {9, "witness soundness and certificate round trip", 60, witness_soundness},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& ex) {
      outcome.ok = false;
      outcome.detail.push_back(std::string("exception: ") + ex.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_s;
    const bool pass = outcome.ok && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", seconds, c.limit_s);
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << " (" << timing
              << (in_time ? "" : ", TIME LIMIT EXCEEDED") << ")\n";
    for (const auto& d : outcome.detail) std::cout << "    " << d << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
