#include "doctest.h"

#include <algorithm>

#include "diaghyp/closure_certifier.hpp"
#include "diaghyp/errors.hpp"

using namespace diaghyp;

namespace {

const MembershipRecord* find_membership(const ClosureCertificate& c, const std::string& fragment) {
  for (const auto& m : c.memberships) {
    if (m.label.find(fragment) != std::string::npos) return &m;
  }
  return nullptr;
}

void check_sound(const ClosureCertificate& c) {
  CHECK(audit_certificate(c).empty());
  for (const auto& m : c.memberships) {
    if (m.member) CHECK(verify_membership_record(m));
  }
  for (const auto& cont : c.containments) {
    CHECK(cont.report.monomials.size() == cont.report.degree + 1);
  }
}

}  // namespace

TEST_CASE("tight closure at (3, 7, 1)") {
  auto c = certify_tight_closure(3, 7, 1);
  CHECK(c.verdict == Verdict::Verified);
  CHECK(c.kind == ClaimKind::TightClosureMembership);
  CHECK(c.path == ProofPath::TwoVariableContainment);
  CHECK(c.params.k == 2);
  REQUIRE(c.determinants.size() == 1);
  CHECK(c.determinants[0].integer_value == "50");
  CHECK(c.determinants[0].residue == 1);
  REQUIRE(c.containments.size() == 1);
  CHECK(c.containments[0].report.degree == 6);
  CHECK(c.containments[0].report.contained);
  const auto* direct = find_membership(c, "direct");
  REQUIRE(direct);
  CHECK(direct->member);
  CHECK(direct->target == "x1^8*x2^8*x3^8");
  CHECK(direct->generators.front() == "x1^14");
  check_sound(c);
}

TEST_CASE("tight closure at (3, 2, 2) checks degree 15 directly") {
  auto c = certify_tight_closure(3, 2, 2);
  CHECK(c.verdict == Verdict::Verified);
  CHECK(c.params.q == 4);
  CHECK(c.params.k == 1);
  const auto* direct = find_membership(c, "direct");
  REQUIRE(direct);
  CHECK(direct->degree == 15);
  CHECK(direct->member);
  check_sound(c);
}

TEST_CASE("oversized instances are refused rather than attempted") {
  // q = 37^4
  CHECK_THROWS_AS(certify_tight_closure(5, 37), DeskScaleExceeded);
}

TEST_CASE("tight closure preconditions") {
  CHECK_THROWS_AS(certify_tight_closure(3, 3), PreconditionError);
  CHECK_THROWS_AS(certify_tight_closure(3, 3, 2), PreconditionError);
  CHECK_THROWS_AS(certify_tight_closure(3, 2, 1), PreconditionError);  // q = 2 is not 1 mod 3
  CHECK_THROWS_AS(certify_tight_closure(3, 7, 0), PreconditionError);
  CHECK_THROWS_AS(certify_tight_closure(3, 9), PreconditionError);
  CHECK_THROWS_AS(certify_tight_closure(2, 3), PreconditionError);
}

TEST_CASE("two-variable path and direct check agree") {
  for (std::int64_t n : {3, 4, 5}) {
    for (std::int64_t p = 2; p < 40; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      if (PowerParams::make(n, p, mult_order(p, n)).q > 200) continue;
      auto c = certify_tight_closure(n, p);
      const auto* direct = find_membership(c, "direct");
      if (direct == nullptr) continue;
      const bool two_variable = c.containments.front().report.contained;
      CHECK(direct->member == two_variable);
    }
  }
}

TEST_CASE("Frobenius closure examples") {
  auto p2 = certify_frobenius_closure(3, 2);
  CHECK(p2.kind == ClaimKind::FrobeniusMembership);
  CHECK(p2.path == ProofPath::P2Special);
  CHECK(p2.params.q == 8);
  CHECK(p2.verdict == Verdict::Verified);
  check_sound(p2);

  auto p5 = certify_frobenius_closure(3, 5);
  CHECK(p5.path == ProofPath::SixMPlusFive);
  CHECK(p5.verdict == Verdict::Verified);
  REQUIRE(p5.params.m);
  CHECK(*p5.params.m == 0);
  const auto* ab = find_membership(p5, "AB(A+B)");
  REQUIRE(ab);
  CHECK(ab->target == "A^2*B + A*B^2");
  CHECK(ab->member);
  check_sound(p5);

  auto p7 = certify_frobenius_closure(3, 7);
  CHECK(p7.kind == ClaimKind::FrobeniusNonMembership);
  CHECK(p7.path == ProofPath::FPureExclusion);
  CHECK(p7.verdict == Verdict::Verified);
  const auto* direct = find_membership(p7, "direct");
  REQUIRE(direct);
  CHECK_FALSE(direct->member);
  CHECK(direct->target == "x1^7*x2^7*x3^7");
  check_sound(p7);

  auto k0 = certify_frobenius_closure(4, 3);
  CHECK(k0.path == ProofPath::K0Identity);
  CHECK(k0.verdict == Verdict::Verified);
  check_sound(k0);

  auto shifted = certify_frobenius_closure(4, 7);
  CHECK(shifted.path == ProofPath::ShiftedContainment);
  CHECK(shifted.verdict == Verdict::Verified);
  REQUIRE(shifted.determinants.size() == 1);
  CHECK(shifted.determinants[0].integer_value == "20");
  CHECK(shifted.determinants[0].residue == 6);
  CHECK(shifted.containments[0].report.degree == 5);
  check_sound(shifted);

  CHECK_THROWS_AS(certify_frobenius_closure(3, 3), PreconditionError);
  CHECK_THROWS_AS(certify_frobenius_closure(4, 2), PreconditionError);
}

TEST_CASE("Frobenius membership iff p is not 1 mod n") {
  for (std::int64_t n : {3, 4, 5}) {
    for (std::int64_t p = 2; p < 50; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      auto c = certify_frobenius_closure(n, p);
      CAPTURE(n);
      CAPTURE(p);
      CHECK(c.verdict == Verdict::Verified);
      CHECK((c.kind == ClaimKind::FrobeniusMembership) == (p % n != 1));
      if (c.path == ProofPath::SixMPlusFive) {
        CHECK(n == 3);
        CHECK(p % 6 == 5);
        CHECK(c.determinants.front().residue != 0);
      }
      check_sound(c);
    }
  }
}

TEST_CASE("extra exponents in the non-membership case") {
  auto c = certify_frobenius_closure(3, 7, {2});
  CHECK(c.verdict == Verdict::Verified);
  // q = 49 is above the default degree bound, so it is skipped with a note
  CHECK(std::any_of(c.notes.begin(), c.notes.end(),
                    [](const std::string& s) { return s.find("q = 49") != std::string::npos; }));
  auto small = certify_frobenius_closure(4, 5, {2}, CertifierOptions{200, 20000});
  std::size_t direct = 0;
  for (const auto& m : small.memberships) direct += m.member ? 0 : 1;
  CHECK(direct == 2);
}

TEST_CASE("F-purity examples") {
  auto c37 = check_f_pure(3, 7);
  CHECK(c37.kind == ClaimKind::FPure);
  CHECK(c37.verdict_label() == "FPure");
  REQUIRE(c37.fedder);
  REQUIRE(c37.fedder->exponents);
  CHECK(*c37.fedder->exponents == std::vector<std::uint32_t>{2, 2, 2});
  CHECK(c37.fedder->multinomial == 6);

  CHECK(check_f_pure(3, 5).kind == ClaimKind::NotFPure);
  CHECK(check_f_pure(4, 5).kind == ClaimKind::FPure);
  CHECK_THROWS_AS(check_f_pure(3, 3), PreconditionError);
}

TEST_CASE("Fedder oracle examples") {
  CHECK(fedder_oracle(3, 7));
  CHECK_FALSE(fedder_oracle(3, 5));
  CHECK(fedder_oracle(3, 13));
  CHECK_THROWS_AS(fedder_oracle(3, 3), PreconditionError);
}

TEST_CASE("Fedder oracle agrees with expanding f^{p-1}") {
  for (std::int64_t n : {2, 3, 4}) {
    for (std::int64_t p = 2; p < 30; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      PrimeField field(p);
      auto ring = hypersurface_ring(n, field);
      auto f = fermat_relation(ring, static_cast<std::uint32_t>(n));
      auto power = poly_pow_naive(f, static_cast<std::uint64_t>(p - 1));
      bool survives = false;
      for (const auto& [m, c] : power.terms()) {
        bool outside = true;
        for (std::size_t i = 0; i < m.arity(); ++i) outside = outside && m[i] < static_cast<std::uint32_t>(p);
        survives = survives || outside;
      }
      CAPTURE(n);
      CAPTURE(p);
      CHECK(fedder_oracle(n, p) == survives);
    }
  }
}

TEST_CASE("F-purity concordance") {
  for (std::int64_t n : {3, 4, 5, 6}) {
    for (std::int64_t p = 2; p < 100; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      CHECK(fedder_oracle(n, p) == (p % n == 1));
    }
  }
}

TEST_CASE("audit catches tampering") {
  auto c = certify_tight_closure(3, 7, 1);
  REQUIRE(audit_certificate(c).empty());

  auto bad_witness = c;
  for (auto& m : bad_witness.memberships) {
    if (m.member && !m.witness.empty()) {
      m.witness.front() = m.witness.front() == "0" ? "1" : "0";
      break;
    }
  }
  CHECK_FALSE(audit_certificate(bad_witness).empty());

  auto bad_path = c;
  bad_path.path = ProofPath::SixMPlusFive;
  CHECK_FALSE(audit_certificate(bad_path).empty());

  auto bad_report = c;
  bad_report.containments.front().report.monomials.pop_back();
  CHECK_FALSE(audit_certificate(bad_report).empty());
}

TEST_CASE("certificates are deterministic") {
  CHECK(certify_tight_closure(4, 5, 1) == certify_tight_closure(4, 5, 1));
  CHECK(certify_frobenius_closure(5, 7) == certify_frobenius_closure(5, 7));
}

TEST_CASE("instance determinants") {
  auto d = instance_determinants(4, 7);
  REQUIRE(d.size() == 2);
  CHECK(d[0].residue == 1);
  CHECK(d[1].integer_value == "20");
  auto d3 = instance_determinants(3, 11);
  REQUIRE(d3.size() == 2);
  CHECK(d3[1].spec == six_m_plus_five_spec(1));
  CHECK(d3[1].residue == 8);
}

TEST_CASE("oversized determinants are refused in every entry point") {
  CHECK_THROWS_AS(instance_determinants(5, 37), DeskScaleExceeded);
  CHECK_THROWS_AS(certify_frobenius_closure(4, 4099), DeskScaleExceeded);
}
