#pragma once

/*
 * End-to-end certification of the closure memberships in
 *     R = F_p[x1, ..., xn] / (x1^n + ... + xn^n).
 *
 * Tight closure:   (x1...xn)^{n-2} in (x1^{n-1}, ..., xn^{n-1})^*, attested at
 *                  q = p^e = nk + 1 by (A,B)^{(2n-3)k} in
 *                  (A^{(n-1)k}, B^{(n-1)k}, (A+B)^{(n-1)k}).
 * Frobenius closure: the same element is in the Frobenius closure iff
 *                  p != 1 mod n; each case carries its own certificate path.
 * F-purity:        R is F-pure iff p = 1 mod n, cross-checked against a
 *                  Fedder-type enumeration of f^{p-1}.
 *
 * Certificates hold every polynomial in canonical text form so they can be
 * re-checked without the solver (see audit_certificate).
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diaghyp/determinant_identities.hpp"
#include "diaghyp/exact_arith.hpp"
#include "diaghyp/membership.hpp"
#include "diaghyp/multipoly.hpp"

namespace diaghyp {

enum class ClaimKind { TightClosureMembership, FrobeniusMembership, FrobeniusNonMembership, FPure, NotFPure };

enum class ProofPath {
  TwoVariableContainment,  // q = nk + 1, unit determinant
  P2Special,               // n = 3, p = 2, checked at q = 8
  SixMPlusFive,            // n = 3, p = 6m + 5
  K0Identity,              // n >= 4, p < n
  ShiftedContainment,      // n >= 4, p = nk + delta, k >= 1
  FPureExclusion,          // p = 1 mod n
  FedderCriterion,         // F-purity decision
};

enum class Verdict { Verified, Refuted, Inconclusive };

std::string to_string(ClaimKind kind);
std::string to_string(ProofPath path);
std::string to_string(Verdict verdict);
ClaimKind parse_claim_kind(const std::string& text);
ProofPath parse_proof_path(const std::string& text);
Verdict parse_verdict(const std::string& text);

struct DeterminantRecord {
  std::string label;
  BinomMatrixSpec spec;
  std::string integer_value;  // decimal
  std::int64_t modulus = 0;
  Residue residue = 0;

  friend bool operator==(const DeterminantRecord&, const DeterminantRecord&) = default;
};

struct ContainmentRecord {
  std::string label;
  std::int64_t modulus = 0;
  std::vector<std::string> generators;  // over variables A, B
  ContainmentReport report;

  friend bool operator==(const ContainmentRecord&, const ContainmentRecord&) = default;
};

enum class MembershipMethod { Macaulay, QuotientMacaulay, Identity };
std::string to_string(MembershipMethod method);
MembershipMethod parse_membership_method(const std::string& text);

struct MembershipRecord {
  std::string label;
  MembershipMethod method = MembershipMethod::Macaulay;
  std::int64_t modulus = 0;
  std::vector<std::string> variables;
  std::string target;
  std::vector<std::string> generators;
  std::optional<std::string> relation;
  bool member = false;
  std::uint32_t degree = 0;
  // Present when member.
  std::vector<std::string> witness;
  std::optional<std::string> relation_witness;
  // Present when not member.
  std::optional<std::size_t> rank;

  friend bool operator==(const MembershipRecord&, const MembershipRecord&) = default;
};

struct FedderRecord {
  bool criterion = false;  // p = 1 mod n
  bool survives = false;   // f^{p-1} has a monomial outside (X_1^p, ..., X_n^p)
  std::optional<std::vector<std::uint32_t>> exponents;
  Residue multinomial = 0;

  friend bool operator==(const FedderRecord&, const FedderRecord&) = default;
};

struct ClosureCertificate {
  ClaimKind kind = ClaimKind::TightClosureMembership;
  PowerParams params;
  ProofPath path = ProofPath::TwoVariableContainment;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<DeterminantRecord> determinants;
  std::vector<CongruenceReport> congruences;
  std::vector<ContainmentRecord> containments;
  std::vector<MembershipRecord> memberships;
  std::optional<FedderRecord> fedder;
  std::vector<std::string> notes;
  // Certificates for additional exponents e, each checked independently.
  std::vector<ClosureCertificate> further;

  // FPure / NotFPure for F-purity certificates, the verdict name otherwise.
  std::string verdict_label() const;
  // Verdict combined with every nested certificate.
  Verdict overall_verdict() const;

  friend bool operator==(const ClosureCertificate&, const ClosureCertificate&) = default;
};

// Largest exact binomial determinant attempted; DeskScaleExceeded beyond it.
inline constexpr std::int64_t kMaxDeterminantSize = 400;

struct CertifierOptions {
  // Direct quotient oracles and reduced-ring checks run only up to this total degree.
  std::uint32_t degree_bound = 60;
  std::size_t max_columns = 20000;
};

// Requires n >= 3, p prime, p not dividing n, q = p^e = 1 mod n, q > 1.
// Default e is the multiplicative order of p mod n.
ClosureCertificate certify_tight_closure(std::int64_t n, std::int64_t p, std::optional<std::int64_t> e = {},
                                         const CertifierOptions& options = {});

// extra_exponents adds non-membership checks at q = p^e in the p = 1 mod n case.
ClosureCertificate certify_frobenius_closure(std::int64_t n, std::int64_t p,
                                             const std::vector<std::int64_t>& extra_exponents = {},
                                             const CertifierOptions& options = {});

ClosureCertificate check_f_pure(std::int64_t n, std::int64_t p);

// Determinants attached to (n, p): the unit determinant at q = p^{ord}, plus
// the Frobenius-case matrix when one applies.
std::vector<DeterminantRecord> instance_determinants(std::int64_t n, std::int64_t p);

// True iff some a with sum a_i = p - 1 and n a_i <= p - 1 has a multinomial
// coefficient (p-1)! / (a_1! ... a_n!) that is nonzero mod p.
bool fedder_oracle(std::int64_t n, std::int64_t p);
std::optional<std::vector<std::uint32_t>> fedder_witness(std::int64_t n, std::int64_t p);

// Building blocks, shared with the CLI and tests.
RingPtr hypersurface_ring(std::int64_t n, const PrimeField& field);
RingPtr two_variable_ring(const PrimeField& field);
MultiPoly fermat_relation(const RingPtr& ring, std::uint32_t n);
MultiPoly diagonal_monomial(const RingPtr& ring, std::uint32_t power);
// (x1^power, ..., x_count^power) with the Fermat relation of degree n.
IdealSpec bracket_ideal(const RingPtr& ring, std::uint32_t power, std::size_t count, std::uint32_t n);
// (A^power, B^power, (A+B)^power).
IdealSpec two_variable_ideal(const RingPtr& ring, std::uint32_t power);

MembershipRecord make_membership_record(std::string label, MembershipMethod method, const MultiPoly& target,
                                        const IdealSpec& ideal, const MembershipResult& result);

// Re-parses the polynomials of a record and re-checks the witness combination.
bool verify_membership_record(const MembershipRecord& record);

// Structural and witness checks of a certificate without re-running any solver.
// Returns a list of problems; empty means the certificate is sound.
std::vector<std::string> audit_certificate(const ClosureCertificate& cert);

}  // namespace diaghyp
