#include "diaghyp/closure_certifier.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <stdexcept>

namespace diaghyp {

namespace {

template <typename Enum, std::size_t N>
std::string name_of(Enum value, const std::array<std::pair<Enum, const char*>, N>& table) {
  for (const auto& [v, s] : table) {
    if (v == value) return s;
  }
  throw std::logic_error("unnamed enum value");
}

template <typename Enum, std::size_t N>
Enum value_of(const std::string& text, const std::array<std::pair<Enum, const char*>, N>& table) {
  for (const auto& [v, s] : table) {
    if (text == s) return v;
  }
  throw std::invalid_argument("unknown tag '" + text + "'");
}

constexpr std::array<std::pair<ClaimKind, const char*>, 5> kClaimNames{{
    {ClaimKind::TightClosureMembership, "TightClosureMembership"},
    {ClaimKind::FrobeniusMembership, "FrobeniusMembership"},
    {ClaimKind::FrobeniusNonMembership, "FrobeniusNonMembership"},
    {ClaimKind::FPure, "FPure"},
    {ClaimKind::NotFPure, "NotFPure"},
}};

constexpr std::array<std::pair<ProofPath, const char*>, 7> kPathNames{{
    {ProofPath::TwoVariableContainment, "two-variable-containment"},
    {ProofPath::P2Special, "p2-special"},
    {ProofPath::SixMPlusFive, "six-m-plus-five"},
    {ProofPath::K0Identity, "k0-identity"},
    {ProofPath::ShiftedContainment, "shifted-containment"},
    {ProofPath::FPureExclusion, "fpure-exclusion"},
    {ProofPath::FedderCriterion, "fedder-criterion"},
}};

constexpr std::array<std::pair<Verdict, const char*>, 3> kVerdictNames{{
    {Verdict::Verified, "verified"},
    {Verdict::Refuted, "refuted"},
    {Verdict::Inconclusive, "inconclusive"},
}};

constexpr std::array<std::pair<MembershipMethod, const char*>, 3> kMethodNames{{
    {MembershipMethod::Macaulay, "macaulay"},
    {MembershipMethod::QuotientMacaulay, "quotient-macaulay"},
    {MembershipMethod::Identity, "identity"},
}};

}  // namespace

std::string to_string(ClaimKind kind) { return name_of(kind, kClaimNames); }
std::string to_string(ProofPath path) { return name_of(path, kPathNames); }
std::string to_string(Verdict verdict) { return name_of(verdict, kVerdictNames); }
std::string to_string(MembershipMethod method) { return name_of(method, kMethodNames); }
ClaimKind parse_claim_kind(const std::string& text) { return value_of(text, kClaimNames); }
ProofPath parse_proof_path(const std::string& text) { return value_of(text, kPathNames); }
Verdict parse_verdict(const std::string& text) { return value_of(text, kVerdictNames); }
MembershipMethod parse_membership_method(const std::string& text) { return value_of(text, kMethodNames); }

std::string ClosureCertificate::verdict_label() const {
  if (kind == ClaimKind::FPure || kind == ClaimKind::NotFPure) return to_string(kind);
  return to_string(verdict);
}

Verdict ClosureCertificate::overall_verdict() const {
  Verdict out = verdict;
  for (const auto& sub : further) {
    Verdict v = sub.overall_verdict();
    if (v == Verdict::Refuted) return Verdict::Refuted;
    if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Building blocks

RingPtr hypersurface_ring(std::int64_t n, const PrimeField& field) {
  return make_ring(field, static_cast<std::size_t>(n), "x");
}

RingPtr two_variable_ring(const PrimeField& field) { return make_ring(field, {"A", "B"}); }

MultiPoly fermat_relation(const RingPtr& ring, std::uint32_t n) {
  MultiPoly f(ring);
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    f += MultiPoly::monomial(ring, Monomial::variable(ring->arity(), i, n));
  }
  return f;
}

MultiPoly diagonal_monomial(const RingPtr& ring, std::uint32_t power) {
  return MultiPoly::monomial(ring, Monomial(std::vector<std::uint32_t>(ring->arity(), power)));
}

IdealSpec bracket_ideal(const RingPtr& ring, std::uint32_t power, std::size_t count, std::uint32_t n) {
  IdealSpec ideal;
  for (std::size_t i = 0; i < count; ++i) {
    ideal.generators.push_back(MultiPoly::monomial(ring, Monomial::variable(ring->arity(), i, power)));
  }
  ideal.relation = fermat_relation(ring, n);
  return ideal;
}

IdealSpec two_variable_ideal(const RingPtr& ring, std::uint32_t power) {
  MultiPoly a = MultiPoly::variable(ring, 0), b = MultiPoly::variable(ring, 1);
  return IdealSpec{{poly_pow(a, power), poly_pow(b, power), poly_pow(a + b, power)}, std::nullopt};
}

MembershipRecord make_membership_record(std::string label, MembershipMethod method, const MultiPoly& target,
                                        const IdealSpec& ideal, const MembershipResult& result) {
  MembershipRecord rec;
  rec.label = std::move(label);
  rec.method = method;
  rec.modulus = target.field().modulus();
  rec.variables = target.ring()->variable_names();
  rec.target = target.to_string();
  for (const auto& g : ideal.generators) rec.generators.push_back(g.to_string());
  if (ideal.relation) rec.relation = ideal.relation->to_string();
  rec.degree = target.degree().value_or(0);
  if (const auto* w = std::get_if<MembershipWitness>(&result)) {
    rec.member = true;
    for (const auto& c : w->generator_coefficients) rec.witness.push_back(c.to_string());
    if (w->relation_coefficient) rec.relation_witness = w->relation_coefficient->to_string();
  } else {
    const auto& nm = std::get<NotMember>(result);
    rec.member = false;
    rec.degree = nm.degree;
    rec.rank = nm.rank;
  }
  return rec;
}

bool verify_membership_record(const MembershipRecord& record) {
  if (!record.member) return record.rank.has_value();
  PrimeField field(record.modulus);
  auto ring = make_ring(field, record.variables);
  MultiPoly target = parse_poly(record.target, ring);
  IdealSpec ideal;
  for (const auto& g : record.generators) ideal.generators.push_back(parse_poly(g, ring));
  if (record.relation) ideal.relation = parse_poly(*record.relation, ring);
  if (record.witness.size() != ideal.generators.size()) return false;
  if (record.relation_witness.has_value() != ideal.relation.has_value()) return false;
  MembershipWitness witness;
  for (const auto& w : record.witness) witness.generator_coefficients.push_back(parse_poly(w, ring));
  if (record.relation_witness) witness.relation_coefficient = parse_poly(*record.relation_witness, ring);
  return witness.reexpands_to(target, ideal);
}

// ---------------------------------------------------------------------------
// Fedder-type oracle

namespace {

struct FedderSearch {
  std::optional<std::vector<std::uint32_t>> exponents;
  Residue multinomial = 0;
};

FedderSearch fedder_search(std::int64_t n, std::int64_t p) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  PrimeField field(p);
  if (n % p == 0) throw PreconditionError("p divides n");
  const auto total = static_cast<std::uint32_t>(p - 1);
  const auto cap = static_cast<std::uint32_t>((p - 1) / n);
  std::vector<std::uint32_t> a(static_cast<std::size_t>(n), 0);
  FedderSearch found;
  // a_1 from largest to smallest; the last entry takes what is left.
  std::function<bool(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == a.size()) {
      if (left > cap) return false;
      a[i] = left;
      // (p-1)! / prod a_i! = prod_i binom(a_1 + ... + a_i, a_i).
      Residue coeff = 1;
      std::uint64_t partial = 0;
      for (auto ai : a) {
        partial += ai;
        coeff = field.mul(coeff, binomial_mod_p(partial, ai, field));
      }
      if (coeff == 0) return false;
      found.exponents = a;
      found.multinomial = coeff;
      return true;
    }
    for (std::uint32_t v = std::min(cap, left) + 1; v-- > 0;) {
      a[i] = v;
      if (rec(i + 1, left - v)) return true;
    }
    return false;
  };
  rec(0, total);
  return found;
}

}  // namespace

bool fedder_oracle(std::int64_t n, std::int64_t p) { return fedder_search(n, p).exponents.has_value(); }

std::optional<std::vector<std::uint32_t>> fedder_witness(std::int64_t n, std::int64_t p) {
  return fedder_search(n, p).exponents;
}

ClosureCertificate check_f_pure(std::int64_t n, std::int64_t p) {
  ClosureCertificate cert;
  cert.params = PowerParams::make(n, p, 1);
  cert.path = ProofPath::FedderCriterion;
  FedderSearch search = fedder_search(n, p);
  FedderRecord rec;
  rec.criterion = p % n == 1;
  rec.survives = search.exponents.has_value();
  rec.exponents = search.exponents;
  rec.multinomial = search.multinomial;
  if (rec.criterion != rec.survives) {
    throw std::logic_error("F-purity criterion and Fedder enumeration disagree at n = " + std::to_string(n) +
                           ", p = " + std::to_string(p));
  }
  cert.kind = rec.criterion ? ClaimKind::FPure : ClaimKind::NotFPure;
  cert.verdict = Verdict::Verified;
  cert.fedder = rec;
  return cert;
}

// ---------------------------------------------------------------------------
// Shared certification steps

namespace {

constexpr const char* kReductionNote =
    "tight closure for all large q follows from membership at every q = p^e = 1 mod n (standard "
    "reduction for powers of p in a fixed residue class); this certificate attests the checked q only";

MacaulayOptions macaulay_options(const CertifierOptions& options) {
  MacaulayOptions out;
  out.max_columns = options.max_columns;
  return out;
}

std::uint32_t to_u32(std::int64_t v) {
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw DeskScaleExceeded("exponent " + std::to_string(v) + " out of range");
  }
  return static_cast<std::uint32_t>(v);
}

DeterminantRecord determinant_record(std::string label, const BinomMatrixSpec& spec, const PrimeField& field) {
  DeterminantRecord rec;
  rec.label = std::move(label);
  rec.spec = spec;
  if (spec.k + 1 > kMaxDeterminantSize) {
    throw DeskScaleExceeded("determinant of size " + std::to_string(spec.k + 1) + " exceeds the cap of " +
                            std::to_string(kMaxDeterminantSize));
  }
  BigInteger value = bareiss_determinant(build_matrix(spec));
  rec.integer_value = to_decimal(value);
  rec.modulus = field.modulus();
  rec.residue = field.reduce(value);
  return rec;
}

ContainmentRecord containment_record(std::string label, std::uint32_t degree, const IdealSpec& ideal) {
  ContainmentRecord rec;
  rec.label = std::move(label);
  rec.modulus = ideal.ring()->field().modulus();
  for (const auto& g : ideal.generators) rec.generators.push_back(g.to_string());
  rec.report = power_span_containment(degree, ideal);
  return rec;
}

// (AB)^{(n-2)k} (A+B)^k over A, B.
MultiPoly two_variable_target(const RingPtr& ring, std::int64_t n, std::int64_t k) {
  MultiPoly ab = MultiPoly::monomial(ring, Monomial({to_u32((n - 2) * k), to_u32((n - 2) * k)}));
  return ab * poly_pow(MultiPoly::variable(ring, 0) + MultiPoly::variable(ring, 1), to_u32(k));
}

// Appends the direct membership check in R when its degree is within bounds.
void direct_quotient_check(ClosureCertificate& cert, std::string label, std::int64_t n, const PrimeField& field,
                           std::int64_t element_power, std::int64_t bracket_power, std::size_t generator_count,
                           const CertifierOptions& options) {
  const std::int64_t degree = n * element_power;
  if (degree > options.degree_bound) {
    cert.notes.push_back(label + ": skipped, total degree " + std::to_string(degree) + " exceeds bound " +
                         std::to_string(options.degree_bound));
    return;
  }
  auto ring = hypersurface_ring(n, field);
  MultiPoly target = diagonal_monomial(ring, to_u32(element_power));
  IdealSpec ideal = bracket_ideal(ring, to_u32(bracket_power), generator_count, to_u32(n));
  try {
    auto result = quotient_membership(target, ideal, macaulay_options(options));
    cert.memberships.push_back(
        make_membership_record(std::move(label), MembershipMethod::QuotientMacaulay, target, ideal, result));
  } catch (const DeskScaleExceeded& ex) {
    cert.notes.push_back(label + ": skipped, " + ex.what());
  }
}

// Pushes (x1...xn)^{target} in (x_i^{gen}) + (x1^n + ... + xn^n) through A_i = x_i^n and
// eliminates A_n = -(A_1 + ... + A_{n-1}); decides the resulting statement in n - 1 variables.
void reduced_ring_check(ClosureCertificate& cert, std::int64_t n, const PrimeField& field,
                        std::int64_t target_power_a, std::int64_t generator_power_a,
                        const CertifierOptions& options) {
  const std::string label = "reduced statement in " + std::to_string(n - 1) + " variables";
  const std::int64_t degree = n * target_power_a;
  if (degree > options.degree_bound) {
    cert.notes.push_back(label + ": skipped, total degree " + std::to_string(degree) + " exceeds bound " +
                         std::to_string(options.degree_bound));
    return;
  }
  const auto nn = to_u32(n);
  auto xring = hypersurface_ring(n, field);
  MultiPoly hx = diagonal_monomial(xring, to_u32(target_power_a * n));
  IdealSpec ix = bracket_ideal(xring, to_u32(generator_power_a * n), xring->arity(), nn);

  auto reduced = n - 1 == 2 ? two_variable_ring(field) : make_ring(field, static_cast<std::size_t>(n - 1), "A");
  MultiPoly minus_sum(reduced);
  for (std::size_t i = 0; i < reduced->arity(); ++i) minus_sum = minus_sum - MultiPoly::variable(reduced, i);
  auto lower = [&](const MultiPoly& f) { return substitute_last_variable(compress_exponents(f, nn), minus_sum); };

  if (!lower(*ix.relation).is_zero()) throw std::logic_error("relation did not vanish under A_n = -sum A_i");
  MultiPoly h = lower(hx);
  IdealSpec ideal;
  for (const auto& g : ix.generators) ideal.generators.push_back(lower(g));
  try {
    auto result = macaulay_membership(h, ideal, macaulay_options(options));
    cert.memberships.push_back(make_membership_record(label, MembershipMethod::Macaulay, h, ideal, result));
  } catch (const DeskScaleExceeded& ex) {
    cert.notes.push_back(label + ": skipped, " + ex.what());
  }
}

void settle_membership_verdict(ClosureCertificate& cert, bool extra_conditions) {
  bool all_members = std::all_of(cert.memberships.begin(), cert.memberships.end(),
                                 [](const MembershipRecord& r) { return r.member; });
  bool all_contained = std::all_of(cert.containments.begin(), cert.containments.end(),
                                   [](const ContainmentRecord& r) { return r.report.contained; });
  if (!all_members || !all_contained) {
    cert.verdict = Verdict::Refuted;
  } else {
    cert.verdict = extra_conditions ? Verdict::Verified : Verdict::Inconclusive;
  }
}

void require_closure_params(std::int64_t n, std::int64_t p) {
  if (n < 3) throw PreconditionError("n must be at least 3");
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (n % p == 0) throw PreconditionError("p divides n");
}

}  // namespace

std::vector<DeterminantRecord> instance_determinants(std::int64_t n, std::int64_t p) {
  require_closure_params(n, p);
  PrimeField field(p);
  std::vector<DeterminantRecord> out;
  const auto pp = PowerParams::make(n, p, mult_order(p, n));
  out.push_back(determinant_record("unit determinant at q = " + std::to_string(pp.q), unit_determinant_spec(n, pp.k),
                                   field));
  const auto base = PowerParams::make(n, p, 1);
  if (n == 3 && base.m) {
    out.push_back(determinant_record("F(4m+3, 2m+2, m)", six_m_plus_five_spec(*base.m), field));
  } else if (n >= 4 && base.k >= 1 && base.delta != 1) {
    out.push_back(determinant_record("shifted containment determinant", shifted_containment_spec(n, base.k), field));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tight closure

ClosureCertificate certify_tight_closure(std::int64_t n, std::int64_t p, std::optional<std::int64_t> e,
                                         const CertifierOptions& options) {
  require_closure_params(n, p);
  const std::int64_t exponent = e.value_or(mult_order(p, n));
  if (exponent < 1) throw PreconditionError("e must be at least 1");
  ClosureCertificate cert;
  cert.kind = ClaimKind::TightClosureMembership;
  cert.path = ProofPath::TwoVariableContainment;
  cert.params = PowerParams::make(n, p, exponent);
  const auto& pp = cert.params;
  if (pp.delta != 1) {
    throw PreconditionError("q = " + std::to_string(pp.q) + " is not 1 mod " + std::to_string(n));
  }
  const std::int64_t k = pp.k;
  PrimeField field(p);

  cert.determinants.push_back(
      determinant_record("unit determinant of the two-variable coefficient matrix", unit_determinant_spec(n, k), field));
  cert.congruences.push_back(congruence_identity_check(n, pp.q, p));

  auto ab = two_variable_ring(field);
  IdealSpec ideal = two_variable_ideal(ab, to_u32((n - 1) * k));
  cert.containments.push_back(containment_record("(A,B)^{(2n-3)k} in (A^{(n-1)k}, B^{(n-1)k}, (A+B)^{(n-1)k})",
                                                 to_u32((2 * n - 3) * k), ideal));
  MultiPoly target = two_variable_target(ab, n, k);
  cert.memberships.push_back(make_membership_record("(AB)^{(n-2)k}(A+B)^k in the two-variable ideal",
                                                    MembershipMethod::Macaulay, target, ideal,
                                                    macaulay_membership(target, ideal, macaulay_options(options))));
  reduced_ring_check(cert, n, field, (n - 2) * k, (n - 1) * k, options);
  direct_quotient_check(cert, "direct check (x1...xn)^{(n-2)q+1} in (x_i^{(n-1)q}) in R", n, field,
                        (n - 2) * pp.q + 1, (n - 1) * pp.q, static_cast<std::size_t>(n), options);
  cert.notes.push_back(kReductionNote);

  const bool unit = cert.determinants.front().residue == 1 % field.modulus();
  const bool congruent = cert.congruences.front().holds();
  settle_membership_verdict(cert, unit && congruent);
  return cert;
}

// ---------------------------------------------------------------------------
// Frobenius closure

namespace {

ClosureCertificate frobenius_non_membership(std::int64_t n, std::int64_t p, const std::vector<std::int64_t>& extra,
                                            const CertifierOptions& options) {
  ClosureCertificate cert;
  cert.kind = ClaimKind::FrobeniusNonMembership;
  cert.path = ProofPath::FPureExclusion;
  cert.params = PowerParams::make(n, p, 1);
  ClosureCertificate fpure = check_f_pure(n, p);
  cert.fedder = fpure.fedder;
  PrimeField field(p);

  std::vector<std::int64_t> exponents{1};
  for (auto e : extra) {
    if (e < 1) throw PreconditionError("e must be at least 1");
    if (std::find(exponents.begin(), exponents.end(), e) == exponents.end()) exponents.push_back(e);
  }
  for (auto e : exponents) {
    auto params = PowerParams::make(n, p, e);
    direct_quotient_check(cert, "direct check (x1...xn)^{(n-2)q} in (x_i^{(n-1)q}) in R at q = " +
                                    std::to_string(params.q),
                          n, field, (n - 2) * params.q, (n - 1) * params.q, static_cast<std::size_t>(n), options);
  }
  cert.notes.push_back("R is F-pure, so every ideal is Frobenius closed; non-membership for all q follows from "
                       "F-purity, the direct checks cover the listed q only");

  const bool contradicted = std::any_of(cert.memberships.begin(), cert.memberships.end(),
                                        [](const MembershipRecord& r) { return r.member; });
  if (contradicted) {
    cert.verdict = Verdict::Refuted;
  } else {
    cert.verdict = fpure.kind == ClaimKind::FPure ? Verdict::Verified : Verdict::Inconclusive;
  }
  return cert;
}

ClosureCertificate frobenius_p2(const CertifierOptions& options) {
  ClosureCertificate cert;
  cert.kind = ClaimKind::FrobeniusMembership;
  cert.path = ProofPath::P2Special;
  cert.params = PowerParams::make(3, 2, 3);
  PrimeField field(2);
  auto ring = hypersurface_ring(3, field);
  {
    MultiPoly target = diagonal_monomial(ring, 8);
    IdealSpec ideal = bracket_ideal(ring, 16, 3, 3);
    cert.memberships.push_back(make_membership_record("(xyz)^8 in (x^16, y^16, z^16) in R",
                                                      MembershipMethod::QuotientMacaulay, target, ideal,
                                                      quotient_membership(target, ideal, macaulay_options(options))));
  }
  {
    MultiPoly target = diagonal_monomial(ring, 6);
    IdealSpec ideal = bracket_ideal(ring, 15, 3, 3);
    cert.memberships.push_back(make_membership_record("(xyz)^6 in (x^15, y^15, z^15) in R",
                                                      MembershipMethod::QuotientMacaulay, target, ideal,
                                                      quotient_membership(target, ideal, macaulay_options(options))));
  }
  auto ab = two_variable_ring(field);
  MultiPoly a = MultiPoly::variable(ab, 0), b = MultiPoly::variable(ab, 1);
  MultiPoly target = poly_pow(a * b * (a + b), 2);
  IdealSpec ideal = two_variable_ideal(ab, 5);
  cert.memberships.push_back(make_membership_record("(AB(A+B))^2 in (A^5, B^5, (A+B)^5)", MembershipMethod::Macaulay,
                                                    target, ideal,
                                                    macaulay_membership(target, ideal, macaulay_options(options))));
  settle_membership_verdict(cert, true);
  return cert;
}

ClosureCertificate frobenius_six_m_plus_five(std::int64_t p, const CertifierOptions& options) {
  ClosureCertificate cert;
  cert.kind = ClaimKind::FrobeniusMembership;
  cert.path = ProofPath::SixMPlusFive;
  cert.params = PowerParams::make(3, p, 1);
  const std::int64_t m = *cert.params.m;
  PrimeField field(p);

  auto spec = six_m_plus_five_spec(m);
  cert.determinants.push_back(determinant_record("F(4m+3, 2m+2, m)", spec, field));
  if (to_decimal(require_integral(det2_closed_form(spec.n, spec.a, spec.k))) != cert.determinants.back().integer_value) {
    throw std::logic_error("closed form and Bareiss disagree on F(4m+3, 2m+2, m)");
  }

  auto ab = two_variable_ring(field);
  MultiPoly a = MultiPoly::variable(ab, 0), b = MultiPoly::variable(ab, 1);
  MultiPoly target = poly_pow(a * b * (a + b), to_u32(2 * m + 1));
  IdealSpec ideal = two_variable_ideal(ab, to_u32(4 * m + 3));
  cert.memberships.push_back(make_membership_record("(AB(A+B))^{2m+1} in (A^{4m+3}, B^{4m+3}, (A+B)^{4m+3})",
                                                    MembershipMethod::Macaulay, target, ideal,
                                                    macaulay_membership(target, ideal, macaulay_options(options))));
  direct_quotient_check(cert, "direct check (xyz)^p in (x^{2p}, y^{2p}, z^{2p}) in R", 3, field, p, 2 * p, 3,
                        options);
  settle_membership_verdict(cert, cert.determinants.front().residue != 0);
  return cert;
}

ClosureCertificate frobenius_k0(std::int64_t n, std::int64_t p, const CertifierOptions& options) {
  ClosureCertificate cert;
  cert.kind = ClaimKind::FrobeniusMembership;
  cert.path = ProofPath::K0Identity;
  cert.params = PowerParams::make(n, p, 1);
  PrimeField field(p);
  auto ring = hypersurface_ring(n, field);
  const auto nn = to_u32(n);
  const auto count = static_cast<std::size_t>(n - 1);

  MultiPoly target = diagonal_monomial(ring, to_u32((n - 2) * p));
  IdealSpec ideal = bracket_ideal(ring, to_u32((n - 1) * p), count, nn);

  // (x1...xn)^{(n-2)p} = base * x_n^n = base * f - sum_{i<n} base * x_i^n,
  // base = (x1...x_{n-1})^{(n-2)p} x_n^{(n-2)p-n}; p < n makes each x_i^n term
  // a multiple of x_i^{(n-1)p}.
  std::vector<std::uint32_t> base_exp(static_cast<std::size_t>(n), to_u32((n - 2) * p));
  base_exp.back() = to_u32((n - 2) * p - n);
  Monomial base(base_exp);
  MembershipWitness witness;
  witness.relation_coefficient = MultiPoly::monomial(ring, base);
  for (std::size_t i = 0; i < count; ++i) {
    Monomial shifted = base * Monomial::variable(ring->arity(), i, nn);
    Monomial generator = Monomial::variable(ring->arity(), i, to_u32((n - 1) * p));
    witness.generator_coefficients.push_back(
        MultiPoly::monomial(ring, generator.cofactor_in(shifted), field.neg(1)));
  }
  if (!witness.reexpands_to(target, ideal)) throw std::logic_error("k = 0 identity failed to re-expand");
  cert.memberships.push_back(make_membership_record("(x1...xn)^{(n-2)p} in (x_1^{(n-1)p}, ..., x_{n-1}^{(n-1)p}) in R",
                                                    MembershipMethod::Identity, target, ideal, witness));
  direct_quotient_check(cert, "direct check of the same membership", n, field, (n - 2) * p, (n - 1) * p, count,
                        options);
  settle_membership_verdict(cert, true);
  return cert;
}

ClosureCertificate frobenius_shifted(std::int64_t n, std::int64_t p, const CertifierOptions& options) {
  ClosureCertificate cert;
  cert.kind = ClaimKind::FrobeniusMembership;
  cert.path = ProofPath::ShiftedContainment;
  cert.params = PowerParams::make(n, p, 1);
  const std::int64_t k = cert.params.k;
  PrimeField field(p);

  cert.determinants.push_back(
      determinant_record("determinant of the shifted coefficient matrix", shifted_containment_spec(n, k), field));
  auto ab = two_variable_ring(field);
  IdealSpec ideal = two_variable_ideal(ab, to_u32((n - 1) * k + 1));
  cert.containments.push_back(containment_record(
      "(A,B)^{(2n-3)k} in (A^{(n-1)k+1}, B^{(n-1)k+1}, (A+B)^{(n-1)k+1})", to_u32((2 * n - 3) * k), ideal));
  MultiPoly target = two_variable_target(ab, n, k);
  cert.memberships.push_back(make_membership_record("(AB)^{(n-2)k}(A+B)^k in the two-variable ideal",
                                                    MembershipMethod::Macaulay, target, ideal,
                                                    macaulay_membership(target, ideal, macaulay_options(options))));
  reduced_ring_check(cert, n, field, (n - 2) * k, (n - 1) * k + 1, options);
  direct_quotient_check(cert, "direct check (x1...xn)^{(n-2)p} in (x_i^{(n-1)p}) in R", n, field, (n - 2) * p,
                        (n - 1) * p, static_cast<std::size_t>(n), options);
  settle_membership_verdict(cert, cert.determinants.front().residue != 0);
  return cert;
}

}  // namespace

ClosureCertificate certify_frobenius_closure(std::int64_t n, std::int64_t p, const std::vector<std::int64_t>& extra,
                                             const CertifierOptions& options) {
  require_closure_params(n, p);
  if (p % n == 1) return frobenius_non_membership(n, p, extra, options);
  if (n == 3) return p == 2 ? frobenius_p2(options) : frobenius_six_m_plus_five(p, options);
  if (p < n) return frobenius_k0(n, p, options);
  return frobenius_shifted(n, p, options);
}

// ---------------------------------------------------------------------------
// Audit

namespace {

std::optional<std::string> path_mismatch(const ClosureCertificate& cert) {
  const auto& pp = cert.params;
  auto expect_kind = [&](std::initializer_list<ClaimKind> kinds) -> std::optional<std::string> {
    if (std::find(kinds.begin(), kinds.end(), cert.kind) == kinds.end()) {
      return "claim " + to_string(cert.kind) + " does not fit path " + to_string(cert.path);
    }
    return std::nullopt;
  };
  switch (cert.path) {
    case ProofPath::TwoVariableContainment:
      if (pp.q <= 1 || pp.delta != 1) return "two-variable-containment needs q = 1 mod n, q > 1";
      return expect_kind({ClaimKind::TightClosureMembership});
    case ProofPath::P2Special:
      if (pp.n != 3 || pp.p != 2 || pp.q != 8) return "p2-special needs n = 3, p = 2, q = 8";
      return expect_kind({ClaimKind::FrobeniusMembership});
    case ProofPath::SixMPlusFive:
      if (pp.n != 3 || pp.p % 6 != 5 || !pp.m) return "six-m-plus-five needs n = 3 and p = 5 mod 6";
      return expect_kind({ClaimKind::FrobeniusMembership});
    case ProofPath::K0Identity:
      if (pp.n < 4 || pp.p >= pp.n) return "k0-identity needs n >= 4 and p < n";
      return expect_kind({ClaimKind::FrobeniusMembership});
    case ProofPath::ShiftedContainment:
      if (pp.n < 4 || pp.k < 1 || pp.delta < 2) return "shifted-containment needs n >= 4, k >= 1, delta >= 2";
      return expect_kind({ClaimKind::FrobeniusMembership});
    case ProofPath::FPureExclusion:
      if (pp.p % pp.n != 1) return "fpure-exclusion needs p = 1 mod n";
      return expect_kind({ClaimKind::FrobeniusNonMembership});
    case ProofPath::FedderCriterion:
      return expect_kind({ClaimKind::FPure, ClaimKind::NotFPure});
  }
  return std::nullopt;
}

void audit_into(const ClosureCertificate& cert, const std::string& where, std::vector<std::string>& problems) {
  if (auto bad = path_mismatch(cert)) problems.push_back(where + *bad);
  for (const auto& rec : cert.memberships) {
    bool ok = false;
    try {
      ok = verify_membership_record(rec);
    } catch (const std::exception& ex) {
      problems.push_back(where + "membership '" + rec.label + "' does not parse: " + ex.what());
      continue;
    }
    if (!ok) problems.push_back(where + "membership '" + rec.label + "' witness does not re-expand");
  }
  for (const auto& rec : cert.containments) {
    const auto& r = rec.report;
    if (r.monomials.size() != std::size_t{r.degree} + 1) {
      problems.push_back(where + "containment '" + rec.label + "' does not cover all monomials");
    }
    bool all_in = std::all_of(r.monomials.begin(), r.monomials.end(), [](const MonomialStatus& s) { return s.in_ideal; });
    if (all_in != r.contained) problems.push_back(where + "containment '" + rec.label + "' summary is inconsistent");
  }
  for (const auto& det : cert.determinants) {
    try {
      PrimeField field(det.modulus);
      if (field.reduce(BigInteger(det.integer_value)) != det.residue) {
        problems.push_back(where + "determinant '" + det.label + "' residue does not match its integer value");
      }
    } catch (const std::exception& ex) {
      problems.push_back(where + "determinant '" + det.label + "': " + ex.what());
    }
  }
  for (const auto& c : cert.congruences) {
    if (c.rows.size() != static_cast<std::size_t>(c.k + 1)) {
      problems.push_back(where + "congruence report does not cover 0 <= r <= k");
    }
  }
  if (cert.verdict == Verdict::Verified) {
    switch (cert.kind) {
      case ClaimKind::TightClosureMembership:
      case ClaimKind::FrobeniusMembership: {
        bool witnessed = std::any_of(cert.memberships.begin(), cert.memberships.end(),
                                     [](const MembershipRecord& r) { return r.member; }) ||
                         std::any_of(cert.containments.begin(), cert.containments.end(),
                                     [](const ContainmentRecord& r) { return r.report.contained; });
        if (!witnessed) problems.push_back(where + "verified membership without a witness or containment report");
        break;
      }
      case ClaimKind::FrobeniusNonMembership:
      case ClaimKind::FPure:
        if (!cert.fedder || !cert.fedder->criterion || !cert.fedder->survives) {
          problems.push_back(where + "F-purity evidence missing or negative");
        }
        break;
      case ClaimKind::NotFPure:
        if (!cert.fedder || cert.fedder->criterion || cert.fedder->survives) {
          problems.push_back(where + "non-F-purity evidence missing or positive");
        }
        break;
    }
  }
  for (std::size_t i = 0; i < cert.further.size(); ++i) {
    audit_into(cert.further[i], where + "further[" + std::to_string(i) + "]: ", problems);
  }
}

}  // namespace

std::vector<std::string> audit_certificate(const ClosureCertificate& cert) {
  std::vector<std::string> problems;
  audit_into(cert, "", problems);
  return problems;
}

}  // namespace diaghyp
