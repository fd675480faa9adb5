#include "diaghyp/determinant_identities.hpp"

#include <algorithm>
#include <string>

namespace diaghyp {

namespace {

void require_spec(const BinomMatrixSpec& spec) {
  if (spec.k < 0) throw PreconditionError("matrix size parameter k must be nonnegative");
  if (spec.a < 0) throw PreconditionError("lower index offset a must be nonnegative");
}

}  // namespace

IntMatrix build_matrix(const BinomMatrixSpec& spec) {
  require_spec(spec);
  const auto size = static_cast<std::size_t>(spec.k + 1);
  IntMatrix m(size, size);
  for (std::int64_t i = 0; i <= spec.k; ++i) {
    for (std::int64_t j = 0; j <= spec.k; ++j) {
      m(i, j) = spec.family == DetFamily::Det1
                    ? binomial_general(spec.n, spec.a + spec.k - i + j)
                    : binomial_general(spec.n + 2 * i, spec.a + i + j);
    }
  }
  return m;
}

BigRational det1_closed_form(std::int64_t n, std::int64_t a, std::int64_t k) {
  require_spec({DetFamily::Det1, n, a, k});
  BigInteger num = 1, den = 1;
  for (std::int64_t i = 0; i <= k; ++i) {
    num *= binomial_general(n + i, a + k);
    den *= binomial_general(a + k + i, a + k);
  }
  if (den == 0) throw PreconditionError("Det1 closed form has a vanishing denominator");
  BigRational out(num, den);
  out.canonicalize();
  return out;
}

BigRational det2_closed_form(std::int64_t n, std::int64_t a, std::int64_t k) {
  require_spec({DetFamily::Det2, n, a, k});
  BigInteger num = 1, den = 1;
  for (std::int64_t i = 0; i <= k; ++i) num *= binomial_general(n + 2 * i, a + 2 * i);
  for (std::int64_t j = 0; j < k; ++j) {
    num *= binomial_general(2 * a - n + k + j, k - j);
    den *= binomial_general(a + k + j, k - j);
    den *= binomial_general(n - a + k - j, k - j);
  }
  if (den == 0) {
    throw PreconditionError("Det2 closed form has a vanishing denominator at (n, a, k) = (" +
                            std::to_string(n) + ", " + std::to_string(a) + ", " + std::to_string(k) + ")");
  }
  BigRational out(num, den);
  out.canonicalize();
  return out;
}

RatioCheck det2_ratio_check(std::int64_t n, std::int64_t a, std::int64_t k) {
  if (k < 1) throw PreconditionError("ratio check needs k >= 1");
  BigInteger lower = bareiss_determinant(build_matrix({DetFamily::Det2, n + 2, a + 2, k - 1}));
  if (lower == 0) throw PreconditionError("F(n+2, a+2, k-1) vanishes");
  BigInteger upper = bareiss_determinant(build_matrix({DetFamily::Det2, n, a, k}));

  BigInteger num = binomial_general(n, a), den = 1;
  // One factor per column after clearing the first column, one per row.
  for (std::int64_t s = 1; s <= k; ++s) num *= BigInteger(static_cast<long>(s * (s + 2 * a - n)));
  for (std::int64_t r = 1; r <= k; ++r) den *= BigInteger(static_cast<long>((a + r) * (n - a + r)));
  if (den == 0) throw PreconditionError("row factor (a+r)(n-a+r) vanishes");

  RatioCheck out{BigRational(upper, lower), BigRational(num, den)};
  out.determinant_ratio.canonicalize();
  out.factor_product.canonicalize();
  return out;
}

Residue invertibility_mod_p(const BinomMatrixSpec& spec, std::int64_t p) {
  PrimeField field(p);
  return determinant_mod_p(build_matrix(spec).reduce_mod(field));
}

BinomMatrixSpec unit_determinant_spec(std::int64_t n, std::int64_t k) {
  return {DetFamily::Det1, (n - 1) * k, 0, k};
}

BinomMatrixSpec shifted_containment_spec(std::int64_t n, std::int64_t k) {
  return {DetFamily::Det1, (n - 1) * k + 1, 1, k};
}

BinomMatrixSpec six_m_plus_five_spec(std::int64_t m) {
  return {DetFamily::Det2, 4 * m + 3, 2 * m + 2, m};
}

bool CongruenceReport::holds() const {
  return std::all_of(rows.begin(), rows.end(), [](const CongruenceRow& r) { return r.lhs == r.rhs; });
}

CongruenceReport congruence_identity_check(std::int64_t n, std::int64_t q, std::int64_t p) {
  PrimeField field(p);
  if (n < 2) throw PreconditionError("n must be at least 2");
  std::int64_t rest = q;
  while (rest > 1 && rest % p == 0) rest /= p;
  if (q < 1 || rest != 1) throw PreconditionError(std::to_string(q) + " is not a power of " + std::to_string(p));
  if (q == 1 || q % n != 1) throw PreconditionError("q must satisfy q = 1 mod n with q > 1");

  CongruenceReport report{n, q, p, (q - 1) / n, {}};
  const std::int64_t k = report.k;
  for (std::int64_t r = 0; r <= k; ++r) {
    Residue lhs = binomial_mod_p(static_cast<std::uint64_t>((n - 1) * k + r), static_cast<std::uint64_t>(k), field);
    Residue rhs = binomial_mod_p(static_cast<std::uint64_t>(2 * k - r), static_cast<std::uint64_t>(k), field);
    if (k % 2 == 1) rhs = field.neg(rhs);
    report.rows.push_back({r, lhs, rhs});
  }
  return report;
}

namespace {

std::string triple(std::int64_t n, std::int64_t a, std::int64_t k) {
  return "(" + std::to_string(n) + ", " + std::to_string(a) + ", " + std::to_string(k) + ")";
}

}  // namespace

SuiteReport det1_closed_form_suite() {
  SuiteReport report{"Det1 closed form", 0, 0, {}};
  for (std::int64_t a = 0; a <= 5; ++a) {
    for (std::int64_t k = 0; k <= 4; ++k) {
      for (std::int64_t n = a + 2 * k; n <= a + 2 * k + 6; ++n) {
        BigRational expected = BigRational(bareiss_determinant(build_matrix({DetFamily::Det1, n, a, k})));
        ++report.checked;
        if (det1_closed_form(n, a, k) != expected) report.failures.push_back("Det1" + triple(n, a, k));
      }
    }
  }
  return report;
}

SuiteReport det2_closed_form_suite() {
  SuiteReport report{"Det2 closed form", 0, 0, {}};
  for (std::int64_t a = 0; a <= 6; ++a) {
    for (std::int64_t k = 0; k <= 4; ++k) {
      for (std::int64_t n = 0; n <= 2 * a + 2; ++n) {
        BigRational closed;
        try {
          closed = det2_closed_form(n, a, k);
        } catch (const PreconditionError&) {
          ++report.undefined;
          continue;
        }
        ++report.checked;
        if (closed != BigRational(bareiss_determinant(build_matrix({DetFamily::Det2, n, a, k})))) {
          report.failures.push_back("Det2" + triple(n, a, k));
        }
      }
    }
  }
  return report;
}

SuiteReport det2_ratio_suite() {
  SuiteReport report{"Det2 ratio recursion", 0, 0, {}};
  for (std::int64_t a = 0; a <= 6; ++a) {
    for (std::int64_t k = 1; k <= 4; ++k) {
      for (std::int64_t n = 0; n <= 2 * a + 2; ++n) {
        RatioCheck check;
        try {
          check = det2_ratio_check(n, a, k);
        } catch (const PreconditionError&) {
          ++report.undefined;
          continue;
        }
        ++report.checked;
        if (!check.holds()) report.failures.push_back("ratio" + triple(n, a, k));
      }
    }
  }
  return report;
}

SuiteReport unit_determinant_suite(std::int64_t max_q) {
  SuiteReport report{"unit determinant and congruence", 0, 0, {}};
  for (std::int64_t n : {3, 4, 5}) {
    for (std::int64_t p = 2; p <= max_q; ++p) {
      if (!is_prime(p) || n % p == 0) continue;
      for (std::int64_t q = p; q <= max_q; q *= p) {
        if (q % n != 1) continue;
        const std::int64_t k = (q - 1) / n;
        ++report.checked;
        const std::string where = "n=" + std::to_string(n) + " q=" + std::to_string(q);
        if (invertibility_mod_p(unit_determinant_spec(n, k), p) != 1 % p) {
          report.failures.push_back("determinant not 1 at " + where);
        }
        if (!congruence_identity_check(n, q, p).holds()) report.failures.push_back("congruence fails at " + where);
      }
    }
  }
  return report;
}

SuiteReport six_m_plus_five_suite(std::int64_t max_m) {
  SuiteReport report{"F(4m+3, 2m+2, m) mod 6m+5", 0, 0, {}};
  for (std::int64_t m = 0; m <= max_m; ++m) {
    const std::int64_t p = 6 * m + 5;
    if (!is_prime(p)) continue;
    ++report.checked;
    if (invertibility_mod_p(six_m_plus_five_spec(m), p) == 0) {
      report.failures.push_back("vanishes at m=" + std::to_string(m));
    }
  }
  return report;
}

}  // namespace diaghyp
