#pragma once

/*
 * The two binomial determinant families and their closed forms.
 *
 *   Det1(n, a, k): (k+1) x (k+1), entry (i, j) = binom(n, a + k - i + j).
 *                  Top row binom(n, a+k .. a+2k), bottom row binom(n, a .. a+k).
 *   Det2(n, a, k): (k+1) x (k+1), entry (i, j) = binom(n + 2i, a + i + j).
 *                  Its determinant is written F(n, a, k).
 *
 * Closed forms are evaluated as exact rationals; callers that need an integer
 * go through require_integral so a transcription slip cannot hide behind a
 * modular reduction.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "diaghyp/exact_arith.hpp"
#include "diaghyp/linear_solver.hpp"

namespace diaghyp {

enum class DetFamily { Det1, Det2 };

struct BinomMatrixSpec {
  DetFamily family = DetFamily::Det1;
  std::int64_t n = 0;
  std::int64_t a = 0;
  std::int64_t k = 0;

  friend bool operator==(const BinomMatrixSpec&, const BinomMatrixSpec&) = default;
};

IntMatrix build_matrix(const BinomMatrixSpec& spec);

// prod_{i=0..k} binom(n+i, a+k) / prod_{i=0..k} binom(a+k+i, a+k).
BigRational det1_closed_form(std::int64_t n, std::int64_t a, std::int64_t k);

// prod_{i=0..k} binom(n+2i, a+2i)
//   * prod_{j=0..k-1} binom(2a-n+k+j, k-j)
//   / prod_{j=0..k-1} binom(a+k+j, k-j) binom(n-a+k-j, k-j).
// Throws PreconditionError when a denominator binomial vanishes.
BigRational det2_closed_form(std::int64_t n, std::int64_t a, std::int64_t k);

struct RatioCheck {
  // F(n, a, k) / F(n+2, a+2, k-1), both determinants by Bareiss.
  BigRational determinant_ratio;
  // binom(n, a) * prod_s s(s+2a-n) / prod_r (a+r)(n-a+r), s, r = 1..k.
  BigRational factor_product;

  bool holds() const { return determinant_ratio == factor_product; }
};

// Row-operation recursion for F. Requires k >= 1, F(n+2, a+2, k-1) != 0 and
// (a+r)(n-a+r) != 0 for r = 1..k.
RatioCheck det2_ratio_check(std::int64_t n, std::int64_t a, std::int64_t k);

// Determinant of the built matrix, reduced mod p.
Residue invertibility_mod_p(const BinomMatrixSpec& spec, std::int64_t p);

// Matrix whose invertibility gives (A,B)^{(2n-3)k} in (A^{(n-1)k}, B^{(n-1)k}, (A+B)^{(n-1)k})
// when q = nk + 1: Det1((n-1)k, 0, k).
BinomMatrixSpec unit_determinant_spec(std::int64_t n, std::int64_t k);

// Matrix of the n >= 4, k >= 1 Frobenius containment: Det1((n-1)k+1, 1, k).
BinomMatrixSpec shifted_containment_spec(std::int64_t n, std::int64_t k);

// Matrix of the n = 3, p = 6m+5 membership: Det2(4m+3, 2m+2, m).
BinomMatrixSpec six_m_plus_five_spec(std::int64_t m);

struct CongruenceRow {
  std::int64_t r = 0;
  Residue lhs = 0;  // binom((n-1)k + r, k) mod p
  Residue rhs = 0;  // (-1)^k binom(2k - r, k) mod p

  friend bool operator==(const CongruenceRow&, const CongruenceRow&) = default;
};

struct CongruenceReport {
  std::int64_t n = 0;
  std::int64_t q = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::vector<CongruenceRow> rows;

  bool holds() const;

  friend bool operator==(const CongruenceReport&, const CongruenceReport&) = default;
};

// Checks binom((n-1)k+r, k) = (-1)^k binom(2k-r, k) mod p for 0 <= r <= k,
// with q = p^e = nk + 1.
CongruenceReport congruence_identity_check(std::int64_t n, std::int64_t q, std::int64_t p);

// Outcome of sweeping one identity over a parameter box.
struct SuiteReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t undefined = 0;  // skipped: vanishing denominator
  std::vector<std::string> failures;

  bool passed() const { return failures.empty() && checked > 0; }
};

// Closed form against Bareiss for a in [0,5], k in [0,4], n in [a+2k, a+2k+6].
SuiteReport det1_closed_form_suite();
// Closed form against Bareiss for a in [0,6], k in [0,4], n in [0, 2a+2].
SuiteReport det2_closed_form_suite();
// Ratio recursion over the same box, k >= 1.
SuiteReport det2_ratio_suite();
// Unit determinant mod p and the congruence rows, for n in {3,4,5} and
// prime powers 1 < q <= max_q with q = 1 mod n.
SuiteReport unit_determinant_suite(std::int64_t max_q = 128);
// F(4m+3, 2m+2, m) mod (6m+5) nonzero for m <= max_m with 6m+5 prime.
SuiteReport six_m_plus_five_suite(std::int64_t max_m = 30);

}  // namespace diaghyp
